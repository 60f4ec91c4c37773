#ifndef PREDPREY_VERIFY_HPP
#define PREDPREY_VERIFY_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "predprey/model.hpp"

namespace predprey {

struct VerifyCheck {
    std::string name;
    bool pass;
    double worst;      // worst observed deviation (or the checked quantity)
    double tolerance;  // threshold it was held against
};

// Random parameter set satisfying both the existence and the Hopf margins.
ModelParams random_feasible_params(std::mt19937_64& rng);

// Internal identity suite: the scaling identity between the two characteristic
// forms, determinant equivalence, closed-form equilibrium residuals, the
// p0 + q0 identity, transversality/simple-root positivity and the ladder gap.
// Deterministic for a fixed seed.
std::vector<VerifyCheck> run_verify(const ModelParams& p, std::uint64_t seed = 20240801,
                                    int samples = 1000);

}  // namespace predprey

#endif
