#ifndef PREDPREY_CSV_HPP
#define PREDPREY_CSV_HPP

#include <ostream>
#include <string>

#include "predprey/simulate.hpp"
#include "predprey/sweep.hpp"

namespace predprey {

// Shortest-roundtrip decimal at 17 significant digits; identical doubles
// always print identical bytes.
std::string format_full(double x);

// 6 significant digits for human-facing summaries.
std::string format_human(double x);

// header t,U,V; one row per sample; LF line endings
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

// header t,a,u; one row per (snapshot, node)
void write_snapshots_csv(std::ostream& os, const Trajectory& traj);

// header param,value,feasible,tau0,amplitude_U,amplitude_V,mean_U,mean_V,period,converged
void write_sweep_csv(std::ostream& os, const std::string& param,
                     const std::vector<SweepRow>& rows);

}  // namespace predprey

#endif
