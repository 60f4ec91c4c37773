#ifndef PREDPREY_CONFIG_HPP
#define PREDPREY_CONFIG_HPP

#include <optional>
#include <string>

#include "predprey/simulate.hpp"

namespace predprey {

struct SimConfig {
    Form form = Form::rescaled;
    double da = 0.01;
    int dt_divisor = 200;  // DDE steps per delay
    double t_end = 600.0;
    double sample_every = 0.1;
    double t_transient = 300.0;
    double snapshot_every = 1.0;
    std::optional<InitialData> initial;
};

struct HopfConfig {
    int k_max = 5;
};

struct OutputConfig {
    std::optional<std::string> trajectory;
    std::optional<std::string> snapshots;
    std::optional<std::string> sweep;
    bool snapshot_toggle = false;
};

struct RunConfig {
    ModelParams params;
    double tau;
    SimConfig sim;
    HopfConfig hopf;
    OutputConfig output;
};

// Parses and validates the JSON configuration document. Unknown keys are
// rejected; missing required keys are reported by name. Throws SyntaxError
// for malformed JSON and SchemaError for shape violations.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

}  // namespace predprey

#endif
