#include "predprey/csv.hpp"

#include <cstdio>

namespace predprey {

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string format_human(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,U,V\n";
    for (const auto& s : traj.samples) {
        os << format_full(s.t) << ',' << format_full(s.U) << ',' << format_full(s.V) << '\n';
    }
}

void write_snapshots_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,a,u\n";
    for (const auto& snap : traj.snapshots) {
        for (std::size_t j = 0; j < snap.u.size(); ++j) {
            os << format_full(snap.t) << ',' << format_full(traj.snapshot_ages[j]) << ','
               << format_full(snap.u[j]) << '\n';
        }
    }
}

void write_sweep_csv(std::ostream& os, const std::string& param,
                     const std::vector<SweepRow>& rows) {
    os << "param,value,feasible,tau0,amplitude_U,amplitude_V,mean_U,mean_V,period,converged\n";
    for (const auto& row : rows) {
        os << param << ',' << format_full(row.value) << ','
           << (row.feasible ? "true" : "false") << ',';
        if (row.tau0) os << format_full(*row.tau0);
        os << ',';
        if (row.metrics) {
            const auto& m = *row.metrics;
            os << format_full(m.amplitude_U) << ',' << format_full(m.amplitude_V) << ','
               << format_full(m.mean_U) << ',' << format_full(m.mean_V) << ',';
            if (m.period) os << format_full(*m.period);
            os << ',' << (m.converged ? "true" : "false");
        } else {
            os << ",,,,,";
        }
        os << '\n';
    }
}

}  // namespace predprey
