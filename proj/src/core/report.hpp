#ifndef RADTRIM_REPORT_HPP
#define RADTRIM_REPORT_HPP

#include <cstdint>
#include <string>

#include "pipeline.hpp"
#include "simulation.hpp"

namespace radtrim {

// CSV columns: estimator,model,epsilon,rmse,reps,failures,seed.
std::string sim_report_csv(const SimReport& report);
std::string sim_report_json(const SimReport& report);

// Study configuration as JSON. parse reports the offending field path.
SimConfig parse_sim_config(const std::string& text);
std::string dump_sim_config(const SimConfig& config);

// CSV columns: id,alpha,radius,rank (ordered by alpha, then id).
std::string radii_csv(const RadiiResult& radii);

// Keys: mean, complement_mean, eigenvalues, pc_values, scores, weights.
std::string trim_json(const TrimResult& result);

// CSV columns: alpha,bin_lo,bin_hi,count.
std::string screen_hist_csv(const ScreenResult& screen);

// Everything needed to re-run a command bit-identically: the command name,
// its resolved configuration, the dataset checksum, seed, and tool version.
std::string manifest_json(const std::string& command, const std::string& config_json,
                          const std::string& dataset_checksum, std::uint64_t seed);

}  // namespace radtrim

#endif
