#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "xcsn/config.hpp"

namespace xcsn {

inline constexpr const char* kToolVersion = "xcsn 1.0.0";

/// Runs every configured run and writes into config.outputDir:
/// aggregate.csv, run_<i>.csv per run, run0_before.pop / run0_after.pop,
/// config.conf and manifest.txt. Prints the summary row to `log`.
void cmd_run(const Config& config, std::ostream& log);

/// Runs run 0 and writes niches.jsonl (one timeline entry per checkpoint, with
/// niche composition when `composition`) plus run_0.csv and the manifest.
void cmd_niches(const Config& config, bool composition, std::ostream& log);

/// Writes the optimal population of `problem` ("mp6", "maj4", ...) as a dump to
/// `out_path` (skipped when empty) and prints its size.
void cmd_oracle_optimal_pop(const std::string& problem, const std::filesystem::path& out_path,
                            std::ostream& log);

/// Prints the mean optimal steps to a goal over the empty cells of a map file.
void cmd_oracle_grid_steps(const std::filesystem::path& map_path, std::ostream& log);

/// Reads every run_<i>.csv in `dir` and writes plot_<metric>.csv files holding
/// checkpoint, <metric>_mean, <metric>_std. Throws when the runs disagree on
/// their checkpoints.
void cmd_plotdata(const std::filesystem::path& dir, std::ostream& log);

}  // namespace xcsn
