#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "xcsniche/error.hpp"
#include "xcsniche/harness.hpp"

namespace xcsn {

/// Bad config text. `line` is 1-based, 0 when the problem is not tied to a line.
class ConfigError : public xcsniche::Error {
public:
    ConfigError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct Config {
    xcsniche::ExperimentConfig experiment;
    std::filesystem::path outputDir = "out";
    std::string text;  // verbatim source, copied into output manifests
};

/// Flat `key = value` text, `#` starts a comment. Relative map and output paths
/// resolve against `base_dir`. Unknown keys, bad values and missing problem keys are
/// ConfigErrors; everything else falls back to its default.
///
/// Keys: problem.kind (multiplexer | majority | grid), problem.size, problem.map,
/// problem.name, params.<Parameters field>, run.learningProblems,
/// run.condensationProblems, run.runs, run.seed, run.checkpointInterval,
/// run.exploration (explore | biased), run.performanceWindow, run.finalWindow,
/// run.threads, output.dir.
Config parse_config(std::string_view text, const std::filesystem::path& base_dir = ".");
Config load_config(const std::filesystem::path& path);

}  // namespace xcsn
