#include "xcsn/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace xcsn {

using namespace xcsniche;

ConfigError::ConfigError(std::size_t line, const std::string& what)
    : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Entry {
    std::string value;
    std::size_t line;
};

double to_real(const std::string& key, const Entry& e) {
    double v = 0.0;
    const auto* end = e.value.data() + e.value.size();
    auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ConfigError(e.line, key + ": not a number: '" + e.value + "'");
    return v;
}

std::size_t to_count(const std::string& key, const Entry& e) {
    std::uint64_t v = 0;
    const auto* end = e.value.data() + e.value.size();
    auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(e.line, key + ": not a non-negative integer: '" + e.value + "'");
    }
    return static_cast<std::size_t>(v);
}

bool to_flag(const std::string& key, const Entry& e) {
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    throw ConfigError(e.line, key + ": expected true or false, got '" + e.value + "'");
}

using Setter = std::function<void(Config&, const std::string&, const Entry&)>;

Setter real(double Parameters::*field) {
    return [field](Config& c, const std::string& k, const Entry& e) { c.experiment.params.*field = to_real(k, e); };
}
Setter flag(bool Parameters::*field) {
    return [field](Config& c, const std::string& k, const Entry& e) { c.experiment.params.*field = to_flag(k, e); };
}
Setter count(std::size_t ExperimentConfig::*field) {
    return [field](Config& c, const std::string& k, const Entry& e) { c.experiment.*field = to_count(k, e); };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"params.N", [](Config& c, const std::string& k, const Entry& e) { c.experiment.params.N = to_count(k, e); }},
        {"params.beta", real(&Parameters::beta)},
        {"params.alpha", real(&Parameters::alpha)},
        {"params.epsilon0", real(&Parameters::epsilon0)},
        {"params.nu", real(&Parameters::nu)},
        {"params.gamma", real(&Parameters::gamma)},
        {"params.theta_ga", real(&Parameters::theta_ga)},
        {"params.chi", real(&Parameters::chi)},
        {"params.mu", real(&Parameters::mu)},
        {"params.theta_del", real(&Parameters::theta_del)},
        {"params.delta", real(&Parameters::delta)},
        {"params.theta_sub", real(&Parameters::theta_sub)},
        {"params.P_hash", real(&Parameters::P_hash)},
        {"params.p_I", real(&Parameters::p_I)},
        {"params.epsilon_I", real(&Parameters::epsilon_I)},
        {"params.F_I", real(&Parameters::F_I)},
        {"params.p_explore", real(&Parameters::p_explore)},
        {"params.doGASubsumption", flag(&Parameters::doGASubsumption)},
        {"params.doASSubsumption", flag(&Parameters::doASSubsumption)},
        {"params.useGradient", flag(&Parameters::useGradient)},
        {"params.L_max", [](Config& c, const std::string& k, const Entry& e) { c.experiment.params.L_max_override = to_count(k, e); }},
        {"params.maxStepsPerEpisode", [](Config& c, const std::string& k, const Entry& e) { c.experiment.params.maxStepsPerEpisode = to_count(k, e); }},
        {"run.learningProblems", count(&ExperimentConfig::learningProblems)},
        {"run.condensationProblems", count(&ExperimentConfig::condensationProblems)},
        {"run.runs", count(&ExperimentConfig::runs)},
        {"run.checkpointInterval", count(&ExperimentConfig::checkpointInterval)},
        {"run.performanceWindow", count(&ExperimentConfig::performanceWindow)},
        {"run.finalWindow", count(&ExperimentConfig::finalWindow)},
        {"run.threads", count(&ExperimentConfig::threads)},
        {"run.seed", [](Config& c, const std::string& k, const Entry& e) { c.experiment.seed = to_count(k, e); }},
        {"run.exploration", [](Config& c, const std::string& k, const Entry& e) {
             if (e.value == "explore") c.experiment.exploration = SelectionMode::Explore;
             else if (e.value == "biased") c.experiment.exploration = SelectionMode::Biased;
             else throw ConfigError(e.line, k + ": expected explore or biased, got '" + e.value + "'");
         }},
        {"output.dir", [](Config& c, const std::string&, const Entry& e) { c.outputDir = e.value; }},
    };
    return table;
}

}  // namespace

Config parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    std::map<std::string, Entry> entries;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError(line_no, "missing key");
        if (value.empty()) throw ConfigError(line_no, key + ": missing value");
        const bool known = setters().count(key) || key == "problem.kind" || key == "problem.size" ||
                           key == "problem.map" || key == "problem.name";
        if (!known) throw ConfigError(line_no, "unknown key '" + key + "'");
        if (auto [it, inserted] = entries.emplace(key, Entry{value, line_no}); !inserted) {
            throw ConfigError(line_no, "duplicate key '" + key + "' (first set on line " +
                                           std::to_string(it->second.line) + ")");
        }
    }

    Config config;
    config.text = std::string(text);
    for (const auto& [key, entry] : entries) {
        if (auto it = setters().find(key); it != setters().end()) it->second(config, key, entry);
    }

    const auto kind = entries.find("problem.kind");
    if (kind == entries.end()) throw ConfigError(0, "missing key 'problem.kind'");
    const std::string& k = kind->second.value;
    if (k == "multiplexer" || k == "majority") {
        const auto size = entries.find("problem.size");
        if (size == entries.end()) throw ConfigError(0, "missing key 'problem.size' for " + k);
        const std::size_t bits = to_count("problem.size", size->second);
        try {
            config.experiment.problem = BooleanProblem(
                k == "multiplexer" ? BooleanProblem::Kind::Multiplexer : BooleanProblem::Kind::Majority, bits);
        } catch (const Error& e) {
            throw ConfigError(size->second.line, std::string("problem.size: ") + e.what());
        }
        config.experiment.name = std::get<BooleanProblem>(config.experiment.problem).name();
    } else if (k == "grid") {
        const auto map = entries.find("problem.map");
        if (map == entries.end()) throw ConfigError(0, "missing key 'problem.map' for grid");
        std::filesystem::path path = map->second.value;
        if (path.is_relative()) path = base_dir / path;
        try {
            config.experiment.problem = Grid::load(path.string());
        } catch (const Error& e) {
            throw ConfigError(map->second.line, std::string("problem.map: ") + e.what());
        }
        config.experiment.name = path.stem().string();
    } else {
        throw ConfigError(kind->second.line, "problem.kind: expected multiplexer, majority or grid, got '" + k + "'");
    }
    if (config.outputDir.is_relative()) config.outputDir = base_dir / config.outputDir;
    if (auto name = entries.find("problem.name"); name != entries.end()) config.experiment.name = name->second.value;

    try {
        config.experiment.validate();
    } catch (const PreconditionError& e) {
        throw ConfigError(0, e.what());
    }
    return config;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot read config '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.parent_path());
}

}  // namespace xcsn
