#pragma once

#include <cstddef>
#include <optional>

namespace xcsniche {

/// XCS learning parameters. Defaults follow the usual Boolean-benchmark settings;
/// every field can be overridden from a config file.
struct Parameters {
    std::size_t N = 400;          // max total numerosity
    double beta = 0.2;            // learning rate
    double alpha = 0.1;           // accuracy fall-off
    double epsilon0 = 10.0;       // error threshold (reward units)
    double nu = 5.0;              // accuracy exponent
    double gamma = 0.71;          // discount (multi-step)
    double theta_ga = 25.0;       // GA activation threshold
    double chi = 0.8;             // crossover probability
    double mu = 0.04;             // per-allele mutation probability
    double theta_del = 20.0;      // experience needed before the fitness penalty in deletion
    double delta = 0.1;           // fitness fraction triggering the deletion penalty
    double theta_sub = 20.0;      // experience needed to subsume
    double P_hash = 0.33;         // don't-care probability in covering
    double p_I = 10.0;
    double epsilon_I = 0.0;
    double F_I = 0.01;
    double p_explore = 0.5;       // random-action probability in biased exploration
    bool doGASubsumption = true;
    bool doASSubsumption = false;
    bool useGradient = false;
    std::optional<std::size_t> L_max_override;
    std::size_t maxStepsPerEpisode = 100;

    /// Stamp-history bound: ceil(0.10 * N) unless overridden.
    std::size_t L_max() const noexcept {
        if (L_max_override) return *L_max_override;
        return (N + 9) / 10;
    }

    /// Throws PreconditionError if any field is out of range.
    void validate() const;
};

}  // namespace xcsniche
