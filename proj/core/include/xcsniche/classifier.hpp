#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "xcsniche/parameters.hpp"
#include "xcsniche/random.hpp"
#include "xcsniche/stamp_history.hpp"
#include "xcsniche/ternary.hpp"

namespace xcsniche {

/// Identity of a macroclassifier inside one population. Assigned on insertion,
/// strictly increasing, never reused.
using ClassifierId = std::uint64_t;

/// Macroclassifier. `F` is the macro fitness (it already reflects numerosity);
/// `ats` and `history` carry the niche-tracking state.
struct Classifier {
    TernaryCondition condition;
    int action = 0;
    double p = 0.0;
    double epsilon = 0.0;
    double F = 0.0;
    std::int64_t exp = 0;
    Time ts = 0;
    double asSize = 1.0;
    int num = 1;
    Time ats = 0;
    StampHistory history;
    ClassifierId id = 0;

    bool experienced() const noexcept { return exp > 0; }
    bool same_rule(const Classifier& other) const noexcept {
        return action == other.action && condition == other.condition;
    }
};

/// New classifier matching `input`: each position becomes # with probability
/// P_hash, otherwise copies the input bit.
Classifier create_covering_classifier(const BitString& input, int action, Time t,
                                      const Parameters& params, Rng& rng);

/// One dump line: `condition action p epsilon F exp ts asSize num ats L=[v0,...]`.
/// Reals use the shortest text that round-trips exactly.
std::string to_line(const Classifier& cl);

/// Inverse of to_line. The history capacity becomes max(L_max, list length).
Classifier parse_line(std::string_view line, std::size_t L_max);

}  // namespace xcsniche
