#pragma once

#include <string>
#include <vector>

#include "xcsniche/classifier.hpp"
#include "xcsniche/population.hpp"

namespace test_support {

inline xcsniche::Classifier make_classifier(const std::string& condition, int action, double p = 0.0,
                                            double F = 1.0, int num = 1, std::int64_t exp = 1) {
    xcsniche::Classifier cl;
    cl.condition = xcsniche::TernaryCondition::parse(condition);
    cl.action = action;
    cl.p = p;
    cl.F = F;
    cl.num = num;
    cl.exp = exp;
    return cl;
}

/// Classifier with a prescribed stamp history (most recent first).
inline xcsniche::Classifier with_history(xcsniche::Classifier cl, const std::vector<xcsniche::Time>& stamps,
                                         std::size_t capacity = 10) {
    cl.history = xcsniche::StampHistory::from_vector(stamps, capacity);
    cl.ats = stamps.empty() ? 0 : stamps.front();
    return cl;
}

/// All 2^n inputs of length n.
inline std::vector<xcsniche::BitString> all_inputs(std::size_t n) {
    std::vector<xcsniche::BitString> out;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) out.emplace_back(v, n);
    return out;
}

/// All 3^n ternary conditions of length n.
inline std::vector<xcsniche::TernaryCondition> all_conditions(std::size_t n) {
    std::vector<xcsniche::TernaryCondition> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t c = 0; c < total; ++c) {
        xcsniche::TernaryCondition cond(n);
        std::size_t rest = c;
        for (std::size_t i = 0; i < n; ++i, rest /= 3) {
            const auto digit = rest % 3;
            cond.set(i, digit == 0 ? xcsniche::Symbol::Zero
                        : digit == 1 ? xcsniche::Symbol::One : xcsniche::Symbol::DontCare);
        }
        out.push_back(cond);
    }
    return out;
}

}  // namespace test_support
