#include "xcsniche/oracles.hpp"

#include <algorithm>
#include <cstdint>

#include "xcsniche/error.hpp"

namespace xcsniche {

namespace {

// Conditions are indexed in base 3, digit i for position i: 0, 1, or 2 for '#'.
constexpr std::int8_t kMixed = -1;

TernaryCondition decode(std::size_t index, std::size_t bits) {
    TernaryCondition cond(bits);
    for (std::size_t i = 0; i < bits; ++i) {
        const std::size_t digit = index % 3;
        index /= 3;
        cond.set(i, digit == 0 ? Symbol::Zero : digit == 1 ? Symbol::One : Symbol::DontCare);
    }
    return cond;
}

}  // namespace

std::vector<TernaryCondition> maximal_accurate_conditions(const BooleanProblem& problem) {
    const std::size_t n = problem.bits();
    if (n > kOracleMaxBits) {
        throw PreconditionError("optimal-population oracle supports at most " +
                                std::to_string(kOracleMaxBits) + " bits, got " + std::to_string(n));
    }
    std::vector<std::size_t> pow3(n + 1, 1);
    for (std::size_t i = 1; i <= n; ++i) pow3[i] = pow3[i - 1] * 3;

    // value[c]: the function value shared by every input c matches, or kMixed.
    // A condition's first # splits it into two smaller indices, so one ascending
    // pass fills the table.
    std::vector<std::int8_t> value(pow3[n]);
    for (std::size_t c = 0; c < pow3[n]; ++c) {
        std::size_t rest = c;
        std::size_t first_hash = n;
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t digit = rest % 3;
            rest /= 3;
            if (digit == 2) {
                first_hash = i;
                break;
            }
            bits |= static_cast<std::uint64_t>(digit) << i;
        }
        if (first_hash == n) {
            value[c] = problem.evaluate(BitString(bits, n)) ? 1 : 0;
            continue;
        }
        const std::int8_t zero = value[c - 2 * pow3[first_hash]];
        const std::int8_t one = value[c - pow3[first_hash]];
        value[c] = (zero != kMixed && zero == one) ? zero : kMixed;
    }

    std::vector<TernaryCondition> out;
    for (std::size_t c = 0; c < pow3[n]; ++c) {
        if (value[c] == kMixed) continue;
        bool maximal = true;
        std::size_t rest = c;
        for (std::size_t i = 0; i < n && maximal; ++i) {
            const std::size_t digit = rest % 3;
            rest /= 3;
            if (digit == 2) continue;
            if (value[c + (2 - digit) * pow3[i]] != kMixed) maximal = false;
        }
        if (maximal) out.push_back(decode(c, n));
    }
    std::sort(out.begin(), out.end(),
              [](const TernaryCondition& a, const TernaryCondition& b) { return a.str() < b.str(); });
    return out;
}

std::vector<Classifier> optimal_population_oracle(const BooleanProblem& problem) {
    const std::size_t n = problem.bits();
    const auto conditions = maximal_accurate_conditions(problem);
    std::vector<BitString> inputs;
    inputs.reserve(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) inputs.emplace_back(x, n);

    std::vector<std::vector<std::size_t>> covering(inputs.size());  // input -> conditions
    for (std::size_t c = 0; c < conditions.size(); ++c) {
        for (std::size_t x = 0; x < inputs.size(); ++x) {
            if (condition_matches(conditions[c], inputs[x])) covering[x].push_back(c);
        }
    }
    std::vector<std::vector<std::size_t>> matched(conditions.size());  // condition -> inputs
    for (std::size_t x = 0; x < inputs.size(); ++x) {
        for (std::size_t c : covering[x]) matched[c].push_back(x);
    }

    // Essential conditions are the only cover of some input; the rest of the
    // space is covered by an exact branch-and-bound search.
    std::vector<int> cover_count(inputs.size(), 0);
    std::vector<std::size_t> chosen;
    auto take = [&](std::size_t c, int delta) {
        for (std::size_t x : matched[c]) cover_count[x] += delta;
    };
    for (std::size_t x = 0; x < inputs.size(); ++x) {
        if (covering[x].size() == 1 && cover_count[x] == 0) {
            chosen.push_back(covering[x][0]);
            take(covering[x][0], 1);
        }
    }

    std::vector<std::size_t> best;
    bool found = false;
    std::vector<std::size_t> partial;
    auto search = [&](auto&& self) -> void {
        std::size_t pick = inputs.size();
        for (std::size_t x = 0; x < inputs.size(); ++x) {
            if (cover_count[x] == 0 && (pick == inputs.size() || covering[x].size() < covering[pick].size())) {
                pick = x;
            }
        }
        if (pick == inputs.size()) {
            if (!found || partial.size() < best.size()) best = partial;
            found = true;
            return;
        }
        if (found && partial.size() + 1 >= best.size()) return;
        for (std::size_t c : covering[pick]) {
            partial.push_back(c);
            take(c, 1);
            self(self);
            take(c, -1);
            partial.pop_back();
        }
    };
    search(search);
    chosen.insert(chosen.end(), best.begin(), best.end());
    std::sort(chosen.begin(), chosen.end());

    std::vector<Classifier> out;
    for (std::size_t c : chosen) {
        const int constant = problem.evaluate(inputs[matched[c].front()]) ? 1 : 0;
        for (int action = 0; action < problem.num_actions(); ++action) {
            Classifier cl;
            cl.condition = conditions[c];
            cl.action = action;
            cl.p = action == constant ? kMaxReward : 0.0;
            cl.epsilon = 0.0;
            cl.F = 1.0;
            out.push_back(std::move(cl));
        }
    }
    return out;
}

Population oracle_population(const std::vector<Classifier>& classifiers) {
    Population pop;
    for (const auto& cl : classifiers) pop.insert_unique(cl);
    return pop;
}

}  // namespace xcsniche
