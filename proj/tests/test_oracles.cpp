#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <string>

#include "support.hpp"
#include "xcsniche/error.hpp"
#include "xcsniche/oracles.hpp"

using namespace xcsniche;

namespace {

struct Covering {
    std::string text;
    std::vector<bool> covers;  // indexed by input value
};

/// Independent enumeration: walks all (care, value) bit-mask pairs, keeps the
/// conditions on which the function is constant, then drops every condition whose
/// matched-input set is strictly contained in another constant condition's set.
std::vector<Covering> brute_force_maximal(const BooleanProblem& problem) {
    const std::size_t n = problem.bits();
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    struct Cond {
        std::uint64_t care, value;
        std::vector<bool> covers;
    };
    std::vector<Cond> constant;
    for (std::uint64_t care = 0; care <= full; ++care) {
        for (std::uint64_t value = 0; value <= full; ++value) {
            if (value & ~care) continue;  // value bits only where cared
            std::vector<bool> covers(std::size_t{1} << n, false);
            int seen = -1;
            bool ok = true;
            for (std::uint64_t x = 0; x <= full && ok; ++x) {
                if ((x & care) != value) continue;
                covers[x] = true;
                const int f = problem.evaluate(BitString(x, n)) ? 1 : 0;
                if (seen == -1) seen = f;
                else if (seen != f) ok = false;
            }
            if (ok) constant.push_back({care, value, covers});
        }
    }
    std::vector<Covering> out;
    for (const auto& c : constant) {
        bool dominated = false;
        for (const auto& d : constant) {
            if (&c == &d) continue;
            bool subset = true, proper = false;
            for (std::size_t x = 0; x < c.covers.size(); ++x) {
                if (c.covers[x] && !d.covers[x]) subset = false;
                if (d.covers[x] && !c.covers[x]) proper = true;
            }
            if (subset && proper) {
                dominated = true;
                break;
            }
        }
        if (dominated) continue;
        std::string text(n, '#');
        for (std::size_t i = 0; i < n; ++i) {
            if (c.care >> i & 1) text[i] = (c.value >> i & 1) ? '1' : '0';
        }
        out.push_back({text, c.covers});
    }
    return out;
}

bool is_cover(const std::vector<const Covering*>& chosen, std::size_t inputs) {
    for (std::size_t x = 0; x < inputs; ++x) {
        bool hit = false;
        for (const Covering* c : chosen) hit = hit || c->covers[x];
        if (!hit) return false;
    }
    return true;
}

/// True when some `size`-element subset of `all` covers every input.
bool some_cover_of_size(const std::vector<Covering>& all, std::size_t size, std::size_t inputs) {
    std::vector<bool> mask(all.size(), false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
        std::vector<const Covering*> chosen;
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (mask[i]) chosen.push_back(&all[i]);
        }
        if (is_cover(chosen, inputs)) return true;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return false;
}

std::set<std::string> as_strings(const std::vector<Classifier>& cls) {
    std::set<std::string> out;
    for (const auto& cl : cls) out.insert(cl.condition.str() + ":" + std::to_string(cl.action));
    return out;
}

}  // namespace

TEST(OptimalPopulation, SizesMatchTheKnownOptima) {
    EXPECT_EQ(optimal_population_oracle(BooleanProblem::parse("mp6")).size(), 16u);
    EXPECT_EQ(optimal_population_oracle(BooleanProblem::parse("mp11")).size(), 32u);
    EXPECT_EQ(optimal_population_oracle(BooleanProblem::parse("maj3")).size(), 12u);
    EXPECT_EQ(optimal_population_oracle(BooleanProblem::parse("maj4")).size(), 20u);
    EXPECT_EQ(optimal_population_oracle(BooleanProblem::parse("maj5")).size(), 40u);
    EXPECT_EQ(optimal_population_oracle(BooleanProblem::parse("maj6")).size(), 70u);
}

TEST(OptimalPopulation, Majority3ContainsTheOverlappingClassifiers) {
    const auto rules = as_strings(optimal_population_oracle(BooleanProblem::parse("maj3")));
    EXPECT_TRUE(rules.count("11#:1"));
    EXPECT_TRUE(rules.count("#11:1"));
    EXPECT_TRUE(rules.count("1#1:1"));
}

TEST(OptimalPopulation, MaximalConditionsAgreeWithBruteForce) {
    for (const char* name : {"mp6", "maj3", "maj4", "maj5", "maj6"}) {
        const auto problem = BooleanProblem::parse(name);
        std::set<std::string> expected, actual;
        for (const auto& c : brute_force_maximal(problem)) expected.insert(c.text);
        for (const auto& c : maximal_accurate_conditions(problem)) actual.insert(c.str());
        EXPECT_EQ(actual, expected) << name;
    }
    // Overlapping maximal rules such as #01#1# make the multiplexer's set larger than [O].
    EXPECT_EQ(maximal_accurate_conditions(BooleanProblem::parse("mp6")).size(), 18u);
}

TEST(OptimalPopulation, IsASmallestCover) {
    for (const char* name : {"mp6", "maj3", "maj4", "maj5", "maj6"}) {
        const auto problem = BooleanProblem::parse(name);
        const std::size_t inputs = std::size_t{1} << problem.bits();
        const auto all = brute_force_maximal(problem);
        std::set<std::string> oracle_conditions;
        for (const auto& cl : optimal_population_oracle(problem)) oracle_conditions.insert(cl.condition.str());
        std::vector<const Covering*> chosen;
        for (const auto& c : all) {
            if (oracle_conditions.count(c.text)) chosen.push_back(&c);
        }
        ASSERT_EQ(chosen.size(), oracle_conditions.size()) << name;
        EXPECT_TRUE(is_cover(chosen, inputs)) << name;
        // Supersets of covers are covers, so ruling out one size smaller suffices.
        EXPECT_FALSE(some_cover_of_size(all, chosen.size() - 1, inputs)) << name;
    }
}

TEST(OptimalPopulation, PairsEveryConditionWithEveryAction) {
    const auto cls = optimal_population_oracle(BooleanProblem::parse("mp6"));
    ASSERT_EQ(cls.size() % 2, 0u);
    for (std::size_t i = 0; i < cls.size(); i += 2) {
        EXPECT_EQ(cls[i].condition, cls[i + 1].condition);
        EXPECT_EQ(cls[i].action, 0);
        EXPECT_EQ(cls[i + 1].action, 1);
        EXPECT_EQ(cls[i].p + cls[i + 1].p, kMaxReward);
    }
}

TEST(OptimalPopulation, AccurateAndAntichain) {
    for (const char* name : {"mp6", "maj5"}) {
        const auto problem = BooleanProblem::parse(name);
        const auto cls = optimal_population_oracle(problem);
        for (const auto& cl : cls) {
            for (const auto& x : test_support::all_inputs(problem.bits())) {
                if (condition_matches(cl.condition, x)) EXPECT_EQ(problem.reward(x, cl.action), cl.p);
            }
            for (const auto& other : cls) {
                if (other.action == cl.action) EXPECT_FALSE(is_more_general(other.condition, cl.condition));
            }
        }
    }
}

TEST(OptimalPopulation, RejectsOversizedProblems) {
    EXPECT_THROW(optimal_population_oracle(BooleanProblem::parse("mp20")), PreconditionError);
}
