#pragma once

#include <cstddef>
#include <vector>

#include "xcsniche/boolean_problem.hpp"
#include "xcsniche/classifier.hpp"
#include "xcsniche/population.hpp"

namespace xcsniche {

/// Largest input accepted by the oracles below (3^n conditions).
inline constexpr std::size_t kOracleMaxBits = 13;

/// Every accurate, maximally general condition of `problem`, sorted by text.
std::vector<TernaryCondition> maximal_accurate_conditions(const BooleanProblem& problem);

/// Optimal population [O] of `problem`: a smallest set of accurate, maximally
/// general conditions whose matched inputs cover the whole input space, each
/// paired with every action.
///
/// A condition is accurate when the function is constant over the inputs it
/// matches, and maximally general when no accurate condition is strictly more
/// general. Each returned classifier carries its constant reward as p, zero error,
/// unit fitness and no experience. Sorted by condition text, then action.
std::vector<Classifier> optimal_population_oracle(const BooleanProblem& problem);

/// Same classifiers packed into a population (for dumping and diffing).
Population oracle_population(const std::vector<Classifier>& classifiers);

}  // namespace xcsniche
