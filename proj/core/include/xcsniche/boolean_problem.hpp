#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "xcsniche/ternary.hpp"

namespace xcsniche {

inline constexpr double kMaxReward = 1000.0;

/// Value of the data bit addressed by the first k bits; |input| must be k + 2^k.
/// Address bits are read most significant first.
bool multiplexer_eval(const BitString& input);

/// 1 iff more than half the bits are set (an exact half gives 0).
bool majority_eval(const BitString& input);

/// Single-step Boolean benchmark: reward 1000 for the function value, 0 otherwise.
class BooleanProblem {
public:
    enum class Kind { Multiplexer, Majority };

    BooleanProblem(Kind kind, std::size_t bits);

    /// "mp6", "MP11", "maj3", ...
    static BooleanProblem parse(std::string_view name);

    Kind kind() const noexcept { return kind_; }
    std::size_t bits() const noexcept { return bits_; }
    int num_actions() const noexcept { return 2; }
    std::string name() const;

    bool evaluate(const BitString& input) const;
    double reward(const BitString& input, int action) const;

private:
    Kind kind_;
    std::size_t bits_;
};

/// Address width k with k + 2^k = bits, or 0 when no such k exists.
std::size_t multiplexer_address_bits(std::size_t bits) noexcept;

}  // namespace xcsniche
