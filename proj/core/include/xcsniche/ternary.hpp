#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace xcsniche {

/// Longest input supported by the packed representation.
inline constexpr std::size_t kMaxInputBits = 64;

/// Binary sensory input. Character i of the text form is bit i of `bits`.
class BitString {
public:
    BitString() = default;
    BitString(std::uint64_t bits, std::size_t length);

    /// Parses a string over {0,1}.
    static BitString parse(std::string_view text);

    std::size_t size() const noexcept { return length_; }
    std::uint64_t bits() const noexcept { return bits_; }
    bool operator[](std::size_t i) const noexcept { return (bits_ >> i) & 1u; }
    void set(std::size_t i, bool value) noexcept;
    std::size_t count_ones() const noexcept;

    std::string str() const;

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::uint64_t bits_ = 0;
    std::size_t length_ = 0;
};

enum class Symbol : char { Zero = '0', One = '1', DontCare = '#' };

/// Fixed-length condition over {0, 1, #}, packed as a care mask plus the
/// required values at cared-for positions.
class TernaryCondition {
public:
    TernaryCondition() = default;
    explicit TernaryCondition(std::size_t length);  // all don't-care

    static TernaryCondition parse(std::string_view text);
    /// Condition that matches exactly `input`.
    static TernaryCondition exact(const BitString& input);

    std::size_t size() const noexcept { return length_; }
    Symbol at(std::size_t i) const noexcept;
    void set(std::size_t i, Symbol s) noexcept;
    std::size_t dont_care_count() const noexcept;

    std::uint64_t care_mask() const noexcept { return care_; }
    std::uint64_t values() const noexcept { return values_; }

    std::string str() const;

    friend bool operator==(const TernaryCondition&, const TernaryCondition&) = default;

private:
    std::uint64_t care_ = 0;
    std::uint64_t values_ = 0;  // zero wherever care_ is zero
    std::size_t length_ = 0;
};

/// True iff every position is # or equals the input bit.
bool condition_matches(const TernaryCondition& cond, const BitString& input);

/// Strict generality: `general` has more # symbols than `specific` and agrees
/// with it wherever `general` is not #.
bool is_more_general(const TernaryCondition& general, const TernaryCondition& specific);

}  // namespace xcsniche
