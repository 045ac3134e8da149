#include "xcsniche/ternary.hpp"

#include <bit>

#include "xcsniche/error.hpp"

namespace xcsniche {

namespace {

std::uint64_t low_mask(std::size_t length) {
    return length >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << length) - 1;
}

void check_length(std::size_t length) {
    if (length > kMaxInputBits) {
        throw PreconditionError("input length " + std::to_string(length) + " exceeds " +
                                std::to_string(kMaxInputBits) + " bits");
    }
}

void require_same_length(std::size_t a, std::size_t b) {
    if (a != b) {
        throw PreconditionError("length mismatch: " + std::to_string(a) + " vs " +
                                std::to_string(b));
    }
}

}  // namespace

BitString::BitString(std::uint64_t bits, std::size_t length) : bits_(bits), length_(length) {
    check_length(length);
    bits_ &= low_mask(length);
}

BitString BitString::parse(std::string_view text) {
    check_length(text.size());
    BitString out(0, text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            out.set(i, true);
        } else if (text[i] != '0') {
            throw ParseError("invalid bit '" + std::string(1, text[i]) + "' in \"" +
                             std::string(text) + "\"");
        }
    }
    return out;
}

void BitString::set(std::size_t i, bool value) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << i;
    bits_ = value ? (bits_ | bit) : (bits_ & ~bit);
}

std::size_t BitString::count_ones() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
}

std::string BitString::str() const {
    std::string out(length_, '0');
    for (std::size_t i = 0; i < length_; ++i) {
        if ((*this)[i]) out[i] = '1';
    }
    return out;
}

TernaryCondition::TernaryCondition(std::size_t length) : length_(length) {
    check_length(length);
}

TernaryCondition TernaryCondition::parse(std::string_view text) {
    TernaryCondition out(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        switch (text[i]) {
            case '0': out.set(i, Symbol::Zero); break;
            case '1': out.set(i, Symbol::One); break;
            case '#': break;
            default:
                throw ParseError("invalid ternary symbol '" + std::string(1, text[i]) +
                                 "' in \"" + std::string(text) + "\"");
        }
    }
    return out;
}

TernaryCondition TernaryCondition::exact(const BitString& input) {
    TernaryCondition out(input.size());
    out.care_ = low_mask(input.size());
    out.values_ = input.bits();
    return out;
}

Symbol TernaryCondition::at(std::size_t i) const noexcept {
    if (((care_ >> i) & 1u) == 0) return Symbol::DontCare;
    return ((values_ >> i) & 1u) ? Symbol::One : Symbol::Zero;
}

void TernaryCondition::set(std::size_t i, Symbol s) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << i;
    switch (s) {
        case Symbol::DontCare:
            care_ &= ~bit;
            values_ &= ~bit;
            break;
        case Symbol::Zero:
            care_ |= bit;
            values_ &= ~bit;
            break;
        case Symbol::One:
            care_ |= bit;
            values_ |= bit;
            break;
    }
}

std::size_t TernaryCondition::dont_care_count() const noexcept {
    return length_ - static_cast<std::size_t>(std::popcount(care_));
}

std::string TernaryCondition::str() const {
    std::string out(length_, '#');
    for (std::size_t i = 0; i < length_; ++i) out[i] = static_cast<char>(at(i));
    return out;
}

bool condition_matches(const TernaryCondition& cond, const BitString& input) {
    require_same_length(cond.size(), input.size());
    return ((input.bits() ^ cond.values()) & cond.care_mask()) == 0;
}

bool is_more_general(const TernaryCondition& general, const TernaryCondition& specific) {
    require_same_length(general.size(), specific.size());
    if (general.dont_care_count() <= specific.dont_care_count()) return false;
    // every cared-for position of `general` must be cared for, with the same value, in `specific`
    const std::uint64_t g = general.care_mask();
    if ((specific.care_mask() & g) != g) return false;
    return ((specific.values() ^ general.values()) & g) == 0;
}

}  // namespace xcsniche
