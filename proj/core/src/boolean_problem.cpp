#include "xcsniche/boolean_problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "xcsniche/error.hpp"

namespace xcsniche {

std::size_t multiplexer_address_bits(std::size_t bits) noexcept {
    for (std::size_t k = 1; k < 7; ++k) {
        if (k + (std::size_t{1} << k) == bits) return k;
    }
    return 0;
}

bool multiplexer_eval(const BitString& input) {
    const std::size_t k = multiplexer_address_bits(input.size());
    if (k == 0) {
        throw PreconditionError("multiplexer input length " + std::to_string(input.size()) +
                                " is not k + 2^k");
    }
    std::size_t address = 0;
    for (std::size_t i = 0; i < k; ++i) address = (address << 1) | (input[i] ? 1u : 0u);
    return input[k + address];
}

bool majority_eval(const BitString& input) {
    if (input.size() == 0) throw PreconditionError("majority of an empty input");
    return 2 * input.count_ones() > input.size();
}

BooleanProblem::BooleanProblem(Kind kind, std::size_t bits) : kind_(kind), bits_(bits) {
    if (bits == 0 || bits > kMaxInputBits) {
        throw PreconditionError("unsupported Boolean problem size " + std::to_string(bits));
    }
    if (kind == Kind::Multiplexer && multiplexer_address_bits(bits) == 0) {
        throw PreconditionError("multiplexer size must be k + 2^k, got " + std::to_string(bits));
    }
}

BooleanProblem BooleanProblem::parse(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    Kind kind;
    std::string_view digits;
    if (lower.starts_with("mp")) {
        kind = Kind::Multiplexer;
        digits = std::string_view(lower).substr(2);
    } else if (lower.starts_with("maj")) {
        kind = Kind::Majority;
        digits = std::string_view(lower).substr(3);
    } else {
        throw ParseError("unknown Boolean problem \"" + std::string(name) + "\"");
    }
    std::size_t bits = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bits);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw ParseError("bad problem size in \"" + std::string(name) + "\"");
    }
    return BooleanProblem(kind, bits);
}

std::string BooleanProblem::name() const {
    return (kind_ == Kind::Multiplexer ? "MP" : "MAJ") + std::to_string(bits_);
}

bool BooleanProblem::evaluate(const BitString& input) const {
    if (input.size() != bits_) throw PreconditionError("input length mismatch");
    return kind_ == Kind::Multiplexer ? multiplexer_eval(input) : majority_eval(input);
}

double BooleanProblem::reward(const BitString& input, int action) const {
    return action == static_cast<int>(evaluate(input)) ? kMaxReward : 0.0;
}

}  // namespace xcsniche
