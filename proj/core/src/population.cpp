#include "xcsniche/population.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "xcsniche/error.hpp"

namespace xcsniche {

ClassifierId Population::assign(Classifier& cl) {
    if (cl.num < 1) throw PreconditionError("inserted classifier must have num >= 1");
    cl.id = next_id_++;
    numerosity_ += static_cast<std::size_t>(cl.num);
    return cl.id;
}

ClassifierId Population::insert(Classifier cl) {
    if (auto slot = find_rule(cl)) {
        add_numerosity(*slot, cl.num);
        return members_[*slot].id;
    }
    return insert_unique(std::move(cl));
}

ClassifierId Population::insert_unique(Classifier cl) {
    const ClassifierId id = assign(cl);
    members_.push_back(std::move(cl));
    return id;
}

std::optional<std::size_t> Population::find(ClassifierId id) const noexcept {
    auto it = std::lower_bound(members_.begin(), members_.end(), id,
                               [](const Classifier& c, ClassifierId v) { return c.id < v; });
    if (it == members_.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
}

std::optional<std::size_t> Population::find_rule(const Classifier& cl) const noexcept {
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i].same_rule(cl)) return i;
    }
    return std::nullopt;
}

void Population::add_numerosity(std::size_t slot, int delta) {
    Classifier& cl = members_[slot];
    if (cl.num + delta < 0) throw PreconditionError("numerosity would become negative");
    cl.num += delta;
    numerosity_ = numerosity_ + static_cast<std::size_t>(std::max(delta, 0)) -
                  static_cast<std::size_t>(std::max(-delta, 0));
    if (cl.num == 0) remove(slot);
}

void Population::remove(std::size_t slot) {
    numerosity_ -= static_cast<std::size_t>(members_[slot].num);
    members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(slot));
}

void Population::dump(std::ostream& out, std::size_t input_bits, int num_actions) const {
    out << "# xcs-pop v1 n=" << input_bits << " actions=" << num_actions << '\n';
    for (const auto& cl : members_) out << to_line(cl) << '\n';
}

Population::Loaded Population::load(std::istream& in, std::size_t L_max) {
    Loaded result;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty population dump");
    const std::string prefix = "# xcs-pop v1 n=";
    const auto actions_at = line.find(" actions=");
    if (!line.starts_with(prefix) || actions_at == std::string::npos) {
        throw ParseError("missing population dump header");
    }
    try {
        result.input_bits = std::stoul(line.substr(prefix.size(), actions_at - prefix.size()));
        result.num_actions = std::stoi(line.substr(actions_at + 9));
    } catch (const std::exception&) {
        throw ParseError("bad population dump header \"" + line + "\"");
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        Classifier cl;
        try {
            cl = parse_line(line, L_max);
        } catch (const Error& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (cl.condition.size() != result.input_bits) {
            throw ParseError("line " + std::to_string(line_no) + ": condition length mismatch");
        }
        if (result.population.find_rule(cl)) {
            throw ParseError("line " + std::to_string(line_no) + ": duplicate rule");
        }
        result.population.insert_unique(std::move(cl));
    }
    return result;
}

}  // namespace xcsniche
