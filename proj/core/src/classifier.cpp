#include "xcsniche/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <vector>

#include "xcsniche/error.hpp"

namespace xcsniche {

namespace {

void append_real(std::string& out, double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, end);
}

template <class T>
T parse_number(std::string_view tok, std::string_view what) {
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("bad " + std::string(what) + " field \"" + std::string(tok) + "\"");
    }
    return value;
}

}  // namespace

Classifier create_covering_classifier(const BitString& input, int action, Time t,
                                      const Parameters& params, Rng& rng) {
    Classifier cl;
    cl.condition = TernaryCondition::exact(input);
    for (std::size_t i = 0; i < input.size(); ++i) {
        if (rng.chance(params.P_hash)) cl.condition.set(i, Symbol::DontCare);
    }
    cl.action = action;
    cl.p = params.p_I;
    cl.epsilon = params.epsilon_I;
    cl.F = params.F_I;
    cl.exp = 0;
    cl.ts = t;
    cl.asSize = 1.0;
    cl.num = 1;
    cl.ats = 0;
    return cl;
}

std::string to_line(const Classifier& cl) {
    std::string out = cl.condition.str();
    out += ' ';
    out += std::to_string(cl.action);
    for (double v : {cl.p, cl.epsilon, cl.F}) {
        out += ' ';
        append_real(out, v);
    }
    out += ' ' + std::to_string(cl.exp) + ' ' + std::to_string(cl.ts) + ' ';
    append_real(out, cl.asSize);
    out += ' ' + std::to_string(cl.num) + ' ' + std::to_string(cl.ats) + " L=[";
    for (std::size_t i = 0; i < cl.history.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(cl.history[i]);
    }
    out += ']';
    return out;
}

Classifier parse_line(std::string_view line, std::size_t L_max) {
    std::istringstream in{std::string(line)};
    std::vector<std::string> tok;
    for (std::string s; in >> s;) tok.push_back(s);
    if (tok.size() != 11) {
        throw ParseError("expected 11 fields in classifier line, got " + std::to_string(tok.size()));
    }
    Classifier cl;
    cl.condition = TernaryCondition::parse(tok[0]);
    cl.action = parse_number<int>(tok[1], "action");
    cl.p = parse_number<double>(tok[2], "p");
    cl.epsilon = parse_number<double>(tok[3], "epsilon");
    cl.F = parse_number<double>(tok[4], "F");
    cl.exp = parse_number<std::int64_t>(tok[5], "exp");
    cl.ts = parse_number<Time>(tok[6], "ts");
    cl.asSize = parse_number<double>(tok[7], "asSize");
    cl.num = parse_number<int>(tok[8], "num");
    cl.ats = parse_number<Time>(tok[9], "ats");

    std::string_view list = tok[10];
    if (!list.starts_with("L=[") || !list.ends_with("]")) {
        throw ParseError("bad stamp list \"" + tok[10] + "\"");
    }
    list = list.substr(3, list.size() - 4);
    std::vector<Time> stamps;
    while (!list.empty()) {
        const auto comma = list.find(',');
        stamps.push_back(parse_number<Time>(list.substr(0, comma), "stamp"));
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
    }
    if (!stamps.empty() && stamps.front() != cl.ats) {
        throw ParseError("stamp list front " + std::to_string(stamps.front()) +
                         " differs from ats " + std::to_string(cl.ats));
    }
    if (cl.num < 1) throw ParseError("numerosity must be at least 1");
    cl.history = StampHistory::from_vector(stamps, std::max(L_max, stamps.size()));
    return cl;
}

}  // namespace xcsniche
