#include "xcsniche/niche.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "xcsniche/error.hpp"

namespace xcsniche {

void stamp_action_set(Population& pop, std::span<const ClassifierId> members, Time t,
                      std::size_t L_max) {
    std::vector<std::size_t> slots;
    slots.reserve(members.size());
    for (ClassifierId id : members) {
        auto slot = pop.find(id);
        if (!slot) throw PreconditionError("action set member " + std::to_string(id) + " not in population");
        if (t <= pop[*slot].ats) {
            throw ClockError("stamp " + std::to_string(t) + " is not newer than ats " +
                             std::to_string(pop[*slot].ats));
        }
        slots.push_back(*slot);
    }
    for (std::size_t slot : slots) {
        Classifier& cl = pop[slot];
        cl.ats = t;
        cl.history.push(t, L_max);
    }
}

std::set<Time> active_niches(const Population& pop) {
    std::set<Time> out;
    for (const auto& cl : pop) {
        if (cl.experienced()) out.insert(cl.ats);
    }
    return out;
}

std::set<Time> active_niches_at(const Population& pop, std::size_t depth) {
    std::set<Time> out;
    for (const auto& cl : pop) {
        if (cl.experienced() && cl.history.size() > depth) out.insert(cl.history[depth]);
    }
    return out;
}

NicheMean mean_active_niches(const Population& pop) {
    std::vector<const Classifier*> active;
    std::size_t depth = 0;
    for (const auto& cl : pop) {
        if (cl.experienced() && !cl.history.empty()) {
            active.push_back(&cl);
            depth = std::max(depth, cl.history.size());
        }
    }
    if (active.empty()) throw NoActiveNichesError();

    std::vector<double> counts;
    counts.reserve(depth);
    std::vector<Time> values;
    values.reserve(active.size());
    for (std::size_t d = 0; d < depth; ++d) {
        values.clear();
        for (const Classifier* cl : active) {
            if (cl->history.size() > d) values.push_back(cl->history[d]);
        }
        std::sort(values.begin(), values.end());
        const auto distinct = std::unique(values.begin(), values.end()) - values.begin();
        counts.push_back(static_cast<double>(distinct));
    }

    NicheMean out;
    out.depth = depth;
    double sum = 0.0;
    for (double c : counts) sum += c;
    out.mean = sum / static_cast<double>(depth);
    double sq = 0.0;
    for (double c : counts) sq += (c - out.mean) * (c - out.mean);
    out.stddev = std::sqrt(sq / static_cast<double>(depth));
    return out;
}

NicheSnapshot niche_members(const Population& pop, Time ats) {
    NicheSnapshot snap;
    snap.ats = ats;
    for (const auto& cl : pop) {
        if (!cl.experienced() || !cl.history.contains(ats)) continue;
        snap.members.push_back({cl.condition, cl.action, cl.p, cl.F, cl.num});
        snap.totalNumerosity += cl.num;
    }
    return snap;
}

NicheTimelineEntry timeline_checkpoint(const Population& pop, Time t, bool composition) {
    NicheTimelineEntry entry;
    entry.checkpointTime = t;
    const auto can = active_niches(pop);
    entry.canSize = can.size();
    if (!can.empty()) {
        const auto man = mean_active_niches(pop);
        entry.manMean = man.mean;
        entry.manStd = man.stddev;
    }
    if (composition) {
        for (Time ats : can) entry.niches.push_back(niche_members(pop, ats));
    }
    return entry;
}

bool operator==(const NicheTimelineEntry& a, const NicheTimelineEntry& b) {
    return to_json_line(a) == to_json_line(b);
}

std::string to_json_line(const NicheTimelineEntry& entry) {
    nlohmann::ordered_json j;
    j["checkpointTime"] = entry.checkpointTime;
    j["canSize"] = entry.canSize;
    j["manMean"] = entry.manMean;
    j["manStd"] = entry.manStd;
    auto niches = nlohmann::ordered_json::array();
    for (const auto& n : entry.niches) {
        nlohmann::ordered_json jn;
        jn["atsValue"] = n.ats;
        jn["memberCount"] = n.members.size();
        jn["totalNumerosity"] = n.totalNumerosity;
        auto members = nlohmann::ordered_json::array();
        for (const auto& m : n.members) {
            nlohmann::ordered_json jm;
            jm["condition"] = m.condition.str();
            jm["action"] = m.action;
            jm["p"] = m.p;
            jm["F"] = m.F;
            jm["num"] = m.num;
            members.push_back(std::move(jm));
        }
        jn["members"] = std::move(members);
        niches.push_back(std::move(jn));
    }
    j["niches"] = std::move(niches);
    return j.dump();
}

NicheTimelineEntry timeline_entry_from_json(const std::string& line) {
    NicheTimelineEntry entry;
    try {
        const auto j = nlohmann::json::parse(line);
        entry.checkpointTime = j.at("checkpointTime").get<Time>();
        entry.canSize = j.at("canSize").get<std::size_t>();
        entry.manMean = j.at("manMean").get<double>();
        entry.manStd = j.at("manStd").get<double>();
        for (const auto& jn : j.at("niches")) {
            NicheSnapshot snap;
            snap.ats = jn.at("atsValue").get<Time>();
            snap.totalNumerosity = jn.at("totalNumerosity").get<int>();
            for (const auto& jm : jn.at("members")) {
                snap.members.push_back({TernaryCondition::parse(jm.at("condition").get<std::string>()),
                                        jm.at("action").get<int>(), jm.at("p").get<double>(),
                                        jm.at("F").get<double>(), jm.at("num").get<int>()});
            }
            if (snap.members.size() != jn.at("memberCount").get<std::size_t>()) {
                throw ParseError("memberCount disagrees with member list");
            }
            entry.niches.push_back(std::move(snap));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad timeline record: ") + e.what());
    }
    return entry;
}

}  // namespace xcsniche
