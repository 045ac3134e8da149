#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "xcsniche/classifier.hpp"
#include "xcsniche/population.hpp"

namespace xcsniche {

// Niche tracking. A niche is identified by the time stamp given to every member
// of one action set. Classifiers with exp == 0 have never been reinforced and are
// left out of every statistic below. Statistics count macroclassifiers once,
// whatever their numerosity.

/// Sets ats = t on every listed member and pushes t to the front of its history
/// (bounded by L_max). Throws ClockError if t is not newer than a member's ats,
/// PreconditionError if an id is not in the population.
void stamp_action_set(Population& pop, std::span<const ClassifierId> members, Time t,
                      std::size_t L_max);

/// Currently active niches: the distinct ats values of experienced classifiers.
std::set<Time> active_niches(const Population& pop);

/// Niches active `depth` stamps ago: the distinct history[depth] values.
std::set<Time> active_niches_at(const Population& pop, std::size_t depth);

struct NicheMean {
    double mean = 0.0;
    double stddev = 0.0;     // population standard deviation of the per-depth counts
    std::size_t depth = 0;   // longest history among experienced classifiers
};

/// Mean number of active niches over all recorded depths. Shorter histories simply
/// stop contributing past their end. Throws NoActiveNichesError when no experienced
/// classifier exists.
NicheMean mean_active_niches(const Population& pop);

struct NicheMember {
    TernaryCondition condition;
    int action = 0;
    double p = 0.0;
    double F = 0.0;
    int num = 1;
};

struct NicheSnapshot {
    Time ats = 0;
    std::vector<NicheMember> members;
    int totalNumerosity = 0;
};

/// Experienced classifiers whose history contains `ats`.
NicheSnapshot niche_members(const Population& pop, Time ats);

struct NicheTimelineEntry {
    Time checkpointTime = 0;
    std::size_t canSize = 0;
    double manMean = 0.0;
    double manStd = 0.0;
    std::vector<NicheSnapshot> niches;  // one per active niche, ascending ats; empty unless requested

    friend bool operator==(const NicheTimelineEntry& a, const NicheTimelineEntry& b);
};

/// Records |CAN| and MAN (zero when nothing is active) and, if `composition` is set,
/// the members of every active niche.
NicheTimelineEntry timeline_checkpoint(const Population& pop, Time t, bool composition);

/// One JSON object per line:
/// {"checkpointTime":..,"canSize":..,"manMean":..,"manStd":..,
///  "niches":[{"atsValue":..,"memberCount":..,"totalNumerosity":..,
///             "members":[{"condition":"..","action":..,"p":..,"F":..,"num":..}]}]}
std::string to_json_line(const NicheTimelineEntry& entry);
NicheTimelineEntry timeline_entry_from_json(const std::string& line);

}  // namespace xcsniche
