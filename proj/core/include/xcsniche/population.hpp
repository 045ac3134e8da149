#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "xcsniche/classifier.hpp"

namespace xcsniche {

/// Multiset of macroclassifiers. Members are kept ordered by id, so an id
/// resolves to its current slot by binary search and iteration order is
/// deterministic. No two members share (condition, action).
class Population {
public:
    Population() = default;

    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    /// Sum of numerosities.
    std::size_t numerosity() const noexcept { return numerosity_; }

    Classifier& operator[](std::size_t slot) noexcept { return members_[slot]; }
    const Classifier& operator[](std::size_t slot) const noexcept { return members_[slot]; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }
    std::span<const Classifier> members() const noexcept { return members_; }

    /// Adds `cl`, or bumps the numerosity of the member with the same rule.
    /// Returns the id of the member that now holds it.
    ClassifierId insert(Classifier cl);
    /// Adds `cl` without looking for a duplicate. The caller guarantees none exists.
    ClassifierId insert_unique(Classifier cl);

    /// Slot currently holding `id`, if still present.
    std::optional<std::size_t> find(ClassifierId id) const noexcept;
    /// Slot of the member with the same rule as `cl`.
    std::optional<std::size_t> find_rule(const Classifier& cl) const noexcept;

    void add_numerosity(std::size_t slot, int delta);
    void remove(std::size_t slot);

    /// Number of distinct (condition, action) pairs. Same as size().
    std::size_t distinct_rules() const noexcept { return members_.size(); }

    /// Writes `# xcs-pop v1 n=<bits> actions=<k>` followed by one line per member.
    void dump(std::ostream& out, std::size_t input_bits, int num_actions) const;

    struct Loaded;
    /// Reads a dump written by dump(). Ids are reassigned in file order.
    static Loaded load(std::istream& in, std::size_t L_max);

private:
    ClassifierId assign(Classifier& cl);

    std::vector<Classifier> members_;
    std::size_t numerosity_ = 0;
    ClassifierId next_id_ = 1;
};

struct Population::Loaded {
    Population population;
    std::size_t input_bits = 0;
    int num_actions = 0;
};

}  // namespace xcsniche
