#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace xcsniche {

/// Problem/step counter. Advances by one per action-set formation.
using Time = std::int64_t;

/// Bounded LIFO of action-set stamps, most recent first.
///
/// Stored as a ring buffer that is allocated on the first push, so classifiers
/// that never enter an action set carry no storage. Pushed stamps must be
/// strictly increasing; once `capacity` entries are held the oldest is evicted.
class StampHistory {
public:
    StampHistory() = default;

    /// Pushes `t` to the front. Throws ClockError unless `t` exceeds front().
    void push(Time t, std::size_t capacity);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    std::size_t capacity() const noexcept { return slots_.size(); }

    /// i-th most recent stamp; 0 is the newest.
    Time operator[](std::size_t i) const noexcept {
        return slots_[(head_ + i) % slots_.size()];
    }
    Time front() const noexcept { return (*this)[0]; }

    bool contains(Time t) const noexcept;
    std::vector<Time> to_vector() const;

    /// Rebuilds a history from stamps listed most-recent-first.
    static StampHistory from_vector(const std::vector<Time>& newest_first, std::size_t capacity);

    friend bool operator==(const StampHistory& a, const StampHistory& b) {
        return a.to_vector() == b.to_vector();
    }

private:
    void resize(std::size_t capacity);

    std::vector<Time> slots_;
    std::size_t head_ = 0;
    std::size_t size_ = 0;
};

}  // namespace xcsniche
