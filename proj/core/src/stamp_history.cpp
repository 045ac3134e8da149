#include "xcsniche/stamp_history.hpp"

#include <algorithm>
#include <string>

#include "xcsniche/error.hpp"

namespace xcsniche {

void StampHistory::push(Time t, std::size_t capacity) {
    if (capacity == 0) throw PreconditionError("stamp history capacity must be at least 1");
    if (size_ > 0 && t <= front()) {
        throw ClockError("stamp " + std::to_string(t) + " is not newer than " +
                         std::to_string(front()));
    }
    if (capacity != slots_.size()) resize(capacity);
    head_ = (head_ + slots_.size() - 1) % slots_.size();
    slots_[head_] = t;
    size_ = std::min(size_ + 1, slots_.size());
}

bool StampHistory::contains(Time t) const noexcept {
    // strictly decreasing, so stop as soon as we pass t
    for (std::size_t i = 0; i < size_; ++i) {
        const Time v = (*this)[i];
        if (v == t) return true;
        if (v < t) return false;
    }
    return false;
}

std::vector<Time> StampHistory::to_vector() const {
    std::vector<Time> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) out.push_back((*this)[i]);
    return out;
}

StampHistory StampHistory::from_vector(const std::vector<Time>& newest_first,
                                       std::size_t capacity) {
    if (newest_first.size() > capacity) {
        throw PreconditionError("stamp list longer than its capacity");
    }
    StampHistory h;
    for (auto it = newest_first.rbegin(); it != newest_first.rend(); ++it) h.push(*it, capacity);
    return h;
}

void StampHistory::resize(std::size_t capacity) {
    std::vector<Time> kept = to_vector();
    if (kept.size() > capacity) kept.resize(capacity);
    slots_.assign(capacity, 0);
    // newest at head_ = 0, older entries follow
    std::copy(kept.begin(), kept.end(), slots_.begin());
    head_ = 0;
    size_ = kept.size();
}

}  // namespace xcsniche
