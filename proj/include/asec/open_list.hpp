#ifndef ASEC_OPEN_LIST_HPP
#define ASEC_OPEN_LIST_HPP

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

namespace asec {

/// Best-first open list ordered by f, then larger g (deeper first), then
/// insertion order. Decrease-key is done by pushing a new entry; entries whose
/// version no longer matches the node are stale and skipped on access.
template <typename Id>
class OpenList {
public:
    struct Entry {
        double f;
        double g;
        std::uint64_t sequence;
        Id id;
        std::uint32_t version;
    };

    void push(Id id, double f, double g, std::uint32_t version) {
        heap.push(Entry{f, g, next_sequence++, id, version});
    }

    /// Removes and returns the best entry for which `is_current(entry)` holds.
    template <typename IsCurrent>
    std::optional<Entry> pop(IsCurrent &&is_current) {
        drop_stale(is_current);
        if (heap.empty())
            return std::nullopt;
        Entry top = heap.top();
        heap.pop();
        return top;
    }

    /// Best current entry without removing it. Stale entries on top are discarded.
    template <typename IsCurrent>
    std::optional<Entry> peek(IsCurrent &&is_current) {
        drop_stale(is_current);
        if (heap.empty())
            return std::nullopt;
        return heap.top();
    }

    template <typename IsCurrent>
    bool empty(IsCurrent &&is_current) {
        drop_stale(is_current);
        return heap.empty();
    }

    /// Number of stored entries, stale ones included.
    std::size_t raw_size() const { return heap.size(); }

    void clear() {
        heap = {};
        next_sequence = 0;
    }

private:
    struct Worse {
        bool operator()(const Entry &a, const Entry &b) const {
            if (a.f != b.f)
                return a.f > b.f;
            if (a.g != b.g)
                return a.g < b.g;
            return a.sequence > b.sequence;
        }
    };

    template <typename IsCurrent>
    void drop_stale(IsCurrent &&is_current) {
        while (!heap.empty() && !is_current(heap.top()))
            heap.pop();
    }

    std::priority_queue<Entry, std::vector<Entry>, Worse> heap;
    std::uint64_t next_sequence = 0;
};

} // namespace asec

#endif
