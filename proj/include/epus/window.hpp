#ifndef EPUS_WINDOW_HPP
#define EPUS_WINDOW_HPP

#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "epus/uncertain.hpp"

namespace epus {

/**
 * Count-based FIFO sliding window. Holds at most `capacity` objects keyed by
 * arrival sequence; the oldest entries become obsolete as new ones arrive.
 * Also used server-side, where eviction is message-driven and insertions may
 * carry older sequence numbers than already-present objects.
 */
class SlidingWindow {
  public:
    explicit SlidingWindow(std::size_t capacity);

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return by_seq_.size(); }
    bool empty() const { return by_seq_.empty(); }
    bool contains(ObjectId id) const { return by_id_.count(id) != 0; }

    // Null when absent.
    ObjectPtr get(ObjectId id) const;

    // The size()+incoming-capacity() oldest entries (empty list if the batch
    // fits). Does not modify the window.
    std::vector<ObjectPtr> collect_obsolete(std::size_t incoming) const;

    // True iff the id was present and got removed.
    bool remove(ObjectId id);

    void add(const ObjectPtr& obj);
    void add(std::span<const ObjectPtr> objs);

    // Ascending id, for deterministic scans.
    const std::map<ObjectId, ObjectPtr>& by_id() const { return by_id_; }
    // Ascending seq (arrival order).
    const std::map<SeqNo, ObjectPtr>& by_seq() const { return by_seq_; }

    std::vector<ObjectPtr> objects_by_id() const;

  private:
    std::size_t capacity_;
    std::map<SeqNo, ObjectPtr> by_seq_;
    std::map<ObjectId, ObjectPtr> by_id_;
    std::unordered_map<ObjectId, SeqNo> seq_of_;
};

}  // namespace epus

#endif  // EPUS_WINDOW_HPP
