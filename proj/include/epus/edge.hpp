#ifndef EPUS_EDGE_HPP
#define EPUS_EDGE_HPP

#include "epus/rtree.hpp"
#include "epus/skyline.hpp"
#include "epus/window.hpp"
#include "epus/wire.hpp"

namespace epus {

/**
 * Edge computing node: owns a sliding window over its local stream, an
 * R-tree on the windowed boxes and the two skyline tiers. Each tick it
 * slides the window, repairs the tiers incrementally and reports only the
 * deltas: expired ids plus objects newly entering either tier. The very
 * first full-window batch therefore yields a full-set upload for free.
 */
class EdgeNode {
  public:
    EdgeNode(int ecn_id, std::size_t window_capacity, std::size_t fanout = 8);

    // Window slide: harvest the overflow, evict it, admit the batch, mirror
    // both moves into the index. Returns the evicted objects. Batches beyond
    // the window capacity are rejected.
    std::vector<ObjectPtr> receive_data(const std::vector<ObjectPtr>& batch);

    // One full tick at time `step`. An empty batch short-circuits to an
    // empty (zero-cost) message.
    UpdateMessage step(std::uint64_t step, const std::vector<ObjectPtr>& batch);

    int ecn_id() const { return ecn_id_; }
    const SlidingWindow& window() const { return window_; }
    const RTree& index() const { return index_; }
    const SkylineState& state() const { return state_; }

    // Comparison work since the last call.
    CompareCounter take_counter();

  private:
    void maybe_rebuild();

    int ecn_id_;
    SlidingWindow window_;
    RTree index_;
    SkylineState state_;
    CompareCounter counter_;
    std::uint64_t slides_since_rebuild_ = 0;
};

}  // namespace epus

#endif  // EPUS_EDGE_HPP
