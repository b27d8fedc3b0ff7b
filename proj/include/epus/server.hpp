#ifndef EPUS_SERVER_HPP
#define EPUS_SERVER_HPP

#include <utility>

#include "epus/rtree.hpp"
#include "epus/skyline.hpp"
#include "epus/window.hpp"
#include "epus/wire.hpp"

namespace epus {

struct ServerTickStats {
    std::size_t objects_received = 0;  // ids plus objects across all messages
    std::size_t messages = 0;
};

/**
 * Central coordinator. Its window holds only what edges currently advertise
 * (skyline or candidate tier members, less retracted expiries); the global
 * tiers are maintained over that window with the same delta machinery the
 * edges use. Capacity is m * |SW_k|; exceeding it means an edge broke the
 * protocol, so insertion aborts the run.
 */
class ServerNode {
  public:
    ServerNode(std::size_t capacity, std::size_t rebuild_period, std::size_t fanout = 8);

    // Applies one message's set surgery: retire expired ids, admit unseen
    // objects, move re-advertised objects between tiers. The accumulated
    // (retired ids, tentative skyline objects) feed the global update.
    void receive_edge_update(const UpdateMessage& msg, std::vector<ObjectId>& d_obsolete,
                             std::vector<ObjectPtr>& d_new);

    // Restores both global tiers to their definitions over the current
    // window contents.
    void update_global_skyline(const std::vector<ObjectId>& d_obsolete,
                               const std::vector<ObjectPtr>& d_new);

    // One tick: every edge message (ascending ecn id), then one global
    // update. All-empty ticks leave the state untouched.
    ServerTickStats server_step(const std::vector<UpdateMessage>& msgs);

    const SlidingWindow& window() const { return window_; }
    const SkylineState& state() const { return state_; }
    CompareCounter take_counter();

  private:
    void maybe_rebuild();

    SlidingWindow window_;
    RTree index_;
    SkylineState state_;
    CompareCounter counter_;
    std::size_t rebuild_period_;
    std::uint64_t ticks_since_rebuild_ = 0;
    bool moved_candidate_up_ = false;  // tier surgery that forces a refill
};

}  // namespace epus

#endif  // EPUS_SERVER_HPP
