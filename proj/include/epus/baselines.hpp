#ifndef EPUS_BASELINES_HPP
#define EPUS_BASELINES_HPP

#include <map>
#include <string>

#include "epus/rtree.hpp"
#include "epus/server.hpp"
#include "epus/skyline.hpp"
#include "epus/window.hpp"
#include "epus/wire.hpp"

namespace epus {

enum class MethodKind { kEpus, kPbf, kPrpo };

std::string to_string(MethodKind kind);
MethodKind parse_method(const std::string& name);  // unknown -> ConfigError

/**
 * Periodic-recomputation edge used by both reference methods. PBF rebuilds
 * the skyline each tick by exhaustive pairwise comparison; PRPO maintains
 * an R-tree and prunes the dominator search through it. Either way the
 * whole current skyline is shipped every tick along with the expired ids;
 * no candidate tier exists.
 */
class BaselineEdge {
  public:
    BaselineEdge(MethodKind kind, int ecn_id, std::size_t window_capacity,
                 std::size_t fanout = 8);

    UpdateMessage step(std::uint64_t step, const std::vector<ObjectPtr>& batch);

    int ecn_id() const { return ecn_id_; }
    const SlidingWindow& window() const { return window_; }
    CompareCounter take_counter();

  private:
    MethodKind kind_;
    int ecn_id_;
    SlidingWindow window_;
    RTree index_;  // PRPO only
    CompareCounter counter_;
    std::uint64_t slides_since_rebuild_ = 0;
};

/**
 * Coordinator for the reference methods: retains each edge's latest
 * advertised skyline, unions them and recomputes the global skyline from
 * scratch (exhaustively for PBF, index-pruned for PRPO). No candidate tier.
 */
class BaselineServer {
  public:
    BaselineServer(MethodKind kind, std::size_t fanout = 8);

    ServerTickStats server_step(const std::vector<UpdateMessage>& msgs);

    std::vector<ObjectId> sk1_ids() const { return sk1_; }
    std::vector<ObjectPtr> window_objects() const;
    CompareCounter take_counter();

  private:
    MethodKind kind_;
    std::size_t fanout_;
    std::map<int, std::map<ObjectId, ObjectPtr>> advertised_;  // per edge
    std::vector<ObjectId> sk1_;
    CompareCounter counter_;
};

}  // namespace epus

#endif  // EPUS_BASELINES_HPP
