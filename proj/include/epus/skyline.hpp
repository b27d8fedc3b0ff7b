#ifndef EPUS_SKYLINE_HPP
#define EPUS_SKYLINE_HPP

#include <map>
#include <set>
#include <vector>

#include "epus/rtree.hpp"
#include "epus/uncertain.hpp"
#include "epus/window.hpp"

namespace epus {

/**
 * Two-tier probabilistic skyline over a window W:
 *   sk1 = Skyline(W)        objects no other window object certainly dominates
 *   sk2 = Skyline(W - sk1)  the second-line candidates kept so sk1 can be
 *                           repaired locally when skyline objects expire
 * Both tiers are kept exactly in sync with these definitions after every
 * update; the sets are always disjoint.
 */
struct SkylineState {
    std::map<ObjectId, ObjectPtr> sk1;
    std::map<ObjectId, ObjectPtr> sk2;

    bool in_sk1(ObjectId id) const { return sk1.count(id) != 0; }
    bool in_sk2(ObjectId id) const { return sk2.count(id) != 0; }

    std::vector<ObjectId> sk1_ids() const;
    std::vector<ObjectId> sk2_ids() const;
};

// Skyline by definition: for every object, scan all others in ascending id
// order, summing instance-pair dominance probabilities until a certain
// dominator appears. No boxes, no index. Serves as the reference oracle and
// as the PBF computational core. Returns sorted ids.
std::vector<ObjectId> brute_force_skyline(const std::vector<ObjectPtr>& objects,
                                          CompareCounter* counter = nullptr);

// Same result through the index: a short-circuited certain-dominator probe
// per object. `index` must hold exactly the boxes of `objects`.
std::vector<ObjectId> compute_skyline(const std::vector<ObjectPtr>& objects, const RTree& index,
                                      CompareCounter* counter = nullptr);
// Convenience overload that bulk-loads a temporary index.
std::vector<ObjectId> compute_skyline(const std::vector<ObjectPtr>& objects,
                                      CompareCounter* counter = nullptr);

// Skyline of `objects` minus the sk1 members: dominators are only sought
// within that remainder. `index` holds boxes of all of `objects`.
std::vector<ObjectId> compute_candidate_skyline(const std::vector<ObjectPtr>& objects,
                                                const std::set<ObjectId>& sk1_ids,
                                                const RTree& index,
                                                CompareCounter* counter = nullptr);

struct UpdateOutcome {
    std::vector<ObjectId> promoted;  // entered sk1 from the window remainder
    std::vector<ObjectId> demoted;   // left sk1 for sk2
};

/**
 * Delta update after one window slide. Preconditions: obsolete objects are
 * already evicted from `window` and `index`; `new_objects` are already added
 * to both; `state` matched the definitions for the pre-slide window.
 *
 * Phases: (1) drop obsolete ids from both tiers; (2) if a skyline object
 * departed, rescan the window remainder and promote everything that is no
 * longer dominated; (3) append arrivals to sk1 tentatively; (4) demote sk1
 * members that acquired a certain dominator; (5) prune sk2 members dominated
 * within the remainder; (6) when the remainder lost members (expiry or
 * promotion), refill sk2 from the rest of the window.
 *
 * `force_refill` lets callers request phase 6 after external set surgery
 * (the coordinator moves objects between tiers while ingesting messages).
 */
UpdateOutcome update_skyline(SkylineState& state, const std::vector<ObjectPtr>& new_objects,
                             const std::vector<ObjectId>& obsolete_ids,
                             const SlidingWindow& window, const RTree& index,
                             CompareCounter* counter = nullptr, bool force_refill = false);

}  // namespace epus

#endif  // EPUS_SKYLINE_HPP
