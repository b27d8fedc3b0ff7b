#include "epus/skyline.hpp"

#include <algorithm>
#include <stdexcept>

namespace epus {

std::vector<ObjectId> SkylineState::sk1_ids() const {
    std::vector<ObjectId> ids;
    ids.reserve(sk1.size());
    for (const auto& [id, obj] : sk1) ids.push_back(id);
    return ids;
}

std::vector<ObjectId> SkylineState::sk2_ids() const {
    std::vector<ObjectId> ids;
    ids.reserve(sk2.size());
    for (const auto& [id, obj] : sk2) ids.push_back(id);
    return ids;
}

std::vector<ObjectId> brute_force_skyline(const std::vector<ObjectPtr>& objects,
                                          CompareCounter* counter) {
    std::vector<ObjectPtr> sorted = objects;
    std::sort(sorted.begin(), sorted.end(),
              [](const ObjectPtr& a, const ObjectPtr& b) { return a->id() < b->id(); });
    std::vector<ObjectId> out;
    for (const auto& obj : sorted) {
        bool dominated = false;
        for (const auto& other : sorted) {
            if (other->id() == obj->id()) continue;
            if (object_dominance_probability(*other, *obj, counter) >= 1.0 - kCertaintyEps) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(obj->id());
    }
    return out;
}

namespace {

// Certain-dominator probe through the index. `accept` restricts the
// candidate set (remainder membership); the occurrence-mass requirement and
// the self-exclusion are applied here.
bool dominated_via(const RTree& index, const UncertainObject& target,
                   const std::function<ObjectPtr(ObjectId)>& lookup,
                   const std::function<bool(ObjectId)>& accept, CompareCounter* counter) {
    auto hit = index.find_certain_dominator(
        target.mbr(),
        [&](ObjectId id) {
            if (id == target.id() || !accept(id)) return false;
            ObjectPtr cand = lookup(id);
            return cand && cand->total_prob() * target.total_prob() >= 1.0 - kCertaintyEps;
        },
        counter);
    return hit.has_value();
}

std::function<ObjectPtr(ObjectId)> lookup_in(const std::map<ObjectId, ObjectPtr>& pool) {
    return [&pool](ObjectId id) -> ObjectPtr {
        auto it = pool.find(id);
        return it == pool.end() ? nullptr : it->second;
    };
}

constexpr auto kAcceptAll = [](ObjectId) { return true; };

}  // namespace

std::vector<ObjectId> compute_skyline(const std::vector<ObjectPtr>& objects, const RTree& index,
                                      CompareCounter* counter) {
    std::map<ObjectId, ObjectPtr> pool;
    for (const auto& o : objects) pool.emplace(o->id(), o);
    std::vector<ObjectId> out;
    auto lookup = lookup_in(pool);
    for (const auto& [id, obj] : pool)
        if (!dominated_via(index, *obj, lookup, kAcceptAll, counter)) out.push_back(id);
    return out;
}

std::vector<ObjectId> compute_skyline(const std::vector<ObjectPtr>& objects,
                                      CompareCounter* counter) {
    RTree index = RTree::bulk_load(objects);
    return compute_skyline(objects, index, counter);
}

std::vector<ObjectId> compute_candidate_skyline(const std::vector<ObjectPtr>& objects,
                                                const std::set<ObjectId>& sk1_ids,
                                                const RTree& index, CompareCounter* counter) {
    std::map<ObjectId, ObjectPtr> pool;
    for (const auto& o : objects) pool.emplace(o->id(), o);
    std::vector<ObjectId> out;
    auto lookup = lookup_in(pool);
    auto in_remainder = [&sk1_ids](ObjectId id) { return sk1_ids.count(id) == 0; };
    for (const auto& [id, obj] : pool) {
        if (sk1_ids.count(id)) continue;
        if (!dominated_via(index, *obj, lookup, in_remainder, counter)) out.push_back(id);
    }
    return out;
}

UpdateOutcome update_skyline(SkylineState& state, const std::vector<ObjectPtr>& new_objects,
                             const std::vector<ObjectId>& obsolete_ids,
                             const SlidingWindow& window, const RTree& index,
                             CompareCounter* counter, bool force_refill) {
    UpdateOutcome outcome;
    auto window_lookup = [&window](ObjectId id) { return window.get(id); };
    auto not_in_sk1 = [&state](ObjectId id) { return !state.in_sk1(id); };

    std::vector<ObjectPtr> arrivals = new_objects;
    std::sort(arrivals.begin(), arrivals.end(),
              [](const ObjectPtr& a, const ObjectPtr& b) { return a->id() < b->id(); });
    std::set<ObjectId> arrival_ids;
    for (const auto& obj : arrivals) arrival_ids.insert(obj->id());

    // (1) expired objects leave both tiers
    bool sk1_departed = false, sk2_shrunk = false;
    for (ObjectId id : obsolete_ids) {
        if (state.sk2.erase(id)) sk2_shrunk = true;
        if (state.sk1.erase(id)) sk1_departed = true;
    }

    // (2) a skyline departure can uncover any window object, not only the
    // tracked candidates, so the whole remainder is rescanned
    if (sk1_departed) {
        for (const auto& [id, obj] : window.by_id()) {
            if (state.in_sk1(id) || arrival_ids.count(id)) continue;
            if (dominated_via(index, *obj, window_lookup, kAcceptAll, counter)) continue;
            state.sk2.erase(id);
            state.sk1.emplace(id, obj);
            outcome.promoted.push_back(id);
        }
    }

    // (3) arrivals are tentatively skyline
    for (const auto& obj : arrivals) state.sk1.emplace(obj->id(), obj);

    // (4a) arrivals keep their place only if nothing in the window
    // certainly dominates them (other arrivals included)
    for (const auto& obj : arrivals) {
        if (!state.in_sk1(obj->id())) continue;
        if (dominated_via(index, *obj, window_lookup, kAcceptAll, counter)) {
            state.sk1.erase(obj->id());
            state.sk2.emplace(obj->id(), obj);
        }
    }
    // (4b) established members can only have acquired arrival dominators;
    // surviving and promoted members are mutually undominated
    std::vector<ObjectPtr> displaced;
    for (const auto& [id, obj] : state.sk1) {
        if (arrival_ids.count(id)) continue;
        for (const auto& arr : arrivals) {
            if (certainly_dominates(*arr, *obj, counter)) {
                displaced.push_back(obj);
                break;
            }
        }
    }
    for (const auto& obj : displaced) {
        state.sk1.erase(obj->id());
        state.sk2.emplace(obj->id(), obj);
        outcome.demoted.push_back(obj->id());
    }

    // (5) candidates dominated inside the remainder drop out
    std::vector<ObjectId> pruned;
    for (const auto& [id, obj] : state.sk2)
        if (dominated_via(index, *obj, window_lookup, not_in_sk1, counter)) pruned.push_back(id);
    for (ObjectId id : pruned) state.sk2.erase(id);

    // (6) remainder membership only loosens when remainder objects leave it
    // (expiry or promotion); only then can outsiders join sk2
    if (sk1_departed || sk2_shrunk || !outcome.promoted.empty() || force_refill) {
        for (const auto& [id, obj] : window.by_id()) {
            if (state.in_sk1(id) || state.in_sk2(id)) continue;
            if (dominated_via(index, *obj, window_lookup, not_in_sk1, counter)) continue;
            state.sk2.emplace(id, obj);
        }
    }
    return outcome;
}

}  // namespace epus
