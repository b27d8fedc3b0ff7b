#include "epus/server.hpp"

#include <algorithm>

namespace epus {

ServerNode::ServerNode(std::size_t capacity, std::size_t rebuild_period, std::size_t fanout)
    : window_(capacity), index_(fanout), rebuild_period_(rebuild_period) {}

void ServerNode::receive_edge_update(const UpdateMessage& msg, std::vector<ObjectId>& d_obsolete,
                                     std::vector<ObjectPtr>& d_new) {
    for (ObjectId id : msg.obsolete_ids) {
        if (window_.remove(id)) index_.erase(id);
        d_obsolete.push_back(id);
    }
    for (const auto& obj : msg.new_skyline) {
        if (!window_.contains(obj->id())) {
            window_.add(obj);
            index_.insert(obj->id(), obj->mbr());
            d_new.push_back(obj);
        } else if (state_.in_sk2(obj->id())) {
            // Re-advertised as skyline: the candidate re-enters contention
            // and leaves a hole in the remainder behind it.
            state_.sk2.erase(obj->id());
            d_new.push_back(window_.get(obj->id()));
            moved_candidate_up_ = true;
        }
        // Already tracked in sk1, or long since outclassed here: no-op.
    }
    for (const auto& obj : msg.new_candidates) {
        if (!window_.contains(obj->id())) {
            window_.add(obj);
            index_.insert(obj->id(), obj->mbr());
            state_.sk2.emplace(obj->id(), obj);
        } else if (state_.in_sk1(obj->id())) {
            // The owning edge demoted it locally, so some advertised object
            // dominates it; the global update re-derives both tiers.
            auto node = state_.sk1.extract(obj->id());
            state_.sk2.insert(std::move(node));
        }
    }
}

void ServerNode::maybe_rebuild() {
    if (++ticks_since_rebuild_ < rebuild_period_) return;
    index_ = RTree::bulk_load(window_.objects_by_id(), index_.fanout());
    ticks_since_rebuild_ = 0;
}

void ServerNode::update_global_skyline(const std::vector<ObjectId>& d_obsolete,
                                       const std::vector<ObjectPtr>& d_new) {
    update_skyline(state_, d_new, d_obsolete, window_, index_, &counter_, moved_candidate_up_);
    moved_candidate_up_ = false;
}

CompareCounter ServerNode::take_counter() {
    const CompareCounter out = counter_;
    counter_ = CompareCounter{};
    return out;
}

ServerTickStats ServerNode::server_step(const std::vector<UpdateMessage>& msgs) {
    ServerTickStats stats;
    std::vector<UpdateMessage> ordered = msgs;
    std::sort(ordered.begin(), ordered.end(),
              [](const UpdateMessage& a, const UpdateMessage& b) { return a.ecn_id < b.ecn_id; });

    std::vector<ObjectId> d_obsolete;
    std::vector<ObjectPtr> d_new;
    bool any_payload = false;
    for (const auto& msg : ordered) {
        ++stats.messages;
        stats.objects_received += msg.payload_object_count();
        if (msg.empty()) continue;
        any_payload = true;
        receive_edge_update(msg, d_obsolete, d_new);
    }
    if (any_payload) {
        maybe_rebuild();
        update_global_skyline(d_obsolete, d_new);
    }
    return stats;
}

}  // namespace epus
