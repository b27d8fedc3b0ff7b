#include "epus/edge.hpp"

#include <algorithm>

namespace epus {

EdgeNode::EdgeNode(int ecn_id, std::size_t window_capacity, std::size_t fanout)
    : ecn_id_(ecn_id), window_(window_capacity), index_(fanout) {}

std::vector<ObjectPtr> EdgeNode::receive_data(const std::vector<ObjectPtr>& batch) {
    if (batch.size() > window_.capacity())
        throw ConfigError("EdgeNode: batch larger than window capacity");
    std::vector<ObjectPtr> obsolete = window_.collect_obsolete(batch.size());
    for (const auto& o : obsolete) {
        window_.remove(o->id());
        index_.erase(o->id());
    }
    for (const auto& o : batch) {
        window_.add(o);
        index_.insert(o->id(), o->mbr());
    }
    return obsolete;
}

void EdgeNode::maybe_rebuild() {
    if (++slides_since_rebuild_ < window_.capacity()) return;
    index_ = RTree::bulk_load(window_.objects_by_id(), index_.fanout());
    slides_since_rebuild_ = 0;
}

UpdateMessage EdgeNode::step(std::uint64_t step, const std::vector<ObjectPtr>& batch) {
    UpdateMessage msg;
    msg.ecn_id = ecn_id_;
    msg.step = step;
    if (batch.empty()) return msg;

    const std::map<ObjectId, ObjectPtr> old_sk1 = state_.sk1;
    const std::map<ObjectId, ObjectPtr> old_sk2 = state_.sk2;

    std::vector<ObjectPtr> obsolete = receive_data(batch);
    maybe_rebuild();

    std::vector<ObjectId> obsolete_ids;
    obsolete_ids.reserve(obsolete.size());
    for (const auto& o : obsolete) obsolete_ids.push_back(o->id());
    std::sort(obsolete_ids.begin(), obsolete_ids.end());

    update_skyline(state_, batch, obsolete_ids, window_, index_, &counter_);

    msg.obsolete_ids = std::move(obsolete_ids);
    for (const auto& [id, obj] : state_.sk1)
        if (!old_sk1.count(id)) msg.new_skyline.push_back(obj);
    for (const auto& [id, obj] : state_.sk2)
        if (!old_sk2.count(id)) msg.new_candidates.push_back(obj);
    return msg;
}

CompareCounter EdgeNode::take_counter() {
    CompareCounter out = counter_;
    counter_.reset();
    return out;
}

}  // namespace epus
