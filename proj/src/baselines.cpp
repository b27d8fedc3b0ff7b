#include "epus/baselines.hpp"

#include <algorithm>

namespace epus {

std::string to_string(MethodKind kind) {
    switch (kind) {
        case MethodKind::kEpus: return "epus";
        case MethodKind::kPbf: return "pbf";
        case MethodKind::kPrpo: return "prpo";
    }
    return "?";
}

MethodKind parse_method(const std::string& name) {
    if (name == "epus") return MethodKind::kEpus;
    if (name == "pbf") return MethodKind::kPbf;
    if (name == "prpo") return MethodKind::kPrpo;
    throw ConfigError("unknown method '" + name + "' (expected epus|pbf|prpo)");
}

BaselineEdge::BaselineEdge(MethodKind kind, int ecn_id, std::size_t window_capacity,
                           std::size_t fanout)
    : kind_(kind), ecn_id_(ecn_id), window_(window_capacity), index_(fanout) {
    if (kind == MethodKind::kEpus)
        throw ConfigError("BaselineEdge: use EdgeNode for the delta method");
}

UpdateMessage BaselineEdge::step(std::uint64_t step, const std::vector<ObjectPtr>& batch) {
    UpdateMessage msg;
    msg.ecn_id = ecn_id_;
    msg.step = step;
    if (batch.empty()) return msg;
    if (batch.size() > window_.capacity())
        throw ConfigError("BaselineEdge: batch larger than window capacity");

    std::vector<ObjectPtr> obsolete = window_.collect_obsolete(batch.size());
    for (const auto& o : obsolete) {
        window_.remove(o->id());
        if (kind_ == MethodKind::kPrpo) index_.erase(o->id());
        msg.obsolete_ids.push_back(o->id());
    }
    std::sort(msg.obsolete_ids.begin(), msg.obsolete_ids.end());
    for (const auto& o : batch) {
        window_.add(o);
        if (kind_ == MethodKind::kPrpo) index_.insert(o->id(), o->mbr());
    }
    if (kind_ == MethodKind::kPrpo && ++slides_since_rebuild_ >= window_.capacity()) {
        index_ = RTree::bulk_load(window_.objects_by_id(), index_.fanout());
        slides_since_rebuild_ = 0;
    }

    const std::vector<ObjectPtr> contents = window_.objects_by_id();
    const std::vector<ObjectId> skyline =
        kind_ == MethodKind::kPbf ? brute_force_skyline(contents, &counter_)
                                  : compute_skyline(contents, index_, &counter_);
    for (ObjectId id : skyline) msg.new_skyline.push_back(window_.get(id));
    return msg;
}

CompareCounter BaselineEdge::take_counter() {
    CompareCounter out = counter_;
    counter_.reset();
    return out;
}

BaselineServer::BaselineServer(MethodKind kind, std::size_t fanout)
    : kind_(kind), fanout_(fanout) {
    if (kind == MethodKind::kEpus)
        throw ConfigError("BaselineServer: use ServerNode for the delta method");
}

std::vector<ObjectPtr> BaselineServer::window_objects() const {
    std::map<ObjectId, ObjectPtr> merged;
    for (const auto& [ecn, objs] : advertised_)
        for (const auto& [id, obj] : objs) merged.emplace(id, obj);
    std::vector<ObjectPtr> out;
    out.reserve(merged.size());
    for (const auto& [id, obj] : merged) out.push_back(obj);
    return out;
}

ServerTickStats BaselineServer::server_step(const std::vector<UpdateMessage>& msgs) {
    ServerTickStats stats;
    std::vector<UpdateMessage> ordered = msgs;
    std::sort(ordered.begin(), ordered.end(),
              [](const UpdateMessage& a, const UpdateMessage& b) { return a.ecn_id < b.ecn_id; });
    bool changed = false;
    for (const auto& msg : ordered) {
        ++stats.messages;
        stats.objects_received += msg.payload_object_count();
        if (msg.empty()) continue;  // silent tick keeps the last advertisement
        changed = true;
        std::map<ObjectId, ObjectPtr> latest;
        for (const auto& obj : msg.new_skyline) latest.emplace(obj->id(), obj);
        advertised_[msg.ecn_id] = std::move(latest);
    }
    if (!changed) return stats;

    const std::vector<ObjectPtr> contents = window_objects();
    if (kind_ == MethodKind::kPbf) {
        sk1_ = brute_force_skyline(contents, &counter_);
    } else {
        RTree index = RTree::bulk_load(contents, fanout_);
        sk1_ = compute_skyline(contents, index, &counter_);
    }
    return stats;
}

CompareCounter BaselineServer::take_counter() {
    CompareCounter out = counter_;
    counter_.reset();
    return out;
}

}  // namespace epus
