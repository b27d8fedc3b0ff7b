#include "epus/window.hpp"

#include <stdexcept>

namespace epus {

SlidingWindow::SlidingWindow(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("SlidingWindow: capacity must be positive");
}

ObjectPtr SlidingWindow::get(ObjectId id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : it->second;
}

std::vector<ObjectPtr> SlidingWindow::collect_obsolete(std::size_t incoming) const {
    std::vector<ObjectPtr> out;
    const std::size_t occupied = by_seq_.size() + incoming;
    if (occupied <= capacity_) return out;
    std::size_t excess = occupied - capacity_;
    for (auto it = by_seq_.begin(); excess > 0 && it != by_seq_.end(); ++it, --excess)
        out.push_back(it->second);
    return out;
}

bool SlidingWindow::remove(ObjectId id) {
    auto it = seq_of_.find(id);
    if (it == seq_of_.end()) return false;
    by_seq_.erase(it->second);
    by_id_.erase(id);
    seq_of_.erase(it);
    return true;
}

void SlidingWindow::add(const ObjectPtr& obj) {
    if (!obj) throw std::invalid_argument("SlidingWindow::add: null object");
    if (by_seq_.size() >= capacity_)
        throw ProtocolError("SlidingWindow::add: capacity exceeded");
    if (seq_of_.count(obj->id()))
        throw std::invalid_argument("SlidingWindow::add: duplicate object id");
    if (by_seq_.count(obj->seq()))
        throw std::invalid_argument("SlidingWindow::add: duplicate sequence number");
    by_seq_.emplace(obj->seq(), obj);
    by_id_.emplace(obj->id(), obj);
    seq_of_.emplace(obj->id(), obj->seq());
}

void SlidingWindow::add(std::span<const ObjectPtr> objs) {
    for (const auto& o : objs) add(o);
}

std::vector<ObjectPtr> SlidingWindow::objects_by_id() const {
    std::vector<ObjectPtr> out;
    out.reserve(by_id_.size());
    for (const auto& [id, obj] : by_id_) out.push_back(obj);
    return out;
}

}  // namespace epus
