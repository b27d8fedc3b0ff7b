#ifndef EPUS_RTREE_HPP
#define EPUS_RTREE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "epus/uncertain.hpp"

namespace epus {

/**
 * R-tree over object MBRs, used to prune dominance tests. Supports STR
 * (sort-tile-recursive) bulk loading plus incremental insert/erase with
 * quadratic node splits; callers rebuild periodically to undo mutation
 * degradation. Whole objects are boxed: one entry per object id.
 */
class RTree {
  public:
    explicit RTree(std::size_t fanout = 8);
    RTree(RTree&&) noexcept;
    RTree& operator=(RTree&&) noexcept;
    ~RTree();

    static RTree bulk_load(const std::vector<ObjectPtr>& objects, std::size_t fanout = 8);
    static RTree bulk_load(const std::vector<std::pair<ObjectId, Mbr>>& entries,
                           std::size_t fanout = 8);

    void insert(ObjectId id, const Mbr& box);
    void erase(ObjectId id);  // absent id -> invalid_argument

    std::size_t size() const { return boxes_.size(); }
    bool empty() const { return boxes_.empty(); }
    std::size_t fanout() const { return fanout_; }

    // Number of levels above the object entries; a tree holding at most one
    // object has height 0.
    std::size_t height() const;
    std::size_t leaf_count() const;

    // Ids whose box lower corner does not exceed target.hi on any axis, i.e.
    // everything not provably unable to dominate an object boxed by target.
    // Sorted ascending.
    std::vector<ObjectId> query_potential_dominators(const Mbr& target,
                                                     CompareCounter* counter = nullptr) const;

    // Ids whose box upper corner lies at or below target.lo on every axis
    // with at least one strict axis. Sorted ascending.
    std::vector<ObjectId> query_certain_dominators(const Mbr& target,
                                                   CompareCounter* counter = nullptr) const;

    // First accepted certain dominator found in DFS order, short-circuiting
    // the descent; nullopt when none qualifies.
    std::optional<ObjectId> find_certain_dominator(
        const Mbr& target, const std::function<bool(ObjectId)>& accept,
        CompareCounter* counter = nullptr) const;

    std::vector<ObjectId> all_ids_sorted() const;
    // Structural self-check (box containment, leaf depth); test support.
    bool check_invariants() const;

  private:
    struct Node;

    void insert_impl(std::unique_ptr<Node>& root_slot, ObjectId id, const Mbr& box);

    std::size_t fanout_;
    std::unique_ptr<Node> root_;
    std::unordered_map<ObjectId, Mbr> boxes_;
};

}  // namespace epus

#endif  // EPUS_RTREE_HPP
