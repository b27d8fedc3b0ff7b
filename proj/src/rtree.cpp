#include "epus/rtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace epus {

namespace {

double area_of(const Mbr& b) {
    double a = 1.0;
    for (std::size_t j = 0; j < b.dims(); ++j) a *= b.hi[j] - b.lo[j];
    return a;
}

Mbr box_union(const Mbr& a, const Mbr& b) {
    Mbr u = a;
    for (std::size_t j = 0; j < u.dims(); ++j) {
        u.lo[j] = std::min(u.lo[j], b.lo[j]);
        u.hi[j] = std::max(u.hi[j], b.hi[j]);
    }
    return u;
}

double enlargement(const Mbr& node, const Mbr& extra) {
    return area_of(box_union(node, extra)) - area_of(node);
}

bool box_contains(const Mbr& outer, const Mbr& inner) {
    for (std::size_t j = 0; j < outer.dims(); ++j)
        if (inner.lo[j] < outer.lo[j] || inner.hi[j] > outer.hi[j]) return false;
    return true;
}

// Node box cannot rule the target out as a dominator region: some descendant
// may still have lo <= target.hi everywhere.
bool node_may_hold_potential(const Mbr& node, const Mbr& target, CompareCounter* c) {
    if (c) ++c->mbr_tests;
    for (std::size_t j = 0; j < node.dims(); ++j)
        if (node.lo[j] > target.hi[j]) return false;
    return true;
}

// Descendant entries all have lo >= node.lo, so certain dominators (hi <=
// target.lo) can only hide below nodes with lo <= target.lo on every axis.
bool node_may_hold_certain(const Mbr& node, const Mbr& target, CompareCounter* c) {
    if (c) ++c->mbr_tests;
    for (std::size_t j = 0; j < node.dims(); ++j)
        if (node.lo[j] > target.lo[j]) return false;
    return true;
}

bool entry_is_potential(const Mbr& entry, const Mbr& target, CompareCounter* c) {
    if (c) ++c->mbr_tests;
    for (std::size_t j = 0; j < entry.dims(); ++j)
        if (entry.lo[j] > target.hi[j]) return false;
    return true;
}

}  // namespace

struct RTree::Node {
    Mbr box;
    std::vector<std::unique_ptr<Node>> children;        // internal level
    std::vector<std::pair<ObjectId, Mbr>> entries;      // leaf level

    bool is_leaf() const { return children.empty(); }

    void recompute_box() {
        if (is_leaf()) {
            box = entries.front().second;
            for (std::size_t i = 1; i < entries.size(); ++i)
                box = box_union(box, entries[i].second);
        } else {
            box = children.front()->box;
            for (std::size_t i = 1; i < children.size(); ++i)
                box = box_union(box, children[i]->box);
        }
    }
};

RTree::RTree(std::size_t fanout) : fanout_(fanout) {
    if (fanout < 2) throw std::invalid_argument("RTree: fanout must be at least 2");
}

RTree::RTree(RTree&&) noexcept = default;
RTree& RTree::operator=(RTree&&) noexcept = default;
RTree::~RTree() = default;

// ---------------------------------------------------------------------------
// STR bulk load

namespace {

struct BuildItem {
    ObjectId id;
    Mbr box;
    std::vector<double> center;
};

// Recursive sort-tile pass: orders items so that chunks of `fanout`
// consecutive items form spatially coherent tiles.
void str_tile(std::vector<BuildItem>& items, std::size_t begin, std::size_t end,
              std::size_t dim, std::size_t dims, std::size_t fanout) {
    const std::size_t count = end - begin;
    if (count <= fanout) return;
    auto by_dim = [dim](const BuildItem& a, const BuildItem& b) {
        if (a.center[dim] != b.center[dim]) return a.center[dim] < b.center[dim];
        return a.id < b.id;
    };
    std::sort(items.begin() + begin, items.begin() + end, by_dim);
    if (dim + 1 == dims) return;

    const double pages = std::ceil(static_cast<double>(count) / fanout);
    const double frac = 1.0 / static_cast<double>(dims - dim);
    const auto slabs = static_cast<std::size_t>(std::ceil(std::pow(pages, frac)));
    if (slabs <= 1) {
        str_tile(items, begin, end, dim + 1, dims, fanout);
        return;
    }
    const std::size_t per_slab = (count + slabs - 1) / slabs;
    for (std::size_t s = begin; s < end; s += per_slab)
        str_tile(items, s, std::min(s + per_slab, end), dim + 1, dims, fanout);
}

}  // namespace

RTree RTree::bulk_load(const std::vector<ObjectPtr>& objects, std::size_t fanout) {
    std::vector<std::pair<ObjectId, Mbr>> entries;
    entries.reserve(objects.size());
    for (const auto& o : objects) entries.emplace_back(o->id(), o->mbr());
    return bulk_load(entries, fanout);
}

RTree RTree::bulk_load(const std::vector<std::pair<ObjectId, Mbr>>& input, std::size_t fanout) {
    RTree tree(fanout);
    if (input.empty()) return tree;

    const std::size_t dims = input.front().second.dims();
    std::vector<BuildItem> items;
    items.reserve(input.size());
    for (const auto& [id, box] : input) {
        if (box.dims() != dims)
            throw std::invalid_argument("RTree::bulk_load: mixed dimensionality");
        if (tree.boxes_.count(id))
            throw std::invalid_argument("RTree::bulk_load: duplicate object id");
        tree.boxes_.emplace(id, box);
        BuildItem it{id, box, {}};
        it.center.resize(dims);
        for (std::size_t j = 0; j < dims; ++j) it.center[j] = (box.lo[j] + box.hi[j]) / 2.0;
        items.push_back(std::move(it));
    }

    str_tile(items, 0, items.size(), 0, dims, fanout);

    std::vector<std::unique_ptr<Node>> level;
    for (std::size_t i = 0; i < items.size(); i += fanout) {
        auto leaf = std::make_unique<Node>();
        for (std::size_t k = i; k < std::min(i + fanout, items.size()); ++k)
            leaf->entries.emplace_back(items[k].id, items[k].box);
        leaf->recompute_box();
        level.push_back(std::move(leaf));
    }

    while (level.size() > 1) {
        // Pack the level with the same tiling applied to node box centers.
        std::vector<BuildItem> meta;
        meta.reserve(level.size());
        for (std::size_t i = 0; i < level.size(); ++i) {
            BuildItem it{i, level[i]->box, {}};
            it.center.resize(dims);
            for (std::size_t j = 0; j < dims; ++j)
                it.center[j] = (it.box.lo[j] + it.box.hi[j]) / 2.0;
            meta.push_back(std::move(it));
        }
        str_tile(meta, 0, meta.size(), 0, dims, fanout);
        std::vector<std::unique_ptr<Node>> next;
        for (std::size_t i = 0; i < meta.size(); i += fanout) {
            auto parent = std::make_unique<Node>();
            for (std::size_t k = i; k < std::min(i + fanout, meta.size()); ++k)
                parent->children.push_back(std::move(level[meta[k].id]));
            parent->recompute_box();
            next.push_back(std::move(parent));
        }
        level = std::move(next);
    }
    tree.root_ = std::move(level.front());
    return tree;
}

// ---------------------------------------------------------------------------
// Incremental maintenance

namespace {

// Guttman quadratic split of an overfull collection; returns the index
// partition for the two resulting groups.
template <typename BoxOf>
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> quadratic_partition(
    std::size_t count, BoxOf box_of, std::size_t min_fill) {
    // Seeds: the pair wasting the most area when joined.
    std::size_t seed_a = 0, seed_b = 1;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t k = i + 1; k < count; ++k) {
            const double waste =
                area_of(box_union(box_of(i), box_of(k))) - area_of(box_of(i)) - area_of(box_of(k));
            if (waste > worst) {
                worst = waste;
                seed_a = i;
                seed_b = k;
            }
        }

    std::vector<std::size_t> ga{seed_a}, gb{seed_b};
    Mbr box_a = box_of(seed_a), box_b = box_of(seed_b);
    std::vector<bool> placed(count, false);
    placed[seed_a] = placed[seed_b] = true;
    std::size_t remaining = count - 2;

    while (remaining > 0) {
        // Forced assignment once a group must absorb the rest to reach fill.
        if (ga.size() + remaining == min_fill) {
            for (std::size_t i = 0; i < count; ++i)
                if (!placed[i]) { ga.push_back(i); placed[i] = true; }
            break;
        }
        if (gb.size() + remaining == min_fill) {
            for (std::size_t i = 0; i < count; ++i)
                if (!placed[i]) { gb.push_back(i); placed[i] = true; }
            break;
        }
        // Pick the unplaced item with the strongest preference.
        std::size_t pick = count;
        double best_diff = -1.0;
        double pick_da = 0.0, pick_db = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            if (placed[i]) continue;
            const double da = enlargement(box_a, box_of(i));
            const double db = enlargement(box_b, box_of(i));
            const double diff = std::abs(da - db);
            if (diff > best_diff) {
                best_diff = diff;
                pick = i;
                pick_da = da;
                pick_db = db;
            }
        }
        placed[pick] = true;
        --remaining;
        bool to_a;
        if (pick_da != pick_db) to_a = pick_da < pick_db;
        else if (area_of(box_a) != area_of(box_b)) to_a = area_of(box_a) < area_of(box_b);
        else to_a = ga.size() <= gb.size();
        if (to_a) { ga.push_back(pick); box_a = box_union(box_a, box_of(pick)); }
        else      { gb.push_back(pick); box_b = box_union(box_b, box_of(pick)); }
    }
    return {std::move(ga), std::move(gb)};
}

}  // namespace

void RTree::insert(ObjectId id, const Mbr& box) {
    if (boxes_.count(id)) throw std::invalid_argument("RTree::insert: duplicate object id");
    if (root_ && root_->box.dims() != box.dims())
        throw std::invalid_argument("RTree::insert: dimensionality mismatch");
    boxes_.emplace(id, box);
    if (!root_) {
        root_ = std::make_unique<Node>();
        root_->entries.emplace_back(id, box);
        root_->recompute_box();
        return;
    }
    insert_impl(root_, id, box);
}

void RTree::insert_impl(std::unique_ptr<Node>& root_slot, ObjectId id, const Mbr& box) {
    const std::size_t min_fill = std::max<std::size_t>(1, fanout_ / 2);

    // Returns the split-off sibling when the child overflowed.
    std::function<std::unique_ptr<Node>(Node&)> descend = [&](Node& node) -> std::unique_ptr<Node> {
        if (node.is_leaf()) {
            node.entries.emplace_back(id, box);
            node.recompute_box();
            if (node.entries.size() <= fanout_) return nullptr;
            auto [ga, gb] = quadratic_partition(
                node.entries.size(), [&](std::size_t i) { return node.entries[i].second; },
                min_fill);
            auto sibling = std::make_unique<Node>();
            std::vector<std::pair<ObjectId, Mbr>> keep;
            for (std::size_t i : ga) keep.push_back(node.entries[i]);
            for (std::size_t i : gb) sibling->entries.push_back(node.entries[i]);
            node.entries = std::move(keep);
            node.recompute_box();
            sibling->recompute_box();
            return sibling;
        }

        // Least enlargement, then least area, then first child.
        std::size_t best = 0;
        double best_enl = std::numeric_limits<double>::infinity();
        double best_area = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            const double enl = enlargement(node.children[i]->box, box);
            const double ar = area_of(node.children[i]->box);
            if (enl < best_enl || (enl == best_enl && ar < best_area)) {
                best = i;
                best_enl = enl;
                best_area = ar;
            }
        }
        auto split = descend(*node.children[best]);
        if (split) node.children.push_back(std::move(split));
        node.recompute_box();
        if (node.children.size() <= fanout_) return nullptr;
        auto [ga, gb] = quadratic_partition(
            node.children.size(), [&](std::size_t i) { return node.children[i]->box; }, min_fill);
        auto sibling = std::make_unique<Node>();
        std::vector<std::unique_ptr<Node>> keep;
        for (std::size_t i : ga) keep.push_back(std::move(node.children[i]));
        for (std::size_t i : gb) sibling->children.push_back(std::move(node.children[i]));
        node.children = std::move(keep);
        node.recompute_box();
        sibling->recompute_box();
        return sibling;
    };

    auto split = descend(*root_slot);
    if (split) {
        auto new_root = std::make_unique<Node>();
        new_root->children.push_back(std::move(root_slot));
        new_root->children.push_back(std::move(split));
        new_root->recompute_box();
        root_slot = std::move(new_root);
    }
}

void RTree::erase(ObjectId id) {
    auto it = boxes_.find(id);
    if (it == boxes_.end()) throw std::invalid_argument("RTree::erase: id not present");
    const Mbr target = it->second;

    // Returns true once removed; drops nodes that become empty on unwind.
    std::function<bool(Node&)> remove_in = [&](Node& node) -> bool {
        if (!box_contains(node.box, target)) return false;
        if (node.is_leaf()) {
            for (std::size_t i = 0; i < node.entries.size(); ++i) {
                if (node.entries[i].first == id) {
                    node.entries.erase(node.entries.begin() + i);
                    if (!node.entries.empty()) node.recompute_box();
                    return true;
                }
            }
            return false;
        }
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            if (!remove_in(*node.children[i])) continue;
            const bool empty = node.children[i]->is_leaf()
                                   ? node.children[i]->entries.empty()
                                   : node.children[i]->children.empty();
            if (empty) node.children.erase(node.children.begin() + i);
            if (!node.children.empty()) node.recompute_box();
            return true;
        }
        return false;
    };

    if (!remove_in(*root_))
        throw std::logic_error("RTree::erase: entry missing from tree structure");
    boxes_.erase(it);
    if (boxes_.empty()) root_.reset();
}

// ---------------------------------------------------------------------------
// Structure accessors

std::size_t RTree::height() const {
    if (boxes_.size() <= 1) return 0;
    std::size_t levels = 1;  // entry level sits below the deepest node
    for (const Node* n = root_.get(); !n->is_leaf(); n = n->children.front().get()) ++levels;
    return levels;
}

std::size_t RTree::leaf_count() const {
    if (!root_) return 0;
    std::function<std::size_t(const Node&)> count = [&](const Node& n) -> std::size_t {
        if (n.is_leaf()) return 1;
        std::size_t total = 0;
        for (const auto& c : n.children) total += count(*c);
        return total;
    };
    return count(*root_);
}

std::vector<ObjectId> RTree::all_ids_sorted() const {
    std::vector<ObjectId> ids;
    ids.reserve(boxes_.size());
    for (const auto& [id, box] : boxes_) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

bool RTree::check_invariants() const {
    if (!root_) return boxes_.empty();
    std::size_t seen = 0;
    std::size_t leaf_depth = 0;
    bool depth_set = false, ok = true;
    std::function<void(const Node&, std::size_t)> walk = [&](const Node& n, std::size_t depth) {
        if (n.is_leaf()) {
            if (!depth_set) { leaf_depth = depth; depth_set = true; }
            // Mutations may unbalance depths; containment must always hold.
            for (const auto& [id, box] : n.entries) {
                ++seen;
                if (!box_contains(n.box, box)) ok = false;
            }
            if (n.entries.size() > fanout_) ok = false;
        } else {
            if (n.children.size() > fanout_) ok = false;
            for (const auto& c : n.children) {
                if (!box_contains(n.box, c->box)) ok = false;
                walk(*c, depth + 1);
            }
        }
    };
    walk(*root_, 0);
    (void)leaf_depth;
    return ok && seen == boxes_.size();
}

// ---------------------------------------------------------------------------
// Queries

std::vector<ObjectId> RTree::query_potential_dominators(const Mbr& target,
                                                        CompareCounter* counter) const {
    std::vector<ObjectId> out;
    if (!root_) return out;
    std::function<void(const Node&)> walk = [&](const Node& n) {
        if (n.is_leaf()) {
            for (const auto& [id, box] : n.entries)
                if (entry_is_potential(box, target, counter)) out.push_back(id);
            return;
        }
        for (const auto& c : n.children)
            if (node_may_hold_potential(c->box, target, counter)) walk(*c);
    };
    if (node_may_hold_potential(root_->box, target, counter)) walk(*root_);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ObjectId> RTree::query_certain_dominators(const Mbr& target,
                                                      CompareCounter* counter) const {
    std::vector<ObjectId> out;
    if (!root_) return out;
    std::function<void(const Node&)> walk = [&](const Node& n) {
        if (n.is_leaf()) {
            for (const auto& [id, box] : n.entries)
                if (mbr_certainly_dominates(box, target, counter)) out.push_back(id);
            return;
        }
        for (const auto& c : n.children)
            if (node_may_hold_certain(c->box, target, counter)) walk(*c);
    };
    if (node_may_hold_certain(root_->box, target, counter)) walk(*root_);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<ObjectId> RTree::find_certain_dominator(
    const Mbr& target, const std::function<bool(ObjectId)>& accept,
    CompareCounter* counter) const {
    if (!root_) return std::nullopt;
    std::function<std::optional<ObjectId>(const Node&)> walk =
        [&](const Node& n) -> std::optional<ObjectId> {
        if (n.is_leaf()) {
            for (const auto& [id, box] : n.entries)
                if (mbr_certainly_dominates(box, target, counter) && accept(id)) return id;
            return std::nullopt;
        }
        for (const auto& c : n.children) {
            if (!node_may_hold_certain(c->box, target, counter)) continue;
            if (auto hit = walk(*c)) return hit;
        }
        return std::nullopt;
    };
    if (!node_may_hold_certain(root_->box, target, counter)) return std::nullopt;
    return walk(*root_);
}

}  // namespace epus
