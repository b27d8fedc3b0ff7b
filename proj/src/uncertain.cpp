#include "epus/uncertain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace epus {

Mbr mbr_of(const std::vector<Instance>& instances) {
    if (instances.empty()) throw std::invalid_argument("mbr_of: no instances");
    const std::size_t d = instances.front().attrs.size();
    Mbr box;
    box.lo = instances.front().attrs;
    box.hi = instances.front().attrs;
    for (std::size_t i = 1; i < instances.size(); ++i) {
        const auto& a = instances[i].attrs;
        if (a.size() != d) throw std::invalid_argument("mbr_of: mixed dimensionality");
        for (std::size_t j = 0; j < d; ++j) {
            box.lo[j] = std::min(box.lo[j], a[j]);
            box.hi[j] = std::max(box.hi[j], a[j]);
        }
    }
    return box;
}

UncertainObject::UncertainObject(ObjectId id, SeqNo seq, std::vector<Instance> instances)
    : id_(id), seq_(seq), instances_(std::move(instances)) {
    if (instances_.empty())
        throw std::invalid_argument("UncertainObject: instance set must be non-empty");
    const std::size_t d = instances_.front().attrs.size();
    if (d == 0) throw std::invalid_argument("UncertainObject: zero-dimensional instance");
    double total = 0.0;
    for (const auto& ins : instances_) {
        if (ins.attrs.size() != d)
            throw std::invalid_argument("UncertainObject: mixed dimensionality");
        if (!(ins.prob > 0.0) || ins.prob > 1.0)
            throw std::invalid_argument("UncertainObject: instance probability outside (0,1]");
        for (double v : ins.attrs)
            if (!std::isfinite(v))
                throw std::invalid_argument("UncertainObject: non-finite attribute");
        total += ins.prob;
    }
    if (total > 1.0 + kProbSumSlack)
        throw std::invalid_argument("UncertainObject: occurrence probabilities exceed 1");
    mbr_ = mbr_of(instances_);
    total_prob_ = total;
}

ObjectPtr make_object(ObjectId id, SeqNo seq, std::vector<Instance> instances) {
    return std::make_shared<const UncertainObject>(id, seq, std::move(instances));
}

bool instance_dominates(const Instance& a, const Instance& b) {
    if (a.attrs.size() != b.attrs.size())
        throw std::invalid_argument("instance_dominates: dimensionality mismatch");
    bool strict = false;
    for (std::size_t j = 0; j < a.attrs.size(); ++j) {
        if (a.attrs[j] > b.attrs[j]) return false;
        if (a.attrs[j] < b.attrs[j]) strict = true;
    }
    return strict;
}

double instance_dominance_probability(const Instance& a, const Instance& b) {
    return instance_dominates(a, b) ? a.prob * b.prob : 0.0;
}

double object_dominance_probability(const UncertainObject& a, const UncertainObject& b,
                                    CompareCounter* counter) {
    if (a.id() == b.id())
        throw std::invalid_argument("object_dominance_probability: object compared to itself");
    if (a.dims() != b.dims())
        throw std::invalid_argument("object_dominance_probability: dimensionality mismatch");
    if (counter)
        counter->instance_pairs +=
            static_cast<std::uint64_t>(a.instances().size()) * b.instances().size();
    double sum = 0.0;
    for (const auto& x : a.instances())
        for (const auto& y : b.instances()) sum += instance_dominance_probability(x, y);
    return sum;
}

bool mbr_certainly_dominates(const Mbr& a, const Mbr& b, CompareCounter* counter) {
    if (a.dims() != b.dims())
        throw std::invalid_argument("mbr_certainly_dominates: dimensionality mismatch");
    if (counter) ++counter->mbr_tests;
    bool strict = false;
    for (std::size_t j = 0; j < a.dims(); ++j) {
        if (a.hi[j] > b.lo[j]) return false;
        if (a.hi[j] < b.lo[j]) strict = true;
    }
    return strict;
}

bool mbr_may_dominate(const Mbr& a, const Mbr& b, CompareCounter* counter) {
    if (a.dims() != b.dims())
        throw std::invalid_argument("mbr_may_dominate: dimensionality mismatch");
    if (counter) ++counter->mbr_tests;
    for (std::size_t j = 0; j < a.dims(); ++j)
        if (a.lo[j] > b.hi[j]) return false;
    return true;
}

bool certainly_dominates(const UncertainObject& a, const UncertainObject& b,
                         CompareCounter* counter) {
    if (a.id() == b.id())
        throw std::invalid_argument("certainly_dominates: object compared to itself");
    if (a.dims() != b.dims())
        throw std::invalid_argument("certainly_dominates: dimensionality mismatch");
    // Pr(a < b) can never exceed the product of the occurrence masses.
    if (a.total_prob() * b.total_prob() < 1.0 - kCertaintyEps) return false;
    if (counter) ++counter->mbr_tests;
    bool below = true, strict = false;
    for (std::size_t j = 0; j < a.dims(); ++j) {
        if (a.mbr().hi[j] > b.mbr().lo[j]) { below = false; break; }
        if (a.mbr().hi[j] < b.mbr().lo[j]) strict = true;
    }
    // Boxes overlap on some axis: at least one instance pair fails to
    // dominate, and with the occurrence masses at hand that pair alone
    // drops the sum below 1 - eps.
    if (!below) return false;
    if (strict) return true;
    // Touching corner (a.hi == b.lo on every axis): pairs meeting exactly at
    // the corner do not dominate, so enumerate.
    return object_dominance_probability(a, b, counter) >= 1.0 - kCertaintyEps;
}

}  // namespace epus
