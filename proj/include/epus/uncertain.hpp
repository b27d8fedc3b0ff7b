#ifndef EPUS_UNCERTAIN_HPP
#define EPUS_UNCERTAIN_HPP

#include <memory>
#include <vector>

#include "epus/common.hpp"

namespace epus {

/**
 * One sampled realisation of an uncertain object: an attribute vector plus
 * the probability that this realisation occurs. Smaller attribute values are
 * preferred on every axis.
 */
struct Instance {
    std::vector<double> attrs;
    double prob = 0.0;
};

/** Axis-aligned minimum bounding rectangle over instance positions. */
struct Mbr {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dims() const { return lo.size(); }
};

Mbr mbr_of(const std::vector<Instance>& instances);

/**
 * Discrete uncertain object: a fixed id, a stream sequence number and a
 * non-empty set of instances whose occurrence probabilities sum to at most
 * one. Objects are immutable after construction and shared by pointer
 * between windows, skyline sets and messages.
 */
class UncertainObject {
  public:
    UncertainObject(ObjectId id, SeqNo seq, std::vector<Instance> instances);

    ObjectId id() const { return id_; }
    SeqNo seq() const { return seq_; }
    const std::vector<Instance>& instances() const { return instances_; }
    const Mbr& mbr() const { return mbr_; }
    double total_prob() const { return total_prob_; }
    std::size_t dims() const { return mbr_.dims(); }

  private:
    ObjectId id_;
    SeqNo seq_;
    std::vector<Instance> instances_;
    Mbr mbr_;
    double total_prob_;
};

using ObjectPtr = std::shared_ptr<const UncertainObject>;

ObjectPtr make_object(ObjectId id, SeqNo seq, std::vector<Instance> instances);

// a dominates b iff a <= b on every axis and a < b on at least one.
// Equal vectors do not dominate each other.
bool instance_dominates(const Instance& a, const Instance& b);

// Joint occurrence probability if a dominates b, else 0.
double instance_dominance_probability(const Instance& a, const Instance& b);

// Pr(a < b): sum of instance_dominance_probability over all instance pairs.
// Adds |a|*|b| instance-pair evaluations to the counter when given.
double object_dominance_probability(const UncertainObject& a, const UncertainObject& b,
                                    CompareCounter* counter = nullptr);

// True iff a's box lies at or below b's box on every axis with at least one
// strictly separating axis; then every instance pair dominates.
bool mbr_certainly_dominates(const Mbr& a, const Mbr& b, CompareCounter* counter = nullptr);

// True iff a could dominate something inside b: a.lo <= b.hi on every axis.
bool mbr_may_dominate(const Mbr& a, const Mbr& b, CompareCounter* counter = nullptr);

// Pr(a < b) >= 1 - eps. Decided from the boxes and total probabilities
// whenever possible; instance pairs are enumerated only in the degenerate
// touching-corner case.
bool certainly_dominates(const UncertainObject& a, const UncertainObject& b,
                         CompareCounter* counter = nullptr);

}  // namespace epus

#endif  // EPUS_UNCERTAIN_HPP
