#ifndef EPUS_TESTS_FIXTURES_HPP
#define EPUS_TESTS_FIXTURES_HPP

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "epus/uncertain.hpp"

namespace fixtures {

using epus::Instance;
using epus::ObjectId;
using epus::ObjectPtr;

// Three-object temperature/humidity example used across the dominance
// tests: u2 beats u1 with probability 0.83, u3 is far off in humidity.
inline ObjectPtr sensor_u1() {
    return epus::make_object(1, 1,
                             {{{28, 37}, 0.4}, {{27, 35}, 0.1}, {{25, 38}, 0.5}});
}
inline ObjectPtr sensor_u2() {
    return epus::make_object(2, 2, {{{9, 35}, 0.1}, {{9, 38}, 0.2}, {{10, 37}, 0.7}});
}
inline ObjectPtr sensor_u3() {
    return epus::make_object(3, 3,
                             {{{24, 92}, 0.5}, {{22, 91}, 0.3}, {{22, 88}, 0.2}});
}

// Sixteen-object 2-d stream for the windowed walkthrough (capacity 10, one
// arrival per tick). Every object has three instances on the diagonal of a
// 2x2 box around its center with occurrence probabilities 1/4, 1/2, 1/4, so
// object-level certain dominance reduces to center separation by > 2 per
// axis. The centers are laid out so that ticks 11..16 exercise each update
// scenario once: silent expiries, a skyline arrival, a candidate arrival, a
// skyline expiry with promotions, and a candidate expiry with replacement.
inline ObjectPtr scenario_object(ObjectId id) {
    static const double centers[17][2] = {
        {0, 0},      // unused
        {500, 500},  // u1
        {500, 980},  // u2
        {950, 450},  // u3
        {850, 550},  // u4
        {80, 80},    // u5
        {400, 650},  // u6
        {100, 600},  // u7
        {200, 990},  // u8
        {300, 995},  // u9
        {90, 950},   // u10
        {600, 100},  // u11
        {650, 800},  // u12
        {620, 40},   // u13
        {700, 90},   // u14
        {680, 850},  // u15
        {610, 500},  // u16
    };
    const double x = centers[id][0], y = centers[id][1];
    return epus::make_object(id, id,
                             {{{x - 1, y - 1}, 0.25}, {{x, y}, 0.5}, {{x + 1, y + 1}, 0.25}});
}

inline std::vector<ObjectPtr> scenario_stream() {
    std::vector<ObjectPtr> out;
    for (ObjectId id = 1; id <= 16; ++id) out.push_back(scenario_object(id));
    return out;
}

// Deterministic random objects for property suites. `id_base` keeps ids
// disjoint when several generators feed one coordinator.
class RandomObjects {
  public:
    explicit RandomObjects(std::uint64_t seed, ObjectId id_base = 0)
        : rng_(seed), next_id_(id_base) {}

    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    ObjectPtr next(std::size_t dims, std::size_t instances, double spread = 5.0,
                   double domain = 1000.0) {
        std::vector<double> center(dims);
        for (auto& c : center) c = unit() * domain;
        std::vector<Instance> ins(instances);
        double total = 0.0;
        for (auto& i : ins) {
            i.attrs.resize(dims);
            for (std::size_t j = 0; j < dims; ++j)
                i.attrs[j] = center[j] + (unit() - 0.5) * spread;
            do { i.prob = unit(); } while (i.prob <= 0.0);
            total += i.prob;
        }
        for (auto& i : ins) i.prob /= total;
        const ObjectId id = ++next_id_;
        return epus::make_object(id, id, std::move(ins));
    }

    std::vector<ObjectPtr> batch(std::size_t count, std::size_t dims, std::size_t instances,
                                 double spread = 5.0, double domain = 1000.0) {
        std::vector<ObjectPtr> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(next(dims, instances, spread, domain));
        return out;
    }

  private:
    std::mt19937_64 rng_;
    ObjectId next_id_;
};

inline std::set<ObjectId> id_set(const std::vector<ObjectId>& ids) {
    return {ids.begin(), ids.end()};
}

}  // namespace fixtures

#endif  // EPUS_TESTS_FIXTURES_HPP
