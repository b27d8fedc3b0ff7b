#include <doctest.h>

#include <algorithm>
#include <set>

#include "epus/skyline.hpp"
#include "fixtures.hpp"

using namespace epus;
using fixtures::id_set;

namespace {

// Window-sliding rig that keeps state/window/index in sync and checks the
// incremental result against scratch recomputation after every slide.
struct Rig {
    SlidingWindow window;
    RTree index;
    SkylineState state;

    explicit Rig(std::size_t capacity) : window(capacity), index(4) {}

    UpdateOutcome slide(const std::vector<ObjectPtr>& batch) {
        auto stale = window.collect_obsolete(batch.size());
        std::vector<ObjectId> obsolete_ids;
        for (const auto& s : stale) {
            obsolete_ids.push_back(s->id());
            window.remove(s->id());
            index.erase(s->id());
        }
        for (const auto& b : batch) {
            window.add(b);
            index.insert(b->id(), b->mbr());
        }
        return update_skyline(state, batch, obsolete_ids, window, index);
    }

    void check_exact() {
        const auto objects = window.objects_by_id();
        const auto want_sk1 = brute_force_skyline(objects);
        CHECK(state.sk1_ids() == want_sk1);
        std::vector<ObjectPtr> remainder;
        const std::set<ObjectId> sk1(want_sk1.begin(), want_sk1.end());
        for (const auto& o : objects)
            if (!sk1.count(o->id())) remainder.push_back(o);
        CHECK(state.sk2_ids() == brute_force_skyline(remainder));
        for (ObjectId id : state.sk2_ids()) CHECK_FALSE(state.in_sk1(id));
    }
};

}  // namespace

TEST_CASE("brute force skyline on the worked objects") {
    // u2 dominates u1 only with probability 0.83, so u1 stays; every u2
    // instance beats every u3 instance, so u3 is certainly dominated.
    std::vector<ObjectPtr> objs{fixtures::sensor_u1(), fixtures::sensor_u2(),
                                fixtures::sensor_u3()};
    CHECK(brute_force_skyline(objs) == std::vector<ObjectId>{1, 2});

    auto low = make_object(50, 50, {{{1, 1}, 1.0}});
    objs.push_back(low);
    CHECK(brute_force_skyline(objs) == std::vector<ObjectId>{50});

    CHECK(brute_force_skyline({}).empty());
    CHECK(brute_force_skyline({low}) == std::vector<ObjectId>{50});
}

TEST_CASE("indexed skyline equals brute force") {
    fixtures::RandomObjects gen(41);
    for (int round = 0; round < 100; ++round) {
        const std::size_t dims = 2 + round % 3;
        auto objs = gen.batch(3 + round % 60, dims, 1 + round % 5, 40.0);
        CHECK(compute_skyline(objs) == brute_force_skyline(objs));
    }
}

TEST_CASE("candidate skyline excludes the first tier and its influence") {
    auto objs = fixtures::scenario_stream();
    std::vector<ObjectPtr> window(objs.begin() + 1, objs.begin() + 11);  // u2..u11

    RTree index = RTree::bulk_load(window, 4);
    const auto sk1 = compute_skyline(window, index);
    CHECK(sk1 == std::vector<ObjectId>{5});
    CHECK(compute_candidate_skyline(window, {5}, index) == std::vector<ObjectId>{7, 10, 11});

    // When the skyline holds everything, no candidates remain.
    std::vector<ObjectPtr> incomparable{fixtures::sensor_u1(), fixtures::sensor_u3()};
    RTree idx2 = RTree::bulk_load(incomparable, 4);
    CHECK(compute_candidate_skyline(incomparable, {1, 3}, idx2).empty());
}

TEST_CASE("candidate skyline equals brute force over the remainder") {
    fixtures::RandomObjects gen(43);
    for (int round = 0; round < 60; ++round) {
        auto objs = gen.batch(4 + round % 40, 2 + round % 2, 3, 30.0);
        RTree index = RTree::bulk_load(objs);
        const auto sk1 = compute_skyline(objs, index);
        const std::set<ObjectId> sk1_set(sk1.begin(), sk1.end());
        std::vector<ObjectPtr> remainder;
        for (const auto& o : objs)
            if (!sk1_set.count(o->id())) remainder.push_back(o);
        CHECK(compute_candidate_skyline(objs, sk1_set, index) ==
              brute_force_skyline(remainder));
    }
}

TEST_CASE("walkthrough stream hits every expected state") {
    auto stream = fixtures::scenario_stream();
    Rig rig(10);
    for (std::size_t t = 1; t <= 16; ++t) {
        rig.slide({stream[t - 1]});
        rig.check_exact();
        switch (t) {
            case 11:
            case 12:
                CHECK(rig.state.sk1_ids() == std::vector<ObjectId>{5});
                CHECK(rig.state.sk2_ids() == std::vector<ObjectId>{7, 10, 11});
                break;
            case 13:
                CHECK(rig.state.sk1_ids() == std::vector<ObjectId>{5, 13});
                CHECK(rig.state.sk2_ids() == std::vector<ObjectId>{7, 10, 11});
                break;
            case 14:
                CHECK(rig.state.sk1_ids() == std::vector<ObjectId>{5, 13});
                CHECK(rig.state.sk2_ids() == std::vector<ObjectId>{7, 10, 11, 14});
                break;
            case 15:
                CHECK(rig.state.sk1_ids() == std::vector<ObjectId>{7, 10, 11, 13});
                CHECK(rig.state.sk2_ids() == std::vector<ObjectId>{6, 8, 14});
                break;
            case 16:
                CHECK(rig.state.sk1_ids() == std::vector<ObjectId>{7, 10, 11, 13});
                CHECK(rig.state.sk2_ids() == std::vector<ObjectId>{8, 14, 16});
                break;
            default:
                break;
        }
    }
}

TEST_CASE("update promotions and demotions are reported") {
    auto stream = fixtures::scenario_stream();
    Rig rig(10);
    for (std::size_t t = 1; t <= 14; ++t) rig.slide({stream[t - 1]});

    auto outcome = rig.slide({stream[14]});  // u5 expires, second tier rises
    CHECK(outcome.promoted == std::vector<ObjectId>{7, 10, 11});
    CHECK(outcome.demoted.empty());

    // A strictly better arrival demotes the incumbents it dominates.
    Rig rig2(10);
    rig2.slide({fixtures::scenario_object(12)});  // (650,800)
    auto out2 = rig2.slide({fixtures::scenario_object(5)});  // (80,80)
    CHECK(out2.demoted == std::vector<ObjectId>{12});
    CHECK(rig2.state.sk1_ids() == std::vector<ObjectId>{5});
    CHECK(rig2.state.sk2_ids() == std::vector<ObjectId>{12});
}

TEST_CASE("empty update is the identity") {
    auto stream = fixtures::scenario_stream();
    Rig rig(10);
    for (std::size_t t = 1; t <= 11; ++t) rig.slide({stream[t - 1]});
    const auto sk1 = rig.state.sk1_ids();
    const auto sk2 = rig.state.sk2_ids();
    auto outcome = update_skyline(rig.state, {}, {}, rig.window, rig.index);
    CHECK(outcome.promoted.empty());
    CHECK(outcome.demoted.empty());
    CHECK(rig.state.sk1_ids() == sk1);
    CHECK(rig.state.sk2_ids() == sk2);
}

TEST_CASE("incremental updates track scratch recomputation across grids") {
    int combo = 0;
    for (std::size_t dims : {2, 3, 4}) {
        for (std::size_t instances : {1, 3, 5}) {
            for (std::size_t capacity : {10, 20, 50}) {
                fixtures::RandomObjects gen(1000 + 17 * ++combo);
                Rig rig(capacity);
                const int steps = 200;
                for (int t = 0; t < steps; ++t) {
                    const std::size_t batch_size = 1 + (t % 3 == 0 ? 1 : 0);
                    rig.slide(gen.batch(batch_size, dims, instances, 60.0));
                    rig.check_exact();
                }
            }
        }
    }
}
