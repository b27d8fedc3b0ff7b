#include <doctest.h>

#include <set>

#include "epus/edge.hpp"
#include "fixtures.hpp"

using namespace epus;

namespace {

std::vector<ObjectId> ids_of(const std::vector<ObjectPtr>& objs) {
    std::vector<ObjectId> out;
    for (const auto& o : objs) out.push_back(o->id());
    return out;
}

// Definition-level recomputation of both tiers from the edge's window.
void check_against_scratch(const EdgeNode& edge) {
    const auto objects = edge.window().objects_by_id();
    const auto want_sk1 = brute_force_skyline(objects);
    CHECK(edge.state().sk1_ids() == want_sk1);
    const std::set<ObjectId> sk1(want_sk1.begin(), want_sk1.end());
    std::vector<ObjectPtr> remainder;
    for (const auto& o : objects)
        if (!sk1.count(o->id())) remainder.push_back(o);
    CHECK(edge.state().sk2_ids() == brute_force_skyline(remainder));
}

}  // namespace

TEST_CASE("single-arrival walkthrough reports exactly the tier deltas") {
    auto stream = fixtures::scenario_stream();
    EdgeNode edge(1, 10, 4);

    for (std::uint64_t t = 1; t <= 16; ++t) {
        const UpdateMessage msg = edge.step(t, {stream[t - 1]});
        CHECK(msg.ecn_id == 1);
        CHECK(msg.step == t);
        check_against_scratch(edge);

        switch (t) {
            case 11:
                CHECK(edge.state().sk1_ids() == std::vector<ObjectId>{5});
                CHECK(edge.state().sk2_ids() == std::vector<ObjectId>{7, 10, 11});
                break;
            case 12:  // u2 expires silently; u12 is dominated into obscurity
                CHECK(msg.obsolete_ids == std::vector<ObjectId>{2});
                CHECK(msg.new_skyline.empty());
                CHECK(msg.new_candidates.empty());
                CHECK(edge.state().sk1_ids() == std::vector<ObjectId>{5});
                CHECK(edge.state().sk2_ids() == std::vector<ObjectId>{7, 10, 11});
                break;
            case 13:  // u13 enters the skyline on arrival
                CHECK(msg.obsolete_ids == std::vector<ObjectId>{3});
                CHECK(ids_of(msg.new_skyline) == std::vector<ObjectId>{13});
                CHECK(msg.new_candidates.empty());
                CHECK(edge.state().sk1_ids() == std::vector<ObjectId>{5, 13});
                break;
            case 14:  // u14 lands in the candidate tier
                CHECK(msg.obsolete_ids == std::vector<ObjectId>{4});
                CHECK(msg.new_skyline.empty());
                CHECK(ids_of(msg.new_candidates) == std::vector<ObjectId>{14});
                CHECK(edge.state().sk2_ids() == std::vector<ObjectId>{7, 10, 11, 14});
                break;
            case 15:  // u5 expires: candidates rise, the second tier refills
                CHECK(msg.obsolete_ids == std::vector<ObjectId>{5});
                CHECK(ids_of(msg.new_skyline) == std::vector<ObjectId>{7, 10, 11});
                CHECK(ids_of(msg.new_candidates) == std::vector<ObjectId>{6, 8});
                CHECK(edge.state().sk1_ids() == std::vector<ObjectId>{7, 10, 11, 13});
                CHECK(edge.state().sk2_ids() == std::vector<ObjectId>{6, 8, 14});
                break;
            case 16:  // u6 expires from sk2; u16 replaces it
                CHECK(msg.obsolete_ids == std::vector<ObjectId>{6});
                CHECK(msg.new_skyline.empty());
                CHECK(ids_of(msg.new_candidates) == std::vector<ObjectId>{16});
                CHECK(edge.state().sk1_ids() == std::vector<ObjectId>{7, 10, 11, 13});
                CHECK(edge.state().sk2_ids() == std::vector<ObjectId>{8, 14, 16});
                break;
            default:
                break;
        }
    }
}

TEST_CASE("messages are the set difference of consecutive tier states") {
    fixtures::RandomObjects gen(311);
    EdgeNode edge(2, 25, 4);
    for (std::uint64_t t = 0; t < 150; ++t) {
        const auto old_sk1 = fixtures::id_set(edge.state().sk1_ids());
        const auto old_sk2 = fixtures::id_set(edge.state().sk2_ids());
        const auto before = edge.window().objects_by_id();

        const std::size_t batch_size = t == 0 ? 25 : 1 + t % 2;
        const UpdateMessage msg = edge.step(t, gen.batch(batch_size, 3, 3, 50.0));

        // new_skyline/new_candidates: exactly the ids entering each tier.
        std::vector<ObjectId> want_sk1_new, want_sk2_new;
        for (ObjectId id : edge.state().sk1_ids())
            if (!old_sk1.count(id)) want_sk1_new.push_back(id);
        for (ObjectId id : edge.state().sk2_ids())
            if (!old_sk2.count(id)) want_sk2_new.push_back(id);
        CHECK(ids_of(msg.new_skyline) == want_sk1_new);
        CHECK(ids_of(msg.new_candidates) == want_sk2_new);

        // obsolete: exactly the window eviction, oldest first by id report.
        std::set<ObjectId> still;
        for (const auto& o : edge.window().objects_by_id()) still.insert(o->id());
        std::vector<ObjectId> want_obsolete;
        for (const auto& o : before)
            if (!still.count(o->id())) want_obsolete.push_back(o->id());
        CHECK(msg.obsolete_ids == want_obsolete);

        check_against_scratch(edge);
        CHECK(edge.index().check_invariants());
    }
}

TEST_CASE("empty batches produce empty messages and change nothing") {
    auto stream = fixtures::scenario_stream();
    EdgeNode edge(3, 10, 4);
    for (std::uint64_t t = 1; t <= 11; ++t) edge.step(t, {stream[t - 1]});
    const auto sk1 = edge.state().sk1_ids();
    const auto sk2 = edge.state().sk2_ids();
    const UpdateMessage msg = edge.step(12, {});
    CHECK(msg.empty());
    CHECK(message_cost_bytes(msg) == 0);
    CHECK(edge.state().sk1_ids() == sk1);
    CHECK(edge.state().sk2_ids() == sk2);
    CHECK(edge.window().size() == 10);
}

TEST_CASE("the first full-window batch uploads both tiers wholesale") {
    auto stream = fixtures::scenario_stream();
    std::vector<ObjectPtr> prefill(stream.begin(), stream.begin() + 10);
    EdgeNode edge(0, 10, 4);
    const UpdateMessage msg = edge.step(0, prefill);
    CHECK(msg.obsolete_ids.empty());
    CHECK(ids_of(msg.new_skyline) == std::vector<ObjectId>{5});
    CHECK(ids_of(msg.new_candidates) == std::vector<ObjectId>{1, 3, 7, 10});
    check_against_scratch(edge);
}

TEST_CASE("oversized batches are rejected") {
    fixtures::RandomObjects gen(5);
    EdgeNode edge(1, 4, 4);
    CHECK_THROWS_AS(edge.receive_data(gen.batch(5, 2, 1)), ConfigError);
}

TEST_CASE("comparison counter accumulates and resets") {
    fixtures::RandomObjects gen(6);
    EdgeNode edge(1, 10, 4);
    edge.step(0, gen.batch(10, 2, 3));
    const CompareCounter c1 = edge.take_counter();
    CHECK(c1.total() > 0);
    const CompareCounter c2 = edge.take_counter();
    CHECK(c2.total() == 0);
}
