#include <doctest.h>

#include <cmath>
#include <random>

#include "epus/wire.hpp"
#include "fixtures.hpp"

using namespace epus;

namespace {

bool same_objects(const std::vector<ObjectPtr>& a, const std::vector<ObjectPtr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i]->id() != b[i]->id() || a[i]->seq() != b[i]->seq()) return false;
        const auto& ia = a[i]->instances();
        const auto& ib = b[i]->instances();
        if (ia.size() != ib.size()) return false;
        for (std::size_t j = 0; j < ia.size(); ++j) {
            if (std::abs(ia[j].prob - ib[j].prob) > 1e-12 * std::abs(ia[j].prob)) return false;
            if (ia[j].attrs.size() != ib[j].attrs.size()) return false;
            for (std::size_t k = 0; k < ia[j].attrs.size(); ++k) {
                const double ref = ia[j].attrs[k];
                if (std::abs(ref - ib[j].attrs[k]) > 1e-9 * std::max(1.0, std::abs(ref)))
                    return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("empty message encodes to the canonical skeleton") {
    UpdateMessage msg;
    msg.ecn_id = 4;
    msg.step = 9;
    const std::string line = encode(msg);
    CHECK(line == R"({"ecn":4,"step":9,"obsolete":[],"new_skyline":[],"new_candidates":[]})");
    const UpdateMessage back = decode(line);
    CHECK(back.ecn_id == 4);
    CHECK(back.step == 9);
    CHECK(back.empty());
    CHECK(message_cost_bytes(back) == 0);
}

TEST_CASE("obsolete-only message round-trips and is costed per id") {
    UpdateMessage msg;
    msg.ecn_id = 1;
    msg.step = 12;
    msg.obsolete_ids = {2};
    const std::string line = encode(msg);
    CHECK(line == R"({"ecn":1,"step":12,"obsolete":[2],"new_skyline":[],"new_candidates":[]})");
    CHECK(message_cost_bytes(msg) == 3072);
    const UpdateMessage back = decode(line);
    CHECK(back.obsolete_ids == std::vector<ObjectId>{2});
    CHECK(back.new_skyline.empty());
    CHECK(back.new_candidates.empty());
}

TEST_CASE("full payload round-trips exactly") {
    UpdateMessage msg;
    msg.ecn_id = 2;
    msg.step = 15;
    msg.obsolete_ids = {5};
    msg.new_skyline = {fixtures::scenario_object(7), fixtures::scenario_object(10),
                       fixtures::scenario_object(11)};
    msg.new_candidates = {fixtures::scenario_object(6), fixtures::scenario_object(8)};
    const std::string line = encode(msg);
    CHECK(line.find(' ') == std::string::npos);
    CHECK(line.find('\n') == std::string::npos);
    CHECK(message_cost_bytes(msg) == 6 * 3072);
    CHECK(message_cost_bytes(msg, 1024) == 6 * 1024);

    const UpdateMessage back = decode(line);
    CHECK(back.ecn_id == 2);
    CHECK(back.step == 15);
    CHECK(back.obsolete_ids == msg.obsolete_ids);
    CHECK(same_objects(back.new_skyline, msg.new_skyline));
    CHECK(same_objects(back.new_candidates, msg.new_candidates));
    // Canonical form: re-encoding the decoded message reproduces the bytes.
    CHECK(encode(back) == line);
}

TEST_CASE("fractional values survive the nine-digit rendering") {
    UpdateMessage msg;
    msg.ecn_id = 0;
    msg.step = 1;
    msg.new_skyline = {make_object(
        42, 99,
        {{{0.1, 2.0 / 3.0, 123456.789}, 0.3}, {{1e-4, 999.999999, 5.5}, 0.7}})};
    const std::string line = encode(msg);
    const UpdateMessage back = decode(line);
    REQUIRE(back.new_skyline.size() == 1);
    CHECK(back.new_skyline[0]->seq() == 99);
    CHECK(same_objects(back.new_skyline, msg.new_skyline));
    CHECK(encode(back) == line);
}

TEST_CASE("format_double uses nine significant digits") {
    CHECK(format_double(0.25) == "0.25");
    CHECK(format_double(619) == "619");
    CHECK(format_double(2.0 / 3.0) == "0.666666667");
    CHECK(format_double(-0.0001) == "-0.0001");
    CHECK(format_double(123456789.0) == "123456789");
}

TEST_CASE("random messages re-encode byte-identically") {
    fixtures::RandomObjects gen(77);
    std::mt19937_64 rng(78);
    for (int round = 0; round < 50; ++round) {
        UpdateMessage msg;
        msg.ecn_id = static_cast<int>(rng() % 10);
        msg.step = rng() % 1000;
        const std::size_t n_obs = rng() % 4;
        for (std::size_t i = 0; i < n_obs; ++i) msg.obsolete_ids.push_back(rng() % 100000);
        msg.new_skyline = gen.batch(rng() % 3, 2 + rng() % 4, 1 + rng() % 5);
        msg.new_candidates = gen.batch(rng() % 3, 2 + rng() % 4, 1 + rng() % 5);
        const std::string line = encode(msg);
        const UpdateMessage back = decode(line);
        CHECK(encode(back) == line);
        CHECK(message_cost_bytes(back) == msg.payload_object_count() * 3072);
    }
}

TEST_CASE("decode rejects malformed input with a byte offset") {
    UpdateMessage msg;
    msg.ecn_id = 1;
    msg.step = 2;
    msg.obsolete_ids = {3};
    msg.new_skyline = {fixtures::scenario_object(5)};
    const std::string line = encode(msg);

    SUBCASE("truncation at any prefix fails") {
        for (std::size_t cut : {0ul, 1ul, 8ul, line.size() / 2, line.size() - 1}) {
            CHECK_THROWS_AS(decode(line.substr(0, cut)), DecodeError);
        }
    }
    SUBCASE("trailing garbage fails") {
        CHECK_THROWS_AS(decode(line + "x"), DecodeError);
        CHECK_THROWS_AS(decode(line + " "), DecodeError);
    }
    SUBCASE("reordered fields fail even when json-valid") {
        CHECK_THROWS_AS(
            decode(R"({"step":9,"ecn":4,"obsolete":[],"new_skyline":[],"new_candidates":[]})"),
            DecodeError);
    }
    SUBCASE("whitespace variants fail") {
        CHECK_THROWS_AS(
            decode(R"({"ecn": 4,"step":9,"obsolete":[],"new_skyline":[],"new_candidates":[]})"),
            DecodeError);
    }
    SUBCASE("bad numbers fail") {
        CHECK_THROWS_AS(
            decode(R"({"ecn":x,"step":9,"obsolete":[],"new_skyline":[],"new_candidates":[]})"),
            DecodeError);
        CHECK_THROWS_AS(
            decode(R"({"ecn":4,"step":9,"obsolete":[-2],"new_skyline":[],"new_candidates":[]})"),
            DecodeError);
    }
    SUBCASE("offsets point at the failed token") {
        try {
            decode(R"({"ecn":4,"STEP":9,"obsolete":[],"new_skyline":[],"new_candidates":[]})");
            FAIL("expected DecodeError");
        } catch (const DecodeError& e) {
            CHECK(e.offset == 8);  // start of the expected `,"step":` literal
        }
    }
    SUBCASE("object payloads are validated on decode") {
        // Probability mass above one is rejected by object construction.
        CHECK_THROWS_AS(
            decode(R"({"ecn":4,"step":9,"obsolete":[],)"
                   R"("new_skyline":[{"id":1,"seq":1,"instances":[{"p":0.9,"attrs":[1,2]},)"
                   R"({"p":0.9,"attrs":[1,2]}]}],"new_candidates":[]})"),
            std::exception);
    }
}
