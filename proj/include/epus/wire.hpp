#ifndef EPUS_WIRE_HPP
#define EPUS_WIRE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "epus/uncertain.hpp"

namespace epus {

/**
 * One edge-to-coordinator update. Carries the ids that expired from the edge
 * window plus the full objects that newly entered the edge skyline or the
 * candidate tier. Also doubles as the trace record for offline replay.
 */
struct UpdateMessage {
    int ecn_id = 0;
    std::uint64_t step = 0;
    std::vector<ObjectId> obsolete_ids;
    std::vector<ObjectPtr> new_skyline;
    std::vector<ObjectPtr> new_candidates;

    bool empty() const {
        return obsolete_ids.empty() && new_skyline.empty() && new_candidates.empty();
    }
    std::size_t payload_object_count() const {
        return obsolete_ids.size() + new_skyline.size() + new_candidates.size();
    }
};

/*
 * Canonical single-line encoding, e.g.
 *
 *   {"ecn":3,"step":12,"obsolete":[2],"new_skyline":[{"id":13,"seq":13,
 *    "instances":[{"p":0.25,"attrs":[619,39]}]}],"new_candidates":[]}
 *
 * Field order is fixed, no whitespace is emitted, and floating-point values
 * are rendered with nine significant digits, so equal messages encode to
 * identical bytes on every platform. The decoder enforces the exact layout
 * and reports the byte offset of the first deviation.
 */
std::string encode(const UpdateMessage& msg);
UpdateMessage decode(std::string_view line);

// Accounting model: every listed id or object costs one full object packet
// (default 3 KB = 3072 bytes); an all-empty message costs nothing.
std::size_t message_cost_bytes(const UpdateMessage& msg, std::size_t object_bytes = 3072);

// Nine-significant-digit rendering used across the wire format and CSV
// output; parse-back stays within 1e-9 relative error.
std::string format_double(double v);

}  // namespace epus

#endif  // EPUS_WIRE_HPP
