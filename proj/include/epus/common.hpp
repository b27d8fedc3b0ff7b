#ifndef EPUS_COMMON_HPP
#define EPUS_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace epus {

using ObjectId = std::uint64_t;
using SeqNo = std::uint64_t;

// Absolute slack for "dominance probability equals 1" tests. Exact equality
// is unreachable once n^2 products are accumulated in floating point.
inline constexpr double kCertaintyEps = 1e-9;

// Construction slack for the occurrence-probability sum. Looser than the
// certainty epsilon: wire values are rendered with nine significant digits,
// so a decoded object's sum may drift by a few ulps per instance.
inline constexpr double kProbSumSlack = 1e-6;

// Raised when a node violates the edge/server update protocol
// (duplicate ids, window capacity breach, malformed tick input).
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised for unusable run configurations (zero rates, oversized batches).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a wire payload cannot be parsed; carries the byte offset of
// the first offending character.
struct DecodeError : std::runtime_error {
    std::size_t offset;
    DecodeError(const std::string& what, std::size_t at)
        : std::runtime_error(what + " (byte " + std::to_string(at) + ")"), offset(at) {}
};

// Shared unit of computational cost: instance-pair dominance evaluations
// plus MBR tests. All methods report through the same counter so their
// latency figures stay comparable.
struct CompareCounter {
    std::uint64_t instance_pairs = 0;
    std::uint64_t mbr_tests = 0;

    std::uint64_t total() const { return instance_pairs + mbr_tests; }
    void reset() { instance_pairs = 0; mbr_tests = 0; }

    CompareCounter& operator+=(const CompareCounter& o) {
        instance_pairs += o.instance_pairs;
        mbr_tests += o.mbr_tests;
        return *this;
    }
};

}  // namespace epus

#endif  // EPUS_COMMON_HPP
