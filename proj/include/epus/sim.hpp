#ifndef EPUS_SIM_HPP
#define EPUS_SIM_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "epus/baselines.hpp"
#include "epus/edge.hpp"
#include "epus/server.hpp"

namespace epus {

/**
 * Run parameters. Defaults mirror the reference evaluation setup: six edge
 * nodes, 2-d objects with five instances inside a radius-5 ball, 300-object
 * windows, 3 KB objects on a 1 Mb/s uplink, 10^7 comparisons/s of compute.
 */
struct SimConfig {
    MethodKind method = MethodKind::kEpus;
    int ecns = 6;                    // m
    std::size_t dims = 2;            // d
    std::size_t instances = 5;       // n per object
    double radius = 5.0;             // instance scatter around the center
    std::size_t window_k = 300;      // per-edge window capacity
    std::uint64_t steps = 500;       // ticks after the initial upload
    std::uint64_t seed = 1;
    std::size_t batch = 1;           // arrivals per edge per tick
    double rate_mbps = 1.0;          // server uplink B_S
    double object_kb = 3.0;          // |u|, priced at 1024 bytes per KB
    double comp_power_edge = 1e7;    // P_k, comparisons per second
    double comp_power_server = 1e7;  // P_S
    std::size_t fanout = 8;
    double domain = 1000.0;          // centers drawn from [0, domain]^d

    void validate() const;  // throws ConfigError
    std::size_t object_bytes() const { return static_cast<std::size_t>(object_kb * 1024.0); }
};

/** Per-tick measurements; one CSV row. */
struct MetricsRecord {
    std::uint64_t step = 0;
    std::vector<std::uint64_t> comparisons_per_edge;
    std::uint64_t comparisons_edge_total = 0;
    std::uint64_t comparisons_server = 0;
    std::uint64_t objects_tx = 0;  // ids + objects across all messages
    std::uint64_t bytes_tx = 0;
    double l_comp_edge_s = 0.0;
    double l_comm_s = 0.0;
    double l_comp_server_s = 0.0;
    double l_system_s = 0.0;
};

struct LatencyBreakdown {
    double comp_edge_s = 0.0;
    double comm_s = 0.0;
    double comp_server_s = 0.0;
    double system_s = 0.0;
};

// Latency model over measured counters: mean edge compute stall, serialised
// transfer time of the tick's objects, server compute stall, and their sum.
LatencyBreakdown latency_of(const std::vector<std::uint64_t>& comparisons_per_edge,
                            std::uint64_t comparisons_server, std::uint64_t objects_tx,
                            const SimConfig& cfg);

/**
 * Deterministic stream source for one edge: object centers uniform in the
 * domain cube, instances uniform in a radius ball around the center,
 * occurrence probabilities normalised to sum to one. Streams are seeded per
 * edge, so edge k's data does not depend on how many peers exist.
 */
class StreamGenerator {
  public:
    StreamGenerator(std::uint64_t seed, int ecn_id, const SimConfig& cfg);

    ObjectPtr next(SeqNo seq);

  private:
    double unit();  // [0,1)
    std::mt19937_64 rng_;
    int ecn_id_;
    std::size_t dims_, instances_;
    double radius_, domain_;
    std::uint64_t local_count_ = 0;
};

using TickObserver = std::function<void(std::uint64_t step, const std::vector<ObjectPtr>& union_window,
                                        const std::vector<ObjectId>& sk1,
                                        const std::vector<ObjectId>& sk2)>;

// Full run: tick 0 fills every window and uploads the initial sets, then
// `steps` streaming ticks. The observer, when set, sees the union of edge
// windows and the coordinator tiers after every tick.
std::vector<MetricsRecord> run_simulation(const SimConfig& cfg, const TickObserver& observer = {},
                                          std::ostream* trace_out = nullptr);

void write_csv(std::ostream& out, const SimConfig& cfg, const std::vector<MetricsRecord>& records);
std::string csv_string(const SimConfig& cfg, const std::vector<MetricsRecord>& records);

// Mean objects shipped per tick (the transmission-cost headline number).
double average_objects_per_tick(const std::vector<MetricsRecord>& records);

struct SweepSpec {
    std::string param;  // ecns | window | dims | instances | radius
    std::vector<double> values;
};

// Default value list for each sweepable parameter.
std::vector<double> default_sweep_values(const std::string& param);
SimConfig apply_sweep_value(SimConfig base, const std::string& param, double value);

}  // namespace epus

#endif  // EPUS_SIM_HPP
