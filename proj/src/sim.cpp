#include "epus/sim.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "epus/wire.hpp"

namespace epus {

void SimConfig::validate() const {
    if (ecns < 1) throw ConfigError("ecns must be at least 1");
    if (dims < 1) throw ConfigError("dims must be at least 1");
    if (instances < 1) throw ConfigError("instances must be at least 1");
    if (!(radius >= 0.0)) throw ConfigError("radius must be non-negative");
    if (window_k < 1) throw ConfigError("window must be at least 1");
    if (batch < 1) throw ConfigError("batch must be at least 1");
    if (batch > window_k) throw ConfigError("batch larger than window capacity");
    if (!(rate_mbps > 0.0)) throw ConfigError("rate-mbps must be positive");
    if (!(object_kb > 0.0)) throw ConfigError("object-kb must be positive");
    if (!(comp_power_edge > 0.0)) throw ConfigError("comp-power must be positive");
    if (!(comp_power_server > 0.0)) throw ConfigError("comp-power must be positive");
    if (fanout < 2) throw ConfigError("fanout must be at least 2");
    if (!(domain > 0.0)) throw ConfigError("domain must be positive");
}

LatencyBreakdown latency_of(const std::vector<std::uint64_t>& comparisons_per_edge,
                            std::uint64_t comparisons_server, std::uint64_t objects_tx,
                            const SimConfig& cfg) {
    cfg.validate();
    LatencyBreakdown out;
    double edge_sum = 0.0;
    for (std::uint64_t c : comparisons_per_edge)
        edge_sum += static_cast<double>(c) / cfg.comp_power_edge;
    out.comp_edge_s = comparisons_per_edge.empty()
                          ? 0.0
                          : edge_sum / static_cast<double>(comparisons_per_edge.size());
    const double bits_per_object = static_cast<double>(cfg.object_bytes()) * 8.0;
    out.comm_s = static_cast<double>(objects_tx) * bits_per_object / (cfg.rate_mbps * 1e6);
    out.comp_server_s = static_cast<double>(comparisons_server) / cfg.comp_power_server;
    out.system_s = out.comp_edge_s + out.comm_s + out.comp_server_s;
    return out;
}

// ---------------------------------------------------------------------------
// Stream generation

StreamGenerator::StreamGenerator(std::uint64_t seed, int ecn_id, const SimConfig& cfg)
    : ecn_id_(ecn_id),
      dims_(cfg.dims),
      instances_(cfg.instances),
      radius_(cfg.radius),
      domain_(cfg.domain) {
    // Stable per-edge substream regardless of peer count.
    std::seed_seq sseq{seed, static_cast<std::uint64_t>(ecn_id)};
    rng_.seed(sseq);
}

double StreamGenerator::unit() {
    // Top 53 bits -> [0,1); identical on every platform, unlike the
    // standard distributions.
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

ObjectPtr StreamGenerator::next(SeqNo seq) {
    std::vector<double> center(dims_);
    for (auto& c : center) c = unit() * domain_;

    std::vector<Instance> instances(instances_);
    for (auto& ins : instances) {
        // Uniform point in the radius ball: gaussian direction, radial
        // inverse-CDF distance.
        std::vector<double> dir(dims_);
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (auto& g : dir) {
                double u1;
                do { u1 = unit(); } while (u1 <= 0.0);
                const double u2 = unit();
                g = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
                norm2 += g * g;
            }
        } while (norm2 == 0.0);
        const double dist = radius_ * std::pow(unit(), 1.0 / static_cast<double>(dims_));
        const double scale = dist / std::sqrt(norm2);
        ins.attrs.resize(dims_);
        for (std::size_t j = 0; j < dims_; ++j) ins.attrs[j] = center[j] + dir[j] * scale;
    }
    double total = 0.0;
    for (auto& ins : instances) {
        do { ins.prob = unit(); } while (ins.prob <= 0.0);
        total += ins.prob;
    }
    for (auto& ins : instances) ins.prob /= total;

    const ObjectId id = static_cast<ObjectId>(ecn_id_) * 1000000ull + (++local_count_);
    return make_object(id, seq, std::move(instances));
}

// ---------------------------------------------------------------------------
// Run loop

namespace {

struct EdgeSlot {
    std::unique_ptr<EdgeNode> delta;
    std::unique_ptr<BaselineEdge> reference;
    StreamGenerator gen;

    UpdateMessage step(std::uint64_t t, const std::vector<ObjectPtr>& batch) {
        return delta ? delta->step(t, batch) : reference->step(t, batch);
    }
    CompareCounter take_counter() {
        return delta ? delta->take_counter() : reference->take_counter();
    }
    const SlidingWindow& window() const {
        return delta ? delta->window() : reference->window();
    }
};

}  // namespace

std::vector<MetricsRecord> run_simulation(const SimConfig& cfg, const TickObserver& observer,
                                          std::ostream* trace_out) {
    cfg.validate();
    const bool is_epus = cfg.method == MethodKind::kEpus;

    std::vector<EdgeSlot> edges;
    edges.reserve(static_cast<std::size_t>(cfg.ecns));
    for (int k = 1; k <= cfg.ecns; ++k) {
        EdgeSlot slot{nullptr, nullptr, StreamGenerator(cfg.seed, k, cfg)};
        if (is_epus)
            slot.delta = std::make_unique<EdgeNode>(k, cfg.window_k, cfg.fanout);
        else
            slot.reference = std::make_unique<BaselineEdge>(cfg.method, k, cfg.window_k, cfg.fanout);
        edges.push_back(std::move(slot));
    }

    std::unique_ptr<ServerNode> server;
    std::unique_ptr<BaselineServer> ref_server;
    if (is_epus)
        server = std::make_unique<ServerNode>(
            static_cast<std::size_t>(cfg.ecns) * cfg.window_k, cfg.window_k, cfg.fanout);
    else
        ref_server = std::make_unique<BaselineServer>(cfg.method, cfg.fanout);

    std::vector<MetricsRecord> records;
    records.reserve(cfg.steps + 1);
    SeqNo seq = 0;

    const auto run_tick = [&](std::uint64_t t, std::size_t batch_size) {
        std::vector<UpdateMessage> msgs;
        msgs.reserve(edges.size());
        MetricsRecord rec;
        rec.step = t;
        for (auto& slot : edges) {
            std::vector<ObjectPtr> batch;
            batch.reserve(batch_size);
            for (std::size_t i = 0; i < batch_size; ++i) batch.push_back(slot.gen.next(++seq));
            msgs.push_back(slot.step(t, batch));
        }
        for (const auto& msg : msgs) {
            rec.objects_tx += msg.payload_object_count();
            rec.bytes_tx += message_cost_bytes(msg, cfg.object_bytes());
            if (trace_out && !msg.empty()) *trace_out << encode(msg) << '\n';
        }
        if (is_epus)
            server->server_step(msgs);
        else
            ref_server->server_step(msgs);

        for (auto& slot : edges) {
            const std::uint64_t c = slot.take_counter().total();
            rec.comparisons_per_edge.push_back(c);
            rec.comparisons_edge_total += c;
        }
        rec.comparisons_server =
            (is_epus ? server->take_counter() : ref_server->take_counter()).total();

        const LatencyBreakdown lat =
            latency_of(rec.comparisons_per_edge, rec.comparisons_server, rec.objects_tx, cfg);
        rec.l_comp_edge_s = lat.comp_edge_s;
        rec.l_comm_s = lat.comm_s;
        rec.l_comp_server_s = lat.comp_server_s;
        rec.l_system_s = lat.system_s;
        records.push_back(std::move(rec));

        if (observer) {
            std::map<ObjectId, ObjectPtr> merged;
            for (const auto& slot : edges)
                for (const auto& [id, obj] : slot.window().by_id()) merged.emplace(id, obj);
            std::vector<ObjectPtr> union_window;
            union_window.reserve(merged.size());
            for (const auto& [id, obj] : merged) union_window.push_back(obj);
            std::vector<ObjectId> sk1, sk2;
            if (is_epus) {
                sk1 = server->state().sk1_ids();
                sk2 = server->state().sk2_ids();
            } else {
                sk1 = ref_server->sk1_ids();
            }
            observer(t, union_window, sk1, sk2);
        }
    };

    run_tick(0, cfg.window_k);  // initial full windows + full-set upload
    for (std::uint64_t t = 1; t <= cfg.steps; ++t) run_tick(t, cfg.batch);
    return records;
}

// ---------------------------------------------------------------------------
// Output

void write_csv(std::ostream& out, const SimConfig& cfg,
               const std::vector<MetricsRecord>& records) {
    out << "step,method,m,d,n,r,window_k,comparisons_edge_total,comparisons_server,"
           "objects_tx,bytes_tx,l_comp_edge_s,l_comm_s,l_comp_server_s,l_system_s\n";
    const std::string method = to_string(cfg.method);
    for (const auto& rec : records) {
        out << rec.step << ',' << method << ',' << cfg.ecns << ',' << cfg.dims << ','
            << cfg.instances << ',' << format_double(cfg.radius) << ',' << cfg.window_k << ','
            << rec.comparisons_edge_total << ',' << rec.comparisons_server << ','
            << rec.objects_tx << ',' << rec.bytes_tx << ',' << format_double(rec.l_comp_edge_s)
            << ',' << format_double(rec.l_comm_s) << ',' << format_double(rec.l_comp_server_s)
            << ',' << format_double(rec.l_system_s) << '\n';
    }
}

std::string csv_string(const SimConfig& cfg, const std::vector<MetricsRecord>& records) {
    std::ostringstream ss;
    write_csv(ss, cfg, records);
    return ss.str();
}

double average_objects_per_tick(const std::vector<MetricsRecord>& records) {
    if (records.empty()) return 0.0;
    double total = 0.0;
    for (const auto& rec : records) total += static_cast<double>(rec.objects_tx);
    return total / static_cast<double>(records.size());
}

std::vector<double> default_sweep_values(const std::string& param) {
    if (param == "ecns") return {2, 4, 6, 8, 10};
    if (param == "window") return {100, 300, 500, 700};
    if (param == "dims") return {2, 3, 4, 5, 6, 7, 8, 9, 10};
    if (param == "instances") return {3, 4, 5, 6, 7, 8, 9, 10};
    if (param == "radius") return {4, 6, 8, 10, 12, 14, 16, 18, 20};
    throw ConfigError("unknown sweep parameter '" + param +
                      "' (expected ecns|window|dims|instances|radius)");
}

SimConfig apply_sweep_value(SimConfig base, const std::string& param, double value) {
    if (param == "ecns") base.ecns = static_cast<int>(value);
    else if (param == "window") base.window_k = static_cast<std::size_t>(value);
    else if (param == "dims") base.dims = static_cast<std::size_t>(value);
    else if (param == "instances") base.instances = static_cast<std::size_t>(value);
    else if (param == "radius") base.radius = value;
    else
        throw ConfigError("unknown sweep parameter '" + param +
                          "' (expected ecns|window|dims|instances|radius)");
    return base;
}

}  // namespace epus
