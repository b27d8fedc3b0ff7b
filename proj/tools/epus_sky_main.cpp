// epus-sky: run, sweep and replay entry points around the simulation core.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "epus/sim.hpp"
#include "epus/wire.hpp"

namespace {

struct CommonOpts {
    std::string method = "epus";
    epus::SimConfig cfg;
};

void add_common(CLI::App* app, CommonOpts& o) {
    app->add_option("--method", o.method, "epus|pbf|prpo")->capture_default_str();
    app->add_option("--ecns", o.cfg.ecns, "number of edge nodes m")->capture_default_str();
    app->add_option("--dims", o.cfg.dims, "attribute dimensionality d")->capture_default_str();
    app->add_option("--instances", o.cfg.instances, "instances per object n")
        ->capture_default_str();
    app->add_option("--radius", o.cfg.radius, "instance scatter radius r")->capture_default_str();
    app->add_option("--window", o.cfg.window_k, "per-edge window capacity")
        ->capture_default_str();
    app->add_option("--steps", o.cfg.steps, "streaming ticks after the initial upload")
        ->capture_default_str();
    app->add_option("--seed", o.cfg.seed, "stream seed")->capture_default_str();
    app->add_option("--batch", o.cfg.batch, "arrivals per edge per tick")->capture_default_str();
    app->add_option("--rate-mbps", o.cfg.rate_mbps, "server uplink bandwidth")
        ->capture_default_str();
    app->add_option("--object-kb", o.cfg.object_kb, "object size in KB (1024-byte units)")
        ->capture_default_str();
}

void print_summary(const epus::SimConfig& cfg, const std::vector<epus::MetricsRecord>& records) {
    double bytes = 0.0, l_system = 0.0;
    for (const auto& r : records) {
        bytes += static_cast<double>(r.bytes_tx);
        l_system += r.l_system_s;
    }
    const double ticks = records.empty() ? 1.0 : static_cast<double>(records.size());
    std::cout << "method=" << epus::to_string(cfg.method) << " ticks=" << records.size()
              << " objects_per_tick=" << epus::format_double(epus::average_objects_per_tick(records))
              << " total_bytes=" << epus::format_double(bytes)
              << " mean_l_system_s=" << epus::format_double(l_system / ticks) << '\n';
}

int cmd_run(const CommonOpts& opts, const std::string& out_path, const std::string& trace_path) {
    epus::SimConfig cfg = opts.cfg;
    cfg.method = epus::parse_method(opts.method);
    cfg.validate();

    std::ofstream trace;
    std::ostream* trace_out = nullptr;
    if (!trace_path.empty()) {
        trace.open(trace_path, std::ios::binary);
        if (!trace) throw epus::ConfigError("cannot open trace file '" + trace_path + "'");
        trace_out = &trace;
    }
    const auto records = epus::run_simulation(cfg, {}, trace_out);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw epus::ConfigError("cannot open output file '" + out_path + "'");
        epus::write_csv(out, cfg, records);
    }
    print_summary(cfg, records);
    return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& param, std::vector<double> values,
              const std::string& out_prefix) {
    if (values.empty()) values = epus::default_sweep_values(param);
    const std::vector<epus::MethodKind> methods{epus::MethodKind::kEpus, epus::MethodKind::kPbf,
                                                epus::MethodKind::kPrpo};
    for (epus::MethodKind method : methods) {
        std::ostringstream body;
        bool first = true;
        for (double v : values) {
            epus::SimConfig cfg = epus::apply_sweep_value(opts.cfg, param, v);
            cfg.method = method;
            cfg.validate();
            const auto records = epus::run_simulation(cfg);
            const std::string csv = epus::csv_string(cfg, records);
            if (first) {
                body << csv;
                first = false;
            } else {
                body << csv.substr(csv.find('\n') + 1);  // drop repeated header
            }
            std::cout << "sweep " << param << '=' << epus::format_double(v) << ' ';
            print_summary(cfg, records);
        }
        const std::string path = out_prefix + "_" + epus::to_string(method) + ".csv";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw epus::ConfigError("cannot open output file '" + path + "'");
        out << body.str();
    }
    return 0;
}

int cmd_replay(const std::string& trace_path, std::size_t ecns, std::size_t window,
               std::size_t fanout) {
    std::ifstream in(trace_path, std::ios::binary);
    if (!in) throw epus::ConfigError("cannot open trace file '" + trace_path + "'");

    epus::ServerNode server(ecns * window, window, fanout);
    std::vector<epus::UpdateMessage> pending;
    std::uint64_t current = 0;
    bool have_step = false;
    std::string line;

    auto flush = [&]() {
        if (pending.empty()) return;
        server.server_step(pending);
        std::cout << "step=" << current << " sk1={";
        bool first = true;
        for (epus::ObjectId id : server.state().sk1_ids()) {
            if (!first) std::cout << ',';
            std::cout << id;
            first = false;
        }
        std::cout << "} sk2={";
        first = true;
        for (epus::ObjectId id : server.state().sk2_ids()) {
            if (!first) std::cout << ',';
            std::cout << id;
            first = false;
        }
        std::cout << "}\n";
        pending.clear();
    };

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        epus::UpdateMessage msg = epus::decode(line);
        if (have_step && msg.step != current) flush();
        current = msg.step;
        have_step = true;
        pending.push_back(std::move(msg));
    }
    flush();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"probabilistic skyline over uncertain edge streams"};
    app.require_subcommand(1);

    CommonOpts opts;
    double comp_power = 1e7;
    std::string out_path, trace_out_path;
    auto* run = app.add_subcommand("run", "single simulation run");
    add_common(run, opts);
    run->add_option("--comp-power", comp_power, "comparisons per second per node")
        ->capture_default_str();
    run->add_option("--out", out_path, "per-tick metrics CSV");
    run->add_option("--trace-out", trace_out_path, "write update messages for replay");

    CommonOpts sweep_opts;
    double sweep_comp_power = 1e7;
    std::string param = "ecns", sweep_prefix = "sweep";
    std::vector<double> values;
    auto* sweep = app.add_subcommand("sweep", "run all methods across a parameter list");
    add_common(sweep, sweep_opts);
    sweep->add_option("--comp-power", sweep_comp_power, "comparisons per second per node")
        ->capture_default_str();
    sweep->add_option("--param", param, "ecns|window|dims|instances|radius")
        ->capture_default_str();
    sweep->add_option("--values", values, "override value list")->delimiter(',');
    sweep->add_option("--out", sweep_prefix, "output prefix, one CSV per method")
        ->capture_default_str();

    std::string replay_path;
    std::size_t replay_ecns = 6, replay_window = 300, replay_fanout = 8;
    auto* replay = app.add_subcommand("replay", "rebuild coordinator state from a trace");
    replay->add_option("--trace", replay_path, "trace file from run --trace-out")->required();
    replay->add_option("--ecns", replay_ecns, "edge count the trace was produced with")
        ->capture_default_str();
    replay->add_option("--window", replay_window, "per-edge window capacity")
        ->capture_default_str();
    replay->add_option("--fanout", replay_fanout, "index fanout")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            opts.cfg.comp_power_edge = comp_power;
            opts.cfg.comp_power_server = comp_power;
            return cmd_run(opts, out_path, trace_out_path);
        }
        if (sweep->parsed()) {
            sweep_opts.cfg.comp_power_edge = sweep_comp_power;
            sweep_opts.cfg.comp_power_server = sweep_comp_power;
            return cmd_sweep(sweep_opts, param, values, sweep_prefix);
        }
        if (replay->parsed()) return cmd_replay(replay_path, replay_ecns, replay_window, replay_fanout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
