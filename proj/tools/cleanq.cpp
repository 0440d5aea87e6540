/*
 * cleanq: benchmark, fuzz, stress and trace-check driver for the queue
 * library. Exit codes: 0 success, 1 a check or run failed, 2 bad usage.
 */

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "cleanq/bench/fuzz.hpp"
#include "cleanq/bench/scenarios.hpp"
#include "cleanq/bench/stats.hpp"
#include "cleanq/bench/stress.hpp"
#include "cleanq/model/refine.hpp"
#include "cleanq/trace.hpp"

using nlohmann::json;
using namespace cleanq;
using namespace cleanq::bench;

namespace {

json to_json(const Summary& s) {
    return json{{"count", s.count},         {"median_ns", s.median_ns},
                {"p5_ns", s.p5_ns},         {"p95_ns", s.p95_ns},
                {"mean_ns", s.mean_ns},     {"stddev_ns", s.stddev_ns},
                {"median_cycles", s.median_cycles}};
}

void print_summary_row(const std::string& name, const Summary& s) {
    std::printf("%-14s median %9.1f ns  p5 %9.1f  p95 %9.1f  mean %9.1f  sd %8.1f  (~%.0f cycles)\n",
                name.c_str(), s.median_ns, s.p5_ns, s.p95_ns, s.mean_ns, s.stddev_ns,
                s.median_cycles);
}

void print_csv_row(const std::string& name, const Summary& s) {
    std::printf("%s,%llu,%.2f,%.2f,%.2f,%.2f,%.2f,%.2f\n", name.c_str(),
                static_cast<unsigned long long>(s.count), s.median_ns, s.p5_ns, s.p95_ns,
                s.mean_ns, s.stddev_ns, s.median_cycles);
}

struct Output {
    bool as_json = false;
    bool as_csv = false;
    json obj;

    void row(const std::string& name, const Summary& s) {
        if (as_json)
            obj[name] = to_json(s);
        else if (as_csv)
            print_csv_row(name, s);
        else
            print_summary_row(name, s);
    }
    void flush() {
        if (as_json)
            std::cout << obj.dump(2) << "\n";
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"descriptor queue toolkit"};
    app.require_subcommand(1);

    bool as_json = false, as_csv = false;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_flag("--csv", as_csv, "comma-separated output");
    app.fallthrough(); /* accept the output flags after the subcommand too */

    /* bench */
    auto* bench_cmd = app.add_subcommand("bench", "measure per-op costs");
    std::string bench_what = "ops";
    size_t iters = 100000;
    size_t depth = 10;
    bench_cmd->add_option("what", bench_what, "ops | stack | debug | echo")
        ->check(CLI::IsMember({"ops", "stack", "debug", "echo"}));
    bench_cmd->add_option("--iters", iters, "samples per measurement");
    bench_cmd->add_option("--depth", depth, "max stacked modules (stack)");

    /* fuzz */
    auto* fuzz_cmd = app.add_subcommand("fuzz", "drive a ring pair and cross-check the model");
    std::string fuzz_what = "refine";
    fuzz_cmd->add_option("what", fuzz_what, "refine | guard")
        ->check(CLI::IsMember({"refine", "guard"}));
    size_t seeds = 10;
    uint64_t seed = 1;
    size_t fuzz_ops = 100000;
    uint32_t capacity = 8;
    uint32_t buffers = 8;
    size_t forge_at = SIZE_MAX;
    std::string out_path;
    fuzz_cmd->add_option("--seeds", seeds, "number of seeds, starting at --seed");
    fuzz_cmd->add_option("--seed", seed, "first seed");
    fuzz_cmd->add_option("--ops", fuzz_ops, "ops per run");
    fuzz_cmd->add_option("--capacity", capacity, "ring slots per direction");
    fuzz_cmd->add_option("--buffers", buffers, "buffers in the region");
    fuzz_cmd->add_option("--forge-at", forge_at, "flip one recorded result (self-test)");
    fuzz_cmd->add_option("--out", out_path, "write the shrunk witness trace here");

    /* stress */
    auto* stress_cmd = app.add_subcommand("stress", "two-thread soak with drained checkpoints");
    size_t segments = 4;
    size_t seg_ops = 250000;
    double seconds = 0.0;
    uint32_t s_capacity = 64;
    uint32_t s_buffers = 32;
    stress_cmd->add_option("--segments", segments, "minimum checkpointed segments");
    stress_cmd->add_option("--ops", seg_ops, "round trips per segment");
    stress_cmd->add_option("--seconds", seconds, "minimum total wall time");
    stress_cmd->add_option("--capacity", s_capacity, "ring slots per direction");
    stress_cmd->add_option("--buffers", s_buffers, "buffers in the region");

    /* check */
    auto* check_cmd = app.add_subcommand("check", "replay a recorded trace against the model");
    std::string trace_path;
    std::string level = "all";
    uint32_t c_capacity = 8;
    check_cmd->add_option("--trace", trace_path, "trace file, one JSON object per line")
        ->required();
    check_cmd->add_option("--level", level, "set | list | ring | all")
        ->check(CLI::IsMember({"set", "list", "ring", "all"}));
    check_cmd->add_option("--capacity", c_capacity, "ring slots per direction");

    CLI11_PARSE(app, argc, argv);

    Output out;
    out.as_json = as_json;
    out.as_csv = as_csv;

    if (bench_cmd->parsed()) {
        if (iters == 0) {
            std::cerr << "--iters must be positive\n";
            return 2;
        }
        if (as_csv)
            std::printf("name,count,median_ns,p5_ns,p95_ns,mean_ns,stddev_ns,median_cycles\n");
        if (bench_what == "ops") {
            const OpCosts c = bench_ops(iters);
            out.row("register", c.reg);
            out.row("deregister", c.dereg);
            out.row("enqueue", c.enq);
            out.row("dequeue", c.deq);
            out.row("enqueue_direct", c.enq_direct);
            out.row("dequeue_direct", c.deq_direct);
        } else if (bench_what == "stack") {
            const StackCosts c = bench_stack(iters, depth);
            for (size_t d = 0; d < c.enq_at_depth.size(); ++d)
                out.row("depth_" + std::to_string(d), c.enq_at_depth[d]);
        } else if (bench_what == "debug") {
            const DebugCosts c = bench_debug(iters);
            out.row("bare", c.bare);
            out.row("checked", c.debug);
        } else {
            out.row("echo_rtt", bench_echo(iters));
        }
        out.flush();
        return 0;
    }

    if (fuzz_cmd->parsed()) {
        if (fuzz_what == "guard") {
            const GuardProbe p = probe_overtake_guard(seed, fuzz_ops, capacity);
            if (as_json) {
                std::cout << json{{"found", p.found}, {"step", p.step}}.dump(2) << "\n";
            } else if (p.found) {
                std::printf("pointer order broke at step %zu with the overtake guard removed\n",
                            p.step);
            } else {
                std::printf("no break in %zu ops: the fault went undetected\n", fuzz_ops);
            }
            return p.found ? 0 : 1;
        }

        json runs = json::array();
        bool bad = false;
        for (size_t i = 0; i < seeds; ++i) {
            FuzzOptions fo;
            fo.seed = seed + i;
            fo.ops = fuzz_ops;
            fo.ring_capacity = capacity;
            fo.buffers = buffers;
            fo.forge_at = forge_at;
            const FuzzResult r = fuzz_refinement(fo);
            if (as_json) {
                runs.push_back(json{{"seed", fo.seed},
                                    {"ops", r.ops_executed},
                                    {"diverged", r.diverged},
                                    {"step", r.step},
                                    {"detail", r.detail},
                                    {"shrunk_events", r.shrunk.size()}});
            } else {
                std::printf("seed %llu: %zu ops, %s\n",
                            static_cast<unsigned long long>(fo.seed), r.ops_executed,
                            r.diverged ? ("DIVERGED at step " + std::to_string(r.step) + " (" +
                                          r.detail + ")")
                                             .c_str()
                                       : "clean");
            }
            if (r.diverged) {
                bad = true;
                if (!out_path.empty()) {
                    std::ofstream f(out_path);
                    write_trace(f, r.shrunk.empty() ? r.trace : r.shrunk);
                    if (!as_json)
                        std::printf("witness written to %s\n", out_path.c_str());
                }
                break;
            }
        }
        if (as_json)
            std::cout << runs.dump(2) << "\n";
        return bad ? 1 : 0;
    }

    if (stress_cmd->parsed()) {
        StressOptions so;
        so.segments = segments;
        so.ops_per_segment = seg_ops;
        so.min_seconds = seconds;
        so.ring_capacity = s_capacity;
        so.buffers = s_buffers;
        const StressResult r = run_stress(so);
        if (as_json) {
            std::cout << json{{"ok", r.ok},
                              {"segments", r.segments_run},
                              {"transfers", r.transfers},
                              {"stamp_mismatches", r.stamp_mismatches},
                              {"timestamp_inversions", r.timestamp_inversions},
                              {"conservation_ok", r.conservation_ok},
                              {"seconds", r.seconds},
                              {"violations", r.violations}}
                             .dump(2)
                      << "\n";
        } else {
            std::printf("%llu transfers across %llu segments in %.1fs: %s\n",
                        static_cast<unsigned long long>(r.transfers),
                        static_cast<unsigned long long>(r.segments_run), r.seconds,
                        r.ok ? "clean" : "VIOLATIONS");
            for (const std::string& v : r.violations)
                std::printf("  %s\n", v.c_str());
            if (r.stamp_mismatches)
                std::printf("  %llu payload stamp mismatches\n",
                            static_cast<unsigned long long>(r.stamp_mismatches));
            if (!r.conservation_ok)
                std::printf("  buffers were not conserved\n");
        }
        return r.ok ? 0 : 1;
    }

    /* check */
    std::ifstream f(trace_path);
    if (!f) {
        std::cerr << "cannot open " << trace_path << "\n";
        return 2;
    }
    Trace trace;
    if (!read_trace(f, trace)) {
        std::cerr << "malformed trace line after " << trace.size() << " events\n";
        return 2;
    }
    std::optional<model::Divergence> d;
    if (level == "all") {
        model::RefineOptions ro;
        ro.ring_capacity = c_capacity;
        d = model::check_refinement(trace, ro);
    } else {
        const model::Level lv = level == "set"    ? model::Level::Set
                                : level == "list" ? model::Level::List
                                                  : model::Level::Ring;
        d = model::check_trace_level(trace, lv, c_capacity);
    }
    if (as_json) {
        json j{{"events", trace.size()}, {"ok", !d.has_value()}};
        if (d) {
            j["step"] = d->step;
            j["level"] = model::level_name(d->level);
            j["reason"] = d->reason;
        }
        std::cout << j.dump(2) << "\n";
    } else if (d) {
        std::printf("DIVERGED at event %zu (%s): %s\n", d->step, model::level_name(d->level),
                    d->reason.c_str());
    } else {
        std::printf("%zu events consistent with the model\n", trace.size());
    }
    return d ? 1 : 0;
}
