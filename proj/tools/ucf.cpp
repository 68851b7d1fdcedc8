// Command-line entry point: run single simulations, batch campaigns,
// classify snapshots, run oracle cross-checks, render traces to SVG.
//
// Exit codes: 0 success, 2 config error, 3 unsupported swarm size,
// 4 oracle mismatch, 5 collision detected.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "ucf/algorithm.hpp"
#include "ucf/io.hpp"
#include "ucf/oracle.hpp"
#include "ucf/render.hpp"
#include "ucf/simulator.hpp"
#include "ucf/targets.hpp"

namespace fs = std::filesystem;
using namespace ucf;

namespace {

int log_level() {
    const char* v = std::getenv("UCF_LOG");
    if (!v) return 1;
    std::string s = v;
    if (s == "error") return 0;
    if (s == "debug") return 2;
    return 1;
}

void info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << msg << "\n";
}

int cmd_run(const std::string& config_path, std::optional<uint64_t> seed,
            const std::string& out_dir, std::optional<long> max_cycles,
            std::optional<std::string> adversary) {
    SimConfig cfg;
    try {
        cfg = load_sim_config(config_path);
        if (seed) cfg.adversary.rng_seed = *seed;
        if (max_cycles) cfg.max_cycles = *max_cycles;
        if (adversary) cfg.adversary.kind = adversary_from_string(*adversary);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    if (cfg.n == 4 || cfg.n < 3) {
        std::cerr << "unsupported swarm size: " << cfg.n << "\n";
        return 3;
    }
    Simulator sim(cfg);
    auto t0 = std::chrono::steady_clock::now();
    Outcome out = sim.run();
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream f(fs::path(out_dir) / "trace.jsonl");
        f << sim.trace.to_text();
    }
    std::cout << to_string(out.kind) << " cycles=" << out.cycles << " events=" << out.events
              << " deviation=" << fmt_double(out.deviation) << " wall_ms=" << ms << "\n";
    if (out.kind == OutcomeKind::CollisionDetected) return 5;
    if (out.kind == OutcomeKind::UnsupportedSize) return 3;
    return out.kind == OutcomeKind::ReachedRegular ? 0 : 1;
}

int cmd_batch(const std::vector<int>& ns, const std::vector<std::string>& adversaries, int seeds,
              long max_cycles, const std::string& out_path) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        os = &file;
    }
    (*os) << "n,adversary,seeds,success_rate,mean_cycles,max_cycles,zero_collisions\n";
    for (int n : ns) {
        for (const auto& adv : adversaries) {
            long ok = 0, collisions = 0;
            double cyc_sum = 0;
            long cyc_max = 0;
            for (int sidx = 0; sidx < seeds; ++sidx) {
                SimConfig cfg;
                cfg.n = n;
                uint64_t seed = 1000003ULL * n + 17ULL * sidx + 1;
                Rng gen(seed);
                cfg.initial = oracle::random_config(gen, n);
                cfg.adversary.kind = adversary_from_string(adv);
                cfg.adversary.rng_seed = seed;
                cfg.max_cycles = max_cycles;
                Simulator sim(cfg);
                sim.trace.keep = false;
                Outcome out = sim.run();
                if (out.kind == OutcomeKind::ReachedRegular) ++ok;
                if (out.kind == OutcomeKind::CollisionDetected) ++collisions;
                cyc_sum += static_cast<double>(out.cycles);
                cyc_max = std::max(cyc_max, out.cycles);
            }
            (*os) << n << "," << adv << "," << seeds << "," << (static_cast<double>(ok) / seeds)
                  << "," << (cyc_sum / seeds) << "," << cyc_max << ","
                  << (collisions == 0 ? "true" : "false") << "\n";
        }
    }
    return 0;
}

int cmd_classify(const std::string& snapshot_path) {
    std::vector<Point> pts;
    try {
        pts = load_snapshot_points(snapshot_path);
    } catch (const std::exception& e) {
        std::cerr << "snapshot error: " << e.what() << "\n";
        return 2;
    }
    if (pts.size() == 4 || pts.size() < 3) {
        std::cerr << "unsupported swarm size: " << pts.size() << "\n";
        return 3;
    }
    if (pts.size() == 3) {
        std::cout << "n=3 (dedicated small-swarm algorithm; no taxonomy)\n";
        return 0;
    }
    Snapshot s;
    try {
        s = make_snapshot(pts);
    } catch (const std::exception& e) {
        std::cerr << "snapshot error: " << e.what() << "\n";
        return 2;
    }
    ConfigClass cls = classify(s);
    std::cout << to_string(cls.kind) << "\n";
    std::cout << "sec center=(" << fmt_double(s.center().x) << "," << fmt_double(s.center().y)
              << ") radius=" << fmt_double(s.radius()) << "\n";
    if (!s.rays.coradial) {
        PeriodClass pc = period_class(s);
        std::cout << "period=" << pc.period << (pc.double_biangular ? " (double-biangular)" : "")
                  << "\n";
        Partition part = partitions(s);
        std::cout << "analogy_classes=" << part.analogy.size()
                  << " strong_classes=" << part.strong.size()
                  << " concordance_classes=" << part.concordance.size() << "\n";
    }
    if (cls.kind == ConfigKind::PreRegular) {
        std::cout << "supporting polygon vertices:";
        for (const Point& v : cls.cert->polygon.vertices())
            std::cout << " " << fmt_point(v);
        std::cout << "\n";
    }
    if (cls.kind == ConfigKind::ValidWaiting || cls.kind == ConfigKind::ValidReady) {
        if (cls.kind == ConfigKind::ValidWaiting) {
            auto w = walkers(s);
            std::cout << "walkers:";
            for (int i : w) std::cout << " " << i;
            std::cout << "\n";
        }
        TargetAssignment ta = target_assignment(s);
        std::cout << "targets:";
        for (const Point& t : ta.targets) std::cout << " " << fmt_point(t);
        std::cout << "\n";
    }
    return 0;
}

int cmd_oracle(const std::string& suite, int count, uint64_t seed, bool inject_bug) {
    Rng rng(seed);
    long mismatches = 0;
    std::string counterexample;
    if (suite == "sec") {
        for (int it = 0; it < count; ++it) {
            int n = 2 + static_cast<int>(rng.below(11));
            auto pts = oracle::random_config(rng, n);
            Circle mine = smallest_enclosing_circle(pts);
            if (inject_bug && it == count / 2) mine.radius *= 1.001;
            Circle ref = oracle::sec_bruteforce(pts);
            if (std::fabs(mine.radius - ref.radius) > 1e-9 * ref.radius ||
                dist(mine.center, ref.center) > 1e-7 * ref.radius) {
                ++mismatches;
                if (counterexample.empty()) {
                    counterexample = "[";
                    for (size_t i = 0; i < pts.size(); ++i)
                        counterexample += (i ? "," : "") + fmt_point(pts[i]);
                    counterexample += "]";
                }
            }
        }
    } else if (suite == "classify") {
        for (int it = 0; it < count; ++it) {
            int n = 5 + static_cast<int>(rng.below(5));
            auto pts = oracle::random_config(rng, n);
            Snapshot s = make_snapshot(pts);
            if (s.rays.coradial) continue;
            auto ref = oracle::classify_bruteforce(pts);
            PeriodClass pc = period_class(s);
            Partition part = partitions(s);
            int period = pc.period;
            if (inject_bug && it == count / 2) period += 1;
            bool ok = period == ref.period && part.analogy.size() == ref.analogy.size() &&
                      part.strong.size() == ref.strong.size() &&
                      part.concordance.size() == ref.concordance.size();
            if (!ok) {
                ++mismatches;
                if (counterexample.empty()) {
                    counterexample = "[";
                    for (size_t i = 0; i < pts.size(); ++i)
                        counterexample += (i ? "," : "") + fmt_point(pts[i]);
                    counterexample += "]";
                }
            }
        }
    } else if (suite == "preregular") {
        for (int it = 0; it < count; ++it) {
            int n = 6 + 2 * static_cast<int>(rng.below(4));
            auto sample = oracle::random_preregular(rng, n);
            Snapshot s = make_snapshot(sample.points);
            auto cert = is_pre_regular(s);
            bool ok = cert.has_value();
            if (ok) {
                double err = 0;
                auto mine = cert->polygon.vertices();
                for (const Point& v : sample.polygon.vertices()) {
                    double best = 1e300;
                    for (const Point& m : mine) best = std::min(best, dist(v, m));
                    err = std::max(err, best);
                }
                ok = err <= 1e-6 * sample.polygon.circumradius();
            }
            if (inject_bug && it == count / 2) ok = false;
            if (!ok) {
                ++mismatches;
                if (counterexample.empty()) {
                    counterexample = "[";
                    for (size_t i = 0; i < sample.points.size(); ++i)
                        counterexample += (i ? "," : "") + fmt_point(sample.points[i]);
                    counterexample += "]";
                }
            }
        }
    } else {
        std::cerr << "unknown oracle suite: " << suite << "\n";
        return 2;
    }
    std::cout << "suite=" << suite << " count=" << count << " mismatches=" << mismatches << "\n";
    if (mismatches > 0) {
        std::cout << "counterexample: " << counterexample << "\n";
        return 4;
    }
    return 0;
}

int cmd_render(const std::string& trace_path, const std::string& out_dir,
               const std::string& frames, long every_k) {
    std::ifstream in(trace_path);
    if (!in) {
        std::cerr << "cannot open trace: " << trace_path << "\n";
        return 2;
    }
    std::string line;
    long lineno = 0;
    SimConfig cfg;
    std::vector<TraceEvent> events;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const std::exception& e) {
            std::cerr << "trace parse error at line " << lineno << ": " << e.what() << "\n";
            return 2;
        }
        std::string type = j.value("type", "");
        if (type == "header") {
            cfg = sim_config_from_json(j.at("config"));
            have_header = true;
        } else if (type == "look") {
            TraceEvent e;
            e.kind = TraceEvent::Kind::Look;
            e.t = j.value("t", 0L);
            e.robot = j.at("robot").get<int>();
            e.dest = {j.at("dest").at(0).get<double>(), j.at("dest").at(1).get<double>()};
            if (j.contains("crit"))
                for (const auto& c : j["crit"]) e.criticals.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
            events.push_back(e);
        } else if (type == "move") {
            TraceEvent e;
            e.kind = TraceEvent::Kind::Move;
            e.t = j.value("t", 0L);
            e.robot = j.at("robot").get<int>();
            e.pos = {j.at("pos").at(0).get<double>(), j.at("pos").at(1).get<double>()};
            events.push_back(e);
        } else if (type == "end") {
            TraceEvent e;
            e.kind = TraceEvent::Kind::End;
            e.t = j.value("t", 0L);
            e.robot = j.at("robot").get<int>();
            events.push_back(e);
        } else if (type == "freeze") {
            TraceEvent e;
            e.kind = TraceEvent::Kind::Freeze;
            e.t = j.value("t", 0L);
            events.push_back(e);
        }
    }
    if (!have_header) {
        std::cerr << "trace has no header line\n";
        return 2;
    }
    auto framespecs = trace_frames(cfg.initial, events, frames == "freeze", every_k);
    fs::create_directories(out_dir);
    long idx = 0;
    for (const auto& f : framespecs) {
        std::ofstream out(fs::path(out_dir) / ("frame_" + std::to_string(idx++) + ".svg"));
        out << render_svg(f);
    }
    info("wrote " + std::to_string(idx) + " frames");
    std::cout << idx << " frames\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uniform circle formation simulator"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand("run", "run one simulation from a config file");
    std::string config_path, out_dir;
    std::optional<uint64_t> seed;
    std::optional<long> max_cycles;
    std::optional<std::string> adversary;
    run_cmd->add_option("--config", config_path, "SimConfig JSON path")->required();
    run_cmd->add_option("--seed", seed, "override adversary seed");
    run_cmd->add_option("--out", out_dir, "output directory for the trace");
    run_cmd->add_option("--max-cycles", max_cycles, "cycle budget override");
    run_cmd->add_option("--adversary", adversary, "fullsync|semisync|async|scripted");

    auto* batch_cmd = app.add_subcommand("batch", "run a seed grid and emit CSV");
    std::vector<int> ns{5, 6, 9};
    std::vector<std::string> advs{"fullsync", "semisync", "async"};
    int seeds = 10;
    long batch_budget = 50000;
    std::string batch_out;
    batch_cmd->add_option("--n", ns, "swarm sizes");
    batch_cmd->add_option("--adversary", advs, "adversary kinds");
    batch_cmd->add_option("--seeds", seeds, "seeds per cell");
    batch_cmd->add_option("--max-cycles", batch_budget, "cycle budget");
    batch_cmd->add_option("--out", batch_out, "CSV output path (default stdout)");

    auto* classify_cmd = app.add_subcommand("classify", "classify a snapshot file");
    std::string snapshot_path;
    classify_cmd->add_option("--snapshot", snapshot_path, "snapshot JSON path")->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "run oracle cross-checks");
    std::string suite;
    int count = 1000;
    uint64_t oseed = 42;
    bool inject_bug = false;
    oracle_cmd->add_option("suite", suite, "sec|classify|preregular")->required();
    oracle_cmd->add_option("--count", count, "instances");
    oracle_cmd->add_option("--seed", oseed, "rng seed");
    oracle_cmd->add_flag("--inject-bug", inject_bug, "negative control: force one mismatch");

    auto* render_cmd = app.add_subcommand("render", "render a trace to SVG frames");
    std::string trace_path, render_out = "frames";
    std::string frames = "freeze";
    long every_k = 50;
    render_cmd->add_option("--trace", trace_path, "trace JSONL path")->required();
    render_cmd->add_option("--out", render_out, "output directory");
    render_cmd->add_option("--frames", frames, "freeze|every-k");
    render_cmd->add_option("--k", every_k, "frame stride for every-k");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return cmd_run(config_path, seed, out_dir, max_cycles, adversary);
        if (*batch_cmd) return cmd_batch(ns, advs, seeds, batch_budget, batch_out);
        if (*classify_cmd) return cmd_classify(snapshot_path);
        if (*oracle_cmd) return cmd_oracle(suite, count, oseed, inject_bug);
        if (*render_cmd) return cmd_render(trace_path, render_out, frames, every_k);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
