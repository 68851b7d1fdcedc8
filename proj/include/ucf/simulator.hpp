#pragma once

// Discrete-event execution of a swarm under the ASYNC non-rigid model:
// adversary-controlled activation and interruption (honoring the minimum
// travel delta), per-cycle random local frames, collision detection,
// termination detection and trace recording.  Deterministic per seed.

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ucf/algorithm.hpp"
#include "ucf/io.hpp"
#include "ucf/rng.hpp"
#include "ucf/trace.hpp"

namespace ucf {

struct RobotState {
    Point pos;
    bool moving = false;
    Point start, dest;
    double progress = 0.0;
    long cycles = 0;
    long last_event = 0;
};

enum class OutcomeKind { ReachedRegular, BudgetExhausted, CollisionDetected, UnsupportedSize };

inline const char* to_string(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::ReachedRegular: return "ReachedRegular";
        case OutcomeKind::BudgetExhausted: return "BudgetExhausted";
        case OutcomeKind::CollisionDetected: return "CollisionDetected";
        case OutcomeKind::UnsupportedSize: return "UnsupportedSize";
    }
    return "?";
}

struct Outcome {
    OutcomeKind kind = OutcomeKind::BudgetExhausted;
    long cycles = 0;
    long events = 0;
    double deviation = 0.0;  // max vertex deviation at termination, global units
};

// Scripted adversaries drive the simulator one action at a time.
struct ScriptAction {
    enum class Kind { Activate, Advance, EndPhase } kind = Kind::Activate;
    int robot = 0;
    double progress = 1.0;  // Advance: absolute target progress in (cur, 1]
};

class Simulator {
  public:
    explicit Simulator(const SimConfig& cfg)
        : cfg_(cfg), rng_(cfg.adversary.rng_seed), frame_rng_(cfg.adversary.rng_seed ^ 0x5DEECE66DULL) {}

    // Optional script; when set with adversary kind Scripted, the simulator
    // consumes it instead of sampling actions.
    std::function<std::optional<ScriptAction>(const Simulator&)> script;
    TraceRecorder trace;

    const std::vector<RobotState>& robots() const { return robots_; }
    long events_seen() const { return events_; }
    long cycles_total() const { return cycles_; }
    double sec_radius() const { return sec_radius_; }

    std::vector<Point> positions() const {
        std::vector<Point> out;
        for (const auto& r : robots_) out.push_back(r.pos);
        return out;
    }

    Outcome run() {
        trace.set_header(to_json(cfg_));
        if (cfg_.n == 4 || cfg_.n < 3) {
            TraceEvent e;
            e.kind = TraceEvent::Kind::Outcome;
            e.outcome_kind = to_string(OutcomeKind::UnsupportedSize);
            trace.add(e);
            return {OutcomeKind::UnsupportedSize, 0, 0, 0.0};
        }
        init();
        while (true) {
            if (collided_) return finish(OutcomeKind::CollisionDetected);
            if (cycles_ > cfg_.max_cycles) return finish(OutcomeKind::BudgetExhausted);
            if (all_idle() && geometric_regular()) {
                if (verification_round()) return finish(OutcomeKind::ReachedRegular);
                continue;
            }
            step();
        }
    }

    // One adversary event; exposed for tests and scripted runs.
    void step() {
        switch (cfg_.adversary.kind) {
            case AdversaryKind::FullSync: step_fullsync(); break;
            case AdversaryKind::SemiSync: step_semisync(); break;
            case AdversaryKind::Async: step_async(); break;
            case AdversaryKind::Scripted: step_scripted(); break;
        }
    }

    void init() {
        robots_.clear();
        for (const Point& p : cfg_.initial) {
            RobotState r;
            r.pos = p;
            robots_.push_back(r);
        }
        Circle sec = smallest_enclosing_circle(cfg_.initial);
        sec_radius_ = sec.radius;
        delta_abs_ = cfg_.adversary.delta * sec.radius;
        events_ = 0;
        cycles_ = 0;
        tick_ = 0;
        collided_ = false;
        memo_.clear();
        check_collisions();
    }

    bool all_idle() const {
        for (const auto& r : robots_)
            if (r.moving) return false;
        return true;
    }

    // --- primitive actions -------------------------------------------------

    void activate(int i) {
        RobotState& r = robots_[i];
        r.last_event = ++events_;
        ++tick_;
        ++cycles_;
        ++r.cycles;
        auto res = compute_for(i);
        TraceEvent e;
        e.kind = TraceEvent::Kind::Look;
        e.t = tick_;
        e.robot = i;
        e.snapshot_hash = res.hash;
        e.dispatched = res.dispatched;
        e.dest = res.dest;
        e.criticals = res.criticals;
        trace.add(e);
        if (res.dest.x == r.pos.x && res.dest.y == r.pos.y) {
            emit_freeze_if_frozen();
            return;  // stay: the cycle completes instantly
        }
        r.moving = true;
        r.start = r.pos;
        r.dest = res.dest;
        r.progress = 0.0;
    }

    void advance(int i, double new_progress) {
        RobotState& r = robots_[i];
        r.last_event = ++events_;
        ++tick_;
        r.progress = std::min(1.0, std::max(r.progress, new_progress));
        r.pos = lerp(r.start, r.dest, r.progress);
        TraceEvent e;
        e.kind = TraceEvent::Kind::Move;
        e.t = tick_;
        e.robot = i;
        e.pos = r.pos;
        trace.add(e);
        check_collisions();
        if (r.progress >= 1.0) end_phase(i);
    }

    bool can_end_phase(int i) const {
        const RobotState& r = robots_[i];
        if (!r.moving) return false;
        if (r.progress >= 1.0) return true;
        return dist(r.start, r.pos) >= delta_abs_ - 1e-15 * sec_radius_;
    }

    // Ends the move phase; illegal proposals are rejected (returns false).
    bool end_phase(int i) {
        RobotState& r = robots_[i];
        if (!r.moving) return false;
        if (!can_end_phase(i)) return false;
        r.moving = false;
        r.last_event = ++events_;
        ++tick_;
        TraceEvent e;
        e.kind = TraceEvent::Kind::End;
        e.t = tick_;
        e.robot = i;
        trace.add(e);
        emit_freeze_if_frozen();
        return true;
    }

  private:
    struct MemoVal {
        Point dest;
        std::string dispatched;
        std::vector<Point> criticals;
        uint64_t hash = 0;
    };

    struct ComputeOut {
        Point dest;
        std::string dispatched;
        std::vector<Point> criticals;
        uint64_t hash;
    };

    ComputeOut compute_for(int i) {
        std::vector<Point> global;
        for (const auto& r : robots_) global.push_back(r.pos);
        uint64_t h = hash_points(global);
        std::string key = std::to_string(i) + ":" + hex64(h);
        // The local frame is sampled even on memo hits so that the adversary
        // stream is independent of caching.
        Similarity frame = sample_frame();
        auto it = memo_.find(key);
        if (it != memo_.end())
            return {it->second.dest, it->second.dispatched, it->second.criticals, it->second.hash};
        Point org = robots_[i].pos;
        std::vector<Point> local;
        local.reserve(global.size());
        for (const Point& p : global) local.push_back(frame.apply(p - org));
        local[i] = {0.0, 0.0};
        ComputeResult res = ucf_compute(local);
        Point dest_global;
        if (res.destination.x == 0.0 && res.destination.y == 0.0) {
            dest_global = org;  // exact stay
        } else {
            Similarity inv = frame.inverse();
            Point d = inv.apply(res.destination);
            dest_global = org + d;
        }
        std::vector<Point> crit_global;
        {
            Similarity inv = frame.inverse();
            for (const Point& c : res.criticals) crit_global.push_back(org + inv.apply(c));
        }
        MemoVal mv{dest_global, to_string(res.dispatched), crit_global, h};
        memo_[key] = mv;
        return {mv.dest, mv.dispatched, mv.criticals, mv.hash};
    }

    Similarity sample_frame() {
        if (!cfg_.adversary.frame_noise) return Similarity{};
        double ang = frame_rng_.uniform(0.0, kTwoPi);
        double scale = frame_rng_.log_uniform(0.1, 10.0);
        bool refl = frame_rng_.coin();
        return Similarity::make(ang, scale, refl, {0, 0});
    }

    void emit_freeze_if_frozen() {
        if (!all_idle()) return;
        TraceEvent e;
        e.kind = TraceEvent::Kind::Freeze;
        e.t = tick_;
        trace.add(e);
    }

    void check_collisions() {
        double eps = cfg_.collision_eps * sec_radius_;
        for (size_t a = 0; a < robots_.size() && !collided_; ++a)
            for (size_t b = a + 1; b < robots_.size(); ++b) {
                if (dist(robots_[a].pos, robots_[b].pos) < eps) {
                    collided_ = true;
                    TraceEvent e;
                    e.kind = TraceEvent::Kind::Collision;
                    e.t = tick_;
                    e.pair_a = static_cast<int>(a);
                    e.pair_b = static_cast<int>(b);
                    trace.add(e);
                    break;
                }
            }
    }

    bool geometric_regular() {
        std::vector<Point> pts = positions();
        Circle sec = smallest_enclosing_circle(pts);
        sec_radius_ = sec.radius;
        double tol = cfg_.regular_tolerance * sec.radius;
        // all on the circle
        for (const Point& p : pts)
            if (std::fabs(dist(p, sec.center) - sec.radius) > tol) return false;
        // equal gaps
        std::vector<double> ang;
        for (const Point& p : pts) {
            Point u = p - sec.center;
            ang.push_back(std::atan2(u.y, u.x));
        }
        std::sort(ang.begin(), ang.end());
        int n = cfg_.n;
        deviation_ = 0.0;
        for (int i = 0; i < n; ++i) {
            double nxt = i + 1 < n ? ang[i + 1] : ang[0] + kTwoPi;
            double gap = nxt - ang[i];
            deviation_ = std::max(deviation_, std::fabs(gap - kTwoPi / n) * sec.radius);
            if (std::fabs(gap - kTwoPi / n) * sec.radius > 2.0 * tol) return false;
        }
        // refine deviation against the best-fit regular polygon
        double phase = 0.0, sx = 0.0, sy = 0.0;
        for (int i = 0; i < n; ++i) {
            double ideal = ang[0] + i * kTwoPi / n;
            sx += std::cos(ang[i] - ideal);
            sy += std::sin(ang[i] - ideal);
        }
        phase = ang[0] + std::atan2(sy, sx);
        double dev = 0.0;
        for (int i = 0; i < n; ++i) {
            Point v = sec.center + unit_dir(phase + i * kTwoPi / n) * sec.radius;
            double best = 1e300;
            for (const Point& p : pts) best = std::min(best, dist(p, v));
            dev = std::max(dev, best);
        }
        deviation_ = dev;
        return dev <= tol;
    }

    // One extra full round: permanence of the Regular configuration.
    bool verification_round() {
        for (int i = 0; i < cfg_.n; ++i) {
            activate(i);
            if (robots_[i].moving) return false;
        }
        return true;
    }

    Outcome finish(OutcomeKind kind) {
        TraceEvent e;
        e.kind = TraceEvent::Kind::Outcome;
        e.t = tick_;
        e.outcome_kind = to_string(kind);
        e.cycles = cycles_;
        e.deviation = deviation_;
        trace.add(e);
        return {kind, cycles_, events_, deviation_};
    }

    // --- adversaries --------------------------------------------------------

    void step_fullsync() {
        for (int i = 0; i < cfg_.n; ++i) activate(i);
        for (int i = 0; i < cfg_.n && !collided_; ++i)
            if (robots_[i].moving) advance(i, 1.0);
    }

    void step_semisync() {
        std::vector<int> chosen;
        for (int i = 0; i < cfg_.n; ++i)
            if (rng_.coin()) chosen.push_back(i);
        if (chosen.empty()) chosen.push_back(static_cast<int>(rng_.below(cfg_.n)));
        for (int i : chosen) activate(i);
        for (int i : chosen) {
            if (!robots_[i].moving || collided_) continue;
            double len = dist(robots_[i].start, robots_[i].dest);
            if (rng_.coin() || len <= delta_abs_) {
                advance(i, 1.0);
            } else {
                double minp = std::min(1.0, delta_abs_ / len);
                double p = std::max(minp, rng_.uniform());
                advance(i, p);
                if (robots_[i].moving) end_phase(i);
            }
        }
    }

    void step_async() {
        // bounded starvation: serve the most starved robot first
        long bound = static_cast<long>(cfg_.adversary.starvation_bound) * cfg_.n;
        int starved = -1;
        for (int i = 0; i < cfg_.n; ++i)
            if (events_ - robots_[i].last_event > bound &&
                (starved < 0 || robots_[i].last_event < robots_[starved].last_event))
                starved = i;
        if (starved >= 0) {
            serve(starved);
            return;
        }
        std::vector<int> idle, moving;
        for (int i = 0; i < cfg_.n; ++i)
            (robots_[i].moving ? moving : idle).push_back(i);
        if (!moving.empty() && (idle.empty() || rng_.coin()))
            serve(moving[rng_.below(moving.size())]);
        else if (!idle.empty())
            serve(idle[rng_.below(idle.size())]);
    }

    void serve(int i) {
        RobotState& r = robots_[i];
        if (!r.moving) {
            activate(i);
            return;
        }
        double len = dist(r.start, r.dest);
        if (len <= delta_abs_ || rng_.coin()) {
            advance(i, 1.0);
            return;
        }
        double u = rng_.uniform();
        double p = r.progress + u * (1.0 - r.progress);
        p = std::max(p, std::min(1.0, delta_abs_ / len));
        advance(i, p);
        if (robots_[i].moving && rng_.coin(cfg_.adversary.interrupt_prob)) {
            if (can_end_phase(i)) end_phase(i);
        }
    }

    void step_scripted() {
        if (!script) throw std::logic_error("scripted adversary without a script");
        auto act = script(*this);
        if (!act) {
            // script exhausted: fall back to a fair async schedule
            step_async();
            return;
        }
        switch (act->kind) {
            case ScriptAction::Kind::Activate: activate(act->robot); break;
            case ScriptAction::Kind::Advance: advance(act->robot, act->progress); break;
            case ScriptAction::Kind::EndPhase: end_phase(act->robot); break;
        }
    }

    SimConfig cfg_;
    Rng rng_;
    Rng frame_rng_;
    std::vector<RobotState> robots_;
    std::unordered_map<std::string, MemoVal> memo_;
    double delta_abs_ = 0.0;
    double sec_radius_ = 1.0;
    double deviation_ = 0.0;
    long events_ = 0;
    long cycles_ = 0;
    long tick_ = 0;
    bool collided_ = false;
};

inline Outcome run(const SimConfig& cfg) {
    Simulator sim(cfg);
    return sim.run();
}

// ---------------------------------------------------------------------------
// Trace-level checks.

namespace detail {

inline bool multiset_match(const std::vector<Point>& a, const std::vector<Point>& b, double eps) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const Point& p : a) {
        bool hit = false;
        for (size_t j = 0; j < b.size(); ++j) {
            if (!used[j] && dist(p, b[j]) <= eps) {
                used[j] = true;
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

}  // namespace detail

// True iff at every event time where the global positions matched C (within
// eps), every robot was idle.
inline bool check_freeze_at(const SimConfig& cfg, const std::vector<TraceEvent>& events,
                            const std::vector<Point>& C, double eps) {
    std::vector<Point> pos = cfg.initial;
    std::vector<bool> moving(cfg.n, false);
    auto frozen_ok = [&]() {
        if (!detail::multiset_match(pos, C, eps)) return true;
        for (bool m : moving)
            if (m) return false;
        return true;
    };
    if (!frozen_ok()) return false;
    for (const auto& e : events) {
        switch (e.kind) {
            case TraceEvent::Kind::Look:
                if (!(e.dest.x == pos[e.robot].x && e.dest.y == pos[e.robot].y))
                    moving[e.robot] = true;
                break;
            case TraceEvent::Kind::Move:
                pos[e.robot] = e.pos;
                break;
            case TraceEvent::Kind::End:
                moving[e.robot] = false;
                break;
            default:
                break;
        }
        if (!frozen_ok()) return false;
    }
    return true;
}

// Minimum pairwise distance over all event times, as a fraction of the
// initial SEC radius.
inline double min_pairwise_over_trace(const SimConfig& cfg, const std::vector<TraceEvent>& events) {
    std::vector<Point> pos = cfg.initial;
    double best = 1e300;
    auto scan = [&]() {
        for (size_t a = 0; a < pos.size(); ++a)
            for (size_t b = a + 1; b < pos.size(); ++b) best = std::min(best, dist(pos[a], pos[b]));
    };
    scan();
    for (const auto& e : events) {
        if (e.kind == TraceEvent::Kind::Move) {
            pos[e.robot] = e.pos;
            scan();
        }
    }
    double r0 = smallest_enclosing_circle(cfg.initial).radius;
    return best / r0;
}

}  // namespace ucf
