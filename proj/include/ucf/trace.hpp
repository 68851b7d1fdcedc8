#pragma once

// Execution traces: JSON-lines, one event per line, with a header line
// echoing the simulation config.  Doubles are printed with shortest
// round-trip formatting so traces are byte-identical for identical runs.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ucf/geometry.hpp"

namespace ucf {

inline std::string fmt_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string fmt_point(const Point& p) {
    return "[" + fmt_double(p.x) + "," + fmt_double(p.y) + "]";
}

inline uint64_t hash_points(const std::vector<Point>& pts) {
    uint64_t h = 1469598103934665603ULL;
    auto mix = [&](double d) {
        uint64_t bits;
        static_assert(sizeof bits == sizeof d);
        __builtin_memcpy(&bits, &d, sizeof bits);
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    for (const Point& p : pts) {
        mix(p.x);
        mix(p.y);
    }
    return h;
}

inline std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

struct TraceEvent {
    enum class Kind { Look, Move, End, Freeze, Collision, Outcome };
    Kind kind = Kind::Look;
    long t = 0;
    int robot = -1;
    Point pos;                      // Move
    Point dest;                     // Look
    uint64_t snapshot_hash = 0;     // Look
    std::string dispatched;         // Look
    std::vector<Point> criticals;   // Look
    int pair_a = -1, pair_b = -1;   // Collision
    std::string outcome_kind;       // Outcome
    long cycles = 0;                // Outcome
    double deviation = 0.0;         // Outcome
};

inline std::string event_line(const TraceEvent& e) {
    std::string out = "{";
    switch (e.kind) {
        case TraceEvent::Kind::Look:
            out += "\"type\":\"look\",\"t\":" + std::to_string(e.t) +
                   ",\"robot\":" + std::to_string(e.robot) + ",\"hash\":\"" +
                   hex64(e.snapshot_hash) + "\",\"class\":\"" + e.dispatched +
                   "\",\"dest\":" + fmt_point(e.dest);
            if (!e.criticals.empty()) {
                out += ",\"crit\":[";
                for (size_t i = 0; i < e.criticals.size(); ++i) {
                    if (i) out += ",";
                    out += fmt_point(e.criticals[i]);
                }
                out += "]";
            }
            break;
        case TraceEvent::Kind::Move:
            out += "\"type\":\"move\",\"t\":" + std::to_string(e.t) +
                   ",\"robot\":" + std::to_string(e.robot) + ",\"pos\":" + fmt_point(e.pos);
            break;
        case TraceEvent::Kind::End:
            out += "\"type\":\"end\",\"t\":" + std::to_string(e.t) +
                   ",\"robot\":" + std::to_string(e.robot);
            break;
        case TraceEvent::Kind::Freeze:
            out += "\"type\":\"freeze\",\"t\":" + std::to_string(e.t);
            break;
        case TraceEvent::Kind::Collision:
            out += "\"type\":\"collision\",\"t\":" + std::to_string(e.t) + ",\"pair\":[" +
                   std::to_string(e.pair_a) + "," + std::to_string(e.pair_b) + "]";
            break;
        case TraceEvent::Kind::Outcome:
            out += "\"type\":\"outcome\",\"t\":" + std::to_string(e.t) + ",\"kind\":\"" +
                   e.outcome_kind + "\",\"cycles\":" + std::to_string(e.cycles) +
                   ",\"deviation\":" + fmt_double(e.deviation);
            break;
    }
    out += "}";
    return out;
}

// Collects events in memory; optionally mirrors them to a stream.
struct TraceRecorder {
    std::vector<TraceEvent> events;
    std::string header;
    std::ostream* sink = nullptr;
    bool keep = true;

    void set_header(const std::string& config_json) {
        header = "{\"type\":\"header\",\"version\":1,\"config\":" + config_json + "}";
        if (sink) (*sink) << header << "\n";
    }
    void add(TraceEvent e) {
        if (sink) (*sink) << event_line(e) << "\n";
        if (keep) events.push_back(std::move(e));
    }
    std::string to_text() const {
        std::string out = header + "\n";
        for (const auto& e : events) out += event_line(e) + "\n";
        return out;
    }
};

}  // namespace ucf
