#pragma once

// SVG rendering of configurations and trace frames: SEC, SEC/3, robots,
// destinations and critical points.

#include <fstream>
#include <string>
#include <vector>

#include "ucf/geometry.hpp"
#include "ucf/trace.hpp"

namespace ucf {

struct RenderFrame {
    std::vector<Point> robots;
    std::vector<Point> dests;      // one per robot; equal to robot = no arrow
    std::vector<Point> criticals;
    long t = 0;
};

inline std::string render_svg(const RenderFrame& frame) {
    Circle sec = smallest_enclosing_circle(frame.robots);
    double R = sec.radius > 0 ? sec.radius : 1.0;
    double pad = 1.3 * R;
    double x0 = sec.center.x - pad, y0 = sec.center.y - pad, side = 2 * pad;
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"";
    s += fmt_double(x0) + " " + fmt_double(y0) + " " + fmt_double(side) + " " + fmt_double(side) + "\">\n";
    auto circle = [&](const Point& c, double r, const char* style) {
        return "<circle cx=\"" + fmt_double(c.x) + "\" cy=\"" + fmt_double(c.y) + "\" r=\"" +
               fmt_double(r) + "\" " + style + "/>\n";
    };
    s += circle(sec.center, sec.radius, "fill=\"none\" stroke=\"#888\" stroke-width=\"0.004\" class=\"sec\"");
    s += circle(sec.center, sec.radius / 3.0,
                "fill=\"none\" stroke=\"#bbb\" stroke-width=\"0.004\" class=\"sec3\"");
    for (size_t i = 0; i < frame.robots.size(); ++i) {
        if (i < frame.dests.size() && dist(frame.dests[i], frame.robots[i]) > 1e-12 * R) {
            s += "<line x1=\"" + fmt_double(frame.robots[i].x) + "\" y1=\"" +
                 fmt_double(frame.robots[i].y) + "\" x2=\"" + fmt_double(frame.dests[i].x) +
                 "\" y2=\"" + fmt_double(frame.dests[i].y) +
                 "\" stroke=\"#4a90d9\" stroke-width=\"0.003\"/>\n";
        }
        s += circle(frame.robots[i], 0.02 * R, "fill=\"#222\" class=\"robot\"");
    }
    for (const Point& c : frame.criticals)
        s += circle(c, 0.012 * R, "fill=\"none\" stroke=\"#d94a4a\" stroke-width=\"0.003\" class=\"crit\"");
    s += "</svg>\n";
    return s;
}

// Frames from a recorded trace: one per freeze, or one every k events.
inline std::vector<RenderFrame> trace_frames(const std::vector<Point>& initial,
                                             const std::vector<TraceEvent>& events,
                                             bool per_freeze, long every_k) {
    std::vector<RenderFrame> out;
    std::vector<Point> pos = initial;
    std::vector<Point> dests = initial;
    std::vector<Point> crit;
    long count = 0;
    auto snap = [&](long t) {
        RenderFrame f;
        f.robots = pos;
        f.dests = dests;
        f.criticals = crit;
        f.t = t;
        out.push_back(std::move(f));
    };
    for (const auto& e : events) {
        switch (e.kind) {
            case TraceEvent::Kind::Look:
                dests[e.robot] = e.dest;
                crit = e.criticals;
                break;
            case TraceEvent::Kind::Move:
                pos[e.robot] = e.pos;
                break;
            case TraceEvent::Kind::End:
                dests[e.robot] = pos[e.robot];
                break;
            case TraceEvent::Kind::Freeze:
                if (per_freeze) snap(e.t);
                break;
            default:
                break;
        }
        ++count;
        if (!per_freeze && every_k > 0 && count % every_k == 0) snap(e.t);
    }
    return out;
}

}  // namespace ucf
