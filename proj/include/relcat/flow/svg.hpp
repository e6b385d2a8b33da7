// Phase portrait as SVG, layered bottom to top: domain, sample trajectories,
// boundary (B red, the rest grey), Gamma, separatrices, critical points.
#pragma once

#include "relcat/flow/assumptions.hpp"
#include "relcat/flow/homoclinic.hpp"

#include <cstdio>
#include <sstream>
#include <string>

namespace relcat::flow {

struct SvgOptions {
    int width = 640;
    int trajectory_grid = 8;  // starts per side
    double trajectory_time = 4;
    double n_max = 10;
};

namespace detail {

inline std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

class Canvas {
public:
    Canvas(const Domain& d, int width) : d_(d), width_(width)
    {
        scale_ = (width - 2 * margin_) / d.width();
        height_ = static_cast<int>(std::ceil(d.height() * scale_ + 2 * margin_));
    }
    int width() const { return width_; }
    int height() const { return height_; }
    double x(const Point& p) const { return margin_ + (p[0] - d_.u0) * scale_; }
    double y(const Point& p) const { return margin_ + (d_.v1 - p[1]) * scale_; }
    std::string xy(const Point& p) const { return num(x(p)) + "," + num(y(p)); }

    /// Polylines of a curve given on the cover, split where it wraps.
    std::vector<std::string> polylines(const std::vector<Point>& pts) const
    {
        std::vector<std::string> out;
        std::string cur;
        Point last{};
        bool have = false;
        for (const auto& raw : pts) {
            Point p = d_.wrap(raw);
            bool jump = have && (std::abs(p[0] - last[0]) > d_.width() / 2 || std::abs(p[1] - last[1]) > d_.height() / 2);
            if (jump) {
                out.push_back(cur);
                cur.clear();
            }
            cur += (cur.empty() ? "" : " ") + xy(p);
            last = p;
            have = true;
        }
        if (!cur.empty())
            out.push_back(cur);
        return out;
    }

private:
    const Domain& d_;
    int width_;
    int height_ = 0;
    double margin_ = 20;
    double scale_ = 1;
};

inline const char* critical_colour(CriticalType t)
{
    switch (t) {
    case CriticalType::Minimum:
    case CriticalType::Sink: return "#1f77b4";
    case CriticalType::Maximum:
    case CriticalType::Source: return "#2ca02c";
    case CriticalType::Saddle: return "#000000";
    case CriticalType::Center: return "#9467bd";
    case CriticalType::Degenerate: return "#ff7f0e";
    }
    return "#000000";
}

}  // namespace detail

inline std::string phase_portrait_svg(const Scenario& s, const SvgOptions& opt = {})
{
    detail::Canvas cv(s.domain, opt.width);
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cv.width() << "\" height=\"" << cv.height()
      << "\" viewBox=\"0 0 " << cv.width() << " " << cv.height() << "\">\n";
    o << "<title>" << (s.name.empty() ? to_string(s.surface) : s.name) << "</title>\n";

    const auto& d = s.domain;
    o << "<g id=\"domain\"><rect x=\"" << detail::num(cv.x({d.u0, d.v1})) << "\" y=\"" << detail::num(cv.y({d.u0, d.v1}))
      << "\" width=\"" << detail::num(cv.x({d.u1, d.v0}) - cv.x({d.u0, d.v1})) << "\" height=\""
      << detail::num(cv.y({d.u1, d.v0}) - cv.y({d.u0, d.v1}))
      << "\" fill=\"#fafafa\" stroke=\"#cccccc\" stroke-dasharray=\"4 3\"/></g>\n";

    o << "<g id=\"trajectories\" fill=\"none\" stroke=\"#9e9e9e\" stroke-width=\"0.8\">\n";
    const int n = opt.trajectory_grid;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            Point x0{d.u0 + (i + 0.5) * d.width() / n, d.v0 + (j + 0.5) * d.height() / n};
            TraceOptions t;
            t.record = true;
            t.record_dt = opt.trajectory_time / 200;
            t.max_time = opt.trajectory_time;
            auto tr = trace(s, x0, t);
            std::vector<Point> pts;
            for (const auto& smp : tr.samples)
                pts.push_back(smp.x);
            for (const auto& line : cv.polylines(pts))
                o << "<polyline points=\"" << line << "\"/>\n";
        }
    o << "</g>\n";

    std::optional<ExitSet> ex;
    if (s.mode == Mode::Gradient) {
        try {
            ex = exit_set(s);
        } catch (const AssumptionError&) {
        }
    }
    o << "<g id=\"boundary\" fill=\"none\" stroke-width=\"3\">\n";
    for (const auto& b : s.boundary()) {
        auto seg = [&](double a, double c, const char* colour) {
            o << "<line x1=\"" << detail::num(cv.x(b.at(a))) << "\" y1=\"" << detail::num(cv.y(b.at(a))) << "\" x2=\""
              << detail::num(cv.x(b.at(c))) << "\" y2=\"" << detail::num(cv.y(b.at(c))) << "\" stroke=\"" << colour
              << "\"/>\n";
        };
        const ComponentExit* ce = nullptr;
        if (ex)
            for (const auto& c : ex->components)
                if (c.name == b.name)
                    ce = &c;
        if (!ce) {
            seg(b.s0, b.s1, "#616161");
            continue;
        }
        for (auto [a, c] : ce->b_intervals)
            seg(a, c, "#d62728");
        for (auto [a, c] : ce->complement)
            seg(a, c, "#616161");
    }
    o << "</g>\n";

    o << "<g id=\"gamma\" fill=\"#ff7f0e\">\n";
    if (ex)
        for (const auto& c : ex->components)
            for (const auto& g : c.gamma) {
                auto p = c.component.at(g.s);
                o << "<circle cx=\"" << detail::num(cv.x(p)) << "\" cy=\"" << detail::num(cv.y(p)) << "\" r=\"4\"/>\n";
            }
    o << "</g>\n";

    auto search = find_homoclinic_cycles(s, opt.n_max);
    o << "<g id=\"separatrices\" fill=\"none\" stroke=\"#6a3d9a\" stroke-width=\"1.4\">\n";
    for (const auto& c : search.connections) {
        std::vector<Point> pts;
        for (const auto& smp : c.curve.samples)
            pts.push_back(smp.x);
        for (const auto& line : cv.polylines(pts))
            o << "<polyline points=\"" << line << "\"" << (c.uncertain ? " stroke-dasharray=\"3 2\"" : "") << "/>\n";
    }
    o << "</g>\n";

    o << "<g id=\"critical\">\n";
    for (const auto& cp : search.critical) {
        double x = cv.x(cp.x), y = cv.y(cp.x);
        const char* colour = detail::critical_colour(cp.type);
        if (cp.type == CriticalType::Saddle)
            o << "<path d=\"M" << detail::num(x - 5) << "," << detail::num(y - 5) << " L" << detail::num(x + 5) << ","
              << detail::num(y + 5) << " M" << detail::num(x - 5) << "," << detail::num(y + 5) << " L"
              << detail::num(x + 5) << "," << detail::num(y - 5) << "\" stroke=\"" << colour
              << "\" stroke-width=\"2\"/>\n";
        else
            o << "<circle cx=\"" << detail::num(x) << "\" cy=\"" << detail::num(y) << "\" r=\"5\" fill=\"" << colour
              << "\"><title>" << to_string(cp.type) << "</title></circle>\n";
    }
    o << "</g>\n</svg>\n";
    return o.str();
}

}  // namespace relcat::flow
