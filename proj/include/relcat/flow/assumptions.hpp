// Boundary assumptions and the exit set
//   B = { x in dM : -df/dt(x, 0) <= 0 },  t the inward collar coordinate,
// with Gamma the zero set of df/dt on dM.
//   A1  omega has no zero on the collar
//   A2  zero is a regular value of df/dt on dM
//   A3  at Gamma, df/ds > 0 for the boundary coordinate s with s <= 0 inside B
// Rectangle corners are outside the analysis; each side is treated on its open interval.
#pragma once

#include "relcat/flow/critical.hpp"
#include "relcat/flow/scenario.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace relcat::flow {

class AssumptionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Verdict { Pass, Fail, Inconclusive, NotApplicable };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

struct Witness {
    std::string component;
    Point x{};
    double value = 0;
    std::string note;
};

struct AssumptionCheck {
    std::string name;
    Verdict verdict = Verdict::Pass;
    bool vacuous = false;
    std::vector<Witness> witnesses;
};

struct AssumptionReport {
    AssumptionCheck a1{"A1"}, a2{"A2"}, a3{"A3"};
    bool passed() const
    {
        auto ok = [](const AssumptionCheck& c) { return c.verdict == Verdict::Pass || c.verdict == Verdict::NotApplicable; };
        return ok(a1) && ok(a2) && ok(a3);
    }
};

struct GammaPoint {
    double s = 0;
    double slope = 0;       // d/ds of df/dt
    double tangential = 0;  // df/ds with s oriented so that s <= 0 lies in B
};

struct ComponentExit {
    std::string name;
    BoundaryComponent component;
    std::vector<std::pair<double, double>> b_intervals;
    std::vector<std::pair<double, double>> complement;
    std::vector<GammaPoint> gamma;
    bool all_b() const { return complement.empty(); }
    bool no_b() const { return b_intervals.empty(); }
};

struct ExitSet {
    std::vector<ComponentExit> components;
    std::size_t gamma_count() const
    {
        std::size_t n = 0;
        for (const auto& c : components)
            n += c.gamma.size();
        return n;
    }
};

namespace detail {

struct SignScan {
    std::vector<GammaPoint> roots;
    bool identically_zero = false;
    std::vector<double> tangencies;  // zeros without a sign change
    std::vector<double> unresolved;
};

inline SignScan scan_normal_derivative(const Scenario& s, const BoundaryComponent& b, int samples)
{
    SignScan out;
    const double len = b.s1 - b.s0;
    const double h = len / samples;
    // closed components sample [s0, s1); open ones the interior
    std::vector<double> ss, gs;
    for (int i = 0; i < samples; ++i) {
        double x = b.closed ? b.s0 + i * h : b.s0 + (i + 0.5) * h;
        ss.push_back(x);
        gs.push_back(s.normal_derivative(b, x));
    }
    double max_abs = 0;
    for (double g : gs)
        max_abs = std::max(max_abs, std::abs(g));
    if (max_abs < s.tol.zero) {
        out.identically_zero = true;
        return out;
    }
    // samples below the zero tolerance count as zeros; a run of them is a crossing
    // when its nonzero neighbours differ in sign and a tangency otherwise
    const std::size_t n = ss.size();
    auto sign = [&](std::size_t i) { return std::abs(gs[i]) < s.tol.zero ? 0 : (gs[i] > 0 ? 1 : -1); };
    auto f = [&](double x) { return s.normal_derivative(b, x); };
    auto param = [&](std::size_t i, std::size_t wraps) { return ss[i] + static_cast<double>(wraps) * len; };
    auto add_root = [&](double a, double c) {
        boost::math::tools::eps_tolerance<double> tol(48);
        std::uintmax_t iters = 200;
        auto r = boost::math::tools::toms748_solve(f, a, c, tol, iters);
        double root = 0.5 * (r.first + r.second);
        if (b.closed && root >= b.s1)
            root -= len;
        out.roots.push_back({root, s.normal_derivative_slope(b, root), 0});
    };
    std::size_t first = n;
    for (std::size_t i = 0; i < n && first == n; ++i)
        if (sign(i) != 0)
            first = i;
    // walk once around (closed) or across (open), starting at a nonzero sample
    std::size_t start = b.closed ? first : 0;
    std::size_t steps = b.closed ? n : n - 1;
    std::size_t prev = start;
    std::size_t prev_wraps = 0;
    for (std::size_t k = 1; k <= steps; ++k) {
        std::size_t raw = start + k;
        std::size_t i = raw % n;
        std::size_t wraps = raw / n;
        if (sign(i) == 0)
            continue;
        if (sign(prev) == 0) {
            prev = i;
            prev_wraps = wraps;
            continue;  // zeros at the open end of a side are corners
        }
        double a = param(prev, prev_wraps), c = param(i, wraps);
        bool gap = (i + n - prev) % n > 1;
        if (sign(prev) != sign(i)) {
            add_root(a, c);
        } else if (gap) {
            out.tangencies.push_back(0.5 * (a + c) - (b.closed && 0.5 * (a + c) >= b.s1 ? len : 0));
        } else {
            double lim = std::max(s.tol.regular * h, s.tol.zero);
            if (std::min(std::abs(gs[prev]), std::abs(gs[i])) < 10 * lim) {
                auto absf = [&](double x) { return std::abs(f(x)); };
                std::uintmax_t iters = 200;
                auto m = boost::math::tools::brent_find_minima(absf, a, c, 40, iters);
                double where = b.closed && m.first >= b.s1 ? m.first - len : m.first;
                if (m.second < s.tol.zero)
                    out.tangencies.push_back(where);
                else if (m.second < lim)
                    out.unresolved.push_back(where);
            }
        }
        prev = i;
        prev_wraps = wraps;
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const GammaPoint& x, const GammaPoint& y) { return x.s < y.s; });
    return out;
}

inline std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

}  // namespace detail

/// Exit set by sign analysis of df/dt with bracketed roots. Throws
/// AssumptionError when df/dt has a non-regular zero.
inline ExitSet exit_set(const Scenario& s, int samples = 2048)
{
    if (s.mode == Mode::Harness)
        throw AssumptionError("harness scenarios have no exit set");
    ExitSet out;
    for (const auto& b : s.boundary()) {
        auto scan = detail::scan_normal_derivative(s, b, samples);
        if (scan.identically_zero)
            throw AssumptionError("df/dt vanishes identically on the " + b.name + " boundary; zero is not a regular value");
        if (!scan.tangencies.empty())
            throw AssumptionError("df/dt has a non-transverse zero on the " + b.name + " boundary at s = " +
                                  detail::fmt(scan.tangencies.front()));
        for (const auto& r : scan.roots)
            if (std::abs(r.slope) < s.tol.regular)
                throw AssumptionError("df/dt has a degenerate zero on the " + b.name + " boundary at s = " +
                                      detail::fmt(r.s));
        ComponentExit ce;
        ce.name = b.name;
        ce.component = b;
        for (auto g : scan.roots) {
            // orient s so that s <= 0 lies in B: B = {df/dt >= 0}
            double sign = g.slope > 0 ? -1 : 1;
            g.tangential = sign * s.tangential_derivative(b, g.s);
            ce.gamma.push_back(g);
        }
        // cut the component at the roots and classify each piece by its midpoint
        std::vector<double> cuts;
        for (const auto& g : ce.gamma)
            cuts.push_back(g.s);
        std::vector<std::pair<double, double>> pieces;
        if (cuts.empty()) {
            pieces.push_back({b.s0, b.s1});
        } else if (b.closed) {
            for (std::size_t i = 0; i < cuts.size(); ++i) {
                double a = cuts[i];
                double c = i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + (b.s1 - b.s0);
                pieces.push_back({a, c});
            }
        } else {
            double a = b.s0;
            for (double c : cuts) {
                pieces.push_back({a, c});
                a = c;
            }
            pieces.push_back({a, b.s1});
        }
        for (const auto& piece : pieces) {
            double mid = 0.5 * (piece.first + piece.second);
            if (b.closed && mid >= b.s1)
                mid -= b.s1 - b.s0;
            if (s.normal_derivative(b, mid) >= 0)
                ce.b_intervals.push_back(piece);
            else
                ce.complement.push_back(piece);
        }
        out.components.push_back(ce);
    }
    return out;
}

/// Whether the boundary point with free coordinate x on component c lies in B.
inline bool in_exit_set(const Scenario& s, const BoundaryComponent& c, double x)
{
    return s.normal_derivative(c, x) >= 0;
}

inline AssumptionReport check_assumptions(const Scenario& s, int samples = 2048)
{
    AssumptionReport rep;
    if (s.mode == Mode::Harness) {
        rep.a1.verdict = rep.a2.verdict = rep.a3.verdict = Verdict::NotApplicable;
        return rep;
    }
    auto boundary = s.boundary();
    if (boundary.empty()) {
        rep.a1.vacuous = rep.a2.vacuous = rep.a3.vacuous = true;
        return rep;
    }

    // A1: zeros of omega on the closed collar, by Newton from near-zero samples
    {
        const int ks = 256, kd = 16;
        double max_norm = 0;
        std::vector<std::pair<Point, double>> pts;
        for (const auto& b : boundary)
            for (int i = 0; i <= ks; ++i)
                for (int k = 0; k <= kd; ++k) {
                    double x = b.s0 + i * (b.s1 - b.s0) / ks;
                    double depth = k * s.collar_width / kd;
                    Point p = b.at(x);
                    p[static_cast<std::size_t>(b.axis)] += b.inward * depth;
                    double nrm = s.form_at(p).norm();
                    max_norm = std::max(max_norm, nrm);
                    pts.push_back({p, nrm});
                }
        double near = std::max(1e-3 * max_norm, 1e3 * s.tol.zero);
        auto in_collar = [&](const Point& p) {
            if (!s.inside(p))
                return false;
            for (const auto& b : boundary)
                if (b.depth(p) <= s.collar_width + 1e-12)
                    return true;
            return false;
        };
        for (const auto& [p, nrm] : pts) {
            if (nrm >= near)
                continue;
            Point x = p;
            double r = nrm;
            for (int it = 0; it < 50 && r >= s.tol.zero; ++it) {
                auto c = s.form_at(x);
                const auto& j = c.jacobian;
                double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
                if (std::abs(det) < 1e-300)
                    break;
                x = {x[0] - (j[1][1] * c.c1 - j[0][1] * c.c2) / det, x[1] - (-j[1][0] * c.c1 + j[0][0] * c.c2) / det};
                r = s.form_at(x).norm();
            }
            if (r < s.tol.zero && in_collar(s.domain.wrap(x))) {
                rep.a1.verdict = Verdict::Fail;
                rep.a1.witnesses.push_back({"collar", s.domain.wrap(x), r, "zero of omega"});
                break;
            }
            if (r >= s.tol.zero && nrm < 1e3 * s.tol.zero && rep.a1.verdict == Verdict::Pass) {
                rep.a1.verdict = Verdict::Inconclusive;
                rep.a1.witnesses.push_back({"collar", p, nrm, "near-zero not resolved"});
            }
        }
    }

    // A2 and A3 on each component
    bool any_gamma = false;
    for (const auto& b : boundary) {
        auto scan = detail::scan_normal_derivative(s, b, samples);
        if (scan.identically_zero) {
            rep.a2.verdict = Verdict::Fail;
            rep.a2.witnesses.push_back({b.name, b.at(b.s0), 0, "df/dt vanishes identically"});
            continue;
        }
        for (double t : scan.tangencies) {
            rep.a2.verdict = Verdict::Fail;
            rep.a2.witnesses.push_back({b.name, b.at(t), s.normal_derivative(b, t), "zero without sign change"});
        }
        for (double t : scan.unresolved) {
            if (rep.a2.verdict == Verdict::Pass)
                rep.a2.verdict = Verdict::Inconclusive;
            rep.a2.witnesses.push_back({b.name, b.at(t), s.normal_derivative(b, t), "below sampling resolution"});
        }
        for (const auto& r : scan.roots) {
            any_gamma = true;
            if (std::abs(r.slope) < s.tol.regular) {
                rep.a2.verdict = Verdict::Fail;
                rep.a2.witnesses.push_back({b.name, b.at(r.s), r.slope, "degenerate zero"});
                continue;
            }
            double sign = r.slope > 0 ? -1 : 1;
            double ds = sign * s.tangential_derivative(b, r.s);
            if (ds <= 0) {
                if (std::abs(ds) < s.tol.regular) {
                    if (rep.a3.verdict == Verdict::Pass)
                        rep.a3.verdict = Verdict::Inconclusive;
                } else {
                    rep.a3.verdict = Verdict::Fail;
                }
                rep.a3.witnesses.push_back({b.name, b.at(r.s), ds, "df/ds not positive at Gamma"});
            }
        }
    }
    if (!any_gamma) {
        rep.a2.vacuous = rep.a2.verdict == Verdict::Pass;
        rep.a3.vacuous = true;
    }
    return rep;
}

}  // namespace relcat::flow
