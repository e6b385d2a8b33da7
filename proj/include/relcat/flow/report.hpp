// Consistency report between the critical-point count, a cup-length lower bound
// for cat(M, B, [omega]) and the homoclinic search, and the flow-built cover
//   U    points reaching B, or displacing below -N
//   U_i  points entering int V_i, V_i a gradient-convex disc at p_i, with displacement > -N
#pragma once

#include "relcat/cup.hpp"
#include "relcat/flow/assumptions.hpp"
#include "relcat/flow/homoclinic.hpp"
#include "relcat/flow/trace.hpp"
#include "relcat/local_system.hpp"
#include "relcat/one_form.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace relcat::flow {

/// A triangulation of (M, B) with a simplicial form in the class of omega.
struct SurfaceModel {
    SimplicialPair pair;
    OneForm form;
    FlatBundle bundle = FlatBundle::trivial();
    std::array<double, 2> periods{};
    std::size_t rank = 0;
    int n_u = 0, n_v = 0;
};

namespace detail {

inline double period_integral(const Scenario& s, int axis)
{
    const auto& d = s.domain;
    auto f = [&](double x) {
        auto c = axis == 0 ? s.form_at({x, 0.5 * (d.v0 + d.v1)}) : s.form_at({0.5 * (d.u0 + d.u1), x});
        return axis == 0 ? c.c1 : c.c2;
    };
    double a = axis == 0 ? d.u0 : d.v0, b = axis == 0 ? d.u1 : d.v1;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

/// p/q with q <= max_den approximating x within tol, by continued fractions.
inline std::optional<boost::rational<long>> rationalize(double x, long max_den, double tol)
{
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(r);
        long ai = static_cast<long>(a);
        long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den)
            break;
        h0 = h1, h1 = h2, k0 = k1, k1 = k2;
        if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol * std::max(1.0, std::abs(x)))
            return boost::rational<long>(h1, k1);
        if (r - a < 1e-15)
            break;
        r = 1 / (r - a);
    }
    return std::nullopt;
}

}  // namespace detail

/// Grid triangulation; boundary vertices and edges are in B when the exit set says
/// so at their sample points (edges at both ends and the midpoint). Arcs of B are
/// resolved by refining the boundary direction until each arc holds two vertices.
inline SurfaceModel triangulated_model(const Scenario& s, const ExitSet& ex)
{
    const auto& d = s.domain;
    SurfaceModel m;
    m.periods = {d.u_periodic ? detail::period_integral(s, 0) : 0.0, d.v_periodic ? detail::period_integral(s, 1) : 0.0};
    double scale = std::max({std::abs(m.periods[0]), std::abs(m.periods[1]), 1.0});
    bool zu = std::abs(m.periods[0]) < 1e-9 * scale, zv = std::abs(m.periods[1]) < 1e-9 * scale;

    // enough boundary vertices that every B arc and every gap contains two
    auto resolves = [&](int n, const ComponentExit& ce) {
        const auto& c = ce.component;
        for (const auto& pieces : {ce.b_intervals, ce.complement})
            for (const auto& [a, b] : pieces) {
                int count = 0;
                for (int i = 0; i <= n; ++i) {
                    double x = c.s0 + i * (c.s1 - c.s0) / n;
                    double xx = x < a ? x + (c.s1 - c.s0) : x;
                    count += (xx > a && xx < b) ? 1 : 0;
                }
                if (count < 2)
                    return false;
            }
        return true;
    };
    int n = 3;
    for (const auto& ce : ex.components) {
        if (ce.gamma.empty())
            continue;
        n = std::max(n, 6);
        while (n < 768 && !resolves(n, ce))
            n *= 2;
    }
    int nu = n, nv = s.surface == Surface::Torus ? n : (s.surface == Surface::Annulus ? 2 : n);
    if (s.surface == Surface::Torus)
        nu = nv = 3;
    m.n_u = nu;
    m.n_v = nv;

    // vertex ids; periodic directions wrap
    int cols = d.u_periodic ? nu : nu + 1;
    int rows = d.v_periodic ? nv : nv + 1;
    auto vid = [&](int i, int j) {
        int ii = d.u_periodic ? ((i % nu) + nu) % nu : i;
        int jj = d.v_periodic ? ((j % nv) + nv) % nv : j;
        return ii * rows + jj;
    };
    std::vector<Simplex> tris;
    std::map<std::pair<int, int>, std::pair<int, int>> steps;  // edge -> (di, dj) from first to second vertex
    auto add_edge = [&](int i0, int j0, int i1, int j1) {
        int a = vid(i0, j0), b = vid(i1, j1);
        steps[{a, b}] = {i1 - i0, j1 - j0};
    };
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) {
            int a = vid(i, j), b = vid(i + 1, j), c = vid(i, j + 1), e = vid(i + 1, j + 1);
            Simplex t1{a, b, e}, t2{a, c, e};
            std::sort(t1.begin(), t1.end());
            std::sort(t2.begin(), t2.end());
            tris.push_back(t1);
            tris.push_back(t2);
            add_edge(i, j, i + 1, j);
            add_edge(i, j, i, j + 1);
            add_edge(i, j, i + 1, j + 1);
            add_edge(i + 1, j, i + 1, j + 1);
            add_edge(i, j + 1, i + 1, j + 1);
        }

    // B from the exit set
    std::vector<Simplex> b_simplices;
    for (const auto& ce : ex.components) {
        const auto& c = ce.component;
        int len = c.axis == 1 ? nu : nv;
        auto grid_vertex = [&](int k) {
            if (c.axis == 1) {
                int j = c.level == d.v0 ? 0 : nv;
                return std::pair{k, j};
            }
            int i = c.level == d.u0 ? 0 : nu;
            return std::pair{i, k};
        };
        auto param = [&](int k) { return c.s0 + k * (c.s1 - c.s0) / len; };
        int last = c.closed ? len - 1 : len;
        for (int k = 0; k <= last; ++k) {
            auto [i, j] = grid_vertex(k);
            if (in_exit_set(s, c, param(k)))
                b_simplices.push_back({vid(i, j)});
        }
        for (int k = 0; k < len; ++k) {
            double mid = 0.5 * (param(k) + param(k + 1));
            if (in_exit_set(s, c, param(k)) && in_exit_set(s, c, param(k + 1)) && in_exit_set(s, c, mid)) {
                auto [i0, j0] = grid_vertex(k);
                auto [i1, j1] = grid_vertex(k + 1);
                Simplex e{vid(i0, j0), vid(i1, j1)};
                std::sort(e.begin(), e.end());
                b_simplices.push_back(e);
            }
        }
    }
    m.pair = build_pair(tris, b_simplices, static_cast<std::size_t>(cols * rows));

    // a cocycle in the class: u steps carry alpha, v steps beta
    std::optional<boost::rational<long>> ratio;
    if (zu && zv) {
        m.rank = 0;
    } else if (zu || zv) {
        m.rank = 1;
    } else {
        ratio = detail::rationalize(m.periods[1] / m.periods[0], 1000, 1e-9);
        m.rank = ratio ? 1 : 2;
    }
    FormValue alpha, beta;
    if (m.rank == 2) {
        alpha = FormValue(std::vector<Rational>{Rational(1, nu), Rational(0)});
        beta = FormValue(std::vector<Rational>{Rational(0), Rational(1, nv)});
    } else {
        long pa = zu ? 0 : 1, pb = zv ? 0 : 1;
        if (ratio) {
            pa = ratio->denominator();
            pb = ratio->numerator();
        }
        if (!zu && m.periods[0] < 0 && !ratio)
            pa = -1;
        if (!zv && m.periods[1] < 0 && !ratio)
            pb = -1;
        alpha = FormValue::scalar(Rational(pa, nu));
        beta = FormValue::scalar(Rational(pb, nv));
    }
    std::map<std::pair<int, int>, FormValue> values;
    for (const auto& [edge, step] : steps)
        values[edge] = Rational(step.first) * alpha + Rational(step.second) * beta;
    m.form = OneForm::from_edges(m.pair, values);
    m.bundle = m.rank == 0 ? FlatBundle::trivial() : FlatBundle::generic();
    return m;
}

struct ConvexDisc {
    int critical_id = -1;
    double radius = 0;
    bool certified = false;  // no launch re-entered with displacement above -N
    std::size_t launches = 0;
};

/// Largest radius from a decreasing schedule whose leaving launches do not re-enter
/// the open disc before displacing below -N.
inline ConvexDisc gradient_convex_disc(const Scenario& s, const CriticalPoint& cp, double n_target,
                                       const std::vector<double>& schedule, int launches = 32)
{
    ConvexDisc out;
    out.critical_id = cp.id;
    for (double frac : schedule) {
        double r = frac * s.domain.extent();
        bool ok = true;
        std::size_t leaving = 0;
        for (int k = 0; k < launches && ok; ++k) {
            double a = 2 * std::numbers::pi * (k + 0.5) / launches;
            Point x{cp.x[0] + r * std::cos(a), cp.x[1] + r * std::sin(a)};
            if (!s.inside(x))
                continue;
            auto vel = s.velocity(x);
            if (vel[0] * std::cos(a) + vel[1] * std::sin(a) <= 0)
                continue;
            ++leaving;
            TraceOptions opt;
            opt.displacement_target = n_target;
            opt.targets = {{cp.id, cp.x, r, std::nullopt}};
            auto tr = trace(s, x, opt);
            if (tr.termination == Termination::ConvergedToCritical && tr.displacement > -n_target)
                ok = false;
        }
        if (ok) {
            out.radius = r;
            out.certified = true;
            out.launches = leaving;
            return out;
        }
    }
    out.radius = schedule.empty() ? 0 : schedule.back() * s.domain.extent();
    return out;
}

enum class CoverSet { U, Ui, Uncovered };

struct CoverPoint {
    Point x{};
    CoverSet set = CoverSet::Uncovered;
    int critical_id = -1;
    double t = 0;
    double displacement = 0;
    Termination termination = Termination::BudgetExhausted;
};

struct FlowCover {
    double n_target = 0;
    int grid = 0;
    std::vector<ConvexDisc> discs;
    std::vector<CoverPoint> points;
    bool precondition_ok = true;  // no homoclinic cycle within |displacement| <= N
    std::size_t count(CoverSet c) const
    {
        std::size_t k = 0;
        for (const auto& p : points)
            k += p.set == c ? 1 : 0;
        return k;
    }
    double coverage() const
    {
        return points.empty() ? 1.0 : 1.0 - static_cast<double>(count(CoverSet::Uncovered)) / static_cast<double>(points.size());
    }
    /// Number of nonempty U_i.
    std::size_t k() const
    {
        std::vector<int> ids;
        for (const auto& p : points)
            if (p.set == CoverSet::Ui && std::find(ids.begin(), ids.end(), p.critical_id) == ids.end())
                ids.push_back(p.critical_id);
        return ids.size();
    }
};

/// Classifies an n x n grid. The displacement event fires at D = -N and the flow
/// strictly decreases D afterwards, so a Displaced point satisfies D < -N for
/// some later time as the strict definition of U requires.
inline FlowCover cover_from_flow(const Scenario& s, double n_target, int grid = 24,
                                 std::optional<std::vector<CriticalPoint>> critical = std::nullopt,
                                 bool check_cycles = true)
{
    FlowCover out;
    out.n_target = n_target;
    out.grid = grid;
    auto cps = critical ? *critical : find_critical_points(s);
    const std::vector<double> schedule{0.1, 0.05, 0.02, 0.01, 0.005};
    std::vector<Target> targets;
    for (const auto& cp : cps) {
        auto disc = gradient_convex_disc(s, cp, n_target, schedule);
        out.discs.push_back(disc);
        targets.push_back({cp.id, cp.x, disc.radius, std::nullopt});
    }
    if (check_cycles && !cps.empty()) {
        auto hs = find_homoclinic_cycles(s, n_target, 4, cps);
        out.precondition_ok = hs.cycles.empty();
    }
    for (const auto& x : s.grid(grid)) {
        CoverPoint cp;
        cp.x = x;
        bool started_inside = false;
        for (const auto& tg : targets)
            if (s.domain.distance(tg.centre, x) < tg.radius) {
                cp.set = CoverSet::Ui;
                cp.critical_id = tg.id;
                cp.termination = Termination::ConvergedToCritical;
                started_inside = true;
                break;
            }
        if (!started_inside) {
            TraceOptions opt;
            opt.displacement_target = n_target;
            opt.targets = targets;
            auto tr = trace(s, x, opt);
            cp.t = tr.time;
            cp.displacement = tr.displacement;
            cp.termination = tr.termination;
            if (tr.termination == Termination::ReachedB || tr.termination == Termination::Displaced) {
                cp.set = CoverSet::U;
            } else if (tr.termination == Termination::ConvergedToCritical && tr.displacement > -n_target) {
                cp.set = CoverSet::Ui;
                cp.critical_id = tr.critical_id;
            }
        }
        out.points.push_back(cp);
    }
    return out;
}

enum class Outcome { NotTriggered, CycleFound, SearchGap, AssumptionsFailed };

inline std::string to_string(Outcome o)
{
    switch (o) {
    case Outcome::NotTriggered: return "(i) hypothesis not triggered";
    case Outcome::CycleFound: return "(ii) hypothesis triggered, homoclinic cycle found";
    case Outcome::SearchGap: return "(iii) hypothesis triggered, no cycle found within budget (numerical-search gap)";
    case Outcome::AssumptionsFailed: return "assumptions failed";
    }
    return "?";
}

struct TheoremReport {
    AssumptionReport assumptions;
    std::optional<ExitSet> exits;
    std::vector<CriticalPoint> critical;
    std::size_t bound = 0;
    std::string bound_source;
    std::optional<SurfaceModel> model;
    HomoclinicSearch search;
    Outcome outcome = Outcome::NotTriggered;
    bool flagged() const { return outcome == Outcome::SearchGap; }
};

struct ReportOptions {
    double n_max = 10;
    std::optional<double> max_time;  // separatrix budget
};

inline TheoremReport theorem47_report(const Scenario& s, const ReportOptions& opt = {})
{
    TheoremReport rep;
    rep.assumptions = check_assumptions(s);
    if (!rep.assumptions.passed()) {
        rep.outcome = Outcome::AssumptionsFailed;
        return rep;
    }
    rep.critical = find_critical_points(s);
    if (s.mode == Mode::Harness) {
        rep.bound = static_cast<std::size_t>(std::max(0, s.forced_bound.value_or(0)));
        rep.bound_source = "forced by scenario";
    } else {
        rep.exits = exit_set(s);
        rep.model = triangulated_model(s, *rep.exits);
        rep.bound = cup_length_bound(rep.model->form, rep.model->bundle).lower_bound;
        rep.bound_source = "cup-length";
    }
    rep.search = find_homoclinic_cycles(s, opt.n_max, 4, rep.critical, opt.max_time);
    if (rep.critical.size() >= rep.bound)
        rep.outcome = Outcome::NotTriggered;
    else if (rep.search.certain_cycles() > 0)
        rep.outcome = Outcome::CycleFound;
    else
        rep.outcome = Outcome::SearchGap;
    return rep;
}

}  // namespace relcat::flow
