// Trajectories of the traced flow, with boundary, displacement and arrival events.
//
// The state is (u, v, D) with D the running integral of omega. Coordinates are
// not wrapped during integration, so a trajectory lives in the universal cover of
// the chart and D equals the potential drop there. Events are bracketed on the
// step grid and bisected on the dense output.
#pragma once

#include "relcat/flow/scenario.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace relcat::flow {

enum class Termination { ReachedB, ExitedOutsideB, Displaced, ConvergedToCritical, BudgetExhausted, NumericalFailure };

inline std::string to_string(Termination t)
{
    switch (t) {
    case Termination::ReachedB: return "reached-B";
    case Termination::ExitedOutsideB: return "exited-outside-B";
    case Termination::Displaced: return "displaced";
    case Termination::ConvergedToCritical: return "converged-to-critical";
    case Termination::BudgetExhausted: return "budget-exhausted";
    case Termination::NumericalFailure: return "numerical-failure";
    }
    return "?";
}

struct Sample {
    double t;
    Point x;
    double displacement;
};

/// A ball the trajectory may fall into. For a saddle, `unstable` is the unit
/// unstable direction; arrival then also requires a small component along it.
struct Target {
    int id = -1;
    Point centre{};
    double radius = 0;
    std::optional<Point> unstable;
};

struct TraceOptions {
    std::optional<double> displacement_target;  // stop once D < -N
    std::vector<Target> targets;
    bool record = false;
    double record_dt = 0;  // extra dense-output samples at this spacing; 0 keeps step ends only
    std::optional<double> max_time;
};

struct Trajectory {
    Point start{};
    Point end{};
    double time = 0;
    double displacement = 0;
    Termination termination = Termination::BudgetExhausted;
    int boundary_component = -1;
    int critical_id = -1;
    double closest_saddle_approach = INFINITY;  // for passes near a saddle that did not arrive
    int closest_saddle_id = -1;
    std::vector<Sample> samples;
    std::string message;
};

namespace detail {

using State = std::array<double, 3>;

inline bool in_b(const Scenario& s, const BoundaryComponent& b, double param)
{
    return s.normal_derivative(b, param) >= 0;
}

inline double free_coordinate(const BoundaryComponent& b, const Point& p)
{
    return p[static_cast<std::size_t>(1 - b.axis)];
}

struct Arrival {
    bool inside = false;
    bool arrives = false;
    double unstable_component = 0;
};

inline Arrival check_target(const Scenario& s, const Target& tg, const Point& x)
{
    Arrival a;
    auto d = s.domain.delta(tg.centre, x);
    double r = std::hypot(d[0], d[1]);
    a.inside = r < tg.radius;
    if (!a.inside)
        return a;
    if (!tg.unstable) {
        a.arrives = true;
        return a;
    }
    a.unstable_component = std::abs(d[0] * (*tg.unstable)[0] + d[1] * (*tg.unstable)[1]);
    a.arrives = a.unstable_component <= s.tol.shadow_ratio * tg.radius;
    return a;
}

}  // namespace detail

/// Traces the flow from x0 until an event or the budget.
inline Trajectory trace(const Scenario& s, const Point& x0, const TraceOptions& opt = {})
{
    namespace ode = boost::numeric::odeint;
    using detail::State;

    Trajectory tr;
    tr.start = x0;
    const auto boundary = s.boundary();
    const double max_time = opt.max_time.value_or(s.budget.max_time);

    // starting on the boundary: in B means beta = 0
    for (std::size_t k = 0; k < boundary.size(); ++k) {
        double depth = boundary[k].depth(x0);
        if (depth < 0) {
            tr.termination = Termination::NumericalFailure;
            tr.message = "start point lies outside the domain";
            tr.end = x0;
            return tr;
        }
        if (depth == 0 && detail::in_b(s, boundary[k], detail::free_coordinate(boundary[k], x0))) {
            tr.termination = Termination::ReachedB;
            tr.boundary_component = static_cast<int>(k);
            tr.end = x0;
            return tr;
        }
    }

    auto rhs = [&s](const State& x, State& dxdt, double) {
        Point p{x[0], x[1]};
        auto vel = s.velocity(p);
        dxdt[0] = vel[0];
        dxdt[1] = vel[1];
        dxdt[2] = s.displacement_rate(p, vel);
    };

    auto stepper = ode::make_dense_output(s.tol.atol, s.tol.rtol, ode::runge_kutta_dopri5<State>());
    State x{x0[0], x0[1], 0.0};
    double speed0 = std::hypot(s.velocity(x0)[0], s.velocity(x0)[1]);
    double dt0 = std::min(1e-2, 1e-2 * s.domain.extent() / std::max(speed0, 1e-12));
    stepper.initialize(x, 0.0, dt0);

    // targets the start lies in are armed once the trajectory has left them
    std::vector<bool> armed(opt.targets.size(), true);
    for (std::size_t i = 0; i < opt.targets.size(); ++i)
        armed[i] = !detail::check_target(s, opt.targets[i], x0).inside;

    auto record = [&](double t, const State& st) {
        if (opt.record)
            tr.samples.push_back({t, {st[0], st[1]}, st[2]});
    };
    record(0, x);
    // interpolated samples strictly inside (a, b)
    auto fill = [&](double a, double b) {
        if (!opt.record || opt.record_dt <= 0)
            return;
        State tmp;
        for (double t = (std::floor(a / opt.record_dt) + 1) * opt.record_dt; t < b; t += opt.record_dt) {
            stepper.calc_state(t, tmp);
            tr.samples.push_back({t, {tmp[0], tmp[1]}, tmp[2]});
        }
    };

    auto finish = [&](double t, const State& st, Termination why) {
        tr.time = t;
        tr.end = {st[0], st[1]};
        tr.displacement = st[2];
        tr.termination = why;
        if (opt.record && (tr.samples.empty() || tr.samples.back().t != t))
            tr.samples.push_back({t, {st[0], st[1]}, st[2]});
        return tr;
    };

    // smallest time in [a, b] where pred holds, given it fails at a and holds at b
    auto bisect = [&](double a, double b, auto pred) {
        State tmp;
        while (b - a > s.tol.event) {
            double m = 0.5 * (a + b);
            stepper.calc_state(m, tmp);
            if (pred(tmp))
                b = m;
            else
                a = m;
        }
        stepper.calc_state(b, tmp);
        return std::pair<double, State>{b, tmp};
    };

    for (long step = 0; step < s.budget.max_steps; ++step) {
        auto [t0, t1] = stepper.do_step(rhs);
        State cur = stepper.current_state();
        if (!std::isfinite(cur[0]) || !std::isfinite(cur[1]) || !std::isfinite(cur[2])) {
            tr.message = "non-finite state";
            return finish(t0, stepper.previous_state(), Termination::NumericalFailure);
        }
        if (t1 - t0 < 1e-14 * std::max(1.0, t1)) {
            tr.message = "step size collapse";
            return finish(t1, cur, Termination::NumericalFailure);
        }

        // earliest event inside the step wins
        double best_t = INFINITY;
        State best_state{};
        Termination best_kind = Termination::BudgetExhausted;
        int best_index = -1;

        for (std::size_t k = 0; k < boundary.size(); ++k) {
            const auto& b = boundary[k];
            if (b.depth({cur[0], cur[1]}) >= 0)
                continue;
            auto [te, xe] = bisect(t0, t1, [&](const State& st) { return b.depth({st[0], st[1]}) < 0; });
            if (te < best_t) {
                best_t = te;
                best_state = xe;
                best_state[static_cast<std::size_t>(b.axis)] = b.level;
                best_index = static_cast<int>(k);
                bool exit_ok = detail::in_b(s, b, detail::free_coordinate(b, {xe[0], xe[1]}));
                best_kind = exit_ok ? Termination::ReachedB : Termination::ExitedOutsideB;
            }
        }
        if (opt.displacement_target && cur[2] < -*opt.displacement_target) {
            double n = *opt.displacement_target;
            auto [te, xe] = bisect(t0, t1, [&](const State& st) { return st[2] < -n; });
            if (te < best_t) {
                best_t = te;
                best_state = xe;
                best_kind = Termination::Displaced;
                best_index = -1;
            }
        }
        for (std::size_t i = 0; i < opt.targets.size(); ++i) {
            const auto& tg = opt.targets[i];
            auto a = detail::check_target(s, tg, {cur[0], cur[1]});
            if (!armed[i]) {
                armed[i] = !a.inside;
                continue;
            }
            if (a.inside && tg.unstable) {
                double r = s.domain.distance(tg.centre, {cur[0], cur[1]});
                if (r < tr.closest_saddle_approach) {
                    tr.closest_saddle_approach = r;
                    tr.closest_saddle_id = tg.id;
                }
            }
            if (a.arrives && t1 < best_t) {
                best_t = t1;
                best_state = cur;
                best_kind = Termination::ConvergedToCritical;
                best_index = tg.id;
            }
        }
        // events past the time budget do not count
        if (best_t > max_time)
            best_t = INFINITY;
        if (best_t == INFINITY && t1 >= max_time) {
            State xe;
            stepper.calc_state(max_time, xe);
            fill(t0, max_time);
            return finish(max_time, xe, Termination::BudgetExhausted);
        }
        if (best_t < INFINITY) {
            fill(t0, best_t);
            if (best_kind == Termination::ConvergedToCritical)
                tr.critical_id = best_index;
            else if (best_kind != Termination::Displaced)
                tr.boundary_component = best_index;
            return finish(best_t, best_state, best_kind);
        }
        fill(t0, t1);
        record(t1, cur);
    }
    tr.message = "step budget exhausted";
    return finish(stepper.current_time(), stepper.current_state(), Termination::BudgetExhausted);
}

/// True when the recorded displacement never increases by more than slack.
inline bool displacement_monotone(const Trajectory& tr, double slack = 1e-12)
{
    for (std::size_t i = 1; i < tr.samples.size(); ++i)
        if (tr.samples[i].displacement > tr.samples[i - 1].displacement + slack)
            return false;
    return true;
}

struct ProbeSample {
    Point x{};
    bool in_ub = false;
    double beta = 0;
};

struct ProbeSuspect {
    std::size_t a = 0, b = 0;  // grid indices of the adjacent pair
    double jump = 0;
    bool resolved = false;  // jumps shrank with the spacing under refinement
    bool peak = false;      // beta rises inside the segment: it blows up near a set outside U_B
};

struct ArrivalProbe {
    int n = 0;
    std::vector<ProbeSample> samples;
    std::vector<ProbeSuspect> suspects;
    double max_beta = 0;
    std::size_t persistent() const
    {
        std::size_t c = 0;
        for (const auto& p : suspects)
            c += p.resolved || p.peak ? 0 : 1;
        return c;
    }
};

/// Arrival time beta on an n x n grid of cell centres. Adjacent samples whose beta
/// differs by more than jump_factor * spacing are suspects, followed by bisection
/// into the half with the larger jump: a continuous beta has jumps that vanish, a
/// blow-up towards a set outside U_B shows values climbing above both ends, and a
/// jump that survives `depth` halvings is persistent.
inline ArrivalProbe arrival_time_probe(const Scenario& s, int n, int depth = 30)
{
    ArrivalProbe pr;
    pr.n = n;
    for (const auto& x : s.grid(n)) {
        auto tr = trace(s, x);
        ProbeSample ps{x, tr.termination == Termination::ReachedB, tr.time};
        if (ps.in_ub)
            pr.max_beta = std::max(pr.max_beta, ps.beta);
        pr.samples.push_back(ps);
    }
    double h = s.domain.extent() / n;
    double bound = s.tol.jump_factor * h;
    auto beta_at = [&](const Point& p) -> std::optional<double> {
        auto tr = trace(s, p);
        if (tr.termination != Termination::ReachedB)
            return std::nullopt;
        return tr.time;
    };
    auto idx = [n](int i, int j) { return static_cast<std::size_t>(j * n + i); };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            for (auto [di, dj] : {std::pair{1, 0}, std::pair{0, 1}}) {
                int ii = i + di, jj = j + dj;
                if (ii >= n || jj >= n)
                    continue;
                const auto& p = pr.samples[idx(i, j)];
                const auto& q = pr.samples[idx(ii, jj)];
                if (!p.in_ub || !q.in_ub)
                    continue;
                double jump = std::abs(p.beta - q.beta);
                if (jump <= bound)
                    continue;
                ProbeSuspect sus{idx(i, j), idx(ii, jj), jump, false};
                Point a = p.x, b = q.x;
                double ba = p.beta, bb = q.beta;
                const double top = std::max(ba, bb);
                for (int it = 0; it < depth; ++it) {
                    Point m{(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
                    auto bm = beta_at(m);
                    if (!bm || *bm > top + bound) {
                        sus.peak = true;
                        break;
                    }
                    if (std::abs(*bm - ba) >= std::abs(bb - *bm)) {
                        b = m;
                        bb = *bm;
                    } else {
                        a = m;
                        ba = *bm;
                    }
                    if (std::abs(ba - bb) < 1e-3 * jump) {
                        sus.resolved = true;
                        break;
                    }
                }
                pr.suspects.push_back(sus);
            }
    return pr;
}

}  // namespace relcat::flow
