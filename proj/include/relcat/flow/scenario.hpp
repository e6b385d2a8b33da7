// Parametric surfaces with boundary carrying a closed 1-form
//   omega = c1 du + c2 dv + dg
// and the conformally flat metric lambda (du^2 + dv^2), which must be the
// product metric (lambda = 1) on the boundary collar.
//
// Charts: one rectangle [u0, u1] x [v0, v1] with optional periodic identification.
//   annulus    u periodic, boundary circles v = v0 (inner) and v = v1 (outer)
//   torus      both periodic, no boundary
//   rectangle  no identification, four sides
//
// Harness mode replaces the gradient by a raw planar field (u', v') and is only
// used to exercise the separatrix and cycle machinery.
#pragma once

#include "relcat/complex.hpp"
#include "relcat/flow/expression.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace relcat::flow {

using Point = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

enum class Surface { Annulus, Torus, Rectangle };
enum class Mode { Gradient, Harness };

inline std::string to_string(Surface s)
{
    switch (s) {
    case Surface::Annulus: return "annulus";
    case Surface::Torus: return "torus";
    case Surface::Rectangle: return "rectangle";
    }
    return "?";
}

struct Tolerances {
    double rtol = 1e-9;
    double atol = 1e-12;
    double event = 1e-10;         // bisection width for boundary and displacement events
    double merge = 1e-6;          // critical points closer than this are one point
    double launch = 1e-5;         // separatrix offset along the unstable direction
    double capture = 1e-2;        // ball around a critical point that counts as arrival
    double shadow_ratio = 1e-2;   // unstable component / capture radius allowed on arrival at a saddle
    double zero = 1e-9;           // |omega| below this is a zero
    double regular = 1e-7;        // tangential derivative of df/dt below this is not regular
    double closedness = 1e-6;     // allowed |dc1/dv - dc2/du| and transition mismatch
    double degenerate = 1e-6;     // smallest eigenvalue modulus over the linearization scale
    double jump_factor = 10;      // arrival-time jump allowed per grid spacing
};

struct Budget {
    double max_time = 100;
    long max_steps = 200000;
};

struct Domain {
    double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
    bool u_periodic = false, v_periodic = false;

    double width() const { return u1 - u0; }
    double height() const { return v1 - v0; }
    double extent() const { return std::min(width(), height()); }

    /// Representative in the fundamental domain.
    Point wrap(Point p) const
    {
        if (u_periodic)
            p[0] = u0 + std::fmod(std::fmod(p[0] - u0, width()) + width(), width());
        if (v_periodic)
            p[1] = v0 + std::fmod(std::fmod(p[1] - v0, height()) + height(), height());
        return p;
    }
    /// Displacement b - a taken to the nearest periodic image.
    Point delta(const Point& a, const Point& b) const
    {
        Point d{b[0] - a[0], b[1] - a[1]};
        if (u_periodic)
            d[0] -= width() * std::round(d[0] / width());
        if (v_periodic)
            d[1] -= height() * std::round(d[1] / height());
        return d;
    }
    double distance(const Point& a, const Point& b) const
    {
        auto d = delta(a, b);
        return std::hypot(d[0], d[1]);
    }
};

/// One boundary piece: the coordinate `axis` held at `level`, with the interior
/// on the side given by `inward`. The free coordinate runs over [s0, s1].
struct BoundaryComponent {
    std::string name;
    int axis = 1;
    double level = 0;
    int inward = 1;
    double s0 = 0, s1 = 1;
    bool closed = false;

    Point at(double s) const { return axis == 1 ? Point{s, level} : Point{level, s}; }
    /// Signed distance into the interior.
    double depth(const Point& p) const { return inward * (p[static_cast<std::size_t>(axis)] - level); }
};

struct FormCoefficients {
    double c1 = 0, c2 = 0;
    Mat2 jacobian{};  // jacobian[i][j] = d c_i / d x_j
    double norm() const { return std::hypot(c1, c2); }
};

class Scenario {
public:
    std::string name;
    Surface surface = Surface::Annulus;
    Mode mode = Mode::Gradient;
    Domain domain;
    Expression c1, c2, exact;
    Expression field_u, field_v;
    Expression metric_factor;
    double collar_width = 0.2;
    Tolerances tol;
    Budget budget;
    std::optional<int> forced_bound;
    bool has_form = true;

    FormCoefficients form_at(const Point& p) const
    {
        FormCoefficients out;
        auto a = c1.jet(p[0], p[1]);
        auto b = c2.jet(p[0], p[1]);
        auto g = exact.jet(p[0], p[1]);
        out.c1 = a.f + g.du;
        out.c2 = b.f + g.dv;
        out.jacobian = {{{a.du + g.duu, a.dv + g.duv}, {b.du + g.duv, b.dv + g.dvv}}};
        return out;
    }

    double lambda(const Point& p) const { return metric_factor.empty() ? 1.0 : metric_factor(p[0], p[1]); }

    /// Velocity of the flow being traced: the negative gradient, or the harness field.
    Point velocity(const Point& p) const
    {
        if (mode == Mode::Harness)
            return {field_u(p[0], p[1]), field_v(p[0], p[1])};
        auto c = form_at(p);
        double l = lambda(p);
        return {-c.c1 / l, -c.c2 / l};
    }

    Mat2 velocity_jacobian(const Point& p) const
    {
        if (mode == Mode::Harness) {
            auto a = field_u.jet(p[0], p[1]);
            auto b = field_v.jet(p[0], p[1]);
            return {{{a.du, a.dv}, {b.du, b.dv}}};
        }
        // at zeros of omega the derivative of lambda does not contribute
        auto c = form_at(p);
        double l = lambda(p);
        return {{{-c.jacobian[0][0] / l, -c.jacobian[0][1] / l}, {-c.jacobian[1][0] / l, -c.jacobian[1][1] / l}}};
    }

    /// omega evaluated on the velocity, the rate of change of displacement.
    double displacement_rate(const Point& p, const Point& vel) const
    {
        if (!has_form)
            return 0;
        auto c = form_at(p);
        return c.c1 * vel[0] + c.c2 * vel[1];
    }

    std::vector<BoundaryComponent> boundary() const
    {
        const auto& d = domain;
        switch (surface) {
        case Surface::Annulus:
            return {{"inner", 1, d.v0, 1, d.u0, d.u1, true}, {"outer", 1, d.v1, -1, d.u0, d.u1, true}};
        case Surface::Rectangle:
            return {{"bottom", 1, d.v0, 1, d.u0, d.u1, false},
                    {"right", 0, d.u1, -1, d.v0, d.v1, false},
                    {"top", 1, d.v1, -1, d.u0, d.u1, false},
                    {"left", 0, d.u0, 1, d.v0, d.v1, false}};
        case Surface::Torus: return {};
        }
        return {};
    }

    /// df/dt at a boundary point, t the inward collar coordinate.
    double normal_derivative(const BoundaryComponent& b, double s) const
    {
        auto c = form_at(b.at(s));
        return b.inward * (b.axis == 1 ? c.c2 : c.c1);
    }
    /// Tangential derivative of df/dt along increasing s.
    double normal_derivative_slope(const BoundaryComponent& b, double s) const
    {
        auto c = form_at(b.at(s));
        int free = 1 - b.axis;
        return b.inward * c.jacobian[static_cast<std::size_t>(b.axis)][static_cast<std::size_t>(free)];
    }
    /// df/ds along increasing s.
    double tangential_derivative(const BoundaryComponent& b, double s) const
    {
        auto c = form_at(b.at(s));
        return b.axis == 1 ? c.c1 : c.c2;
    }

    bool inside(const Point& p) const
    {
        for (const auto& b : boundary())
            if (b.depth(p) < 0)
                return false;
        return true;
    }
    bool in_collar(const Point& p) const
    {
        for (const auto& b : boundary())
            if (b.depth(p) < collar_width)
                return true;
        return false;
    }

    /// Ordered sample grid of n x n cell centres.
    std::vector<Point> grid(int n) const
    {
        std::vector<Point> out;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                out.push_back({domain.u0 + (i + 0.5) * domain.width() / n, domain.v0 + (j + 0.5) * domain.height() / n});
        return out;
    }
};

/// Problems with closedness, chart transitions and the collar metric.
inline std::vector<std::string> validate(const Scenario& s, int samples = 24)
{
    std::vector<std::string> problems;
    const auto& d = s.domain;
    if (!(d.u1 > d.u0 && d.v1 > d.v0))
        problems.push_back("domain is empty");
    if (s.collar_width <= 0 || (s.surface != Surface::Torus && 2 * s.collar_width > d.extent()))
        problems.push_back("collar_width must be positive and fit inside the domain");
    if (s.mode == Mode::Harness) {
        if (s.field_u.empty() || s.field_v.empty())
            problems.push_back("harness mode needs field.du and field.dv");
        return problems;
    }
    auto fmt = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", x);
        return std::string(buf);
    };
    bool closed_ok = true, periodic_ok = true, metric_ok = true;
    for (int j = 0; j <= samples; ++j)
        for (int i = 0; i <= samples; ++i) {
            Point p{d.u0 + i * d.width() / samples, d.v0 + j * d.height() / samples};
            auto c = s.form_at(p);
            if (closed_ok && std::abs(c.jacobian[0][1] - c.jacobian[1][0]) > s.tol.closedness) {
                problems.push_back("form is not closed at (" + fmt(p[0]) + ", " + fmt(p[1]) + ")");
                closed_ok = false;
            }
            if (periodic_ok && (d.u_periodic || d.v_periodic)) {
                Point q{p[0] + (d.u_periodic ? d.width() : 0), p[1]};
                Point r{p[0], p[1] + (d.v_periodic ? d.height() : 0)};
                for (const auto& other : {q, r}) {
                    auto co = s.form_at(other);
                    if (std::abs(co.c1 - c.c1) > s.tol.closedness || std::abs(co.c2 - c.c2) > s.tol.closedness) {
                        problems.push_back("form does not match across the chart identification at (" + fmt(p[0]) +
                                           ", " + fmt(p[1]) + ")");
                        periodic_ok = false;
                        break;
                    }
                }
            }
            double l = s.lambda(p);
            if (metric_ok && !(l > 0)) {
                problems.push_back("metric factor is not positive at (" + fmt(p[0]) + ", " + fmt(p[1]) + ")");
                metric_ok = false;
            }
            if (metric_ok && s.in_collar(p) && std::abs(l - 1) > s.tol.closedness) {
                problems.push_back("metric is not the product metric on the collar at (" + fmt(p[0]) + ", " +
                                   fmt(p[1]) + ")");
                metric_ok = false;
            }
        }
    return problems;
}

inline Scenario scenario_from_json(const nlohmann::json& j)
{
    Scenario s;
    std::vector<std::string> problems;
    try {
        s.name = j.value("name", std::string("scenario"));
        std::string surface = j.at("surface").get<std::string>();
        if (surface == "annulus") {
            s.surface = Surface::Annulus;
            s.domain = {0, 2 * std::numbers::pi, 0, 1, true, false};
        } else if (surface == "torus") {
            s.surface = Surface::Torus;
            s.domain = {0, 1, 0, 1, true, true};
        } else if (surface == "rectangle") {
            s.surface = Surface::Rectangle;
            s.domain = {0, 1, 0, 1, false, false};
        } else {
            problems.push_back("unknown surface '" + surface + "'");
        }
        if (j.contains("domain")) {
            const auto& dj = j.at("domain");
            if (dj.contains("u")) {
                s.domain.u0 = dj.at("u").at(0).get<double>();
                s.domain.u1 = dj.at("u").at(1).get<double>();
            }
            if (dj.contains("v")) {
                s.domain.v0 = dj.at("v").at(0).get<double>();
                s.domain.v1 = dj.at("v").at(1).get<double>();
            }
        }
        std::string metric = j.value("metric", std::string("product_collar"));
        if (metric != "product_collar")
            problems.push_back("metric must be product_collar, got '" + metric + "'");
        s.metric_factor = Expression(j.value("metric_factor", std::string("1")));
        s.collar_width = j.value("collar_width", 0.2);
        std::string mode = j.value("mode", std::string("gradient"));
        if (mode == "harness")
            s.mode = Mode::Harness;
        else if (mode != "gradient")
            problems.push_back("unknown mode '" + mode + "'");

        if (j.contains("form")) {
            const auto& f = j.at("form");
            s.c1 = Expression(f.value("du", std::string("0")));
            s.c2 = Expression(f.value("dv", std::string("0")));
            if (f.contains("exact"))
                s.exact = Expression(f.at("exact").get<std::string>());
        } else if (s.mode == Mode::Gradient) {
            problems.push_back("gradient scenarios need a form");
        } else {
            s.has_form = false;
        }
        if (j.contains("field")) {
            s.field_u = Expression(j.at("field").at("du").get<std::string>());
            s.field_v = Expression(j.at("field").at("dv").get<std::string>());
        }
        if (j.contains("forced_bound"))
            s.forced_bound = j.at("forced_bound").get<int>();
        if (j.contains("tolerances")) {
            const auto& t = j.at("tolerances");
            auto& o = s.tol;
            o.rtol = t.value("rtol", o.rtol);
            o.atol = t.value("atol", o.atol);
            o.event = t.value("event", o.event);
            o.merge = t.value("merge", o.merge);
            o.launch = t.value("launch", o.launch);
            o.capture = t.value("capture", o.capture);
            o.shadow_ratio = t.value("shadow_ratio", o.shadow_ratio);
            o.zero = t.value("zero", o.zero);
            o.regular = t.value("regular", o.regular);
            o.closedness = t.value("closedness", o.closedness);
            o.degenerate = t.value("degenerate", o.degenerate);
            o.jump_factor = t.value("jump_factor", o.jump_factor);
        }
        if (j.contains("budget")) {
            s.budget.max_time = j.at("budget").value("max_time", s.budget.max_time);
            s.budget.max_steps = j.at("budget").value("max_steps", s.budget.max_steps);
        }
    } catch (const nlohmann::json::exception& e) {
        problems.push_back(std::string("malformed scenario: ") + e.what());
    } catch (const ExpressionError& e) {
        problems.push_back(e.what());
    }
    if (problems.empty())
        problems = validate(s);
    if (!problems.empty())
        throw ValidationError(problems);
    return s;
}

inline nlohmann::json tolerances_json(const Tolerances& t)
{
    return {{"rtol", t.rtol},       {"atol", t.atol},
            {"event", t.event},     {"merge", t.merge},
            {"launch", t.launch},   {"capture", t.capture},
            {"shadow_ratio", t.shadow_ratio}, {"zero", t.zero},
            {"regular", t.regular}, {"closedness", t.closedness},
            {"degenerate", t.degenerate}, {"jump_factor", t.jump_factor}};
}

}  // namespace relcat::flow
