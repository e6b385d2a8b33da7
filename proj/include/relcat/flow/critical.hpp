// Zeros of the traced field by damped Newton from a seed grid, merged and typed
// by the linearization.
#pragma once

#include "relcat/flow/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace relcat::flow {

enum class CriticalType { Minimum, Maximum, Saddle, Sink, Source, Center, Degenerate };

inline std::string to_string(CriticalType t)
{
    switch (t) {
    case CriticalType::Minimum: return "minimum";
    case CriticalType::Maximum: return "maximum";
    case CriticalType::Saddle: return "saddle";
    case CriticalType::Sink: return "sink";
    case CriticalType::Source: return "source";
    case CriticalType::Center: return "center";
    case CriticalType::Degenerate: return "degenerate";
    }
    return "?";
}

struct CriticalPoint {
    int id = 0;
    Point x{};
    CriticalType type = CriticalType::Degenerate;
    Mat2 jacobian{};                   // of the traced velocity
    std::array<double, 2> eigenvalues{};  // real parts, ascending
    std::optional<Point> unstable;     // unit unstable direction of a saddle
    std::optional<Point> stable;
};

namespace detail {

struct Eigen2 {
    bool real = true;
    double l1 = 0, l2 = 0;  // l1 <= l2 when real; otherwise the common real part twice
    double imag = 0;
};

inline Eigen2 eigen2(const Mat2& m)
{
    double tr = m[0][0] + m[1][1];
    double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    double disc = tr * tr / 4 - det;
    if (disc < 0)
        return {false, tr / 2, tr / 2, std::sqrt(-disc)};
    double r = std::sqrt(disc);
    return {true, tr / 2 - r, tr / 2 + r, 0};
}

inline Point eigenvector(const Mat2& m, double l)
{
    // rows of (m - l I) are orthogonal to the eigenvector; use the larger one
    double a = m[0][0] - l, b = m[0][1], c = m[1][0], d = m[1][1] - l;
    Point v = std::hypot(a, b) >= std::hypot(c, d) ? Point{-b, a} : Point{-d, c};
    double n = std::hypot(v[0], v[1]);
    if (n == 0)
        return {1, 0};
    v = {v[0] / n, v[1] / n};
    // fixed orientation for reproducible output
    if (v[0] < 0 || (v[0] == 0 && v[1] < 0))
        v = {-v[0], -v[1]};
    return {v[0] + 0.0, v[1] + 0.0};
}

}  // namespace detail

inline CriticalPoint classify_zero(const Scenario& s, const Point& x)
{
    CriticalPoint cp;
    cp.x = x;
    cp.jacobian = s.velocity_jacobian(x);
    const auto& j = cp.jacobian;
    double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    double tr = j[0][0] + j[1][1];
    auto e = detail::eigen2(j);
    cp.eigenvalues = {e.l1, e.l2};
    double scale = std::max({std::abs(j[0][0]), std::abs(j[0][1]), std::abs(j[1][0]), std::abs(j[1][1]), 1.0});
    // degenerate when the smallest eigenvalue modulus is negligible against the Jacobian
    double smallest = e.real ? std::min(std::abs(e.l1), std::abs(e.l2)) : std::sqrt(std::abs(det));
    if (smallest < s.tol.degenerate * scale) {
        cp.type = CriticalType::Degenerate;
        return cp;
    }
    if (det < 0) {
        cp.type = CriticalType::Saddle;
        cp.unstable = detail::eigenvector(j, e.l2);
        cp.stable = detail::eigenvector(j, e.l1);
        return cp;
    }
    if (s.mode == Mode::Gradient) {
        // the velocity is -grad f: a sink of the flow is a minimum of f
        cp.type = tr < 0 ? CriticalType::Minimum : CriticalType::Maximum;
        return cp;
    }
    if (std::abs(tr) < s.tol.degenerate * scale)
        cp.type = CriticalType::Center;
    else
        cp.type = tr < 0 ? CriticalType::Sink : CriticalType::Source;
    return cp;
}

/// Damped Newton on the velocity from an n x n seed grid.
inline std::vector<CriticalPoint> find_critical_points(const Scenario& s, int seeds = 24)
{
    const auto& d = s.domain;
    std::vector<Point> found;
    for (int jj = 0; jj <= seeds; ++jj)
        for (int ii = 0; ii <= seeds; ++ii) {
            Point x{d.u0 + ii * d.width() / seeds, d.v0 + jj * d.height() / seeds};
            bool converged = false;
            for (int it = 0; it < 60; ++it) {
                auto f = s.velocity(x);
                double norm = std::hypot(f[0], f[1]);
                if (norm < 1e-14) {
                    converged = true;
                    break;
                }
                auto j = s.velocity_jacobian(x);
                double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
                if (std::abs(det) < 1e-300)
                    break;
                Point step{(j[1][1] * f[0] - j[0][1] * f[1]) / det, (-j[1][0] * f[0] + j[0][0] * f[1]) / det};
                // damping: halve until the residual decreases
                double lambda = 1;
                Point next{};
                for (int h = 0; h < 30; ++h) {
                    next = {x[0] - lambda * step[0], x[1] - lambda * step[1]};
                    auto fn = s.velocity(next);
                    if (std::hypot(fn[0], fn[1]) < norm)
                        break;
                    lambda /= 2;
                }
                double moved = lambda * std::hypot(step[0], step[1]);
                x = next;
                if (moved < 1e-15 * std::max(1.0, std::hypot(x[0], x[1]))) {
                    auto fx = s.velocity(x);
                    converged = std::hypot(fx[0], fx[1]) < s.tol.zero;
                    break;
                }
            }
            if (!converged) {
                auto fx = s.velocity(x);
                converged = std::hypot(fx[0], fx[1]) < s.tol.zero;
            }
            if (!converged)
                continue;
            x = d.wrap(x);
            if (!s.inside(x))
                continue;
            bool dup = false;
            for (const auto& y : found)
                dup = dup || d.distance(x, y) < s.tol.merge;
            if (!dup)
                found.push_back(x);
        }
    // snap coordinates to the merge resolution so that ordering is stable
    std::sort(found.begin(), found.end(), [&](const Point& a, const Point& b) {
        double qa = std::round(a[0] / s.tol.merge), qb = std::round(b[0] / s.tol.merge);
        if (qa != qb)
            return qa < qb;
        return a[1] < b[1];
    });
    std::vector<CriticalPoint> out;
    for (const auto& x : found) {
        auto cp = classify_zero(s, x);
        cp.id = static_cast<int>(out.size());
        out.push_back(cp);
    }
    return out;
}

}  // namespace relcat::flow
