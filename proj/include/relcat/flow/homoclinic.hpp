// Separatrix connections between critical points and the directed cycles they
// form. Each saddle launches two separatrices at +-launch along its unstable
// direction; a separatrix connects to the critical point whose capture ball it
// enters along that point's stable directions.
#pragma once

#include "relcat/flow/critical.hpp"
#include "relcat/flow/trace.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

namespace relcat::flow {

struct Connection {
    int from = -1;
    int branch = 1;
    int to = -1;  // -1 when the separatrix connects to no critical point
    bool uncertain = false;
    double displacement = 0;
    Trajectory curve;
};

struct HomoclinicCycle {
    std::vector<std::size_t> connections;  // indices into the connection list, in flow order
    std::vector<int> points;               // the critical points the connections start from
    double displacement = 0;
    bool uncertain = false;
    std::size_t length() const { return connections.size(); }
};

struct HomoclinicSearch {
    std::vector<CriticalPoint> critical;
    std::vector<Connection> connections;
    std::vector<HomoclinicCycle> cycles;
    double n_max = 0;
    std::size_t certain_cycles() const
    {
        std::size_t c = 0;
        for (const auto& cy : cycles)
            c += cy.uncertain ? 0 : 1;
        return c;
    }
};

inline std::vector<Target> arrival_targets(const Scenario& s, const std::vector<CriticalPoint>& critical)
{
    std::vector<Target> out;
    for (const auto& cp : critical) {
        bool attracts = cp.type == CriticalType::Saddle || cp.type == CriticalType::Minimum ||
                        cp.type == CriticalType::Sink || cp.type == CriticalType::Degenerate;
        if (attracts)
            out.push_back({cp.id, cp.x, s.tol.capture, cp.unstable});
    }
    return out;
}

/// Launches and traces every separatrix; cycles are enumerated up to max_length
/// and kept when |displacement| <= n_max.
inline HomoclinicSearch find_homoclinic_cycles(const Scenario& s, double n_max, std::size_t max_length = 4,
                                               std::optional<std::vector<CriticalPoint>> critical = std::nullopt,
                                               std::optional<double> max_time = std::nullopt)
{
    HomoclinicSearch out;
    out.n_max = n_max;
    out.critical = critical ? *critical : find_critical_points(s);
    auto targets = arrival_targets(s, out.critical);

    for (const auto& cp : out.critical) {
        if (cp.type != CriticalType::Saddle)
            continue;
        for (int branch : {1, -1}) {
            Point x0{cp.x[0] + branch * s.tol.launch * (*cp.unstable)[0],
                     cp.x[1] + branch * s.tol.launch * (*cp.unstable)[1]};
            TraceOptions opt;
            opt.targets = targets;
            opt.record = true;
            opt.record_dt = 0.0025;
            opt.max_time = max_time;
            if (s.mode == Mode::Gradient)
                opt.displacement_target = n_max;
            Connection c;
            c.from = cp.id;
            c.branch = branch;
            c.curve = trace(s, x0, opt);
            c.displacement = c.curve.displacement;
            if (c.curve.termination == Termination::ConvergedToCritical) {
                c.to = c.curve.critical_id;
                c.uncertain = out.critical[static_cast<std::size_t>(c.to)].type == CriticalType::Degenerate;
                out.connections.push_back(c);
            }
            // a pass through a saddle's capture ball without arriving is a possible connection
            if (c.curve.closest_saddle_id >= 0 && c.curve.closest_saddle_id != c.to) {
                Connection maybe = c;
                maybe.to = c.curve.closest_saddle_id;
                maybe.uncertain = true;
                out.connections.push_back(maybe);
            }
            if (c.curve.termination != Termination::ConvergedToCritical && c.curve.closest_saddle_id < 0)
                out.connections.push_back(c);
        }
    }

    // simple directed cycles, each listed once starting from its smallest point
    const int n = static_cast<int>(out.critical.size());
    std::vector<std::vector<std::size_t>> outgoing(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < out.connections.size(); ++i)
        if (out.connections[i].to >= 0)
            outgoing[static_cast<std::size_t>(out.connections[i].from)].push_back(i);

    std::vector<std::size_t> path;
    std::vector<bool> on_path(static_cast<std::size_t>(n), false);
    std::function<void(int, int)> dfs = [&](int start, int node) {
        for (std::size_t ci : outgoing[static_cast<std::size_t>(node)]) {
            int next = out.connections[ci].to;
            if (next < start)
                continue;
            path.push_back(ci);
            if (next == start) {
                HomoclinicCycle cy;
                cy.connections = path;
                for (std::size_t k : path) {
                    const auto& c = out.connections[k];
                    cy.points.push_back(c.from);
                    cy.displacement += c.displacement;
                    cy.uncertain = cy.uncertain || c.uncertain;
                }
                if (std::abs(cy.displacement) <= n_max)
                    out.cycles.push_back(cy);
            } else if (!on_path[static_cast<std::size_t>(next)] && path.size() < max_length) {
                on_path[static_cast<std::size_t>(next)] = true;
                dfs(start, next);
                on_path[static_cast<std::size_t>(next)] = false;
            }
            path.pop_back();
        }
    };
    for (int start = 0; start < n; ++start) {
        on_path[static_cast<std::size_t>(start)] = true;
        dfs(start, start);
        on_path[static_cast<std::size_t>(start)] = false;
    }
    return out;
}

}  // namespace relcat::flow
