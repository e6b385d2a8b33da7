// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance [criterion ...]
// Runs every criterion when none is named. Exit status is 1 when any fails.
#include "relcat/covering.hpp"
#include "relcat/cup.hpp"
#include "relcat/fixtures.hpp"
#include "relcat/flow/report.hpp"
#include "relcat/io.hpp"
#include "relcat/registry.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace relcat;
namespace fx = relcat::fixtures;

namespace {

constexpr std::uint64_t kSeed = 20240611;

/// Collects failed checks; the first few are printed under a FAIL line.
struct Tally {
    std::size_t checks = 0;
    std::vector<std::string> failures;
    std::string summary;

    void expect(bool ok, const std::string& what)
    {
        ++checks;
        if (!ok)
            failures.push_back(what);
    }
};

struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<void(Tally&)> run;
};

std::string fixture_path(const std::string& name)
{
    return (std::filesystem::path(RELCAT_FIXTURE_DIR) / name).string();
}

io::json load_fixture(const std::string& name) { return io::parse(io::read_file(fixture_path(name)), name); }

flow::Scenario load_scenario(const std::string& name) { return flow::scenario_from_json(load_fixture(name)); }

OneForm add(const OneForm& a, const OneForm& b)
{
    std::vector<FormValue> v;
    for (std::size_t i = 0; i < a.edge_values().size(); ++i)
        v.push_back(a.edge_values()[i] + b.edge_values()[i]);
    return OneForm(a.shared_pair(), v, a.embedding());
}

OneForm cylinder_form(fx::Ends ends) { return pullback_to_product(fx::circle_form(), fx::cylinder(ends), 2, true); }

std::vector<SimplicialPair> fixture_pairs()
{
    return {fx::point(),
            fx::filled_triangle(),
            fx::circle(),
            fx::circle(5),
            fx::interval(fx::Ends::One),
            fx::interval(fx::Ends::Both),
            fx::torus(),
            fx::cylinder(fx::Ends::One),
            fx::cylinder(fx::Ends::Both),
            barycentric_subdivide(fx::cylinder(fx::Ends::Both)).pair};
}

std::vector<OneForm> fixture_forms()
{
    return {fx::circle_form(),
            fx::circle_form(5, Rational(2, 3)),
            fx::torus_factor_form(true),
            fx::torus_factor_form(false),
            fx::torus_irrational_form(),
            cylinder_form(fx::Ends::One),
            cylinder_form(fx::Ends::Both),
            transport(fx::torus_factor_form(), barycentric_subdivide(fx::torus()))};
}

/// A small random 2-complex on 4..7 vertices with a random subcomplex B.
SimplicialPair random_pair(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> nv(4, 7);
    std::bernoulli_distribution tri(0.3), edge(0.25), bv(0.3), be(0.15);
    int n = nv(rng);
    std::vector<Simplex> raw;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (edge(rng))
                raw.push_back({a, b});
            for (int c = b + 1; c < n; ++c)
                if (tri(rng))
                    raw.push_back({a, b, c});
        }
    auto x = build_pair(raw, {}, static_cast<std::size_t>(n));
    std::vector<Simplex> b;
    for (const auto& v : x.simplices(0))
        if (bv(rng))
            b.push_back(v);
    for (const auto& e : x.simplices(1))
        if (be(rng))
            b.push_back(e);
    return build_pair(raw, b, static_cast<std::size_t>(n));
}

/// A random closed 1-form: integer combination of a cohomology basis plus an exact part.
OneForm random_cocycle(const SimplicialPair& p, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> coeff(-2, 2), pot(-5, 5);
    auto basis = untwisted_complex(p, false).cohomology_basis(1).representatives;
    std::vector<Rational> f(p.vertex_count());
    for (auto& x : f)
        x = pot(rng);
    auto exact = d(p, f);
    std::vector<Rational> c(basis.size());
    for (auto& x : c)
        x = coeff(rng);
    std::vector<FormValue> vals;
    for (std::size_t e = 0; e < p.count(1); ++e) {
        Rational v = exact.edge_values()[e][0];
        for (std::size_t i = 0; i < basis.size(); ++i)
            v += c[i] * basis[i][e];
        vals.push_back(FormValue::scalar(v));
    }
    return OneForm(std::make_shared<const SimplicialPair>(p), vals);
}

void complex_laws(const SimplicialPair& p, const std::string& name, Tally& t)
{
    const int dim = p.dimension();
    for (int k = 1; k < dim; ++k) {
        t.expect((boundary_matrix(p, k) * boundary_matrix(p, k + 1)).is_zero_matrix(), name + ": dd absolute");
        t.expect((chain_space(p, k, true).boundary * chain_space(p, k + 1, true).boundary).is_zero_matrix(),
                 name + ": dd relative");
    }
    for (bool rel : {false, true}) {
        auto cc = untwisted_complex(p, rel);
        for (int k = 0; k + 1 < dim; ++k)
            t.expect((cc.coboundary(k + 1) * cc.coboundary(k)).is_zero_matrix(), name + ": delta delta untwisted");
    }
}

void twisted_laws(const OneForm& w, const std::string& name, Tally& t)
{
    auto lab = deck_labeling(w);
    const int dim = w.pair().dimension();
    for (bool rel : {false, true})
        for (bool dual : {false, true}) {
            auto cc = generic_twisted_complex(w.pair(), lab, rel, dual);
            for (int k = 0; k + 1 < dim; ++k)
                t.expect((cc.coboundary(k + 1) * cc.coboundary(k)).is_zero_matrix(), name + ": delta delta twisted");
        }
}

// 1
void criterion_complex_laws(Tally& t)
{
    std::size_t n = 0;
    for (const auto& p : fixture_pairs())
        complex_laws(p, "fixture " + std::to_string(n++), t);
    for (const auto& w : fixture_forms())
        twisted_laws(w, "fixture form", t);
    std::mt19937_64 rng(kSeed);
    std::size_t twisted_rank = 0;
    for (int i = 0; i < 100; ++i) {
        auto p = random_pair(rng);
        auto name = "random complex " + std::to_string(i);
        complex_laws(p, name, t);
        auto w = random_cocycle(p, rng);
        t.expect(validate(w).empty(), name + ": random cocycle is closed");
        twisted_laws(w, name, t);
        twisted_rank += deck_labeling(w).rank > 0 ? 1 : 0;
    }
    t.summary = std::to_string(n) + " fixture complexes, 100 random complexes (" + std::to_string(twisted_rank) +
                " with nonzero class)";
}

/// Random homotopy moves: triangle detours, backtracks and their inverses.
EdgePath homotopic_variant(const SimplicialPair& p, const std::vector<std::vector<int>>& adj, EdgePath path,
                           std::mt19937_64& rng, int moves)
{
    auto triangle = [&](int a, int b, int c) {
        Simplex s{a, b, c};
        std::sort(s.begin(), s.end());
        return p.dimension() >= 2 && a != b && b != c && a != c && p.index_of(s).has_value();
    };
    auto& v = path.vertices;
    for (int m = 0; m < moves; ++m) {
        std::uniform_int_distribution<int> kind(0, 2);
        if (v.size() < 2) {
            int y = adj[static_cast<std::size_t>(v[0])][0];
            v = {v[0], y, v[0]};
            continue;
        }
        std::uniform_int_distribution<std::size_t> pos(0, v.size() - 2);
        std::size_t i = pos(rng);
        int a = v[i], b = v[i + 1];
        switch (kind(rng)) {
        case 0: {  // a -> b  becomes  a -> c -> b
            std::vector<int> thirds;
            for (int c : adj[static_cast<std::size_t>(a)])
                if (triangle(a, b, c))
                    thirds.push_back(c);
            if (!thirds.empty()) {
                std::uniform_int_distribution<std::size_t> pick(0, thirds.size() - 1);
                v.insert(v.begin() + static_cast<long>(i) + 1, thirds[pick(rng)]);
            }
            break;
        }
        case 1: {  // a  becomes  a -> y -> a
            const auto& nb = adj[static_cast<std::size_t>(a)];
            std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
            int y = nb[pick(rng)];
            v.insert(v.begin() + static_cast<long>(i) + 1, {y, a});
            break;
        }
        default:  // shortcut a -> b -> c over a backtrack or a triangle
            if (i + 2 < v.size()) {
                int c = v[i + 2];
                if (a == c)
                    v.erase(v.begin() + static_cast<long>(i) + 1, v.begin() + static_cast<long>(i) + 3);
                else if (triangle(a, b, c))
                    v.erase(v.begin() + static_cast<long>(i) + 1);
            }
            break;
        }
    }
    return path;
}

// 2
void criterion_line_integrals(Tally& t)
{
    std::mt19937_64 rng(kSeed + 2);
    std::size_t differing = 0, n = 0;
    for (const auto& w : fixture_forms()) {
        const auto& p = w.pair();
        auto name = "form " + std::to_string(n++);
        auto adj = adjacency(p);
        std::uniform_int_distribution<std::size_t> start(0, p.vertex_count() - 1);
        std::uniform_int_distribution<int> len(1, 9);
        for (int trial = 0; trial < 50; ++trial) {
            EdgePath walk{{static_cast<int>(start(rng))}};
            for (int s = len(rng); s > 0; --s) {
                const auto& nb = adj[static_cast<std::size_t>(walk.vertices.back())];
                std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
                walk.vertices.push_back(nb[pick(rng)]);
            }
            auto other = homotopic_variant(p, adj, walk, rng, 12);
            differing += other.vertices != walk.vertices ? 1 : 0;
            t.expect(other.vertices.front() == walk.vertices.front() && other.vertices.back() == walk.vertices.back(),
                     name + ": variant keeps its endpoints");
            t.expect(integrate(w, walk) == integrate(w, other), name + ": homologous paths integrate equally");
        }

        auto base = periods(w);
        std::uniform_int_distribution<int> num(-20, 20), den(1, 6);
        const std::size_t m = w.edge_values()[0].dim();
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<FormValue> f;
            for (std::size_t i = 0; i < p.vertex_count(); ++i) {
                std::vector<Rational> c;
                for (std::size_t j = 0; j < m; ++j)
                    c.push_back(Rational(num(rng)) / Rational(den(rng)));
                f.push_back(FormValue(c));
            }
            auto shifted = periods(add(w, d(p, f)));
            t.expect(shifted.values == base.values && shifted.rank == base.rank,
                     name + ": periods invariant under an exact perturbation");
        }
    }
    t.summary = std::to_string(n) + " forms x (50 path pairs, " + std::to_string(differing) +
                " distinct in total; 50 exact perturbations)";
}

long oracle_cohomology(const SimplicialPair& p, const DeckLabeling& lab, int k, bool rel)
{
    auto label = [&](int a, int b) { return lab.rank ? lab.label(a, b)[0] : 0; };
    long dim = static_cast<long>(p.basis_indices(k, rel).size());
    return dim - oracle::bareiss_rank(oracle::twisted_coboundary(p, k, rel, label)) -
           oracle::bareiss_rank(oracle::twisted_coboundary(p, k - 1, rel, label));
}

// 3
void criterion_twisted_vanishing(Tally& t)
{
    std::vector<std::pair<std::string, OneForm>> cases{
        {"S1", fx::circle_form()},
        {"S1 (5 edges)", fx::circle_form(5, Rational(2, 3))},
        {"T2 first factor", fx::torus_factor_form(true)},
        {"T2 second factor", fx::torus_factor_form(false)},
        {"T2 subdivided", transport(fx::torus_factor_form(), barycentric_subdivide(fx::torus()))}};
    for (const auto& [name, w] : cases) {
        auto lab = deck_labeling(w);
        t.expect(lab.rank == 1, name + ": class of rank 1");
        auto h = twisted_cohomology(w.pair(), lab, FlatBundle::generic(), false);
        for (int k = 0; k <= w.pair().dimension(); ++k) {
            long oracle = oracle_cohomology(w.pair(), lab, k, false);
            t.expect(h.ranks[static_cast<std::size_t>(k)] == 0, name + ": H^" + std::to_string(k) + " vanishes");
            t.expect(oracle == 0, name + ": oracle H^" + std::to_string(k) + " vanishes");
        }
    }
    t.summary = std::to_string(cases.size()) + " rank-1 classes, library and Bareiss oracle both zero";
}

// 4
void criterion_cup_bounds(Tally& t)
{
    struct Case {
        std::string name;
        OneForm form;
        FlatBundle bundle;
        std::size_t expected;
    };
    std::vector<Case> cases{{"torus, xi = 0, trivial", OneForm::zero(fx::torus()), FlatBundle::trivial(), 3},
                            {"cylinder rel both ends, xi = 0, trivial", OneForm::zero(fx::cylinder(fx::Ends::Both)),
                             FlatBundle::trivial(), 2},
                            {"circle, xi != 0, generic", fx::circle_form(), FlatBundle::generic(), 0}};
    std::ostringstream s;
    for (const auto& c : cases) {
        auto before = cup_length_bound(c.form, c.bundle);
        auto sd = transport(c.form, barycentric_subdivide(c.form.pair()));
        auto after = cup_length_bound(sd, c.bundle);
        t.expect(before.lower_bound == c.expected, c.name + ": bound " + std::to_string(before.lower_bound));
        t.expect(after.lower_bound == c.expected, c.name + ": bound after subdivision " +
                                                      std::to_string(after.lower_bound));
        t.expect(verify_witness(sd, c.bundle, after).ok(), c.name + ": subdivided witness re-verifies");
        s << (s.tellp() ? ", " : "") << before.lower_bound << "/" << after.lower_bound;
    }
    t.summary = "bounds before/after subdivision " + s.str();
}

Vector<Rational> point_class(const CoveringWindow& win, int base_vertex, const Label& g)
{
    return win.chain(0, {{Simplex{base_vertex}, g, Rational(1)}});
}

/// The second-factor circle of the torus at first coordinate a, lifted at label g.
Vector<Rational> fiber_circle(const CoveringWindow& win, int a, const Label& g)
{
    int v0 = 3 * a, v1 = 3 * a + 1, v2 = 3 * a + 2;
    return win.chain(1, {{Simplex{v0, v1}, g, Rational(1)},
                         {Simplex{v1, v2}, g, Rational(1)},
                         {Simplex{v0, v2}, g, Rational(-1)}});
}

// 5
void criterion_windows(Tally& t)
{
    std::size_t tested = 0;
    for (int r : {2, 3, 4}) {
        CoveringWindow line(fx::circle_form(), LabelBox::cube(1, -r, r));
        for (int g = -r + 1; g < r; ++g)
            for (int v = 0; v < 3; ++v) {
                auto z = point_class(line, v, {g});
                for (int c = -3 * r - 3; c <= 3 * r + 3; ++c) {
                    auto o = neighborhood_of_infinity(line, Rational(c));
                    if (o.empty())
                        continue;
                    ++tested;
                    t.expect(movable_in_window(line, 0, z, o) == Movability::Movable,
                             "point class in the line window, sublevel " + std::to_string(c));
                }
            }
    }
    for (int r : {2, 3}) {
        CoveringWindow cyl(fx::torus_factor_form(), LabelBox::cube(1, -r, r));
        for (int a = 0; a < 3; ++a)
            for (int g = -r + 1; g < r; ++g) {
                auto z = fiber_circle(cyl, a, {g});
                for (int c = -3 * r - 3; c <= 3 * r + 3; ++c) {
                    auto o = neighborhood_of_infinity(cyl, Rational(c));
                    if (o.empty())
                        continue;
                    ++tested;
                    t.expect(movable_in_window(cyl, 1, z, o) == Movability::Movable,
                             "fibre circle in the cylinder window, sublevel " + std::to_string(c));
                }
            }
    }
    CoveringWindow flat(OneForm::zero(fx::torus()), LabelBox{{}, {}});
    auto empty = neighborhood_of_infinity(flat, Rational(0));
    t.expect(empty.empty(), "xi = 0 sublevel is empty");
    std::vector<std::pair<int, Vector<Rational>>> classes{
        {0, point_class(flat, 0, {})},
        {1, flat.chain(1, {{Simplex{0, 1}, {}, 1}, {Simplex{1, 2}, {}, 1}, {Simplex{0, 2}, {}, -1}})},
        {1, fiber_circle(flat, 1, {})}};
    for (const auto& z : top_relative_cycles(flat.pair()))
        classes.push_back({2, z});
    for (const auto& [deg, z] : classes) {
        ++tested;
        t.expect(movable_in_window(flat, deg, z, empty) == Movability::NotMovable,
                 "degree " + std::to_string(deg) + " class with an empty sublevel");
    }
    t.summary = std::to_string(tested) + " exact verdicts";
}

// 6
void criterion_pairing(Tally& t)
{
    struct Case {
        std::string name;
        OneForm form;
        FlatBundle bundle;
    };
    std::vector<Case> cases{{"torus, xi = 0", OneForm::zero(fx::torus()), FlatBundle::trivial()},
                            {"cylinder rel both ends, xi = 0", OneForm::zero(fx::cylinder(fx::Ends::Both)),
                             FlatBundle::trivial()},
                            {"cylinder rel one end, xi = 0", OneForm::zero(fx::cylinder(fx::Ends::One)),
                             FlatBundle::trivial()},
                            {"torus, first factor", fx::torus_factor_form(), FlatBundle::generic()},
                            {"torus, irrational", fx::torus_irrational_form(), FlatBundle::generic()}};
    for (auto& c : std::vector<Case>(cases))
        cases.push_back({c.name + ", subdivided", transport(c.form, barycentric_subdivide(c.form.pair())), c.bundle});

    std::size_t witnesses = 0, verdicts = 0;
    for (const auto& c : cases) {
        auto r = cup_length_bound(c.form, c.bundle);
        if (!r.found)
            continue;
        ++witnesses;
        auto check = verify_witness(c.form, c.bundle, r);
        t.expect(check.applicable && check.pairs_nonzero, c.name + ": witness pairs nonzero with a relative cycle");
        if (!std::holds_alternative<CupWitness<Rational>>(r.witness))
            continue;
        const auto& w = std::get<CupWitness<Rational>>(r.witness);
        if (w.total_degree() != c.form.pair().dimension())
            continue;
        std::size_t paired = 0;
        for (const auto& z : top_relative_cycles(c.form.pair())) {
            Rational value = 0;
            for (std::size_t i = 0; i < z.size(); ++i)
                value += z[i] * w.product[i];
            if (value == 0)
                continue;
            ++paired;
            auto lab = deck_labeling(c.form);
            // xi = 0: the cover is the base itself and every window is the one rank-0 box
            CoveringWindow win(c.form, LabelBox{Label(lab.rank, 0), Label(lab.rank, 0)});
            // neighbourhoods of infinity are the sublevels below the bounded potential
            Rational lowest = win.potential(0)[0];
            for (std::size_t v = 0; v < win.pair().vertex_count(); ++v)
                lowest = std::min(lowest, Rational(win.potential(static_cast<int>(v))[0]));
            for (int drop = 1; drop <= 5; ++drop) {
                Rational level = lowest - drop;
                ++verdicts;
                t.expect(movable_in_window(win, w.total_degree(), z, neighborhood_of_infinity(win, level)) ==
                             Movability::NotMovable,
                         c.name + ": witness-paired class is not movable");
            }
        }
        t.expect(paired > 0, c.name + ": the fundamental class pairs nonzero with the witness");
    }
    t.expect(witnesses >= 2, "at least two 2-dimensional witnesses");
    t.summary = std::to_string(witnesses) + " witnesses over " + std::to_string(cases.size()) + " cases, " +
                std::to_string(verdicts) + " not-movable verdicts";
}

// 7
void criterion_annulus_flow(Tally& t)
{
    using namespace relcat::flow;
    auto s = load_scenario("flow/annulus.json");
    auto ex = exit_set(s);
    // f = theta + t locally, so df/dt = 1: the flow leaves where the outward normal points down in t
    for (const auto& c : ex.components) {
        bool analytic_b = -c.component.inward * 1.0 < 0;
        t.expect(analytic_b ? c.all_b() : c.no_b(), c.name + ": exit set matches the analytic sign");
        for (int i = 0; i < 64; ++i) {
            double x = c.component.s0 + (c.component.s1 - c.component.s0) * (i + 0.5) / 64;
            auto co = s.form_at(c.component.at(x));
            double outward = c.component.axis == 1 ? -c.component.inward * co.c2 : -c.component.inward * co.c1;
            t.expect((outward < 0) == in_exit_set(s, c.component, x), c.name + ": pointwise sign");
        }
    }
    t.expect(ex.components.size() == 2 && ex.components[0].name == "inner" && ex.components[0].all_b() &&
                 ex.components[1].no_b(),
             "B is exactly the inner circle");
    t.expect(ex.gamma_count() == 0, "no Gamma points");

    std::mt19937_64 rng(kSeed + 7);
    std::uniform_real_distribution<double> U(0, 2 * std::numbers::pi), V(0, 1);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        Point x{U(rng), V(rng)};
        TraceOptions opt;
        opt.record = true;
        auto tr = trace(s, x, opt);
        t.expect(tr.termination == Termination::ReachedB && tr.boundary_component == 0, "trajectory reaches B");
        // the flow is (-1, -1) in (theta, t): beta is the starting height
        worst = std::max(worst, std::abs(tr.time - x[1]));
        t.expect(std::abs(tr.time - x[1]) < 1e-6, "beta matches the crossing time");
        t.expect(displacement_monotone(tr), "displacement non-increasing");
    }
    std::ostringstream o;
    o << "1000 trajectories, max |beta - t0| " << worst;
    t.summary = o.str();
}

// 8
void criterion_homoclinic(Tally& t)
{
    using namespace relcat::flow;
    auto energy = [](const Point& x) { return x[1] * x[1] / 2 - x[0] * x[0] / 2 + x[0] * x[0] * x[0] / 3; };
    auto hs = find_homoclinic_cycles(load_scenario("flow/saddle_loop.json"), 10);
    double drift = 0;
    bool found = false;
    for (const auto& cy : hs.cycles) {
        if (cy.length() != 1)
            continue;
        const auto& p = hs.critical[cy.points[0]].x;
        if (std::hypot(p[0], p[1]) > 1e-8)
            continue;
        found = true;
        for (const auto& smp : hs.connections[cy.connections[0]].curve.samples)
            drift = std::max(drift, std::abs(energy(smp.x)));
    }
    t.expect(found, "length-1 cycle at the origin saddle");
    t.expect(drift < 1e-3, "cycle stays on H = 0");

    std::size_t exact = 0;
    for (const auto* name : {"flow/torus_exact.json", "flow/sink.json"}) {
        auto e = find_homoclinic_cycles(load_scenario(name), 10);
        t.expect(e.cycles.empty(), std::string(name) + ": no cycles");
        ++exact;
    }
    for (const auto* text : {R"J({"surface":"torus","form":{"exact":"cos(2*pi*u)*cos(2*pi*v)"}})J",
                             R"J({"surface":"rectangle","form":{"exact":"sin(2*u) + v^2 + u*v"}})J",
                             R"J({"surface":"annulus","form":{"exact":"v^2 + 0.3*sin(u)*v"}})J"}) {
        auto e = find_homoclinic_cycles(scenario_from_json(nlohmann::json::parse(text)), 10);
        t.expect(e.cycles.empty(), "exact scenario has no cycles");
        ++exact;
    }
    std::ostringstream o;
    o << "energy drift " << drift << ", " << exact << " exact scenarios with 0 cycles";
    t.summary = o.str();
}

// 9
void criterion_report(Tally& t)
{
    using namespace relcat::flow;
    auto s = load_scenario("flow/annulus.json");
    auto rep = theorem47_report(s);
    t.expect(rep.outcome == Outcome::NotTriggered, "annulus outcome (i)");
    t.expect(rep.critical.empty(), "no critical points");
    t.expect(rep.bound == 0, "bound 0");
    std::ostringstream o;
    o << "outcome " << to_string(rep.outcome) << ", #crit " << rep.critical.size() << ", bound " << rep.bound
      << "; coverage";
    for (double n : {1.0, 5.0, 10.0}) {
        auto cv = cover_from_flow(s, n, 16);
        t.expect(cv.coverage() == 1.0, "cover classifies every grid point");
        o << " " << cv.coverage() * 100 << "%";
    }
    t.summary = o.str();
}

// 10
void criterion_soundness(Tally& t)
{
    std::size_t bounds = 0, witnesses = 0;
    for (const auto& e : registry::entries()) {
        if (e.complex.empty() || e.form.empty() || e.bundle.empty())
            continue;
        auto pair = io::complex_from_json(load_fixture(e.complex));
        auto form = io::form_from_json(pair, load_fixture(e.form));
        auto bundle = io::bundle_from_json(load_fixture(e.bundle));
        for (bool subdivided : {false, true}) {
            auto w = subdivided ? transport(form, barycentric_subdivide(pair)) : form;
            auto r = cup_length_bound(w, bundle);
            ++bounds;
            if (e.expected.contains("lower_bound"))
                t.expect(r.lower_bound == e.expected["lower_bound"].get<std::size_t>(), e.name + ": expected bound");
            auto check = verify_witness(w, bundle, r);
            t.expect(check.applicable == r.found, e.name + ": a witness accompanies every positive bound");
            t.expect(check.ok(), e.name + ": witness re-verifies");
            witnesses += check.applicable ? 1 : 0;
        }
    }
    auto rep = inequality_report(fx::inequality_rows());
    t.expect(rep.flags == 0, "inequality report has no flags");
    t.summary = std::to_string(bounds) + " bounds, " + std::to_string(witnesses) + " witnesses re-verified, " +
                std::to_string(rep.rows.size()) + " inequality rows, " + std::to_string(rep.flags) + " flags";
}

}  // namespace

int main(int argc, char** argv)
{
    std::vector<Criterion> all{
        {1, "complex laws", 10, criterion_complex_laws},
        {2, "line-integral invariance", 60, criterion_line_integrals},
        {3, "twisted vanishing oracle", 30, criterion_twisted_vanishing},
        {4, "cup-length bounds", 60, criterion_cup_bounds},
        {5, "window movability", 10, criterion_windows},
        {6, "pairing soundness", 60, criterion_pairing},
        {7, "annulus flow", 60, criterion_annulus_flow},
        {8, "homoclinic detector", 60, criterion_homoclinic},
        {9, "flow report and cover", 60, criterion_report},
        {10, "bound soundness and inequalities", 60, criterion_soundness},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : all) {
        if (!only.empty() && !only.count(c.id))
            continue;
        Tally t;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(t);
        } catch (const std::exception& e) {
            t.failures.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s)
            t.failures.push_back("took longer than " + std::to_string(static_cast<int>(c.budget_s)) + " s");
        bool ok = t.failures.empty();
        failed += ok ? 0 : 1;
        std::printf("%s %2d %s: %zu checks, %s [%.2f s of %.0f s]\n", ok ? "PASS" : "FAIL", c.id, c.title, t.checks,
                    t.summary.c_str(), secs, c.budget_s);
        for (std::size_t i = 0; i < t.failures.size() && i < 5; ++i)
            std::printf("     - %s\n", t.failures[i].c_str());
        if (t.failures.size() > 5)
            std::printf("     - ... %zu more\n", t.failures.size() - 5);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
