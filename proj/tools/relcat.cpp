// relcat command-line tool.
#include "relcat/covering.hpp"
#include "relcat/cup.hpp"
#include "relcat/fixtures.hpp"
#include "relcat/flow/report.hpp"
#include "relcat/flow/svg.hpp"
#include "relcat/inequality.hpp"
#include "relcat/io.hpp"
#include "relcat/local_system.hpp"
#include "relcat/registry.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>

#ifndef RELCAT_VERSION
#define RELCAT_VERSION "0.0.0"
#endif
#ifndef RELCAT_FIXTURE_DIR
#define RELCAT_FIXTURE_DIR "fixtures"
#endif

using namespace relcat;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

/// Computation that could not be completed; exit code 2.
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Context {
    std::string format = "json";
    bool strict = false;
    std::uint64_t seed = 0;
    std::string profile = "default";
    json inputs = json::object();
};

struct Result {
    json doc = json::object();
    std::string table;          // key of the array emitted by --format csv
    std::string raw;            // non-JSON payload (SVG)
    bool invalid = false;       // exit 1
    std::string inconclusive;   // reason; exit 2 under --strict
    std::string failure;        // exit 2 after printing
};

std::string load(Context& ctx, const std::string& role, const std::string& path)
{
    std::string text = io::read_file(path);
    ctx.inputs[role] = io::hex64(io::fnv1a64(text));
    return text;
}

json load_json(Context& ctx, const std::string& role, const std::string& path)
{
    return io::parse(load(ctx, role, path), path);
}

SimplicialPair load_complex(Context& ctx, const std::string& path)
{
    return io::complex_from_json(load_json(ctx, "complex", path));
}

OneForm load_form(Context& ctx, const SimplicialPair& pair, const std::string& path)
{
    auto w = io::form_from_json(pair, load_json(ctx, "form", path));
    auto bad = validate(w);
    if (!bad.empty()) {
        std::vector<std::string> problems;
        for (const auto& v : bad)
            problems.push_back("cocycle law fails on " + simplex_str(v.triangle) + " by " + v.defect.str());
        throw ValidationError(problems);
    }
    return w;
}

FlatBundle load_bundle(Context& ctx, const std::string& arg)
{
    if (arg == "generic" || arg == "trivial") {
        ctx.inputs["bundle"] = io::hex64(io::fnv1a64(arg));
        return io::bundle_from_json(json(arg));
    }
    return io::bundle_from_json(load_json(ctx, "bundle", arg));
}

flow::Scenario load_scenario(Context& ctx, const std::string& path)
{
    auto s = flow::scenario_from_json(load_json(ctx, "scenario", path));
    if (ctx.profile == "tight") {
        s.tol.rtol = 1e-11;
        s.tol.atol = 1e-14;
        s.tol.event = 1e-12;
    } else if (ctx.profile == "fast") {
        s.tol.rtol = 1e-7;
        s.tol.atol = 1e-10;
        s.tol.event = 1e-8;
    }
    return s;
}

json strings(const std::vector<FormValue>& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(io::value_to_json(x));
    return a;
}

json point(const flow::Point& p) { return json::array({p[0], p[1]}); }

std::string fixture_dir(const std::string& arg)
{
    if (!arg.empty())
        return arg;
    if (const char* env = std::getenv("RELCAT_FIXTURES"))
        return env;
    return RELCAT_FIXTURE_DIR;
}

// ---- complexes and forms

Result cmd_validate(Context& ctx, const std::string& complex, const std::string& form, const std::string& bundle,
                    const std::string& scenario)
{
    Result r;
    std::vector<std::string> problems;
    json summary = json::object();
    auto collect = [&](auto&& f) {
        try {
            f();
        } catch (const ValidationError& e) {
            problems.insert(problems.end(), e.problems().begin(), e.problems().end());
        } catch (const flow::ExpressionError& e) {
            problems.push_back(e.what());
        }
    };
    if (!complex.empty()) {
        std::optional<SimplicialPair> p;
        collect([&] { p = load_complex(ctx, complex); });
        if (p) {
            json counts = json::array();
            for (int k = 0; k <= p->dimension(); ++k)
                counts.push_back(p->count(k));
            summary["simplex_counts"] = counts;
            if (!form.empty())
                collect([&] { load_form(ctx, *p, form); });
        }
    }
    if (!bundle.empty())
        collect([&] { load_bundle(ctx, bundle); });
    if (!scenario.empty())
        collect([&] {
            auto s = load_scenario(ctx, scenario);
            for (const auto& msg : flow::validate(s))
                problems.push_back(msg);
        });
    r.doc = summary;
    r.doc["valid"] = problems.empty();
    r.doc["violations"] = problems;
    r.invalid = !problems.empty();
    return r;
}

Result cmd_integrate(Context& ctx, const std::string& complex, const std::string& form, const std::string& path)
{
    auto p = load_complex(ctx, complex);
    auto w = load_form(ctx, p, form);
    auto ep = io::path_from_string(path);
    ctx.inputs["path"] = io::hex64(io::fnv1a64(path));
    try {
        check_path(p, ep);
    } catch (const std::exception& e) {
        throw ValidationError(e.what());
    }
    Result r;
    r.doc["path"] = ep.vertices;
    r.doc["closed"] = ep.closed();
    r.doc["integral"] = io::value_to_json(integrate(w, ep));
    return r;
}

Result cmd_periods(Context& ctx, const std::string& complex, const std::string& form)
{
    auto p = load_complex(ctx, complex);
    auto w = load_form(ctx, p, form);
    auto pv = periods(w);
    Result r;
    r.doc["periods"] = strings(pv.values);
    r.doc["rank"] = pv.rank;
    json loops = json::array();
    for (std::size_t i = 0; i < pv.h1_basis.size(); ++i)
        loops.push_back({{"loop", pv.h1_basis[i].vertices}, {"period", io::value_to_json(pv.values[i])}});
    r.doc["loops"] = loops;
    r.table = "loops";
    return r;
}

Result cmd_class(Context& ctx, const std::string& complex, const std::string& form, const std::string& bundle)
{
    auto p = load_complex(ctx, complex);
    auto w = load_form(ctx, p, form);
    auto pv = periods(w);
    auto lab = deck_labeling(w);
    Result r;
    r.doc["periods"] = strings(pv.values);
    r.doc["rank"] = lab.rank;
    r.doc["exact"] = pv.rank == 0;
    if (auto f = primitive(w))
        r.doc["primitive"] = strings(*f);
    r.doc["lattice_generators"] = strings(lab.lattice.generators());
    json labels = json::array();
    for (std::size_t i = 0; i < p.count(1); ++i) {
        const auto& e = p.simplices(1)[i];
        labels.push_back({{"edge", e}, {"label", lab.edge_labels[i]}});
    }
    r.doc["edge_labels"] = labels;
    r.table = "edge_labels";
    if (!bundle.empty()) {
        auto b = load_bundle(ctx, bundle);
        auto c = classify(b, lab.rank);
        r.doc["bundle"] = {{"kind", b.describe()}, {"class", to_string(c.verdict)}, {"witness", c.witness}};
        if (c.verdict == BundleClass::Unknown)
            r.inconclusive = "bundle classification is unknown";
    }
    return r;
}

Result cmd_betti(Context& ctx, const std::string& complex)
{
    auto p = load_complex(ctx, complex);
    Result r;
    json rows = json::array();
    json abs = json::array(), rel = json::array();
    for (int k = 0; k <= p.dimension(); ++k) {
        abs.push_back(betti(p, k, false));
        rel.push_back(betti(p, k, true));
        rows.push_back({{"degree", k}, {"absolute", betti(p, k, false)}, {"relative", betti(p, k, true)}});
    }
    r.doc["betti"] = abs;
    r.doc["relative_betti"] = rel;
    r.doc["euler_characteristic"] = euler_characteristic(p, false);
    r.doc["relative_euler_characteristic"] = euler_characteristic(p, true);
    r.doc["degrees"] = rows;
    r.table = "degrees";
    return r;
}

Result cmd_boundary(Context& ctx, const std::string& complex, int degree, bool relative)
{
    auto p = load_complex(ctx, complex);
    if (degree < 1 || degree > p.dimension())
        throw ValidationError("degree must lie in 1.." + std::to_string(p.dimension()));
    auto rows_idx = p.basis_indices(degree - 1, relative);
    auto cols_idx = p.basis_indices(degree, relative);
    auto full = boundary_matrix(p, degree);
    Matrix<Rational> m = full.select(rows_idx, cols_idx);
    Result r;
    json rows = json::array(), cols = json::array();
    for (auto i : rows_idx)
        rows.push_back(p.simplices(degree - 1)[i]);
    for (auto j : cols_idx)
        cols.push_back(p.simplices(degree)[j]);
    r.doc["degree"] = degree;
    r.doc["relative"] = relative;
    r.doc["rows"] = rows;
    r.doc["columns"] = cols;
    r.doc["matrix"] = io::matrix_to_json(m);
    return r;
}

// ---- covering windows

struct WindowInputs {
    OneForm form;
    CoveringWindow window;
    io::WindowChain z;
};

WindowInputs load_window(Context& ctx, const std::string& complex, const std::string& form, const std::string& box,
                         const std::string& chain)
{
    auto p = load_complex(ctx, complex);
    auto w = load_form(ctx, p, form);
    auto lab = deck_labeling(w);
    ctx.inputs["box"] = io::hex64(io::fnv1a64(box));
    CoveringWindow win(w, io::box_from_string(box, lab.rank));
    auto z = io::chain_from_json(win, load_json(ctx, "class", chain));
    return {w, std::move(win), std::move(z)};
}

Result cmd_window(Context& ctx, const std::string& complex, const std::string& form, const std::string& box,
                  const std::string& sublevel, const std::string& chain, bool inclusive)
{
    auto in = load_window(ctx, complex, form, box, chain);
    Rational c;
    try {
        c = parse_rational(sublevel);
    } catch (const ParseError& e) {
        throw ValidationError(std::string("sublevel: ") + e.what());
    }
    auto o = neighborhood_of_infinity(in.window, c, inclusive);
    Result r;
    r.doc["sublevel"] = to_string(c);
    r.doc["inclusive"] = inclusive;
    r.doc["degree"] = in.z.degree;
    r.doc["window"] = {{"vertices", in.window.pair().count(0)}, {"rank", in.window.rank()}};
    r.doc["carrier_simplices"] = o.simplex_count();
    try {
        r.doc["verdict"] = to_string(movable_in_window(in.window, in.z.degree, in.z.chain, o));
    } catch (const InconclusiveError& e) {
        r.doc["verdict"] = "inconclusive";
        r.doc["reason"] = e.what();
        r.inconclusive = e.what();
    }
    r.doc["scope"] = "verdict holds for this window and sublevel only";
    return r;
}

Result cmd_movable(Context& ctx, const std::string& complex, const std::string& form, const std::string& box,
                   const std::string& chain)
{
    auto in = load_window(ctx, complex, form, box, chain);
    // every distinct potential value is a cutoff, plus one above the maximum
    std::vector<Rational> cuts;
    for (const auto& f : in.window.potentials())
        if (in.form.components() == 1)
            cuts.push_back(f[0]);
        else
            cuts.push_back(rationalize(in.form.height(f), 1000));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (!cuts.empty())
        cuts.push_back(cuts.back() + 1);
    Result r;
    json rows = json::array();
    std::size_t movable = 0, tested = 0;
    for (const auto& c : cuts) {
        auto o = neighborhood_of_infinity(in.window, c);
        std::string verdict;
        try {
            verdict = to_string(movable_in_window(in.window, in.z.degree, in.z.chain, o));
        } catch (const InconclusiveError& e) {
            verdict = "inconclusive";
            r.inconclusive = e.what();
        }
        ++tested;
        movable += verdict == "movable-in-window" ? 1 : 0;
        rows.push_back({{"sublevel", to_string(c)}, {"empty", o.empty()}, {"verdict", verdict}});
    }
    r.doc["sublevels"] = rows;
    r.doc["tested"] = tested;
    r.doc["movable_count"] = movable;
    r.doc["movable_at_every_tested_sublevel"] = tested > 0 && movable == tested;
    r.doc["scope"] = "movability at every tested sublevel of a finite window is evidence, not proof";
    r.table = "sublevels";
    return r;
}

// ---- twisted coefficients and cup products

Result cmd_twisted(Context& ctx, const std::string& complex, const std::string& form, const std::string& bundle,
                   bool absolute, bool surrogate)
{
    auto p = load_complex(ctx, complex);
    auto w = load_form(ctx, p, form);
    auto b = load_bundle(ctx, bundle);
    auto lab = deck_labeling(w);
    TwistedCohomology tc;
    try {
        tc = surrogate ? surrogate_twisted_cohomology(p, lab, !absolute, ctx.seed, b.dual)
                       : twisted_cohomology(p, lab, b, !absolute);
    } catch (const std::domain_error& e) {
        throw ComputationError(e.what());
    }
    Result r;
    r.doc["bundle"] = b.describe();
    r.doc["relative"] = !absolute;
    r.doc["r"] = lab.rank;
    r.doc["ranks"] = tc.ranks;
    r.doc["coefficient_mode"] = tc.coefficient_mode;
    r.doc["representatives"] = tc.representatives;
    if (surrogate) {
        r.doc["seed"] = ctx.seed;
        r.doc["cross_check_agreed"] = tc.cross_check_agreed;
        if (!tc.cross_check_agreed)
            r.inconclusive = "surrogate evaluations disagree";
    }
    json rows = json::array();
    for (std::size_t k = 0; k < tc.ranks.size(); ++k)
        rows.push_back({{"degree", k}, {"rank", tc.ranks[k]}});
    r.doc["degrees"] = rows;
    r.table = "degrees";
    return r;
}

Result cmd_cup(Context& ctx, const std::string& complex, const std::string& form, const std::string& bundle)
{
    auto p = load_complex(ctx, complex);
    auto w = load_form(ctx, p, form);
    auto b = load_bundle(ctx, bundle);
    CupBoundResult res;
    try {
        res = cup_length_bound(w, b);
    } catch (const NotTranscendentalError& e) {
        throw ComputationError(e.what());
    }
    auto check = verify_witness(w, b, res);
    Result r;
    r.doc["k"] = res.k;
    r.doc["lower_bound"] = res.lower_bound;
    r.doc["witness_degrees"] = res.witness_degrees();
    r.doc["bundle"] = res.bundle;
    r.doc["coefficient_mode"] = res.coefficient_mode;
    r.doc["r"] = res.r;
    r.doc["twisted_ranks"] = res.twisted_ranks;
    r.doc["untwisted_ranks"] = res.untwisted_ranks;
    r.doc["statement"] = res.found ? "cat(X,B,xi) >= " + std::to_string(res.lower_bound) : "no information";
    r.doc["witness_verified"] = check.ok();
    if (check.applicable)
        r.doc["witness_pairing"] = check.pairing_value;
    if (!check.ok())
        throw ComputationError("witness re-verification failed");
    return r;
}

Result cmd_inequality(Context&)
{
    auto rep = inequality_report(fixtures::inequality_rows());
    Result r;
    json rows = json::array();
    for (const auto& o : rep.rows)
        rows.push_back({{"name", o.name},
                        {"kind", o.kind},
                        {"inequality_checked", o.inequality_checked},
                        {"inequality_holds", o.inequality_holds},
                        {"bound_checked", o.bound_checked},
                        {"bound_holds", o.bound_holds},
                        {"detail", o.detail},
                        {"flagged", o.flagged()}});
    r.doc["rows"] = rows;
    r.doc["flags"] = rep.flags;
    r.table = "rows";
    if (rep.flags > 0)
        r.inconclusive = std::to_string(rep.flags) + " flagged rows";
    return r;
}

// ---- flows

json critical_json(const std::vector<flow::CriticalPoint>& cps)
{
    json a = json::array();
    for (const auto& cp : cps) {
        json j{{"id", cp.id}, {"x", point(cp.x)}, {"type", to_string(cp.type)},
               {"eigenvalues", json::array({cp.eigenvalues[0], cp.eigenvalues[1]})}};
        if (cp.unstable)
            j["unstable"] = point(*cp.unstable);
        if (cp.stable)
            j["stable"] = point(*cp.stable);
        a.push_back(j);
    }
    return a;
}

json check_json(const flow::AssumptionCheck& c)
{
    json w = json::array();
    for (const auto& x : c.witnesses)
        w.push_back({{"component", x.component}, {"x", point(x.x)}, {"value", x.value}, {"note", x.note}});
    return {{"name", c.name}, {"verdict", to_string(c.verdict)}, {"vacuous", c.vacuous}, {"witnesses", w}};
}

json assumptions_json(const flow::AssumptionReport& a)
{
    return {{"A1", check_json(a.a1)}, {"A2", check_json(a.a2)}, {"A3", check_json(a.a3)}, {"passed", a.passed()}};
}

json exits_json(const flow::ExitSet& ex)
{
    json comps = json::array();
    for (const auto& c : ex.components) {
        json b = json::array(), rest = json::array(), g = json::array();
        for (auto [a, z] : c.b_intervals)
            b.push_back({a, z});
        for (auto [a, z] : c.complement)
            rest.push_back({a, z});
        for (const auto& p : c.gamma)
            g.push_back({{"s", p.s}, {"x", point(c.component.at(p.s))}, {"slope", p.slope}, {"tangential", p.tangential}});
        comps.push_back({{"name", c.name}, {"B", b}, {"complement", rest}, {"gamma", g}, {"all_B", c.all_b()},
                         {"no_B", c.no_b()}});
    }
    return {{"components", comps}, {"gamma_count", ex.gamma_count()}};
}

json trajectory_json(const flow::Trajectory& t, bool samples)
{
    json j{{"start", point(t.start)},
           {"end", point(t.end)},
           {"time", t.time},
           {"displacement", t.displacement},
           {"termination", to_string(t.termination)},
           {"boundary_component", t.boundary_component},
           {"critical_id", t.critical_id},
           {"displacement_monotone", flow::displacement_monotone(t)}};
    if (!t.message.empty())
        j["message"] = t.message;
    if (samples) {
        json s = json::array();
        for (const auto& x : t.samples)
            s.push_back({x.t, x.x[0], x.x[1], x.displacement});
        j["samples"] = s;
    }
    return j;
}

json search_json(const flow::HomoclinicSearch& hs, bool curves)
{
    json conns = json::array();
    for (const auto& c : hs.connections) {
        json j{{"from", c.from}, {"branch", c.branch}, {"to", c.to}, {"uncertain", c.uncertain},
               {"displacement", c.displacement}, {"termination", to_string(c.curve.termination)}};
        if (curves) {
            json s = json::array();
            for (const auto& x : c.curve.samples)
                s.push_back({x.t, x.x[0], x.x[1], x.displacement});
            j["curve"] = s;
        }
        conns.push_back(j);
    }
    json cycles = json::array();
    for (const auto& cy : hs.cycles)
        cycles.push_back({{"length", cy.length()}, {"points", cy.points}, {"connections", cy.connections},
                          {"displacement", cy.displacement}, {"uncertain", cy.uncertain}});
    return {{"n_max", hs.n_max}, {"connections", conns}, {"cycles", cycles}, {"certain_cycles", hs.certain_cycles()}};
}

Result cmd_flow_check(Context& ctx, const std::string& path)
{
    auto s = load_scenario(ctx, path);
    Result r;
    auto problems = flow::validate(s);
    r.doc["valid"] = problems.empty();
    r.doc["violations"] = problems;
    if (!problems.empty()) {
        r.invalid = true;
        return r;
    }
    auto a = flow::check_assumptions(s);
    r.doc["assumptions"] = assumptions_json(a);
    r.doc["tolerances"] = flow::tolerances_json(s.tol);
    for (const auto* c : {&a.a1, &a.a2, &a.a3})
        if (c->verdict == flow::Verdict::Inconclusive)
            r.inconclusive = c->name + " is inconclusive";
    return r;
}

void require_valid(const flow::Scenario& s)
{
    auto problems = flow::validate(s);
    if (!problems.empty())
        throw ValidationError(problems);
}

Result cmd_flow_exit(Context& ctx, const std::string& path)
{
    auto s = load_scenario(ctx, path);
    require_valid(s);
    Result r;
    try {
        r.doc = exits_json(flow::exit_set(s));
    } catch (const flow::AssumptionError& e) {
        throw ComputationError(e.what());
    }
    return r;
}

flow::Point parse_point(const std::string& s)
{
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw ValidationError("start \"" + s + "\" is not u,v");
    try {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::logic_error&) {
        throw ValidationError("start \"" + s + "\" is not u,v");
    }
}

Result cmd_flow_trace(Context& ctx, const std::string& path, const std::vector<std::string>& starts, int random,
                      std::optional<double> max_time, std::optional<double> n_target, bool samples)
{
    auto s = load_scenario(ctx, path);
    require_valid(s);
    std::vector<flow::Point> xs;
    for (const auto& st : starts)
        xs.push_back(parse_point(st));
    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> uu(s.domain.u0, s.domain.u1), vv(s.domain.v0, s.domain.v1);
    for (int i = 0; i < random; ++i) {
        double u = uu(rng);
        xs.push_back({u, vv(rng)});
    }
    if (xs.empty())
        throw ValidationError("give --start or --random");
    flow::TraceOptions opt;
    opt.record = samples;
    opt.max_time = max_time;
    opt.displacement_target = n_target;
    Result r;
    json rows = json::array();
    for (const auto& x : xs)
        rows.push_back(trajectory_json(flow::trace(s, x, opt), samples));
    r.doc["trajectories"] = rows;
    r.doc["seed"] = ctx.seed;
    r.table = "trajectories";
    return r;
}

Result cmd_flow_critical(Context& ctx, const std::string& path)
{
    auto s = load_scenario(ctx, path);
    require_valid(s);
    Result r;
    auto cps = flow::find_critical_points(s);
    r.doc["critical"] = critical_json(cps);
    r.doc["count"] = cps.size();
    r.table = "critical";
    return r;
}

Result cmd_flow_probe(Context& ctx, const std::string& path, int grid)
{
    auto s = load_scenario(ctx, path);
    require_valid(s);
    auto pr = flow::arrival_time_probe(s, grid);
    Result r;
    json suspects = json::array();
    for (const auto& p : pr.suspects)
        suspects.push_back({{"a", point(pr.samples[p.a].x)}, {"b", point(pr.samples[p.b].x)}, {"jump", p.jump},
                            {"resolved", p.resolved}, {"peak", p.peak}});
    std::size_t in_ub = 0;
    for (const auto& smp : pr.samples)
        in_ub += smp.in_ub ? 1 : 0;
    r.doc["grid"] = grid;
    r.doc["samples"] = pr.samples.size();
    r.doc["in_UB"] = in_ub;
    r.doc["max_beta"] = pr.max_beta;
    r.doc["suspects"] = suspects;
    r.doc["persistent_jumps"] = pr.persistent();
    r.table = "suspects";
    if (pr.persistent() > 0)
        r.inconclusive = "arrival time has persistent jumps";
    return r;
}

Result cmd_flow_homoclinic(Context& ctx, const std::string& path, double n_max, int max_length,
                           std::optional<double> max_time, bool curves)
{
    auto s = load_scenario(ctx, path);
    require_valid(s);
    auto hs = flow::find_homoclinic_cycles(s, n_max, static_cast<std::size_t>(max_length), std::nullopt, max_time);
    Result r;
    r.doc = search_json(hs, curves);
    r.doc["critical"] = critical_json(hs.critical);
    r.table = "cycles";
    return r;
}

Result cmd_flow_report(Context& ctx, const std::string& path, double n_max, std::optional<double> max_time)
{
    auto s = load_scenario(ctx, path);
    require_valid(s);
    flow::ReportOptions opt;
    opt.n_max = n_max;
    opt.max_time = max_time;
    auto rep = flow::theorem47_report(s, opt);
    Result r;
    r.doc["scenario"] = s.name;
    r.doc["assumptions"] = assumptions_json(rep.assumptions);
    r.doc["outcome"] = to_string(rep.outcome);
    r.doc["critical_count"] = rep.critical.size();
    r.doc["critical"] = critical_json(rep.critical);
    r.doc["bound"] = rep.bound;
    r.doc["bound_source"] = rep.bound_source;
    if (rep.exits)
        r.doc["exit_set"] = exits_json(*rep.exits);
    if (rep.model)
        r.doc["model"] = {{"vertices", rep.model->pair.count(0)},
                          {"periods", json::array({rep.model->periods[0], rep.model->periods[1]})},
                          {"rank", rep.model->rank},
                          {"bundle", rep.model->bundle.describe()},
                          {"grid", json::array({rep.model->n_u, rep.model->n_v})}};
    if (rep.outcome != flow::Outcome::AssumptionsFailed)
        r.doc["homoclinic"] = search_json(rep.search, false);
    r.doc["flagged"] = rep.flagged();
    r.doc["n_max"] = n_max;
    if (rep.flagged())
        r.inconclusive = "no homoclinic cycle found within budget";
    if (rep.outcome == flow::Outcome::AssumptionsFailed)
        r.inconclusive = "assumptions failed";
    return r;
}

Result cmd_flow_cover(Context& ctx, const std::string& path, double n_target, int grid)
{
    auto s = load_scenario(ctx, path);
    require_valid(s);
    auto cv = flow::cover_from_flow(s, n_target, grid);
    Result r;
    auto name = [](flow::CoverSet c) {
        return c == flow::CoverSet::U ? "U" : c == flow::CoverSet::Ui ? "U_i" : "uncovered";
    };
    json pts = json::array();
    for (const auto& p : cv.points)
        pts.push_back({{"u", p.x[0]}, {"v", p.x[1]}, {"set", name(p.set)}, {"critical_id", p.critical_id},
                       {"time", p.t}, {"displacement", p.displacement}, {"termination", to_string(p.termination)}});
    json discs = json::array();
    for (const auto& d : cv.discs)
        discs.push_back({{"critical_id", d.critical_id}, {"radius", d.radius}, {"certified", d.certified},
                         {"launches", d.launches}});
    r.doc["N"] = n_target;
    r.doc["grid"] = grid;
    r.doc["coverage"] = cv.coverage();
    r.doc["k"] = cv.k();
    r.doc["counts"] = {{"U", cv.count(flow::CoverSet::U)}, {"U_i", cv.count(flow::CoverSet::Ui)},
                       {"uncovered", cv.count(flow::CoverSet::Uncovered)}};
    r.doc["precondition_ok"] = cv.precondition_ok;
    r.doc["discs"] = discs;
    r.doc["points"] = pts;
    r.table = "points";
    if (cv.coverage() < 1.0 || !cv.precondition_ok)
        r.inconclusive = "cover incomplete";
    return r;
}

Result cmd_flow_svg(Context& ctx, const std::string& path, const std::string& out, int grid)
{
    auto s = load_scenario(ctx, path);
    require_valid(s);
    flow::SvgOptions opt;
    opt.trajectory_grid = grid;
    auto svg = flow::phase_portrait_svg(s, opt);
    Result r;
    if (out.empty()) {
        r.raw = svg;
        return r;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f)
        throw ValidationError("cannot write " + out);
    f << svg;
    r.doc["svg"] = out;
    r.doc["bytes"] = svg.size();
    return r;
}

// ---- fixtures

Result cmd_fixtures_list(Context&, const std::string& dir_arg)
{
    auto dir = fixture_dir(dir_arg);
    Result r;
    json rows = json::array();
    for (const auto& e : registry::entries())
        for (const auto& k : e.known)
            rows.push_back({{"fixture", e.name}, {"version", e.version}, {"quantity", k.quantity}, {"value", k.value},
                            {"provenance", k.provenance}});
    r.doc["directory"] = dir;
    r.doc["known_values"] = rows;
    r.table = "known_values";
    return r;
}

Result cmd_fixtures_export(Context&, const std::string& dir_arg)
{
    auto dir = fs::path(fixture_dir(dir_arg));
    auto files = registry::fixture_files();
    files["registry.json"] = registry::registry_json().dump(2) + "\n";
    for (const auto& [name, text] : files) {
        auto p = dir / name;
        fs::create_directories(p.parent_path());
        std::ofstream f(p, std::ios::binary);
        if (!f)
            throw ValidationError("cannot write " + p.string());
        f << text;
    }
    Result r;
    r.doc["directory"] = dir.string();
    r.doc["written"] = files.size();
    return r;
}

/// Recomputes every expected value of every registry entry from the files on disk.
Result cmd_fixtures_check(Context& ctx, const std::string& dir_arg)
{
    auto dir = fs::path(fixture_dir(dir_arg));
    Result r;
    auto reg = io::parse(load(ctx, "registry", (dir / "registry.json").string()), "registry.json");
    std::vector<std::string> mismatched;
    json rows = json::array();
    // files on disk must match the generated ones byte for byte
    auto files = registry::fixture_files();
    files["registry.json"] = registry::registry_json().dump(2) + "\n";
    for (const auto& [name, text] : files) {
        std::string disk;
        try {
            disk = io::read_file((dir / name).string());
        } catch (const ValidationError&) {
        }
        if (disk != text)
            mismatched.push_back(name);
    }
    for (const auto& ej : reg.at("fixtures")) {
        auto e = registry::from_json(ej);
        auto file = [&](const std::string& n) { return (dir / n).string(); };
        Context sub;
        json got = json::object();
        std::string error;
        try {
            if (!e.scenario.empty()) {
                auto s = load_scenario(sub, file(e.scenario));
                auto rep = flow::theorem47_report(s);
                got["critical"] = rep.critical.size();
                got["bound"] = rep.bound;
                got["outcome"] = to_string(rep.outcome).substr(0, to_string(rep.outcome).find(' '));
                got["cycles"] = rep.search.certain_cycles();
                got["min_cycles"] = rep.search.certain_cycles();
                if (rep.exits)
                    got["gamma"] = rep.exits->gamma_count();
            } else if (!e.chain.empty()) {
                auto res = cmd_window(sub, file(e.complex), file(e.form), e.expected.value("box", "-2:2"),
                                      e.expected.value("sublevel", "0"), file(e.chain), false);
                got["box"] = e.expected.value("box", "-2:2");
                got["sublevel"] = e.expected.value("sublevel", "0");
                got["verdict"] = res.doc["verdict"];
            } else {
                auto p = load_complex(sub, file(e.complex));
                auto w = load_form(sub, p, file(e.form));
                auto pv = periods(w);
                got["periods"] = strings(pv.values);
                got["rank"] = pv.rank;
                if (!e.bundle.empty()) {
                    auto b = load_bundle(sub, file(e.bundle));
                    auto res = cup_length_bound(w, b);
                    got["k"] = res.k;
                    got["lower_bound"] = res.lower_bound;
                    if (!verify_witness(w, b, res).ok())
                        error = "witness re-verification failed";
                }
            }
        } catch (const std::exception& ex) {
            error = ex.what();
        }
        json diffs = json::array();
        for (const auto& [key, want] : e.expected.items()) {
            if (!got.contains(key)) {
                diffs.push_back(key + " not computed");
                continue;
            }
            bool ok = key == "min_cycles" ? got[key].get<long>() >= want.get<long>() : got[key] == want;
            if (!ok)
                diffs.push_back(key + ": expected " + want.dump() + ", got " + got[key].dump());
        }
        if (!error.empty())
            diffs.push_back(error);
        rows.push_back({{"fixture", e.name}, {"version", e.version}, {"ok", diffs.empty()}, {"mismatches", diffs}});
        if (!diffs.empty())
            mismatched.push_back(e.name);
    }
    r.doc["directory"] = dir.string();
    r.doc["fixtures"] = rows;
    r.doc["mismatched"] = mismatched;
    r.doc["ok"] = mismatched.empty();
    r.table = "fixtures";
    if (!mismatched.empty())
        r.failure = "fixture check failed: " + json(mismatched).dump();
    return r;
}

// ---- output

std::string csv_cell(const json& v)
{
    std::string s;
    if (v.is_string())
        s = v.get<std::string>();
    else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? ";" : "") + (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
    } else
        s = v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : s)
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return s;
}

std::string to_csv(const Result& r)
{
    std::string out;
    if (r.table.empty() || !r.doc.contains(r.table)) {
        out = "key,value\n";
        for (const auto& [k, v] : r.doc.items())
            if (!v.is_object())
                out += csv_cell(k) + "," + csv_cell(v) + "\n";
        return out;
    }
    std::vector<std::string> cols;
    for (const auto& row : r.doc[r.table])
        for (const auto& [k, v] : row.items())
            if (std::find(cols.begin(), cols.end(), k) == cols.end())
                cols.push_back(k);
    std::sort(cols.begin(), cols.end());
    for (std::size_t i = 0; i < cols.size(); ++i)
        out += (i ? "," : "") + csv_cell(cols[i]);
    out += "\n";
    for (const auto& row : r.doc[r.table]) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            out += (i ? "," : "") + (row.contains(cols[i]) ? csv_cell(row[cols[i]]) : std::string());
        out += "\n";
    }
    return out;
}

void emit(const Context& ctx, Result& r)
{
    if (!r.raw.empty()) {
        std::cout << r.raw;
        return;
    }
    if (ctx.format == "csv") {
        std::cout << to_csv(r);
        return;
    }
    r.doc["version"] = RELCAT_VERSION;
    r.doc["inputs"] = ctx.inputs;
    std::cout << r.doc.dump(2) << "\n";
}

int fail(const Context& ctx, const std::string& kind, const std::vector<std::string>& problems, int code)
{
    json doc{{"error", kind}, {kind == "validation" ? "violations" : "messages", problems}, {"version", RELCAT_VERSION},
             {"inputs", ctx.inputs}};
    if (ctx.format == "csv") {
        std::cout << (kind == "validation" ? "violation\n" : "message\n");
        for (const auto& p : problems)
            std::cout << csv_cell(p) << "\n";
    } else
        std::cout << doc.dump(2) << "\n";
    for (const auto& p : problems)
        std::cerr << "relcat: " << p << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Relative category bounds for closed 1-forms", "relcat"};
    app.set_version_flag("--version", RELCAT_VERSION);
    app.require_subcommand(1);
    app.fallthrough();
    Context ctx;
    app.add_option("--seed", ctx.seed, "seed for every random choice")->capture_default_str();
    app.add_option("--format", ctx.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_flag("--strict", ctx.strict, "exit 2 on inconclusive verdicts");
    app.add_option("--tolerance-profile", ctx.profile, "default, tight or fast integration tolerances")
        ->check(CLI::IsMember({"default", "tight", "fast"}))
        ->capture_default_str();

    std::string complex, form, bundle, scenario, path, box, sublevel, chain, out, dir;
    int degree = 1, grid = 24, max_length = 4, random = 0;
    double n_max = 10, n_target = 1;
    std::optional<double> max_time, n_stop;
    bool relative = false, absolute = false, surrogate = false, inclusive = false, samples = false;
    std::vector<std::string> starts;
    std::function<Result()> run;

    auto need_complex = [&](CLI::App* s) { s->add_option("--complex", complex, "complex JSON")->required(); };
    auto need_form = [&](CLI::App* s) { s->add_option("--form", form, "one-form JSON")->required(); };

    auto* validate_cmd = app.add_subcommand("validate", "check input files and list every violation");
    validate_cmd->add_option("--complex", complex);
    validate_cmd->add_option("--form", form);
    validate_cmd->add_option("--bundle", bundle);
    validate_cmd->add_option("--scenario", scenario);
    validate_cmd->callback([&] { run = [&] { return cmd_validate(ctx, complex, form, bundle, scenario); }; });

    auto* integrate_cmd = app.add_subcommand("integrate", "integrate a form along an edge path");
    need_complex(integrate_cmd);
    need_form(integrate_cmd);
    integrate_cmd->add_option("--path", path, "vertices, e.g. 0,1,2,0")->required();
    integrate_cmd->callback([&] { run = [&] { return cmd_integrate(ctx, complex, form, path); }; });

    auto* periods_cmd = app.add_subcommand("periods", "periods on a homology basis and the lattice rank");
    need_complex(periods_cmd);
    need_form(periods_cmd);
    periods_cmd->callback([&] { run = [&] { return cmd_periods(ctx, complex, form); }; });

    auto* class_cmd = app.add_subcommand("class", "the cohomology class: periods, primitive, deck labels");
    need_complex(class_cmd);
    need_form(class_cmd);
    class_cmd->add_option("--bundle", bundle, "also classify this bundle");
    class_cmd->callback([&] { run = [&] { return cmd_class(ctx, complex, form, bundle); }; });

    auto* betti_cmd = app.add_subcommand("betti", "rational Betti numbers of X and of (X, B)");
    need_complex(betti_cmd);
    betti_cmd->callback([&] { run = [&] { return cmd_betti(ctx, complex); }; });

    auto* boundary_cmd = app.add_subcommand("boundary", "boundary matrix as p/q strings");
    need_complex(boundary_cmd);
    boundary_cmd->add_option("--degree", degree)->required();
    boundary_cmd->add_flag("--relative", relative);
    boundary_cmd->callback([&] { run = [&] { return cmd_boundary(ctx, complex, degree, relative); }; });

    auto* window_cmd = app.add_subcommand("window", "movability of a class into one sublevel of a covering window");
    need_complex(window_cmd);
    need_form(window_cmd);
    window_cmd->add_option("--box", box, "label range lo:hi, comma separated per coordinate")->required();
    window_cmd->add_option("--sublevel", sublevel, "cutoff c of {f < c}")->required();
    window_cmd->add_option("--class", chain, "chain JSON")->required();
    window_cmd->add_flag("--inclusive", inclusive, "use f <= c");
    window_cmd->callback(
        [&] { run = [&] { return cmd_window(ctx, complex, form, box, sublevel, chain, inclusive); }; });

    auto* movable_cmd = app.add_subcommand("movable", "movability at every sublevel cutoff of a window");
    need_complex(movable_cmd);
    need_form(movable_cmd);
    movable_cmd->add_option("--box", box)->required();
    movable_cmd->add_option("--class", chain)->required();
    movable_cmd->callback([&] { run = [&] { return cmd_movable(ctx, complex, form, box, chain); }; });

    auto* twisted_cmd = app.add_subcommand("twisted-cohomology", "cohomology with coefficients in a flat bundle");
    need_complex(twisted_cmd);
    need_form(twisted_cmd);
    twisted_cmd->add_option("--bundle", bundle, "generic, trivial or a bundle JSON")->required();
    twisted_cmd->add_flag("--absolute", absolute, "ignore B");
    twisted_cmd->add_flag("--surrogate", surrogate, "evaluate at seeded random points instead");
    twisted_cmd->callback(
        [&] { run = [&] { return cmd_twisted(ctx, complex, form, bundle, absolute, surrogate); }; });

    auto* cup_cmd = app.add_subcommand("cup-bound", "cup-length lower bound for cat(X, B, xi)");
    need_complex(cup_cmd);
    need_form(cup_cmd);
    cup_cmd->add_option("--bundle", bundle, "generic, trivial or a bundle JSON")->required();
    cup_cmd->callback([&] { run = [&] { return cmd_cup(ctx, complex, form, bundle); }; });

    auto* ineq_cmd = app.add_subcommand("inequality-report", "known values against the category inequalities");
    ineq_cmd->callback([&] { run = [&] { return cmd_inequality(ctx); }; });

    auto* fixtures_cmd = app.add_subcommand("fixtures", "fixture registry");
    fixtures_cmd->require_subcommand(1);
    for (auto [name, help] : {std::pair{"list", "known values with provenance"},
                              {"check", "recompute every fixture from the files on disk"},
                              {"export", "write the fixture files"}}) {
        auto* sub = fixtures_cmd->add_subcommand(name, help);
        sub->add_option("--dir", dir, "fixture directory");
        std::string which = name;
        sub->callback([&, which] {
            run = [&, which] {
                if (which == "list")
                    return cmd_fixtures_list(ctx, dir);
                if (which == "export")
                    return cmd_fixtures_export(ctx, dir);
                return cmd_fixtures_check(ctx, dir);
            };
        });
    }

    auto* flow_cmd = app.add_subcommand("flow", "gradient flows on surfaces with boundary");
    flow_cmd->require_subcommand(1);
    auto flow_sub = [&](const char* name, const char* help) {
        auto* s = flow_cmd->add_subcommand(name, help);
        s->add_option("--scenario", scenario, "scenario JSON")->required();
        return s;
    };
    flow_sub("check", "validate and test the boundary assumptions")->callback([&] {
        run = [&] { return cmd_flow_check(ctx, scenario); };
    });
    flow_sub("exit-set", "B and Gamma on each boundary component")->callback([&] {
        run = [&] { return cmd_flow_exit(ctx, scenario); };
    });
    auto* trace_cmd = flow_sub("trace", "integrate trajectories");
    trace_cmd->add_option("--start", starts, "start point u,v (repeatable)");
    trace_cmd->add_option("--random", random, "number of seeded random starts");
    trace_cmd->add_option("--max-time", max_time);
    trace_cmd->add_option("--displacement", n_stop, "stop once the displacement drops below minus this");
    trace_cmd->add_flag("--samples", samples, "include the sampled curves");
    trace_cmd->callback([&] {
        run = [&] { return cmd_flow_trace(ctx, scenario, starts, random, max_time, n_stop, samples); };
    });
    flow_sub("critical", "zeros of the form with their types")->callback([&] {
        run = [&] { return cmd_flow_critical(ctx, scenario); };
    });
    auto* probe_cmd = flow_sub("probe", "arrival times on a grid with jump detection");
    probe_cmd->add_option("--grid", grid)->capture_default_str();
    probe_cmd->callback([&] { run = [&] { return cmd_flow_probe(ctx, scenario, grid); }; });
    auto* homoclinic_cmd = flow_sub("homoclinic", "separatrix connections and homoclinic cycles");
    homoclinic_cmd->add_option("--n-max", n_max)->capture_default_str();
    homoclinic_cmd->add_option("--max-length", max_length)->capture_default_str();
    homoclinic_cmd->add_option("--max-time", max_time);
    homoclinic_cmd->add_flag("--curves", samples, "include the separatrix curves");
    homoclinic_cmd->callback(
        [&] { run = [&] { return cmd_flow_homoclinic(ctx, scenario, n_max, max_length, max_time, samples); }; });
    auto* report_cmd = flow_sub("report", "critical points against the cup-length bound");
    report_cmd->add_option("--n-max", n_max)->capture_default_str();
    report_cmd->add_option("--max-time", max_time);
    report_cmd->callback([&] { run = [&] { return cmd_flow_report(ctx, scenario, n_max, max_time); }; });
    auto* cover_cmd = flow_sub("cover", "grid classification into U and the U_i");
    cover_cmd->add_option("--n", n_target, "displacement N")->capture_default_str();
    cover_cmd->add_option("--grid", grid)->capture_default_str();
    cover_cmd->callback([&] { run = [&] { return cmd_flow_cover(ctx, scenario, n_target, grid); }; });
    auto* svg_cmd = flow_sub("svg", "phase portrait");
    svg_cmd->add_option("--out", out, "file to write; stdout when omitted");
    grid = 24;
    svg_cmd->add_option("--grid", grid, "trajectory starts per side");
    svg_cmd->callback([&] { run = [&] { return cmd_flow_svg(ctx, scenario, out, grid == 24 ? 8 : grid); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        Result r = run();
        emit(ctx, r);
        if (r.invalid) {
            for (const auto& p : r.doc.value("violations", std::vector<std::string>{}))
                std::cerr << "relcat: " << p << "\n";
            return 1;
        }
        if (!r.failure.empty()) {
            std::cerr << "relcat: " << r.failure << "\n";
            return 2;
        }
        if (ctx.strict && !r.inconclusive.empty()) {
            std::cerr << "relcat: inconclusive: " << r.inconclusive << "\n";
            return 2;
        }
        return 0;
    } catch (const ValidationError& e) {
        return fail(ctx, "validation", e.problems(), 1);
    } catch (const flow::ExpressionError& e) {
        return fail(ctx, "validation", {e.what()}, 1);
    } catch (const ParseError& e) {
        return fail(ctx, "validation", {e.what()}, 1);
    } catch (const std::exception& e) {
        return fail(ctx, "computation", {e.what()}, 2);
    }
}
