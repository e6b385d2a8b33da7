// Fixture registry: named inputs on disk, known values with provenance, and the
// values the library is expected to compute from them.
#pragma once

#include "relcat/fixtures.hpp"
#include "relcat/io.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace relcat::registry {

using json = nlohmann::json;

struct KnownValue {
    std::string quantity;
    std::string value;
    std::string provenance;
};

struct FixtureEntry {
    std::string name;
    int version = fixtures::kFixtureVersion;
    std::string complex, form, bundle, scenario, chain;  // file names relative to the fixture directory
    std::vector<KnownValue> known;
    json expected = json::object();
};

inline json to_json(const FixtureEntry& e)
{
    json files = json::object();
    for (auto [k, v] : {std::pair{"complex", &e.complex}, {"form", &e.form}, {"bundle", &e.bundle},
                        {"scenario", &e.scenario}, {"chain", &e.chain}})
        if (!v->empty())
            files[k] = *v;
    json known = json::array();
    for (const auto& k : e.known)
        known.push_back({{"quantity", k.quantity}, {"value", k.value}, {"provenance", k.provenance}});
    return {{"name", e.name}, {"version", e.version}, {"files", files}, {"known", known}, {"expected", e.expected}};
}

inline FixtureEntry from_json(const json& j)
{
    FixtureEntry e;
    try {
        e.name = j.at("name").get<std::string>();
        e.version = j.at("version").get<int>();
        const auto& f = j.at("files");
        e.complex = f.value("complex", "");
        e.form = f.value("form", "");
        e.bundle = f.value("bundle", "");
        e.scenario = f.value("scenario", "");
        e.chain = f.value("chain", "");
        for (const auto& k : j.at("known")) {
            KnownValue kv{k.at("quantity").get<std::string>(), k.at("value").get<std::string>(),
                          k.at("provenance").get<std::string>()};
            if (kv.provenance.empty())
                throw ValidationError("known value " + kv.quantity + " of " + e.name + " has no provenance");
            e.known.push_back(kv);
        }
        e.expected = j.value("expected", json::object());
    } catch (const json::exception& ex) {
        throw ValidationError("registry entry: " + std::string(ex.what()));
    }
    return e;
}

namespace detail {

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline const char* kAnnulus = R"J({
  "name": "annulus d(theta) + dt",
  "surface": "annulus",
  "form": {"du": "1", "dv": "1"},
  "metric": "product_collar",
  "collar_width": 0.2
})J";

inline const char* kGamma = R"J({
  "name": "annulus with two points of Gamma per circle",
  "surface": "annulus",
  "form": {"du": "0.5", "exact": "(2*v - 1)*cos(u)"},
  "metric": "product_collar",
  "collar_width": 0.2
})J";

inline const char* kSaddleLoop = R"J({
  "name": "saddle loop u' = v, v' = u - u^2",
  "surface": "rectangle",
  "mode": "harness",
  "domain": {"u": [-1, 2], "v": [-1.5, 1.5]},
  "field": {"du": "v", "dv": "u - u^2"},
  "forced_bound": 3
})J";

inline const char* kFigureEight = R"J({
  "name": "figure eight u' = v, v' = u - u^3",
  "surface": "rectangle",
  "mode": "harness",
  "domain": {"u": [-2, 2], "v": [-1.5, 1.5]},
  "field": {"du": "v", "dv": "u - u^3"},
  "forced_bound": 4
})J";

inline const char* kTorusExact = R"J({
  "name": "torus, exact form d(cos 2 pi u + cos 2 pi v)",
  "surface": "torus",
  "form": {"exact": "(cos(2*pi*u) + cos(2*pi*v))/(2*pi)"}
})J";

inline const char* kTorusSlope = R"J({
  "name": "torus, 0.1 du plus an exact bump",
  "surface": "torus",
  "form": {"du": "0.1", "exact": "cos(2*pi*u)*cos(2*pi*v)/(2*pi)"}
})J";

inline const char* kSink = R"J({
  "name": "rectangle with an interior minimum",
  "surface": "rectangle",
  "form": {"exact": "(u - 0.5)^2 + (v - 0.4)^2"},
  "collar_width": 0.1
})J";

inline const char* kBad = R"J({
  "vertices": 3,
  "simplices": [[0, 1, 5], [1, 1], [0, 2]],
  "B": [[1, 2]]
})J";

}  // namespace detail

/// File name -> exact file content.
inline std::map<std::string, std::string> fixture_files()
{
    namespace fx = relcat::fixtures;
    using io::complex_to_json;
    using io::form_to_json;
    std::map<std::string, std::string> f;
    auto put = [&](const std::string& name, const json& j) { f[name] = detail::dump(j); };
    put("c3.json", complex_to_json(fx::circle()));
    put("w111.json", form_to_json(fx::circle_form()));
    put("exact_c3.json", form_to_json(d(fx::circle(), std::vector<Rational>{0, 2, 5})));
    put("torus.json", complex_to_json(fx::torus()));
    put("zero.json", form_to_json(OneForm::zero(fx::torus())));
    put("torus_first.json", form_to_json(fx::torus_factor_form(true)));
    put("torus_second.json", form_to_json(fx::torus_factor_form(false)));
    put("torus_irrational.json", form_to_json(fx::torus_irrational_form()));
    put("cylinder_both.json", complex_to_json(fx::cylinder(fx::Ends::Both)));
    put("cylinder_one.json", complex_to_json(fx::cylinder(fx::Ends::One)));
    put("zero_cylinder.json", form_to_json(OneForm::zero(fx::cylinder(fx::Ends::None))));
    put("interval_rel.json", complex_to_json(fx::interval(fx::Ends::Both)));
    put("zero_interval.json", form_to_json(OneForm::zero(fx::interval())));
    f["bad.json"] = std::string(detail::kBad) + "\n";
    put("generic.json", {{"kind", "generic"}});
    put("trivial.json", {{"kind", "trivial"}});
    put("numeric_half.json", {{"kind", "numeric"}, {"values", {"3/2"}}});
    put("numeric_minus_one.json", {{"kind", "numeric"}, {"values", {"-1"}}});
    put("point_class.json", {{"degree", 0}, {"terms", {{{"simplex", {1}}, {"label", {0}}, {"coeff", "1"}}}}});
    put("fiber_class.json", {{"degree", 1},
                             {"terms",
                              {{{"simplex", {0, 1}}, {"label", {0}}, {"coeff", "1"}},
                               {{"simplex", {1, 2}}, {"label", {0}}, {"coeff", "1"}},
                               {{"simplex", {0, 2}}, {"label", {0}}, {"coeff", "-1"}}}}});
    for (auto [name, text] : {std::pair{"flow/annulus.json", detail::kAnnulus}, {"flow/gamma.json", detail::kGamma},
                              {"flow/saddle_loop.json", detail::kSaddleLoop},
                              {"flow/figure_eight.json", detail::kFigureEight},
                              {"flow/torus_exact.json", detail::kTorusExact},
                              {"flow/torus_slope.json", detail::kTorusSlope}, {"flow/sink.json", detail::kSink}})
        f[name] = std::string(text) + "\n";
    return f;
}

inline std::vector<FixtureEntry> entries()
{
    std::vector<FixtureEntry> out;
    auto add = [&](FixtureEntry e) { out.push_back(std::move(e)); };

    add({"circle", fixtures::kFixtureVersion, "c3.json", "w111.json", "generic.json", "", "",
         {{"period", "3", "direct summation of the three unit edges around the one loop"},
          {"cat(S1, xi)", "0", "a nonzero class makes the whole circle movable to infinity"}},
         {{"periods", {"3"}}, {"rank", 1}, {"k", 0}, {"lower_bound", 0}}});
    add({"circle-exact", fixtures::kFixtureVersion, "c3.json", "exact_c3.json", "trivial.json", "", "",
         {{"period", "0", "d of the potential (0, 2, 5) telescopes around the loop"},
          {"cat(S1)", "2", "classical category of the circle"}},
         {{"periods", {"0"}}, {"rank", 0}, {"k", 1}, {"lower_bound", 2}}});
    add({"torus-zero", fixtures::kFixtureVersion, "torus.json", "zero.json", "trivial.json", "", "",
         {{"cat(T2)", "3", "classical: cup-length 2 of the 2-torus, category 3"}},
         {{"periods", {"0", "0"}}, {"rank", 0}, {"k", 2}, {"lower_bound", 3}}});
    add({"torus-first-factor", fixtures::kFixtureVersion, "torus.json", "torus_first.json", "generic.json", "",
         "",
         {{"cat(T2, xi) upper", "1",
           "product inequality: cat(S1, xi) + cat(S1, 0) - 1 = 0 + 2 - 1"}},
         {{"rank", 1}, {"k", 0}, {"lower_bound", 0}}});
    add({"torus-irrational", fixtures::kFixtureVersion, "torus.json", "torus_irrational.json", "generic.json", "",
         "",
         {{"period lattice rank", "2", "periods (1, 0) and (0, 1) per edge pair are independent over Q"}},
         {{"rank", 2}, {"lower_bound", 0}}});
    add({"cylinder-both-ends", fixtures::kFixtureVersion, "cylinder_both.json", "zero_cylinder.json",
         "trivial.json", "", "",
         {{"cat(S1 x I, S1 x dI, 0)", "2", "product of cat(S1, 0) = 2 with cat(I, dI, 0) = 1"}},
         {{"rank", 0}, {"k", 1}, {"lower_bound", 2}}});
    add({"cylinder-one-end", fixtures::kFixtureVersion, "cylinder_one.json", "zero_cylinder.json", "trivial.json",
         "", "",
         {{"cat(S1 x I, S1 x 0, 0)", "0", "the cylinder deformation retracts onto the chosen end"}},
         {{"rank", 0}, {"lower_bound", 0}}});
    add({"interval-rel-ends", fixtures::kFixtureVersion, "interval_rel.json", "zero_interval.json", "trivial.json",
         "", "",
         {{"cat(I, dI, 0)", "1", "a neighbourhood of the midpoint cannot be pushed into the ends"}},
         {{"rank", 0}, {"k", 0}, {"lower_bound", 1}}});
    add({"line-window", fixtures::kFixtureVersion, "c3.json", "w111.json", "", "", "point_class.json",
         {{"point class", "movable-in-window", "sublevels of the line are nonempty and connected"}},
         {{"box", "-3:3"}, {"sublevel", "0"}, {"verdict", "movable-in-window"}}});
    add({"cylinder-window", fixtures::kFixtureVersion, "torus.json", "torus_first.json", "", "", "fiber_class.json",
         {{"fiber circle", "movable-in-window", "every sublevel contains a full translate of the fibre circle"}},
         {{"box", "-2:2"}, {"sublevel", "0"}, {"verdict", "movable-in-window"}}});

    add({"flow-annulus", fixtures::kFixtureVersion, "", "", "", "flow/annulus.json", "",
         {{"exit set", "inner circle", "df/dt = 1 > 0 on the inner circle and -1 on the outer one"},
          {"critical points", "0", "omega = du + dv has no zero"}},
         {{"critical", 0}, {"bound", 0}, {"outcome", "(i)"}}});
    add({"flow-gamma", fixtures::kFixtureVersion, "", "", "", "flow/gamma.json", "",
         {{"Gamma", "4 points", "df/dt = +-2 cos u vanishes at u = pi/2, 3pi/2 on each circle"},
          {"critical points", "2 saddles", "sin u = 1/(2(2v - 1)) and cos u = 0 give (pi/2, 3/4) and (3pi/2, 1/4)"}},
         {{"critical", 2}, {"gamma", 4}, {"outcome", "(i)"}}});
    add({"flow-saddle-loop", fixtures::kFixtureVersion, "", "", "", "flow/saddle_loop.json", "",
         {{"homoclinic loop", "length 1", "the H = 0 level of v^2/2 - u^2/2 + u^3/3 is a loop through the origin"}},
         {{"critical", 2}, {"outcome", "(ii)"}, {"min_cycles", 1}}});
    add({"flow-figure-eight", fixtures::kFixtureVersion, "", "", "", "flow/figure_eight.json", "",
         {{"homoclinic loops", "2", "the H = 0 level of v^2/2 - u^2/2 + u^4/4 is two loops through the origin"}},
         {{"critical", 3}, {"outcome", "(ii)"}, {"min_cycles", 2}}});
    add({"flow-torus-exact", fixtures::kFixtureVersion, "", "", "", "flow/torus_exact.json", "",
         {{"critical points", "4", "cos 2 pi u + cos 2 pi v: one maximum, one minimum, two saddles"},
          {"homoclinic cycles", "0", "f strictly decreases along every non-constant trajectory"}},
         {{"critical", 4}, {"cycles", 0}, {"bound", 3}}});
    add({"flow-sink", fixtures::kFixtureVersion, "", "", "", "flow/sink.json", "",
         {{"critical points", "1 minimum", "the paraboloid has its only zero at (0.5, 0.4)"}},
         {{"critical", 1}, {"cycles", 0}}});
    return out;
}

inline json registry_json()
{
    json a = json::array();
    for (const auto& e : entries())
        a.push_back(to_json(e));
    return {{"version", fixtures::kFixtureVersion}, {"fixtures", a}};
}

}  // namespace relcat::registry
