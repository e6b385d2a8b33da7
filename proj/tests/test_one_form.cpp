#include "relcat/fixtures.hpp"
#include "relcat/one_form.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace relcat;
namespace fx = relcat::fixtures;

namespace {

FormValue q(long n, long d = 1) { return FormValue::scalar(Rational(n) / Rational(d)); }

std::vector<Rational> random_potential(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-20, 20), den(1, 6);
    std::vector<Rational> f;
    for (std::size_t i = 0; i < n; ++i)
        f.push_back(Rational(num(rng)) / Rational(den(rng)));
    return f;
}

OneForm add(const OneForm& a, const OneForm& b)
{
    std::vector<FormValue> v;
    for (std::size_t i = 0; i < a.edge_values().size(); ++i)
        v.push_back(a.edge_values()[i] + b.edge_values()[i]);
    return OneForm(a.shared_pair(), v, a.embedding());
}

}  // namespace

TEST_CASE("validate reports cocycle violations")
{
    CHECK(validate(fx::circle_form()).empty());

    auto tri = fx::filled_triangle();
    auto good = OneForm::from_edges(tri, {{{0, 1}, q(1)}, {{1, 2}, q(1)}, {{0, 2}, q(2)}});
    CHECK(validate(good).empty());
    auto bad = OneForm::from_edges(tri, {{{0, 1}, q(1)}, {{1, 2}, q(1)}, {{0, 2}, q(1)}});
    auto v = validate(bad);
    REQUIRE(v.size() == 1);
    CHECK(v[0].triangle == Simplex{0, 1, 2});
    CHECK(v[0].defect == q(1));

    CHECK_THROWS_AS(OneForm::from_edges(tri, {{{0, 1}, q(1)}}), ValidationError);
}

TEST_CASE("exact forms")
{
    auto c3 = fx::circle();
    auto w = d(c3, std::vector<Rational>{0, 2, 5});
    CHECK(w.value(0, 1) == q(2));
    CHECK(w.value(1, 2) == q(3));
    CHECK(w.value(0, 2) == q(5));
    CHECK(validate(w).empty());
    auto z = d(c3, std::vector<Rational>{4, 4, 4});
    for (const auto& x : z.edge_values())
        CHECK(x.is_zero());
    auto f = primitive(w);
    REQUIRE(f);
    CHECK((*f)[2] == q(5));
}

TEST_CASE("line integrals")
{
    auto w = fx::circle_form();
    CHECK(integrate(w, {{0, 1, 2, 0}}) == q(3));
    CHECK(integrate(w, {{1, 1}}).is_zero());
    CHECK(integrate(w, {{2}}).is_zero());
    auto ex = d(fx::circle(), std::vector<Rational>{0, 2, 5});
    CHECK(integrate(ex, {{0, 1, 2}}) == q(5));
    CHECK_THROWS_AS(integrate(fx::circle_form(), {{0, 3}}), ValidationError);

    // Angular form on the hexagon: each edge carries pi/3, the loop picks up 2 pi.
    auto hex = fx::circle_form(6, Rational(1, 3));
    CHECK(integrate(hex, {{0, 1, 2, 3, 4, 5, 0}}) == q(2));
}

TEST_CASE("periods and primitive")
{
    auto p = periods(fx::circle_form());
    REQUIRE(p.values.size() == 1);
    CHECK(p.values[0] == q(3));
    CHECK(p.rank == 1);
    CHECK_FALSE(primitive(fx::circle_form()));

    auto pe = periods(d(fx::circle(), std::vector<Rational>{0, 2, 5}));
    CHECK(pe.rank == 0);
    for (const auto& v : pe.values)
        CHECK(v.is_zero());

    auto pt = periods(fx::torus_factor_form());
    REQUIRE(pt.values.size() == 2);
    CHECK(pt.rank == 1);
    std::vector<Rational> vals{pt.values[0][0], pt.values[1][0]};
    std::sort(vals.begin(), vals.end());
    CHECK(vals == std::vector<Rational>{0, 3});

    auto pr = periods(fx::torus_irrational_form());
    CHECK(pr.rank == 2);

    auto z = primitive(OneForm::zero(fx::torus()));
    REQUIRE(z);
    for (const auto& v : *z)
        CHECK(v.is_zero());
}

TEST_CASE("class invariance under exact perturbations")
{
    std::mt19937_64 rng(7);
    for (const auto& w : {fx::circle_form(), fx::torus_factor_form()}) {
        auto base = periods(w);
        for (int trial = 0; trial < 20; ++trial) {
            auto f = random_potential(w.pair().vertex_count(), rng);
            auto shifted = add(w, d(w.pair(), f));
            auto p = periods(shifted);
            CHECK(p.values == base.values);
            CHECK(p.rank == base.rank);
        }
    }
}

TEST_CASE("restriction")
{
    auto w = fx::torus_factor_form();
    // The first-factor circle is the set of vertices (a, 0), i.e. 0, 3, 6.
    auto sub = build_pair({{0, 3}, {3, 6}, {0, 6}}, {}, 9, false);
    auto r = restrict(w, sub);
    auto p = periods(r);
    REQUIRE(p.values.size() == 1);
    CHECK((p.values[0] == q(3) || p.values[0] == q(-3)));

    auto ex = d(fx::torus(), std::vector<Rational>{0, 1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(primitive(restrict(ex, sub)));

    auto single = build_pair({{4}}, {}, 9, false);
    CHECK(restrict(w, single).edge_values().empty());

    auto not_sub = build_pair({{0, 4, 8}}, {}, 9, false);
    CHECK_THROWS_AS(restrict(w, not_sub), ValidationError);
}

TEST_CASE("deck labeling")
{
    auto lab = deck_labeling(fx::circle_form());
    CHECK(lab.rank == 1);
    CHECK(lab.forest.tree_edge[*fx::circle().edge_index(0, 1)]);
    CHECK(lab.forest.tree_edge[*fx::circle().edge_index(1, 2)]);
    CHECK(lab.label(2, 0) == std::vector<int>{1});
    CHECK(lab.label(0, 1) == std::vector<int>{0});
    CHECK(lab.pairing({1}) == q(3));

    auto ex = deck_labeling(d(fx::circle(), std::vector<Rational>{0, 2, 5}));
    CHECK(ex.rank == 0);
    for (const auto& l : ex.edge_labels)
        CHECK(l.empty());

    auto w = fx::torus_factor_form();
    auto tl = deck_labeling(w);
    CHECK(tl.rank == 1);
    // Loops along the second factor (vertices a*3 + b with a fixed) carry label 0.
    CHECK(tl.path_label({{0, 1, 2, 0}}) == std::vector<int>{0});
    CHECK(tl.path_label({{3, 4, 5, 3}}) == std::vector<int>{0});
    for (const auto& loop : homology_loops(w.pair()))
        CHECK(tl.pairing(tl.path_label(loop)) == integrate(w, loop));

    auto rl = deck_labeling(fx::torus_irrational_form());
    CHECK(rl.rank == 2);
    for (const auto& loop : homology_loops(rl.pair ? *rl.pair : fx::torus()))
        CHECK(rl.pairing(rl.path_label(loop)) == integrate(fx::torus_irrational_form(), loop));
}

TEST_CASE("homologous paths have equal integrals")
{
    std::mt19937_64 rng(11);
    auto w = fx::torus_factor_form();
    const auto& p = w.pair();
    // A path and the same path with a detour around a triangle.
    std::uniform_int_distribution<std::size_t> pick(0, p.count(2) - 1);
    for (int trial = 0; trial < 30; ++trial) {
        auto t = p.simplices(2)[pick(rng)];
        EdgePath direct{{t[0], t[2]}};
        EdgePath around{{t[0], t[1], t[2]}};
        CHECK(integrate(w, direct) == integrate(w, around));
    }
}

TEST_CASE("subdivision transports forms")
{
    for (const auto& w : {fx::circle_form(), fx::torus_factor_form(), fx::torus_irrational_form()}) {
        auto sd = barycentric_subdivide(w.pair());
        auto t = transport(w, sd);
        CHECK(validate(t).empty());
        for (const auto& loop : homology_loops(w.pair()))
            CHECK(integrate(t, subdivide_path(sd, loop)) == integrate(w, loop));
        CHECK(periods(t).rank == periods(w).rank);
    }
    auto tri = fx::filled_triangle();
    auto ex = d(tri, std::vector<Rational>{0, 1, 3});
    auto sd = barycentric_subdivide(tri);
    auto t = transport(ex, sd);
    CHECK(validate(t).empty());
    CHECK(integrate(t, subdivide_path(sd, {{0, 1, 2}})) == q(3));
}
