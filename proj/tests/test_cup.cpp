#include "relcat/cup.hpp"
#include "relcat/fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace relcat;
namespace fx = relcat::fixtures;

namespace {

template <class R>
Vector<R> random_cochain(std::size_t n, std::mt19937_64& rng, const SimplicialPair* rel_pair = nullptr, int k = 0)
{
    std::uniform_int_distribution<int> dist(-3, 3);
    Vector<R> c(n, R(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (rel_pair && rel_pair->in_b(k, i))
            continue;
        R x = R(dist(rng));
        if constexpr (std::is_same_v<R, LaurentPoly>)
            x *= LaurentPoly::variable(0, dist(rng));
        c[i] = x;
    }
    return c;
}

template <class R>
Vector<R> add(const Vector<R>& a, const Vector<R>& b, const R& s)
{
    Vector<R> c = a;
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] += s * b[i];
    return c;
}

}  // namespace

TEST_CASE("unit cochain is a left identity")
{
    auto t = fx::torus();
    auto un = untwisted_complex(t, false);
    Vector<Rational> one(t.count(0), Rational(1));
    for (const auto& v : un.cohomology_basis(1).representatives)
        CHECK(cup(t, 0, one, 1, v) == v);
}

TEST_CASE("torus cup products")
{
    auto t = fx::torus();
    auto un = untwisted_complex(t, false);
    auto basis = un.cohomology_basis(1);
    REQUIRE(basis.rank() == 2);
    const auto& a = basis.representatives[0];
    const auto& b = basis.representatives[1];
    auto fund = top_relative_cycles(t);
    REQUIRE(fund.size() == 1);
    auto ab = cup(t, 1, a, 1, b);
    Rational val = pairing(t, 2, ab, 2, fund[0]);
    CHECK((val == 1 || val == -1));
    CHECK(un.is_coboundary(2, cup(t, 1, a, 1, a)));
    CHECK(un.is_coboundary(2, cup(t, 1, b, 1, b)));
    // graded commutativity in cohomology: a u b = - b u a
    CHECK(un.is_coboundary(2, add(ab, cup(t, 1, b, 1, a), Rational(1))));
    CHECK(pairing(t, 2, Vector<Rational>(t.count(2), 0), 2, fund[0]) == 0);
    CHECK_THROWS(pairing(t, 1, a, 2, fund[0]));
    CHECK_THROWS(cup(fx::circle(), 1, a, 1, b));
}

TEST_CASE("cylinder relative products")
{
    auto cyl = fx::cylinder(fx::Ends::Both);
    auto rel = untwisted_complex(cyl, true);
    auto abs = untwisted_complex(cyl.absolute(), false);
    auto r1 = rel.cohomology_basis(1);
    auto a1 = abs.cohomology_basis(1);
    REQUIRE(r1.rank() == 1);
    REQUIRE(a1.rank() == 1);
    auto prod = cup(cyl, 1, r1.representatives[0], 1, a1.representatives[0]);
    CHECK(rel.is_cocycle(2, prod));
    CHECK_FALSE(rel.is_coboundary(2, prod));
    auto fund = top_relative_cycles(cyl);
    REQUIRE(fund.size() == 1);
    Rational val = pairing(cyl, 2, prod, 2, fund[0]);
    CHECK((val == 1 || val == -1));
}

TEST_CASE("Leibniz rule for the twisted cup")
{
    std::mt19937_64 rng(3);
    std::vector<OneForm> forms{fx::torus_factor_form(), fx::circle_form(),
                               pullback_to_product(fx::circle_form(), fx::cylinder(fx::Ends::Both), 2, true)};
    for (const auto& w : forms) {
        const auto& p = w.pair();
        auto tw = generic_twisted_complex(p, deck_labeling(w), true);
        auto un = untwisted_complex(p, false);
        int checked = 0;
        for (int trial = 0; trial < 100; ++trial) {
            for (int pdeg = 0; pdeg < p.dimension(); ++pdeg)
                for (int qdeg = 0; pdeg + qdeg + 1 <= p.dimension(); ++qdeg) {
                    auto u = random_cochain<LaurentPoly>(p.count(pdeg), rng, &p, pdeg);
                    auto v = random_cochain<Rational>(p.count(qdeg), rng);
                    auto lhs = tw.apply(pdeg + qdeg, cup(p, pdeg, u, qdeg, v));
                    auto rhs = cup(p, pdeg + 1, tw.apply(pdeg, u), qdeg, v);
                    auto second = cup(p, pdeg, u, qdeg + 1, un.apply(qdeg, v));
                    rhs = add(rhs, second, LaurentPoly(pdeg % 2 == 0 ? 1 : -1));
                    CHECK(lhs == rhs);
                    ++checked;
                }
        }
        CHECK(checked >= 100);
    }
}

TEST_CASE("cup of coboundary-shifted representatives stays in the class")
{
    std::mt19937_64 rng(5);
    auto cyl = fx::cylinder(fx::Ends::Both);
    auto rel = untwisted_complex(cyl, true);
    auto abs = untwisted_complex(cyl, false);
    auto u = rel.cohomology_basis(1).representatives[0];
    auto v = abs.cohomology_basis(1).representatives[0];
    auto base = cup(cyl, 1, u, 1, v);
    for (int trial = 0; trial < 10; ++trial) {
        auto w0 = random_cochain<Rational>(cyl.count(0), rng, &cyl, 0);
        auto w1 = random_cochain<Rational>(cyl.count(0), rng);
        auto u2 = add(u, rel.apply(0, w0), Rational(1));
        auto v2 = add(v, abs.apply(0, w1), Rational(1));
        auto shifted = cup(cyl, 1, u2, 1, v2);
        CHECK(rel.is_coboundary(2, add(shifted, base, Rational(-1))));
    }
}

TEST_CASE("cup-length bounds on fixtures")
{
    auto torus = cup_length_bound(OneForm::zero(fx::torus()), FlatBundle::trivial());
    CHECK(torus.k == 2);
    CHECK(torus.lower_bound == 3);

    auto cyl = cup_length_bound(OneForm::zero(fx::cylinder(fx::Ends::Both)), FlatBundle::trivial());
    CHECK(cyl.k == 1);
    CHECK(cyl.lower_bound == 2);

    auto circ = cup_length_bound(fx::circle_form(), FlatBundle::generic());
    CHECK(circ.lower_bound == 0);
    CHECK_FALSE(circ.found);

    auto one = cup_length_bound(OneForm::zero(fx::cylinder(fx::Ends::One)), FlatBundle::trivial());
    CHECK(one.lower_bound == 0);

    CHECK_THROWS_AS(cup_length_bound(fx::circle_form(), FlatBundle::trivial()), NotTranscendentalError);
    CHECK_THROWS_AS(cup_length_bound(fx::circle_form(), FlatBundle::numeric({MonodromyValue::of(Rational(3, 2))})),
                    NotTranscendentalError);

    for (const auto* r : {&torus, &cyl}) {
        auto form = r == &torus ? OneForm::zero(fx::torus()) : OneForm::zero(fx::cylinder(fx::Ends::Both));
        auto check = verify_witness(form, FlatBundle::trivial(), *r);
        CHECK(check.applicable);
        CHECK(check.ok());
    }
}

TEST_CASE("bounds are invariant under subdivision")
{
    struct Case {
        OneForm form;
        FlatBundle bundle;
    };
    std::vector<Case> cases{{OneForm::zero(fx::torus()), FlatBundle::trivial()},
                            {OneForm::zero(fx::cylinder(fx::Ends::Both)), FlatBundle::trivial()},
                            {fx::circle_form(), FlatBundle::generic()},
                            {fx::torus_factor_form(), FlatBundle::generic()}};
    for (const auto& c : cases) {
        auto sd = barycentric_subdivide(c.form.pair());
        auto before = cup_length_bound(c.form, c.bundle);
        auto after = cup_length_bound(transport(c.form, sd), c.bundle);
        CHECK(before.lower_bound == after.lower_bound);
        CHECK(verify_witness(transport(c.form, sd), c.bundle, after).ok());
    }
}

TEST_CASE("inequality report")
{
    auto rows = fx::inequality_rows();
    auto report = inequality_report(rows);
    CHECK(report.flags == 0);
    InequalityRow corrupted{"corrupted", "bound", "injected", std::nullopt, {}, 0, 5, 2, std::nullopt};
    rows.push_back(corrupted);
    auto bad = inequality_report(rows);
    CHECK(bad.flags == 1);
    CHECK(bad.rows.back().flagged());
}
