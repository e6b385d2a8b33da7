#include "relcat/fixtures.hpp"
#include "relcat/local_system.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace relcat;
namespace fx = relcat::fixtures;

namespace {

long oracle_cohomology(const SimplicialPair& p, const DeckLabeling& lab, int k, bool rel)
{
    auto label = [&](int a, int b) { return lab.rank ? lab.label(a, b)[0] : 0; };
    long dim = static_cast<long>(p.basis_indices(k, rel).size());
    return dim - oracle::bareiss_rank(oracle::twisted_coboundary(p, k, rel, label)) -
           oracle::bareiss_rank(oracle::twisted_coboundary(p, k - 1, rel, label));
}

}  // namespace

TEST_CASE("classification")
{
    CHECK(classify(FlatBundle::generic(), 1).verdict == BundleClass::Transcendental);
    CHECK(classify(FlatBundle::numeric({MonodromyValue::of(-1)}), 1).verdict == BundleClass::Algebraic);
    CHECK(classify(FlatBundle::numeric({MonodromyValue::of(Rational(3, 2))}), 1).verdict == BundleClass::Unknown);
    CHECK(classify(FlatBundle::numeric({parse_monodromy("zeta(1/5)")}), 1).verdict == BundleClass::Algebraic);
    CHECK(classify(FlatBundle::numeric({MonodromyValue::of(2), MonodromyValue::of(Rational(1, 4))}), 2).verdict ==
          BundleClass::Algebraic);
    CHECK(classify(FlatBundle::trivial(), 0).verdict == BundleClass::Transcendental);
    CHECK(classify(FlatBundle::trivial(), 1).verdict == BundleClass::Algebraic);
}

TEST_CASE("duals")
{
    auto g = FlatBundle::generic();
    CHECK(dual(g).dual);
    CHECK(dual(dual(g)) == g);
    auto m = FlatBundle::numeric({MonodromyValue::of(-1)});
    CHECK(dual(m).values[0] == MonodromyValue::of(-1));
    auto h = FlatBundle::numeric({MonodromyValue::of(Rational(3, 2))});
    CHECK(dual(h).values[0] == MonodromyValue::of(Rational(2, 3)));
    auto z = FlatBundle::numeric({parse_monodromy("zeta(2/7)")});
    CHECK(dual(z).values[0].str() == "zeta(5/7)");
    CHECK(dual(dual(z)) == z);
}

TEST_CASE("twisted coboundary laws")
{
    for (const auto& w : {fx::circle_form(), fx::torus_factor_form(), fx::torus_irrational_form()}) {
        auto lab = deck_labeling(w);
        for (bool rel : {false, true}) {
            auto cc = generic_twisted_complex(w.pair(), lab, rel);
            for (int k = 0; k + 1 < w.pair().dimension(); ++k)
                CHECK((cc.coboundary(k + 1) * cc.coboundary(k)).is_zero_matrix());
            // t -> 1 recovers the untwisted coboundary
            auto plain = untwisted_complex(w.pair(), rel);
            for (int k = 0; k < w.pair().dimension(); ++k) {
                std::vector<Rational> ones(lab.rank, Rational(1));
                CHECK(cc.coboundary(k).map([&](const LaurentPoly& x) { return x.evaluate(ones); }) ==
                      plain.coboundary(k));
            }
        }
    }
}

TEST_CASE("twisted vanishing")
{
    auto c = fx::circle_form();
    auto lab = deck_labeling(c);
    auto h = twisted_cohomology(c.pair(), lab, FlatBundle::generic(), false);
    CHECK(h.ranks == std::vector<std::size_t>{0, 0});
    CHECK(h.coefficient_mode == "function-field");

    auto t = fx::torus_factor_form();
    auto ht = twisted_cohomology(t.pair(), deck_labeling(t), FlatBundle::generic(), false);
    CHECK(ht.ranks == std::vector<std::size_t>{0, 0, 0});

    auto z = OneForm::zero(fx::torus());
    auto hz = twisted_cohomology(z.pair(), deck_labeling(z), FlatBundle::trivial(), false);
    CHECK(hz.ranks == std::vector<std::size_t>{1, 2, 1});

    auto triv = twisted_cohomology(t.pair(), deck_labeling(t), FlatBundle::trivial(), false);
    CHECK(triv.ranks == std::vector<std::size_t>{1, 2, 1});

    auto num = twisted_cohomology(c.pair(), lab, FlatBundle::numeric({MonodromyValue::of(1)}), false);
    CHECK(num.ranks == std::vector<std::size_t>{1, 1});
}

TEST_CASE("twisted ranks agree with the dense Bareiss oracle")
{
    std::vector<OneForm> forms{fx::circle_form(), fx::torus_factor_form(), fx::torus_factor_form(false),
                               transport(fx::torus_factor_form(), barycentric_subdivide(fx::torus()))};
    for (const auto& w : forms) {
        auto lab = deck_labeling(w);
        for (bool rel : {false, true}) {
            auto cc = generic_twisted_complex(w.pair(), lab, rel);
            for (int k = 0; k <= w.pair().dimension(); ++k)
                CHECK(static_cast<long>(cc.cohomology_rank(k)) == oracle_cohomology(w.pair(), lab, k, rel));
        }
    }
}

TEST_CASE("Euler characteristic of twisted ranks")
{
    auto w = fx::torus_factor_form();
    auto cyl = product_pair(fx::circle(), fx::interval(fx::Ends::Both));
    auto wc = pullback_to_product(fx::circle_form(), cyl, 2, true);
    for (const auto* f : {&w, &wc}) {
        auto lab = deck_labeling(*f);
        auto h = twisted_cohomology(f->pair(), lab, FlatBundle::generic(), true);
        long chi = 0;
        for (std::size_t k = 0; k < h.ranks.size(); ++k)
            chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(h.ranks[k]);
        CHECK(chi == euler_characteristic(f->pair(), true));
    }
}

TEST_CASE("spanning tree choice does not change ranks")
{
    auto w = fx::torus_factor_form();
    auto dfs = deck_labeling(w, TreeStrategy::DepthFirst);
    auto bfs = deck_labeling(w, TreeStrategy::BreadthFirst);
    for (bool rel : {false, true}) {
        auto a = generic_twisted_complex(w.pair(), dfs, rel);
        auto b = generic_twisted_complex(w.pair(), bfs, rel);
        for (int k = 0; k <= 2; ++k)
            CHECK(a.cohomology_rank(k) == b.cohomology_rank(k));
    }
}

TEST_CASE("surrogate mode")
{
    auto w = fx::torus_irrational_form();
    auto lab = deck_labeling(w);
    auto exact = twisted_cohomology(w.pair(), lab, FlatBundle::generic(), false);
    auto sur = surrogate_twisted_cohomology(w.pair(), lab, false, 42);
    CHECK(sur.ranks == exact.ranks);
    CHECK(sur.cross_check_agreed);
    CHECK(sur.evaluation_points.size() == 2);
}
