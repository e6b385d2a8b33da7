#include "relcat/cochain.hpp"
#include "relcat/complex.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace relcat;

namespace {

SimplicialPair c3() { return build_pair({{0, 1}, {1, 2}, {0, 2}}, {}); }
SimplicialPair interval() { return build_pair({{0, 1}}, {}); }
SimplicialPair point() { return build_pair({{0}}, {}); }

}  // namespace

TEST_CASE("build_pair closes and validates")
{
    auto p = c3();
    CHECK(p.vertex_count() == 3);
    CHECK(p.count(0) == 3);
    CHECK(p.count(1) == 3);
    CHECK(p.dimension() == 1);

    auto rel = build_pair({{0, 1}, {1, 2}, {0, 2}}, {{0}});
    CHECK(rel.b_simplices(0) == std::vector<Simplex>{{0}});
    CHECK(rel.b_simplices(1).empty());

    CHECK_THROWS_AS(build_pair({{0, 0, 1}}, {}), ValidationError);
    CHECK_THROWS_AS(build_pair({{0, 1}}, {{1, 2}}), ValidationError);
    CHECK_THROWS_AS(build_pair({{0, 5}}, {}, 3), ValidationError);

    auto tri = build_pair({{2, 0, 1}}, {});
    CHECK(tri.count(2) == 1);
    CHECK(tri.simplices(2)[0] == Simplex{0, 1, 2});
}

TEST_CASE("betti numbers of small fixtures")
{
    CHECK(betti(c3(), 0, false) == 1);
    CHECK(betti(c3(), 1, false) == 1);

    auto torus = product_pair(c3(), c3());
    CHECK(betti(torus, 0, false) == 1);
    CHECK(betti(torus, 1, false) == 2);
    CHECK(betti(torus, 2, false) == 1);
    CHECK(euler_characteristic(torus, false) == 0);

    auto i_rel = build_pair({{0, 1}}, {{0}, {1}});
    auto cyl_both = product_pair(c3(), i_rel);
    CHECK(betti(cyl_both, 0, true) == 0);
    CHECK(betti(cyl_both, 1, true) == 1);
    CHECK(betti(cyl_both, 2, true) == 1);

    auto cyl_one = product_pair(c3(), build_pair({{0, 1}}, {{0}}));
    for (int k = 0; k <= 2; ++k)
        CHECK(betti(cyl_one, k, true) == 0);
}

TEST_CASE("betti agrees with the integer Smith-form oracle")
{
    auto torus = product_pair(c3(), c3());
    auto cyl_both = product_pair(c3(), build_pair({{0, 1}}, {{0}, {1}}));
    for (const auto* p : {&torus, &cyl_both}) {
        for (int k = 0; k <= 2; ++k) {
            for (bool rel : {false, true}) {
                auto lower = oracle::integer_boundary(*p, k, rel);
                auto upper = oracle::integer_boundary(*p, k + 1, rel);
                long dim = static_cast<long>(p->basis_indices(k, rel).size());
                long expected = dim - oracle::smith_rank(lower) - oracle::smith_rank(upper);
                CHECK(static_cast<long>(betti(*p, k, rel)) == expected);
            }
        }
    }
}

TEST_CASE("product pair counts")
{
    auto cyl = product_pair(c3(), interval());
    CHECK(cyl.vertex_count() == 6);
    CHECK(euler_characteristic(cyl, false) == 0);
    CHECK(cyl.count(2) == 6);

    auto pc = product_pair(point(), c3());
    CHECK(pc.count(0) == 3);
    CHECK(pc.count(1) == 3);
    CHECK(pc.dimension() == 1);
    CHECK(pc == c3());
}

TEST_CASE("relative Euler characteristic is additive")
{
    auto cyl = product_pair(c3(), build_pair({{0, 1}}, {{0}}));
    CHECK(euler_characteristic(cyl.absolute(), false) ==
          euler_characteristic(cyl.b_pair(), false) + euler_characteristic(cyl, true));
}

TEST_CASE("barycentric subdivision")
{
    auto sd = barycentric_subdivide(c3());
    CHECK(sd.pair.count(0) == 6);
    CHECK(sd.pair.count(1) == 6);

    auto tri = barycentric_subdivide(build_pair({{0, 1, 2}}, {}));
    CHECK(tri.pair.count(0) == 7);
    CHECK(tri.pair.count(2) == 6);
    for (int v = 0; v < 3; ++v)
        CHECK(tri.carrier[static_cast<std::size_t>(v)] == Simplex{v});

    auto torus = product_pair(c3(), c3());
    auto sdt = barycentric_subdivide(torus);
    for (int k = 0; k <= 2; ++k)
        CHECK(betti(sdt.pair, k, false) == betti(torus, k, false));

    auto cyl = product_pair(c3(), build_pair({{0, 1}}, {{0}, {1}}));
    auto sdc = barycentric_subdivide(cyl);
    for (int k = 0; k <= 2; ++k)
        CHECK(betti(sdc.pair, k, true) == betti(cyl, k, true));
}

TEST_CASE("boundary and coboundary square to zero")
{
    auto torus = product_pair(c3(), c3());
    CHECK((boundary_matrix(torus, 1) * boundary_matrix(torus, 2)).is_zero_matrix());

    CochainComplex<Rational> cc(torus, false);
    CHECK((cc.coboundary(1) * cc.coboundary(0)).is_zero_matrix());
    CHECK(cc.coboundary(0) == boundary_matrix(torus, 1).transpose());
    CHECK(cc.cohomology_rank(1) == 2);
    auto basis = cc.cohomology_basis(1);
    REQUIRE(basis.rank() == 2);
    for (const auto& z : basis.representatives)
        CHECK(cc.is_cocycle(1, z));
}
