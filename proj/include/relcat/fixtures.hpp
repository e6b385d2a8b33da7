// Small named complexes and forms with analytically known category values.
#pragma once

#include "relcat/complex.hpp"
#include "relcat/cup.hpp"
#include "relcat/inequality.hpp"
#include "relcat/local_system.hpp"
#include "relcat/one_form.hpp"

#include <map>
#include <string>
#include <vector>

namespace relcat::fixtures {

inline constexpr int kFixtureVersion = 2;

enum class Ends { None, One, Both };

/// The boundary of an n-gon, n >= 3.
inline SimplicialPair circle(int n = 3)
{
    std::vector<Simplex> raw;
    for (int i = 0; i < n; ++i)
        raw.push_back({i, (i + 1) % n});
    return build_pair(raw, {});
}

inline SimplicialPair interval(Ends ends = Ends::None)
{
    std::vector<Simplex> b;
    if (ends != Ends::None)
        b.push_back({0});
    if (ends == Ends::Both)
        b.push_back({1});
    return build_pair({{0, 1}}, b);
}

inline SimplicialPair point() { return build_pair({{0}}, {}); }
inline SimplicialPair filled_triangle() { return build_pair({{0, 1, 2}}, {}); }
inline SimplicialPair torus() { return product_pair(circle(), circle()); }
inline SimplicialPair cylinder(Ends ends) { return product_pair(circle(), interval(ends)); }

/// The form with value `per_edge` on every edge i -> i+1 of circle(n).
inline OneForm circle_form(int n = 3, const Rational& per_edge = 1)
{
    std::map<std::pair<int, int>, FormValue> edges;
    for (int i = 0; i < n; ++i)
        edges[{i, (i + 1) % n}] = FormValue::scalar(per_edge);
    return OneForm::from_edges(circle(n), edges);
}

/// Pullback of circle_form() along the first (or second) projection of the torus.
inline OneForm torus_factor_form(bool first = true)
{
    return pullback_to_product(circle_form(), torus(), 3, first);
}

/// A rank-2 class on the torus: periods (1, sqrt 2) on the two factor loops.
inline OneForm torus_irrational_form()
{
    auto a = torus_factor_form(true), b = torus_factor_form(false);
    std::vector<FormValue> vals;
    for (std::size_t e = 0; e < a.edge_values().size(); ++e)
        vals.push_back(FormValue({a.edge_values()[e][0], b.edge_values()[e][0]}));
    return OneForm(a.shared_pair(), vals);
}

inline std::size_t bound_of(const OneForm& w, const FlatBundle& b) { return cup_length_bound(w, b).lower_bound; }

/// Rows with tabulated values; lower bounds are computed on the spot.
inline std::vector<InequalityRow> inequality_rows()
{
    const auto trivial = FlatBundle::trivial();
    const auto generic = FlatBundle::generic();
    const long torus0 = static_cast<long>(bound_of(OneForm::zero(torus()), trivial));
    const long cyl_both = static_cast<long>(bound_of(OneForm::zero(cylinder(Ends::Both)), trivial));
    const long cyl_one = static_cast<long>(bound_of(OneForm::zero(cylinder(Ends::One)), trivial));
    const long circ_xi = static_cast<long>(bound_of(circle_form(), generic));
    const long circ_0 = static_cast<long>(bound_of(OneForm::zero(circle()), trivial));
    const long rel_i = static_cast<long>(bound_of(OneForm::zero(interval(Ends::Both)), trivial));
    const long torus_xi = static_cast<long>(bound_of(torus_factor_form(), generic));

    std::vector<InequalityRow> rows;
    rows.push_back({"T2 xi=0, B=A=empty", "relative_triangle",
                    "classical cup-length 3 and category 3 of the 2-torus; cat of the empty pair is 0", 3, {3, 0}, 0,
                    torus0, 3, std::nullopt});
    rows.push_back({"T2 xi=0, B=empty", "absolute_corollary", "as above", 3, {3, 0}, 0, std::nullopt, std::nullopt,
                    std::nullopt});
    rows.push_back({"T2 = S1 x S1, xi=0", "product", "cat(S1,0) = 2 on each factor", 3, {2, 2}, -1, std::nullopt,
                    std::nullopt, std::nullopt});
    rows.push_back({"cylinder rel one end, xi=0", "absolute_corollary",
                    "the cylinder deformation retracts onto the chosen end, so cat(X,B,0) = 0; cat(S1 x I,0) = 2",
                    2, {0, 2}, 0, cyl_one, 0, std::nullopt});
    rows.push_back({"(S1,empty) x (I,{0}), xi=0", "product", "cat(I,{0},0) = 0 since I retracts to 0", 0, {2, 0}, -1,
                    std::nullopt, std::nullopt, std::nullopt});
    rows.push_back({"cylinder rel both ends, xi=0", "product",
                    "(S1,empty) x (I,dI): cat(S1,0) = 2, cat(I,dI,0) = 1; cat of the pair is 2", 2, {2, 1}, -1,
                    cyl_both, 2, std::nullopt});
    rows.push_back({"cylinder, A = one end, B = both ends", "relative_triangle",
                    "cat(X,A) = 0; cat(X,B) = 2; B = A + free circle gives cat(B,A) = 2", 0, {2, 2}, 0, std::nullopt,
                    std::nullopt, std::nullopt});
    rows.push_back({"circle, xi != 0", "absolute_corollary",
                    "a nonzero class makes the whole circle movable, cat(S1,xi) = 0", 0, {0, 0}, 0, circ_xi, 0,
                    std::nullopt});
    rows.push_back({"circle, xi = 0", "bound", "classical cat(S1) = 2", std::nullopt, {}, 0, circ_0, 2, std::nullopt});
    rows.push_back({"(I, dI), xi = 0", "absolute_corollary",
                    "cat(I,dI,0) = 1 (a neighbourhood of the midpoint is needed); cat(I) = 1; cat(two points) = 2", 1,
                    {1, 2}, 0, rel_i, 1, std::nullopt});
    rows.push_back({"T2, xi = first factor", "bound",
                    "product inequality: cat(S1,xi) + cat(S1,0) - 1 = 0 + 2 - 1 = 1 is an upper bound", std::nullopt,
                    {}, 0, torus_xi, std::nullopt, 1});
    return rows;
}

}  // namespace relcat::fixtures
