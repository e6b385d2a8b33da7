// Rank-one flat bundles given by their monodromy on H = Z^r, and the twisted
// cochain complexes they define.
//
// The generic bundle sends the i-th deck generator to the formal variable t_i;
// its cohomology is computed over Q(t_1..t_r) by fraction-free elimination in
// the Laurent ring. A numeric bundle fixes the monodromy values.
#pragma once

#include "relcat/cochain.hpp"
#include "relcat/complex.hpp"
#include "relcat/laurent.hpp"
#include "relcat/one_form.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace relcat {

/// A monodromy value: a rational number, or the root of unity exp(2 pi i k / n).
struct MonodromyValue {
    Rational rational = 1;
    std::optional<std::pair<long, long>> root;  // (k, n), 0 <= k < n

    static MonodromyValue of(const Rational& q) { return MonodromyValue{q, std::nullopt}; }
    static MonodromyValue root_of_unity(long k, long n)
    {
        if (n <= 0)
            throw ValidationError("root of unity needs a positive order");
        k = ((k % n) + n) % n;
        if (k == 0)
            return of(1);
        if (2 * k == n)
            return of(-1);
        long g = std::gcd(k, n);
        return MonodromyValue{1, std::make_pair(k / g, n / g)};
    }

    bool is_root_of_unity() const { return root.has_value() || rational == 1 || rational == -1; }

    MonodromyValue inverse() const
    {
        if (root)
            return root_of_unity(root->second - root->first, root->second);
        return of(Rational(1) / rational);
    }

    std::string str() const
    {
        if (root)
            return "zeta(" + std::to_string(root->first) + "/" + std::to_string(root->second) + ")";
        return to_string(rational);
    }

    friend bool operator==(const MonodromyValue& a, const MonodromyValue& b)
    {
        return a.rational == b.rational && a.root == b.root;
    }
};

/// Parses "p/q", a decimal, or "zeta(k/n)".
inline MonodromyValue parse_monodromy(const std::string& s)
{
    if (s.rfind("zeta(", 0) == 0 && s.back() == ')') {
        std::string inner = s.substr(5, s.size() - 6);
        auto slash = inner.find('/');
        if (slash == std::string::npos)
            throw ParseError("bad root of unity '" + s + "'");
        return MonodromyValue::root_of_unity(std::stol(inner.substr(0, slash)), std::stol(inner.substr(slash + 1)));
    }
    Rational q = parse_rational(s);
    if (q == 0)
        throw ValidationError("monodromy value 0 is not a unit");
    return MonodromyValue::of(q);
}

struct FlatBundle {
    enum class Kind { Generic, Numeric, Trivial };

    Kind kind = Kind::Generic;
    std::vector<MonodromyValue> values;  // numeric only, one per deck generator
    bool dual = false;

    static FlatBundle generic() { return FlatBundle{Kind::Generic, {}, false}; }
    static FlatBundle trivial() { return FlatBundle{Kind::Trivial, {}, false}; }
    static FlatBundle numeric(std::vector<MonodromyValue> values)
    {
        return FlatBundle{Kind::Numeric, std::move(values), false};
    }

    /// Monodromy values with the dual flag applied.
    std::vector<MonodromyValue> effective_values() const
    {
        std::vector<MonodromyValue> out;
        for (const auto& v : values)
            out.push_back(dual ? v.inverse() : v);
        return out;
    }

    std::string describe() const
    {
        switch (kind) {
        case Kind::Generic:
            return dual ? "generic-dual" : "generic";
        case Kind::Trivial:
            return "trivial";
        case Kind::Numeric:
            break;
        }
        std::string s = "numeric(";
        auto vals = effective_values();
        for (std::size_t i = 0; i < vals.size(); ++i)
            s += (i ? "," : "") + vals[i].str();
        return s + ")";
    }

    friend bool operator==(const FlatBundle& a, const FlatBundle& b)
    {
        return a.kind == b.kind && a.values == b.values && a.dual == b.dual;
    }
};

inline FlatBundle dual(const FlatBundle& b)
{
    FlatBundle out = b;
    if (b.kind == FlatBundle::Kind::Generic)
        out.dual = !b.dual;
    else if (b.kind == FlatBundle::Kind::Numeric)
        for (auto& v : out.values)
            v = v.inverse();
    return out;
}

enum class BundleClass { Transcendental, Algebraic, Unknown };

inline std::string to_string(BundleClass c)
{
    switch (c) {
    case BundleClass::Transcendental:
        return "transcendental";
    case BundleClass::Algebraic:
        return "algebraic";
    case BundleClass::Unknown:
        break;
    }
    return "unknown";
}

struct Classification {
    BundleClass verdict = BundleClass::Unknown;
    std::string witness;
};

/// `rank` is r = rank of H; the trivial bundle is transcendental exactly when r = 0.
inline Classification classify(const FlatBundle& b, std::size_t rank, int search_depth = 6)
{
    switch (b.kind) {
    case FlatBundle::Kind::Generic:
        return {BundleClass::Transcendental, "monomials t^g are linearly independent"};
    case FlatBundle::Kind::Trivial:
        if (rank == 0)
            return {BundleClass::Transcendental, "H = 0: Z[H] = Z maps injectively"};
        return {BundleClass::Algebraic, "Mon(e_1) = 1 kills e_1 - 1"};
    case FlatBundle::Kind::Numeric:
        break;
    }
    if (b.values.size() != rank)
        throw ValidationError("bundle has " + std::to_string(b.values.size()) + " monodromy values but r = " +
                              std::to_string(rank));
    if (rank == 0)
        return {BundleClass::Transcendental, "H = 0: Z[H] = Z maps injectively"};
    auto vals = b.effective_values();
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i].is_root_of_unity()) {
            long order = vals[i].root ? vals[i].root->second : (vals[i].rational == 1 ? 1 : 2);
            return {BundleClass::Algebraic, "Mon(e_" + std::to_string(i + 1) + ") = " + vals[i].str() +
                                                " is a root of unity: e_" + std::to_string(i + 1) + "^" +
                                                std::to_string(order) + " - 1 is in the kernel"};
        }
    // Bounded search for a multiplicative relation prod q_i^{e_i} = 1.
    std::vector<int> e(vals.size(), -search_depth);
    while (true) {
        bool nonzero = std::any_of(e.begin(), e.end(), [](int x) { return x != 0; });
        if (nonzero) {
            Rational prod = 1;
            for (std::size_t i = 0; i < vals.size(); ++i) {
                Rational base = e[i] < 0 ? Rational(1) / vals[i].rational : vals[i].rational;
                for (int k = 0; k < std::abs(e[i]); ++k)
                    prod *= base;
            }
            if (prod == 1) {
                std::string w = "multiplicative relation with exponents (";
                for (std::size_t i = 0; i < e.size(); ++i)
                    w += (i ? "," : "") + std::to_string(e[i]);
                return {BundleClass::Algebraic, w + ")"};
            }
        }
        std::size_t i = 0;
        while (i < e.size() && e[i] == search_depth)
            e[i++] = -search_depth;
        if (i == e.size())
            break;
        ++e[i];
    }
    return {BundleClass::Unknown, "no relation with exponents up to " + std::to_string(search_depth)};
}

/// The generic twisted cochain complex over Q(t_1..t_r), r <= 3.
inline CochainComplex<LaurentPoly> generic_twisted_complex(const SimplicialPair& pair, const DeckLabeling& labeling,
                                                           bool relative, bool dual = false)
{
    if (labeling.rank > kMaxLaurentVars)
        throw std::domain_error("exact function-field mode supports r <= 3 (got r = " + std::to_string(labeling.rank) +
                                "); use the numeric surrogate mode");
    auto lab = labeling;
    return CochainComplex<LaurentPoly>(pair, relative, [lab, dual](int a, int b) {
        auto g = lab.label(a, b);
        if (dual)
            for (auto& x : g)
                x = -x;
        return LaurentPoly::deck(g);
    });
}

/// Twisted complex for rational monodromy values (t_i := values[i]).
inline CochainComplex<Rational> rational_twisted_complex(const SimplicialPair& pair, const DeckLabeling& labeling,
                                                         const std::vector<Rational>& values, bool relative)
{
    if (values.size() != labeling.rank)
        throw ValidationError("need one monodromy value per deck generator");
    auto lab = labeling;
    return CochainComplex<Rational>(pair, relative, [lab, values](int a, int b) {
        auto g = lab.label(a, b);
        Rational m = 1;
        for (std::size_t i = 0; i < g.size(); ++i) {
            Rational base = g[i] < 0 ? Rational(1) / values[i] : values[i];
            for (int k = 0; k < std::abs(g[i]); ++k)
                m *= base;
        }
        return m;
    });
}

inline CochainComplex<Rational> untwisted_complex(const SimplicialPair& pair, bool relative)
{
    return CochainComplex<Rational>(pair, relative);
}

struct TwistedCohomology {
    std::vector<std::size_t> ranks;        // by degree 0..dim
    std::string coefficient_mode;          // function-field | rational | complex-surrogate
    std::vector<std::vector<std::string>> representatives;  // by degree; entries are "simplex:value"
    std::vector<std::vector<Rational>> evaluation_points;   // surrogate mode only
    bool cross_check_agreed = true;
};

namespace detail {

template <class R>
std::vector<std::string> describe_cochain(const SimplicialPair& p, int k, const Vector<R>& c)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (is_zero(c[i]))
            continue;
        std::string v;
        if constexpr (std::is_same_v<R, Rational>)
            v = to_string(c[i]);
        else
            v = c[i].str();
        out.push_back(simplex_str(p.simplices(k)[i]) + ":" + v);
    }
    return out;
}

template <class R>
TwistedCohomology summarize(const CochainComplex<R>& cc, std::string mode)
{
    TwistedCohomology out;
    out.coefficient_mode = mode;
    for (int k = 0; k <= cc.pair().dimension(); ++k) {
        auto basis = cc.cohomology_basis(k, mode);
        out.ranks.push_back(basis.rank());
        std::vector<std::string> reps;
        for (const auto& z : basis.representatives) {
            std::string line;
            for (const auto& term : describe_cochain(cc.pair(), k, z))
                line += (line.empty() ? "" : " ") + term;
            reps.push_back(line);
        }
        out.representatives.push_back(std::move(reps));
    }
    return out;
}

inline std::vector<Rational> random_point(std::size_t r, std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(2, 997), den(1, 97);
    std::bernoulli_distribution neg(0.5);
    std::vector<Rational> pt;
    for (std::size_t i = 0; i < r; ++i) {
        Rational q = Rational(num(rng)) / Rational(den(rng));
        if (q == 1)
            q = Rational(3, 2);
        pt.push_back(neg(rng) ? Rational(-q) : q);
    }
    return pt;
}

}  // namespace detail

/// Random-specialization surrogate: ranks at two independent random rational points.
/// Cohomology ranks can only jump up under specialization, so the minimum is reported.
inline TwistedCohomology surrogate_twisted_cohomology(const SimplicialPair& pair, const DeckLabeling& labeling,
                                                      bool relative, std::uint64_t seed, bool dual = false)
{
    std::mt19937_64 rng(seed);
    TwistedCohomology out;
    out.coefficient_mode = "complex-surrogate";
    std::vector<std::vector<std::size_t>> runs;
    for (int trial = 0; trial < 2; ++trial) {
        auto pt = detail::random_point(labeling.rank, rng);
        if (dual)
            for (auto& q : pt)
                q = Rational(1) / q;
        out.evaluation_points.push_back(pt);
        auto cc = rational_twisted_complex(pair, labeling, pt, relative);
        std::vector<std::size_t> ranks;
        for (int k = 0; k <= pair.dimension(); ++k)
            ranks.push_back(cc.cohomology_rank(k));
        runs.push_back(std::move(ranks));
    }
    out.cross_check_agreed = runs[0] == runs[1];
    for (std::size_t k = 0; k < runs[0].size(); ++k)
        out.ranks.push_back(std::min(runs[0][k], runs[1][k]));
    out.representatives.assign(out.ranks.size(), {});
    return out;
}

/// Twisted cohomology of (X,B) (or X) for the given bundle, all degrees.
inline TwistedCohomology twisted_cohomology(const SimplicialPair& pair, const DeckLabeling& labeling,
                                            const FlatBundle& bundle, bool relative)
{
    switch (bundle.kind) {
    case FlatBundle::Kind::Trivial:
        return detail::summarize(untwisted_complex(pair, relative), "rational");
    case FlatBundle::Kind::Generic:
        if (labeling.rank == 0)
            return detail::summarize(untwisted_complex(pair, relative), "rational");
        return detail::summarize(generic_twisted_complex(pair, labeling, relative, bundle.dual), "function-field");
    case FlatBundle::Kind::Numeric:
        break;
    }
    auto vals = bundle.effective_values();
    if (vals.size() != labeling.rank)
        throw ValidationError("bundle has " + std::to_string(vals.size()) + " monodromy values but r = " +
                              std::to_string(labeling.rank));
    std::vector<Rational> qs;
    for (const auto& v : vals) {
        if (v.root)
            throw std::domain_error("cohomology with non-real roots of unity is not supported");
        qs.push_back(v.rational);
    }
    return detail::summarize(rational_twisted_complex(pair, labeling, qs, relative), "rational");
}

}  // namespace relcat
