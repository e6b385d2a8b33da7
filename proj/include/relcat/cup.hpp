// Alexander-Whitney cup products H^p(X,B;L) x H^q(X;Q) -> H^{p+q}(X,B;L),
// the top-degree evaluation pairing, and the cup-length lower bound.
//
// Reported bounds are sound: a bound k+1 is emitted only together with a
// product v0 u v1 u ... u vk that is a nonzero twisted relative class, and
// verify_witness re-checks that product along a separate path (direct
// multi-fold evaluation plus pairing with cycles of the dual system).
#pragma once

#include "relcat/cochain.hpp"
#include "relcat/complex.hpp"
#include "relcat/local_system.hpp"
#include "relcat/one_form.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace relcat {

/// (u cup v)[v0..v_{p+q}] = u[v0..vp] * v[vp..v_{p+q}]
template <class R>
Vector<R> cup(const SimplicialPair& pair, int p, const Vector<R>& u, int q, const Vector<Rational>& v)
{
    if (u.size() != pair.count(p) || v.size() != pair.count(q))
        throw std::invalid_argument("cup: cochains do not belong to this complex");
    Vector<R> out(pair.count(p + q), R(0));
    const auto& top = pair.simplices(p + q);
    for (std::size_t i = 0; i < top.size(); ++i) {
        const Simplex& s = top[i];
        Simplex front(s.begin(), s.begin() + p + 1);
        Simplex back(s.begin() + p, s.end());
        const R& a = u[*pair.index_of(front)];
        const Rational& b = v[*pair.index_of(back)];
        if (!is_zero(a) && b != 0)
            out[i] = a * R(b);
    }
    return out;
}

/// Sum over d-simplices of v(sigma) * z(sigma).
template <class R>
R pairing(const SimplicialPair& pair, int cochain_degree, const Vector<R>& v, int chain_degree, const Vector<R>& z)
{
    if (cochain_degree != chain_degree)
        throw std::invalid_argument("pairing: degree mismatch (" + std::to_string(cochain_degree) + " vs " +
                                    std::to_string(chain_degree) + ")");
    if (v.size() != pair.count(cochain_degree) || z.size() != v.size())
        throw std::invalid_argument("pairing: vectors do not belong to this complex");
    R total(0);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!is_zero(v[i]) && !is_zero(z[i]))
            total += v[i] * z[i];
    return total;
}

template <class R>
struct CupWitness {
    int d0 = 0;
    Vector<R> v0;
    std::vector<int> degrees;                 // d_1..d_k
    std::vector<Vector<Rational>> factors;    // v_1..v_k, untwisted absolute cocycles
    Vector<R> product;                        // v0 u v1 u ... u vk, degree d
    std::size_t v0_index = 0;
    std::vector<std::size_t> factor_indices;  // into the positive-degree untwisted basis list

    int total_degree() const
    {
        int d = d0;
        for (int x : degrees)
            d += x;
        return d;
    }
};

struct CupBoundResult {
    std::size_t k = 0;
    std::size_t lower_bound = 0;  // k + 1 when a nonzero twisted relative class exists, else 0
    bool found = false;
    std::string bundle;
    std::string coefficient_mode;
    std::size_t r = 0;
    std::vector<std::size_t> twisted_ranks;    // H^*(X,B;L)
    std::vector<std::size_t> untwisted_ranks;  // H^*(X;Q)
    std::variant<std::monostate, CupWitness<Rational>, CupWitness<LaurentPoly>> witness;

    std::vector<int> witness_degrees() const
    {
        return std::visit(
            [](const auto& w) -> std::vector<int> {
                if constexpr (std::is_same_v<std::decay_t<decltype(w)>, std::monostate>)
                    return {};
                else {
                    std::vector<int> d{w.d0};
                    d.insert(d.end(), w.degrees.begin(), w.degrees.end());
                    return d;
                }
            },
            witness);
    }
};

class NotTranscendentalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

struct UntwistedClass {
    int degree;
    std::size_t index;  // within the degree
    Vector<Rational> cocycle;
};

template <class R>
struct SearchCandidate {
    std::size_t v0;                    // index into twisted class list
    std::vector<std::size_t> factors;  // indices into untwisted list, non-decreasing
    int total_degree;
};

template <class R>
CupBoundResult search_cup_length(const CochainComplex<R>& twisted, const CochainComplex<Rational>& untwisted)
{
    const SimplicialPair& pair = twisted.pair();
    const int dim = pair.dimension();
    CupBoundResult out;
    struct TwistedClass {
        int degree;
        std::size_t index;
        Vector<R> cocycle;
    };
    std::vector<TwistedClass> tw;
    // Relative factor first, higher degree first.
    for (int d = dim; d >= 0; --d) {
        auto basis = twisted.cohomology_basis(d);
        out.twisted_ranks.insert(out.twisted_ranks.begin(), basis.rank());
        for (std::size_t i = 0; i < basis.rank(); ++i)
            tw.push_back({d, i, basis.representatives[i]});
    }
    std::vector<UntwistedClass> un;
    for (int d = 0; d <= dim; ++d) {
        auto basis = untwisted.cohomology_basis(d);
        out.untwisted_ranks.push_back(basis.rank());
        if (d == 0)
            continue;
        for (std::size_t i = 0; i < basis.rank(); ++i)
            un.push_back({d, i, basis.representatives[i]});
    }
    if (tw.empty())
        return out;

    auto evaluate = [&](const SearchCandidate<R>& c) -> std::optional<CupWitness<R>> {
        CupWitness<R> w;
        w.v0_index = c.v0;
        w.d0 = tw[c.v0].degree;
        w.v0 = tw[c.v0].cocycle;
        Vector<R> cur = w.v0;
        int deg = w.d0;
        for (auto f : c.factors) {
            cur = cup(pair, deg, cur, un[f].degree, un[f].cocycle);
            deg += un[f].degree;
            w.degrees.push_back(un[f].degree);
            w.factors.push_back(un[f].cocycle);
            w.factor_indices.push_back(f);
        }
        if (is_zero_vector(cur) || twisted.is_coboundary(deg, cur))
            return std::nullopt;
        w.product = std::move(cur);
        return w;
    };

    // Greedy pass: extend each v0 by the first factor that keeps the product nonzero.
    std::optional<CupWitness<R>> best;
    for (std::size_t i = 0; i < tw.size(); ++i) {
        SearchCandidate<R> c{i, {}, tw[i].degree};
        auto current = evaluate(c);
        if (!current)
            continue;
        bool extended = true;
        while (extended) {
            extended = false;
            std::size_t start = c.factors.empty() ? 0 : c.factors.back();
            for (std::size_t f = start; f < un.size(); ++f) {
                if (c.total_degree + un[f].degree > dim)
                    continue;
                SearchCandidate<R> next = c;
                next.factors.push_back(f);
                next.total_degree += un[f].degree;
                if (auto w = evaluate(next)) {
                    c = next;
                    current = std::move(w);
                    extended = true;
                    break;
                }
            }
        }
        if (!best || current->factors.size() > best->factors.size())
            best = std::move(current);
    }
    if (!best)
        return out;

    // Exhaustive pass over longer products, longest first.
    const std::size_t greedy_k = best->factors.size();
    for (std::size_t k = static_cast<std::size_t>(dim); k > greedy_k; --k) {
        std::vector<SearchCandidate<R>> cands;
        for (std::size_t i = 0; i < tw.size(); ++i) {
            std::vector<std::size_t> idx(k, 0);
            if (un.empty())
                break;
            while (true) {
                int total = tw[i].degree;
                for (auto f : idx)
                    total += un[f].degree;
                if (total <= dim)
                    cands.push_back({i, idx, total});
                // Next non-decreasing index tuple.
                std::size_t pos = k;
                while (pos > 0 && idx[pos - 1] == un.size() - 1)
                    --pos;
                if (pos == 0)
                    break;
                ++idx[pos - 1];
                for (std::size_t t = pos; t < k; ++t)
                    idx[t] = idx[pos - 1];
            }
        }
        std::stable_sort(cands.begin(), cands.end(),
                         [](const auto& a, const auto& b) { return a.total_degree > b.total_degree; });
        for (const auto& c : cands)
            if (auto w = evaluate(c)) {
                best = std::move(w);
                break;
            }
        if (best->factors.size() == k)
            break;
    }
    out.found = true;
    out.k = best->factors.size();
    out.lower_bound = out.k + 1;
    out.witness = std::move(*best);
    return out;
}

}  // namespace detail

/// Cup-length lower bound for cat(X,B,xi) from a bundle certified xi-transcendental.
inline CupBoundResult cup_length_bound(const OneForm& form, const FlatBundle& bundle)
{
    const SimplicialPair& pair = form.pair();
    DeckLabeling labeling = deck_labeling(form);
    auto cls = classify(bundle, labeling.rank);
    if (cls.verdict != BundleClass::Transcendental)
        throw NotTranscendentalError("bundle " + bundle.describe() + " is " + to_string(cls.verdict) +
                                     ", not certified xi-transcendental; no bound is derived from it");
    auto untwisted = untwisted_complex(pair.absolute(), false);
    CupBoundResult out;
    if (labeling.rank == 0) {
        // H = 0: every bundle is trivial.
        out = detail::search_cup_length(untwisted_complex(pair, true), untwisted);
        out.coefficient_mode = "rational";
    }
    else {
        out = detail::search_cup_length(generic_twisted_complex(pair, labeling, true, bundle.dual), untwisted);
        out.coefficient_mode = "function-field";
    }
    out.r = labeling.rank;
    out.bundle = bundle.describe();
    return out;
}

struct WitnessCheck {
    bool applicable = false;     // false when there is no witness
    bool product_matches = false;
    bool vanishes_on_b = false;
    bool cocycle = false;
    bool pairs_nonzero = false;
    std::string pairing_value;

    bool ok() const { return !applicable || (product_matches && vanishes_on_b && cocycle && pairs_nonzero); }
};

namespace detail {

/// (v0 u v1 u ... u vk)(sigma), evaluated directly on consecutive faces of sigma.
template <class R>
Vector<R> direct_product(const SimplicialPair& pair, const CupWitness<R>& w)
{
    const int d = w.total_degree();
    const auto& top = pair.simplices(d);
    Vector<R> out(top.size(), R(0));
    for (std::size_t i = 0; i < top.size(); ++i) {
        const Simplex& s = top[i];
        R value = w.v0[*pair.index_of(Simplex(s.begin(), s.begin() + w.d0 + 1))];
        int start = w.d0;
        for (std::size_t f = 0; f < w.factors.size() && !is_zero(value); ++f) {
            int end = start + w.degrees[f];
            Simplex piece(s.begin() + start, s.begin() + end + 1);
            value *= R(w.factors[f][*pair.index_of(piece)]);
            start = end;
        }
        out[i] = value;
    }
    return out;
}

template <class R>
std::string value_str(const R& x)
{
    if constexpr (std::is_same_v<R, Rational>)
        return to_string(x);
    else
        return x.str();
}

template <class R>
WitnessCheck check_witness(const CochainComplex<R>& twisted, const CupWitness<R>& w)
{
    const SimplicialPair& pair = twisted.pair();
    WitnessCheck c;
    c.applicable = true;
    const int d = w.total_degree();
    Vector<R> prod = direct_product(pair, w);
    c.product_matches = prod == w.product;
    c.vanishes_on_b = twisted.vanishes_on_b(d, prod);
    c.cocycle = is_zero_vector(twisted.apply(d, prod));
    // Relative d-cycles of the dual system are the kernel of the transposed coboundary d_{d-1}.
    auto rel = pair.relative_indices(d);
    Matrix<R> dt = twisted.reduced_coboundary(d - 1).transpose();
    Vector<R> pr;
    for (auto i : rel)
        pr.push_back(prod[i]);
    for (const auto& z : kernel_basis(dt)) {
        R val(0);
        for (std::size_t j = 0; j < z.size(); ++j)
            if (!is_zero(z[j]) && !is_zero(pr[j]))
                val += z[j] * pr[j];
        if (!is_zero(val)) {
            c.pairs_nonzero = true;
            c.pairing_value = value_str(val);
            break;
        }
    }
    return c;
}

}  // namespace detail

/// Re-verifies a reported witness without using the search code.
inline WitnessCheck verify_witness(const OneForm& form, const FlatBundle& bundle, const CupBoundResult& result)
{
    const SimplicialPair& pair = form.pair();
    if (std::holds_alternative<CupWitness<Rational>>(result.witness)) {
        CochainComplex<Rational> cc(pair, true);
        return detail::check_witness(cc, std::get<CupWitness<Rational>>(result.witness));
    }
    if (std::holds_alternative<CupWitness<LaurentPoly>>(result.witness)) {
        auto cc = generic_twisted_complex(pair, deck_labeling(form), true, bundle.dual);
        return detail::check_witness(cc, std::get<CupWitness<LaurentPoly>>(result.witness));
    }
    return WitnessCheck{};
}

/// Relative fundamental cycles: a basis of the top-degree relative cycles of (X,B).
inline std::vector<Vector<Rational>> top_relative_cycles(const SimplicialPair& pair)
{
    const int d = pair.dimension();
    auto cs = chain_space(pair, d, true);
    std::vector<Vector<Rational>> out;
    for (const auto& z : kernel_basis(cs.boundary)) {
        Vector<Rational> full(pair.count(d), Rational(0));
        for (std::size_t j = 0; j < cs.basis.size(); ++j)
            full[cs.basis[j]] = z[j];
        out.push_back(std::move(full));
    }
    return out;
}

}  // namespace relcat
