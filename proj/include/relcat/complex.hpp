// Finite simplicial pairs (X, B) and their rational chain complexes.
#pragma once

#include "relcat/linalg.hpp"
#include "relcat/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace relcat {

/// A simplex is a strictly increasing tuple of vertex indices.
using Simplex = std::vector<int>;

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> problems)
        : std::runtime_error(join(problems)), problems_(std::move(problems))
    {
    }
    explicit ValidationError(const std::string& problem) : ValidationError(std::vector<std::string>{problem}) {}

    const std::vector<std::string>& problems() const { return problems_; }

private:
    static std::string join(const std::vector<std::string>& v)
    {
        std::string s;
        for (const auto& p : v)
            s += (s.empty() ? "" : "; ") + p;
        return s;
    }
    std::vector<std::string> problems_;
};

inline std::string simplex_str(const Simplex& s)
{
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i]);
    return out + "]";
}

/// The face of `s` obtained by deleting its i-th vertex.
inline Simplex face(const Simplex& s, std::size_t i)
{
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t k = 0; k < s.size(); ++k)
        if (k != i)
            f.push_back(s[k]);
    return f;
}

class SimplicialPair {
public:
    SimplicialPair() = default;

    std::size_t vertex_count() const { return vertex_count_; }
    /// -1 for the empty complex.
    int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }

    std::size_t count(int k) const
    {
        return (k < 0 || k > dimension()) ? 0 : by_dim_[static_cast<std::size_t>(k)].size();
    }
    const std::vector<Simplex>& simplices(int k) const
    {
        static const std::vector<Simplex> empty;
        return (k < 0 || k > dimension()) ? empty : by_dim_[static_cast<std::size_t>(k)];
    }
    std::optional<std::size_t> index_of(const Simplex& s) const
    {
        int k = static_cast<int>(s.size()) - 1;
        if (k < 0 || k > dimension())
            return std::nullopt;
        const auto& idx = index_[static_cast<std::size_t>(k)];
        auto it = idx.find(s);
        if (it == idx.end())
            return std::nullopt;
        return it->second;
    }
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    bool in_b(int k, std::size_t i) const { return in_b_[static_cast<std::size_t>(k)][i]; }
    bool in_b(const Simplex& s) const
    {
        auto i = index_of(s);
        return i && in_b(static_cast<int>(s.size()) - 1, *i);
    }
    bool has_b() const
    {
        for (const auto& mask : in_b_)
            if (std::find(mask.begin(), mask.end(), true) != mask.end())
                return true;
        return false;
    }
    std::vector<Simplex> b_simplices(int k) const
    {
        std::vector<Simplex> out;
        for (std::size_t i = 0; i < count(k); ++i)
            if (in_b(k, i))
                out.push_back(simplices(k)[i]);
        return out;
    }
    /// Indices (within dimension k) of simplices of X not in B.
    std::vector<std::size_t> relative_indices(int k) const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < count(k); ++i)
            if (!in_b(k, i))
                out.push_back(i);
        return out;
    }
    std::vector<std::size_t> all_indices(int k) const
    {
        std::vector<std::size_t> out(count(k));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = i;
        return out;
    }
    std::vector<std::size_t> basis_indices(int k, bool relative) const
    {
        return relative ? relative_indices(k) : all_indices(k);
    }

    std::vector<Simplex> maximal_simplices() const
    {
        std::vector<Simplex> out;
        for (int k = dimension(); k >= 0; --k)
            for (const auto& s : simplices(k)) {
                bool maximal = true;
                for (const auto& t : simplices(k + 1))
                    if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                        maximal = false;
                        break;
                    }
                if (maximal)
                    out.push_back(s);
            }
        return out;
    }

    /// Index (within dimension 1) of the edge {a, b}, in either order.
    std::optional<std::size_t> edge_index(int a, int b) const
    {
        if (a == b)
            return std::nullopt;
        return index_of(a < b ? Simplex{a, b} : Simplex{b, a});
    }

    /// Builds the closure of `raw` in X and of `b_raw` in B, validating both.
    /// With `all_vertices` every index below vertex_count becomes a 0-simplex.
    static SimplicialPair build(const std::vector<Simplex>& raw, const std::vector<Simplex>& b_raw,
                                std::optional<std::size_t> vertex_count = std::nullopt,
                                bool all_vertices = true);

    /// (X, empty)
    SimplicialPair absolute() const { return build(maximal_simplices(), {}, vertex_count_, spans_all()); }
    /// (B, empty), keeping the vertex numbering of X.
    SimplicialPair b_pair() const
    {
        std::vector<Simplex> raw;
        for (int k = 0; k <= dimension(); ++k)
            for (auto& s : b_simplices(k))
                raw.push_back(s);
        return build(raw, {}, vertex_count_, false);
    }
    /// Same X with a different subcomplex B.
    SimplicialPair with_b(const std::vector<Simplex>& b_raw) const
    {
        return build(maximal_simplices(), b_raw, vertex_count_, spans_all());
    }

    bool spans_all() const { return count(0) == vertex_count_; }

    friend bool operator==(const SimplicialPair& a, const SimplicialPair& b)
    {
        return a.vertex_count_ == b.vertex_count_ && a.by_dim_ == b.by_dim_ && a.in_b_ == b.in_b_;
    }

private:
    std::size_t vertex_count_ = 0;
    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<std::vector<bool>> in_b_;
    std::vector<std::map<Simplex, std::size_t>> index_;
};

namespace detail {

inline Simplex canonical_simplex(Simplex s, std::size_t vertex_count, std::vector<std::string>& problems)
{
    std::sort(s.begin(), s.end());
    if (s.empty())
        problems.push_back("empty simplex");
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        problems.push_back("repeated vertex in simplex " + simplex_str(s));
    for (int v : s)
        if (v < 0 || static_cast<std::size_t>(v) >= vertex_count)
            problems.push_back("vertex " + std::to_string(v) + " out of range in " + simplex_str(s));
    return s;
}

inline void add_closure(const Simplex& s, std::set<Simplex>& out)
{
    if (s.empty() || !out.insert(s).second)
        return;
    if (s.size() == 1)
        return;
    for (std::size_t i = 0; i < s.size(); ++i)
        add_closure(face(s, i), out);
}

}  // namespace detail

inline SimplicialPair SimplicialPair::build(const std::vector<Simplex>& raw, const std::vector<Simplex>& b_raw,
                                            std::optional<std::size_t> vertex_count, bool all_vertices)
{
    std::size_t n = 0;
    if (vertex_count) {
        n = *vertex_count;
    }
    else {
        for (const auto& s : raw)
            for (int v : s)
                n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(v, 0)) + 1);
    }
    std::vector<std::string> problems;
    std::set<Simplex> closure;
    for (const auto& s : raw)
        detail::add_closure(detail::canonical_simplex(s, n, problems), closure);
    for (std::size_t v = 0; all_vertices && v < n; ++v)
        closure.insert(Simplex{static_cast<int>(v)});
    std::set<Simplex> b_closure;
    for (const auto& s : b_raw) {
        Simplex c = detail::canonical_simplex(s, n, problems);
        if (!closure.count(c))
            problems.push_back("B-simplex " + simplex_str(c) + " is not a simplex of X");
        detail::add_closure(c, b_closure);
    }
    if (!problems.empty())
        throw ValidationError(problems);

    SimplicialPair p;
    p.vertex_count_ = n;
    for (const auto& s : closure) {
        std::size_t k = s.size() - 1;
        if (p.by_dim_.size() <= k)
            p.by_dim_.resize(k + 1);
        p.by_dim_[k].push_back(s);
    }
    p.in_b_.resize(p.by_dim_.size());
    p.index_.resize(p.by_dim_.size());
    for (std::size_t k = 0; k < p.by_dim_.size(); ++k) {
        // std::set order is lexicographic, which within one dimension is the canonical order.
        p.in_b_[k].assign(p.by_dim_[k].size(), false);
        for (std::size_t i = 0; i < p.by_dim_[k].size(); ++i) {
            p.index_[k].emplace(p.by_dim_[k][i], i);
            if (b_closure.count(p.by_dim_[k][i]))
                p.in_b_[k][i] = true;
        }
    }
    return p;
}

inline SimplicialPair build_pair(const std::vector<Simplex>& raw, const std::vector<Simplex>& b_raw,
                                 std::optional<std::size_t> vertex_count = std::nullopt, bool all_vertices = true)
{
    return SimplicialPair::build(raw, b_raw, vertex_count, all_vertices);
}

/// Chain group of one degree with its boundary into the degree below.
struct ChainSpace {
    int degree = 0;
    bool relative = false;
    std::vector<std::size_t> basis;        // indices into simplices(degree)
    std::vector<std::size_t> lower_basis;  // indices into simplices(degree - 1)
    Matrix<Rational> boundary;             // lower_basis.size() x basis.size()
};

/// Full boundary matrix d_k : C_k(X) -> C_{k-1}(X) over all simplices (rows: (k-1)-simplices).
inline Matrix<Rational> boundary_matrix(const SimplicialPair& p, int k)
{
    Matrix<Rational> d(p.count(k - 1), p.count(k));
    if (k <= 0)
        return d;
    const auto& ks = p.simplices(k);
    for (std::size_t j = 0; j < ks.size(); ++j)
        for (std::size_t i = 0; i < ks[j].size(); ++i) {
            auto row = p.index_of(face(ks[j], i));
            d(*row, j) = (i % 2 == 0) ? 1 : -1;
        }
    return d;
}

inline ChainSpace chain_space(const SimplicialPair& p, int k, bool relative)
{
    ChainSpace cs;
    cs.degree = k;
    cs.relative = relative;
    cs.basis = p.basis_indices(k, relative);
    cs.lower_basis = p.basis_indices(k - 1, relative);
    cs.boundary = boundary_matrix(p, k).select(cs.lower_basis, cs.basis);
    return cs;
}

/// Rank of H_k(X;Q) or H_k(X,B;Q).
inline std::size_t betti(const SimplicialPair& p, int k, bool relative)
{
    if (k < 0 || k > p.dimension())
        return 0;
    ChainSpace here = chain_space(p, k, relative);
    ChainSpace above = chain_space(p, k + 1, relative);
    return here.basis.size() - rank(here.boundary) - rank(above.boundary);
}

inline long euler_characteristic(const SimplicialPair& p, bool relative)
{
    long chi = 0;
    for (int k = 0; k <= p.dimension(); ++k) {
        long n = static_cast<long>(p.basis_indices(k, relative).size());
        chi += (k % 2 == 0) ? n : -n;
    }
    return chi;
}

/// Staircase (order-complex) triangulation of |P| x |Q|; vertex (a, b) has index a * |Q| + b.
/// B of the product is (B_P x Q) u (P x B_Q).
inline SimplicialPair product_pair(const SimplicialPair& p, const SimplicialPair& q)
{
    const int nq = static_cast<int>(q.vertex_count());
    auto vid = [nq](int a, int b) { return a * nq + b; };
    std::vector<Simplex> raw, b_raw;
    auto project = [](const Simplex& s, bool first, int nq_) {
        std::set<int> vs;
        for (int v : s)
            vs.insert(first ? v / nq_ : v % nq_);
        return Simplex(vs.begin(), vs.end());
    };
    for (const auto& sp : p.maximal_simplices())
        for (const auto& sq : q.maximal_simplices()) {
            // Monotone lattice paths from (0,0) to (|sp|-1, |sq|-1).
            const int pa = static_cast<int>(sp.size()) - 1, qb = static_cast<int>(sq.size()) - 1;
            std::function<void(int, int, Simplex&)> walk = [&](int i, int j, Simplex& cur) {
                cur.push_back(vid(sp[static_cast<std::size_t>(i)], sq[static_cast<std::size_t>(j)]));
                if (i == pa && j == qb)
                    raw.push_back(cur);
                if (i < pa)
                    walk(i + 1, j, cur);
                if (j < qb)
                    walk(i, j + 1, cur);
                cur.pop_back();
            };
            Simplex cur;
            walk(0, 0, cur);
        }
    SimplicialPair prod = build_pair(raw, {}, p.vertex_count() * q.vertex_count());
    for (int k = 0; k <= prod.dimension(); ++k)
        for (const auto& s : prod.simplices(k)) {
            Simplex sx = project(s, true, nq), sy = project(s, false, nq);
            if (p.in_b(sx) || q.in_b(sy))
                b_raw.push_back(s);
        }
    return build_pair(raw, b_raw, p.vertex_count() * q.vertex_count());
}

/// Carrier data of a barycentric subdivision: new vertex j is the barycenter of carrier[j].
/// Original vertices keep their indices.
struct Subdivision {
    SimplicialPair pair;
    std::vector<Simplex> carrier;
    /// Simplicial approximation of the identity sd X -> X: barycenter of s -> last vertex of s.
    std::vector<int> vertex_map;
};

inline Subdivision barycentric_subdivide(const SimplicialPair& p)
{
    Subdivision sd;
    std::map<Simplex, int> id;
    for (int k = 0; k <= p.dimension(); ++k)
        for (const auto& s : p.simplices(k)) {
            id.emplace(s, static_cast<int>(sd.carrier.size()));
            sd.carrier.push_back(s);
            sd.vertex_map.push_back(s.back());
        }
    // Chains s_0 < s_1 < ... < s_k of faces; each becomes a sorted tuple of new vertex ids.
    std::map<Simplex, std::vector<Simplex>> memo;
    std::function<const std::vector<Simplex>&(const Simplex&)> chains_to = [&](const Simplex& s)
        -> const std::vector<Simplex>& {
        if (auto it = memo.find(s); it != memo.end())
            return it->second;
        std::vector<Simplex> out{{id.at(s)}};
        const std::size_t n = s.size();
        for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
            Simplex t;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::size_t{1} << i))
                    t.push_back(s[i]);
            for (const auto& c : chains_to(t)) {
                Simplex ext = c;
                ext.push_back(id.at(s));
                out.push_back(std::move(ext));
            }
        }
        return memo.emplace(s, std::move(out)).first->second;
    };
    std::vector<Simplex> raw, b_raw;
    for (const auto& top : p.maximal_simplices())
        for (const auto& c : chains_to(top))
            raw.push_back(c);
    for (int k = 0; k <= p.dimension(); ++k)
        for (const auto& s : p.b_simplices(k))
            for (const auto& c : chains_to(s))
                b_raw.push_back(c);
    sd.pair = build_pair(raw, b_raw, sd.carrier.size());
    return sd;
}

}  // namespace relcat
