// Independent reference computations used only by the tests.
//
// None of these share code with the library's linear algebra: the Smith form
// works over Z with its own elimination, and the twisted-rank oracle uses dense
// univariate integer polynomials with its own Bareiss step.
#pragma once

#include "relcat/complex.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace oracle {

using relcat::Integer;
using IntMatrix = std::vector<std::vector<Integer>>;

inline IntMatrix integer_boundary(const relcat::SimplicialPair& p, int k, bool relative)
{
    auto cols = p.basis_indices(k, relative);
    auto rows = p.basis_indices(k - 1, relative);
    IntMatrix m(rows.size(), std::vector<Integer>(cols.size(), 0));
    if (k <= 0)
        return m;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const auto& s = p.simplices(k)[cols[j]];
        for (std::size_t i = 0; i < s.size(); ++i) {
            auto f = relcat::face(s, i);
            auto fi = *p.index_of(f);
            auto it = std::find(rows.begin(), rows.end(), fi);
            if (it != rows.end())
                m[static_cast<std::size_t>(it - rows.begin())][j] = (i % 2 == 0) ? 1 : -1;
        }
    }
    return m;
}

/// Diagonalizes over Z by repeated gcd row/column steps; returns the diagonal.
inline std::vector<Integer> smith_diagonal(IntMatrix a)
{
    std::vector<Integer> diag;
    const std::size_t m = a.size(), n = m ? a[0].size() : 0;
    std::size_t t = 0;
    while (t < m && t < n) {
        // Smallest nonzero entry in the trailing block.
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == m)
            break;
        std::swap(a[t], a[pi]);
        for (auto& row : a)
            std::swap(row[t], row[pj]);
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
            Integer q = a[i][t] / a[t][t];
            if (q != 0)
                for (std::size_t j = t; j < n; ++j)
                    a[i][j] -= q * a[t][j];
            if (a[i][t] != 0)
                clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            Integer q = a[t][j] / a[t][t];
            if (q != 0)
                for (std::size_t i = t; i < m; ++i)
                    a[i][j] -= q * a[i][t];
            if (a[t][j] != 0)
                clean = false;
        }
        if (!clean)
            continue;
        diag.push_back(abs(a[t][t]));
        ++t;
    }
    return diag;
}

inline long smith_rank(const IntMatrix& a) { return static_cast<long>(smith_diagonal(a).size()); }

/// Dense univariate polynomial with integer coefficients, c[i] * t^i.
using Poly = std::vector<Integer>;

inline Poly trim(Poly p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
    return p;
}
inline Poly mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return trim(r);
}
inline Poly sub(Poly a, const Poly& b)
{
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    return trim(a);
}
/// Exact quotient by schoolbook long division from the top coefficient.
inline Poly divide(Poly a, const Poly& b)
{
    a = trim(a);
    if (a.empty())
        return {};
    Poly q(a.size() - b.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        Integer c = a[k + b.size() - 1] / b.back();
        q[k] = c;
        for (std::size_t j = 0; j < b.size(); ++j)
            a[k + j] -= c * b[j];
    }
    return trim(q);
}

/// Rank over Q(t) by Bareiss elimination with dense integer polynomials.
inline long bareiss_rank(std::vector<std::vector<Poly>> a)
{
    const std::size_t m = a.size(), n = m ? a[0].size() : 0;
    Poly prev{1};
    long r = 0;
    for (std::size_t c = 0; c < n && static_cast<std::size_t>(r) < m; ++c) {
        std::size_t ri = static_cast<std::size_t>(r);
        std::size_t p = ri;
        while (p < m && a[p][c].empty())
            ++p;
        if (p == m)
            continue;
        std::swap(a[p], a[ri]);
        for (std::size_t i = ri + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j)
                a[i][j] = divide(sub(mul(a[ri][c], a[i][j]), mul(a[i][c], a[ri][j])), prev);
            a[i][c] = {};
        }
        prev = a[ri][c];
        ++r;
    }
    return r;
}

/// Twisted coboundary d_k of the rank-one system t^{label}, built from scratch.
/// `label(a, b)` is the integer deck label of the oriented edge a -> b. Entries
/// are multiplied through by t^shift so that every exponent is nonnegative.
inline std::vector<std::vector<Poly>> twisted_coboundary(const relcat::SimplicialPair& p, int k, bool relative,
                                                         const std::function<int(int, int)>& label)
{
    auto rows = p.basis_indices(k + 1, relative);
    auto cols = p.basis_indices(k, relative);
    int shift = 0;
    for (const auto& e : p.simplices(1))
        shift = std::max({shift, label(e[0], e[1]), -label(e[0], e[1])});
    std::vector<std::vector<Poly>> m(rows.size(), std::vector<Poly>(cols.size()));
    auto monomial = [](int e, int sign) {
        Poly q(static_cast<std::size_t>(e) + 1, 0);
        q[static_cast<std::size_t>(e)] = sign;
        return q;
    };
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& s = p.simplices(k + 1)[rows[r]];
        for (std::size_t i = 0; i < s.size(); ++i) {
            auto fi = *p.index_of(relcat::face(s, i));
            auto it = std::find(cols.begin(), cols.end(), fi);
            if (it == cols.end())
                continue;
            int e = shift + (i == 0 ? label(s[0], s[1]) : 0);
            int sign = (i % 2 == 0) ? 1 : -1;
            m[r][static_cast<std::size_t>(it - cols.begin())] = monomial(e, sign);
        }
    }
    return m;
}

}  // namespace oracle
