// Cochain complexes of a simplicial pair with coefficients in a rank-one local system.
//
// A k-cochain is a vector indexed by all k-simplices of X in canonical order.
// Relative cochains are the ones vanishing on B. The value on [v0..vk] lives in
// the fiber over v0, so the coboundary transports the 0-th face term
// (the face [v1..vk+1]) from v1 to v0:
//
//   (dc)[v0..vk+1] = twist(v0,v1) c[v1..vk+1] + sum_{i>0} (-1)^i c[.. ^vi ..]
//
// With twist == 1 this is the ordinary simplicial coboundary.
#pragma once

#include "relcat/complex.hpp"
#include "relcat/linalg.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace relcat {

template <class R>
using Twist = std::function<R(int from_vertex, int to_vertex)>;

template <class R>
struct CohomologyBasis {
    int degree = 0;
    /// Cocycles, as full cochain vectors (zero on B in relative mode).
    std::vector<Vector<R>> representatives;
    std::string coefficient_mode;  // "rational" | "function-field" | "complex-surrogate"

    std::size_t rank() const { return representatives.size(); }
};

template <class R>
class CochainComplex {
public:
    CochainComplex(const SimplicialPair& pair, bool relative, Twist<R> twist = nullptr)
        : pair_(pair), relative_(relative), twist_(std::move(twist))
    {
        for (int k = 0; k < pair_.dimension(); ++k)
            coboundary_.push_back(build_coboundary(k));
    }

    const SimplicialPair& pair() const { return pair_; }
    bool relative() const { return relative_; }
    bool twisted() const { return static_cast<bool>(twist_); }

    R twist(int from, int to) const { return twist_ ? twist_(from, to) : R(1); }

    /// Full matrix of d_k : C^k(X) -> C^{k+1}(X).
    Matrix<R> coboundary(int k) const
    {
        if (k >= 0 && k < static_cast<int>(coboundary_.size()))
            return coboundary_[static_cast<std::size_t>(k)];
        return Matrix<R>(pair_.count(k + 1), pair_.count(k));
    }

    /// d_k restricted to the basis of the cochain groups in use (relative or absolute).
    Matrix<R> reduced_coboundary(int k) const
    {
        return coboundary(k).select(pair_.basis_indices(k + 1, relative_), pair_.basis_indices(k, relative_));
    }

    Vector<R> apply(int k, const Vector<R>& c) const { return coboundary(k).apply(c); }

    Vector<R> zero(int k) const { return Vector<R>(pair_.count(k), R(0)); }

    /// Restriction of a full cochain to the basis coordinates.
    Vector<R> restrict_to_basis(int k, const Vector<R>& c) const
    {
        Vector<R> out;
        for (auto i : pair_.basis_indices(k, relative_))
            out.push_back(c[i]);
        return out;
    }
    Vector<R> embed_from_basis(int k, const Vector<R>& c) const
    {
        Vector<R> out = zero(k);
        auto idx = pair_.basis_indices(k, relative_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            out[idx[i]] = c[i];
        return out;
    }

    bool vanishes_on_b(int k, const Vector<R>& c) const
    {
        for (std::size_t i = 0; i < pair_.count(k); ++i)
            if (pair_.in_b(k, i) && !is_zero(c[i]))
                return false;
        return true;
    }

    bool is_cocycle(int k, const Vector<R>& c) const
    {
        return (!relative_ || vanishes_on_b(k, c)) && is_zero_vector(apply(k, c));
    }

    std::size_t cohomology_rank(int k) const
    {
        if (k < 0 || k > pair_.dimension())
            return 0;
        std::size_t dim = pair_.basis_indices(k, relative_).size();
        return dim - rank(reduced_coboundary(k)) - rank(reduced_coboundary(k - 1));
    }

    /// Tests membership in the image of d_{k-1}; cached per degree.
    const SpanTester<R>& coboundary_span(int k) const
    {
        auto it = span_cache_.find(k);
        if (it == span_cache_.end())
            it = span_cache_.emplace(k, SpanTester<R>(reduced_coboundary(k - 1))).first;
        return it->second;
    }

    bool is_coboundary(int k, const Vector<R>& c) const
    {
        return coboundary_span(k).contains(restrict_to_basis(k, c));
    }

    /// Cocycles whose classes form a basis of H^k, chosen greedily from a kernel basis.
    CohomologyBasis<R> cohomology_basis(int k, std::string mode = "") const
    {
        CohomologyBasis<R> out;
        out.degree = k;
        out.coefficient_mode = mode.empty() ? default_mode() : mode;
        if (k < 0 || k > pair_.dimension())
            return out;
        const std::size_t target = cohomology_rank(k);
        if (target == 0)
            return out;
        Matrix<R> image = reduced_coboundary(k - 1);
        std::vector<Vector<R>> gens;
        for (std::size_t j = 0; j < image.cols(); ++j)
            gens.push_back(image.column(j));
        const std::size_t dim = pair_.basis_indices(k, relative_).size();
        for (auto& z : kernel_basis(reduced_coboundary(k))) {
            SpanTester<R> span(Matrix<R>::from_columns(dim, gens));
            if (span.contains(z))
                continue;
            gens.push_back(z);
            out.representatives.push_back(embed_from_basis(k, z));
            if (out.representatives.size() == target)
                break;
        }
        return out;
    }

private:
    static std::string default_mode()
    {
        return RingTraits<R>::is_field ? "rational" : "function-field";
    }

    Matrix<R> build_coboundary(int k) const
    {
        Matrix<R> d(pair_.count(k + 1), pair_.count(k));
        const auto& upper = pair_.simplices(k + 1);
        for (std::size_t row = 0; row < upper.size(); ++row) {
            const Simplex& s = upper[row];
            for (std::size_t i = 0; i < s.size(); ++i) {
                std::size_t col = *pair_.index_of(face(s, i));
                R coeff = (i % 2 == 0) ? R(1) : R(-1);
                if (i == 0)
                    coeff = twist(s[0], s[1]);
                d(row, col) += coeff;
            }
        }
        return d;
    }

    SimplicialPair pair_;
    bool relative_ = false;
    Twist<R> twist_;
    std::vector<Matrix<R>> coboundary_;
    mutable std::map<int, SpanTester<R>> span_cache_;
};

}  // namespace relcat
