// Finite windows of the covering of X with deck group H = Z^r, the lifted
// potential f, sublevel neighbourhoods of infinity and window-level movability.
//
// A window materializes the lifts (sigma, g) for g in an axis-aligned label box.
// The lift of sigma = [v0..vk] at g has vertices (vi, g + label(v0 -> vi)), where
// labels are summed along sigma's edges from v0; it is materialized only when all
// of these vertex labels lie in the box.
//
// Verdicts certify only what the window shows:
//   movable-in-window      z is homologous in the window to a cycle in O u B~
//   not-movable-in-window  no such cycle exists inside the window
//   inconclusive           the question cannot be decided inside the window
#pragma once

#include "relcat/complex.hpp"
#include "relcat/linalg.hpp"
#include "relcat/one_form.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace relcat {

class InconclusiveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Label = std::vector<int>;

struct LabelBox {
    Label lo, hi;

    std::size_t rank() const { return lo.size(); }
    std::size_t size() const
    {
        std::size_t n = 1;
        for (std::size_t i = 0; i < lo.size(); ++i)
            n *= static_cast<std::size_t>(hi[i] - lo[i] + 1);
        return n;
    }
    bool contains(const Label& g) const
    {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (g[i] < lo[i] || g[i] > hi[i])
                return false;
        return true;
    }
    bool on_frontier(const Label& g) const
    {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (g[i] == lo[i] || g[i] == hi[i])
                return true;
        return false;
    }
    /// Position of g in row-major order.
    std::size_t offset(const Label& g) const
    {
        std::size_t off = 0;
        for (std::size_t i = 0; i < lo.size(); ++i)
            off = off * static_cast<std::size_t>(hi[i] - lo[i] + 1) + static_cast<std::size_t>(g[i] - lo[i]);
        return off;
    }
    std::vector<Label> labels() const
    {
        std::vector<Label> out;
        Label g = lo;
        if (lo.empty())
            return {Label{}};
        while (true) {
            out.push_back(g);
            std::size_t i = lo.size();
            while (i-- > 0) {
                if (g[i] < hi[i]) {
                    ++g[i];
                    break;
                }
                g[i] = lo[i];
                if (i == 0)
                    return out;
            }
        }
    }

    static LabelBox cube(std::size_t r, int lo, int hi)
    {
        return LabelBox{Label(r, lo), Label(r, hi)};
    }
};

class CoveringWindow {
public:
    CoveringWindow(const OneForm& form, LabelBox box, TreeStrategy strategy = TreeStrategy::DepthFirst)
        : form_(form), labeling_(deck_labeling(form, strategy)), box_(std::move(box))
    {
        const std::size_t r = labeling_.rank;
        if (box_.lo.size() != r || box_.hi.size() != r)
            throw ValidationError("label box has rank " + std::to_string(box_.lo.size()) + " but the form has r = " +
                                  std::to_string(r));
        for (std::size_t i = 0; i < r; ++i)
            if (box_.lo[i] > box_.hi[i])
                throw ValidationError("empty label box");
        const SimplicialPair& base = form_.pair();
        const std::size_t nb = box_.size();
        // Window vertex id = base vertex * |box| + offset(label), so lifted tuples keep base vertex order.
        auto labels = box_.labels();
        std::vector<Simplex> raw, b_raw;
        vertex_base_.assign(base.vertex_count() * nb, -1);
        vertex_label_.assign(base.vertex_count() * nb, Label{});
        for (std::size_t v = 0; v < base.vertex_count(); ++v)
            for (const auto& g : labels) {
                std::size_t id = v * nb + box_.offset(g);
                vertex_base_[id] = static_cast<int>(v);
                vertex_label_[id] = g;
            }
        for (int k = 0; k <= base.dimension(); ++k)
            for (std::size_t si = 0; si < base.count(k); ++si) {
                const Simplex& s = base.simplices(k)[si];
                for (const auto& g : labels) {
                    auto lifted = lift(s, g);
                    if (!lifted)
                        continue;
                    raw.push_back(*lifted);
                    if (base.in_b(k, si))
                        b_raw.push_back(*lifted);
                }
            }
        pair_ = build_pair(raw, b_raw, base.vertex_count() * nb);
        potential_.reserve(vertex_base_.size());
        for (std::size_t id = 0; id < vertex_base_.size(); ++id)
            potential_.push_back(labeling_.tree_potential[static_cast<std::size_t>(vertex_base_[id])] +
                                 labeling_.pairing(vertex_label_[id]));
    }

    const OneForm& form() const { return form_; }
    const DeckLabeling& labeling() const { return labeling_; }
    const LabelBox& box() const { return box_; }
    std::size_t rank() const { return labeling_.rank; }

    /// The window as an abstract pair (X~_W, B~_W).
    const SimplicialPair& pair() const { return pair_; }

    int base_vertex(int window_vertex) const { return vertex_base_[static_cast<std::size_t>(window_vertex)]; }
    const Label& vertex_label(int window_vertex) const { return vertex_label_[static_cast<std::size_t>(window_vertex)]; }
    const FormValue& potential(int window_vertex) const { return potential_[static_cast<std::size_t>(window_vertex)]; }
    const std::vector<FormValue>& potentials() const { return potential_; }

    int window_vertex(int base_vertex, const Label& g) const
    {
        return base_vertex * static_cast<int>(box_.size()) + static_cast<int>(box_.offset(g));
    }

    /// The lift of a base simplex whose first vertex sits at label g, if materialized.
    std::optional<Simplex> lift(const Simplex& s, const Label& g) const
    {
        if (g.size() != box_.rank())
            throw ValidationError("label has " + std::to_string(g.size()) + " coordinates but the window has rank " +
                                  std::to_string(box_.rank()));
        if (!box_.contains(g))
            return std::nullopt;
        Simplex out;
        for (int v : s) {
            Label gv = g;
            auto l = labeling_.label(s[0], v);
            for (std::size_t i = 0; i < gv.size(); ++i)
                gv[i] += l[i];
            if (!box_.contains(gv))
                return std::nullopt;
            out.push_back(window_vertex(v, gv));
        }
        return out;
    }

    Simplex project(const Simplex& lifted) const
    {
        Simplex s;
        for (int v : lifted)
            s.push_back(base_vertex(v));
        return s;
    }

    /// Label of the first vertex of a window simplex.
    const Label& simplex_label(const Simplex& lifted) const { return vertex_label(lifted[0]); }

    bool touches_frontier(const Simplex& lifted) const
    {
        if (rank() == 0)
            return false;
        for (int v : lifted)
            if (box_.on_frontier(vertex_label(v)))
                return true;
        return false;
    }

    /// Window chain from (base simplex, label of first vertex, coefficient) entries.
    Vector<Rational> chain(int degree, const std::vector<std::tuple<Simplex, Label, Rational>>& entries) const
    {
        Vector<Rational> z(pair_.count(degree), Rational(0));
        for (const auto& [s, g, coeff] : entries) {
            if (static_cast<int>(s.size()) != degree + 1)
                throw ValidationError("chain entry " + simplex_str(s) + " has the wrong degree");
            if (!form_.pair().contains(s))
                throw ValidationError("chain entry " + simplex_str(s) + " is not a base simplex");
            auto lifted = lift(s, g);
            if (!lifted)
                throw InconclusiveError("lift of " + simplex_str(s) + " is not materialized in the window");
            z[*pair_.index_of(*lifted)] += coeff;
        }
        return z;
    }

private:
    OneForm form_;
    DeckLabeling labeling_;
    LabelBox box_;
    SimplicialPair pair_;
    std::vector<int> vertex_base_;
    std::vector<Label> vertex_label_;
    std::vector<FormValue> potential_;
};

inline CoveringWindow build_window(const OneForm& form, const LabelBox& box) { return CoveringWindow(form, box); }

struct InfinityNeighborhood {
    Rational cutoff;
    bool inclusive = false;              // f <= c instead of f < c
    std::vector<bool> vertex_in;         // by window vertex
    std::vector<std::vector<bool>> in;   // by degree and window simplex index

    bool empty() const { return std::find(vertex_in.begin(), vertex_in.end(), true) == vertex_in.end(); }
    std::size_t simplex_count() const
    {
        std::size_t n = 0;
        for (const auto& d : in)
            n += static_cast<std::size_t>(std::count(d.begin(), d.end(), true));
        return n;
    }
};

namespace detail {

inline bool below(const OneForm& w, const FormValue& f, const Rational& c, bool inclusive)
{
    if (w.components() == 1)
        return inclusive ? f[0] <= c : f[0] < c;
    double h = w.height(f), cd = to_double(c);
    return inclusive ? h <= cd : h < cd;
}

}  // namespace detail

/// Maximal subcomplex on the vertices with f < c (or f <= c).
inline InfinityNeighborhood neighborhood_of_infinity(const CoveringWindow& win, const Rational& c, bool inclusive = false)
{
    InfinityNeighborhood o;
    o.cutoff = c;
    o.inclusive = inclusive;
    const auto& p = win.pair();
    for (std::size_t v = 0; v < p.vertex_count(); ++v)
        o.vertex_in.push_back(p.contains(Simplex{static_cast<int>(v)}) &&
                              detail::below(win.form(), win.potential(static_cast<int>(v)), c, inclusive));
    for (int k = 0; k <= p.dimension(); ++k) {
        std::vector<bool> row;
        for (const auto& s : p.simplices(k)) {
            bool all = true;
            for (int v : s)
                all = all && o.vertex_in[static_cast<std::size_t>(v)];
            row.push_back(all);
        }
        o.in.push_back(std::move(row));
    }
    return o;
}

enum class Movability { Movable, NotMovable };

inline std::string to_string(Movability m) { return m == Movability::Movable ? "movable-in-window" : "not-movable-in-window"; }

namespace detail {

/// Generators (relative basis coordinates) of the relative i-boundaries of the window.
inline Matrix<Rational> relative_boundaries(const SimplicialPair& p, int i)
{
    return chain_space(p, i + 1, true).boundary;
}

inline Vector<Rational> to_relative(const SimplicialPair& p, int i, const Vector<Rational>& full)
{
    Vector<Rational> out;
    for (auto idx : p.relative_indices(i))
        out.push_back(full[idx]);
    return out;
}

inline bool is_relative_cycle(const SimplicialPair& p, int i, const Vector<Rational>& full)
{
    if (i == 0)
        return true;
    return is_zero_vector(chain_space(p, i, true).boundary.apply(to_relative(p, i, full)));
}

}  // namespace detail

/// Decides whether the class of the relative cycle z lies in the image of H_i(O, O n B~) -> H_i(W, B~_W).
/// Equivalently: the part of z outside O u B~ is, modulo that same part of a boundary, zero.
inline Movability movable_in_window(const CoveringWindow& win, int degree, const Vector<Rational>& z,
                                    const InfinityNeighborhood& o)
{
    const auto& p = win.pair();
    if (z.size() != p.count(degree))
        throw ValidationError("chain length does not match the window");
    for (std::size_t j = 0; j < z.size(); ++j)
        if (z[j] != 0 && win.touches_frontier(p.simplices(degree)[j]))
            throw InconclusiveError("cycle carrier touches the window frontier; enlarge the label box");
    if (!detail::is_relative_cycle(p, degree, z))
        throw ValidationError("chain is not a relative cycle of the window");
    auto rel = p.relative_indices(degree);
    std::vector<std::size_t> outside;  // positions within rel
    for (std::size_t j = 0; j < rel.size(); ++j)
        if (!o.in[static_cast<std::size_t>(degree)][rel[j]])
            outside.push_back(j);
    Vector<Rational> zr = detail::to_relative(p, degree, z), target;
    for (auto j : outside)
        target.push_back(zr[j]);
    if (is_zero_vector(target))
        return Movability::Movable;
    Matrix<Rational> bd = detail::relative_boundaries(p, degree);
    std::vector<std::size_t> all_cols(bd.cols());
    for (std::size_t j = 0; j < all_cols.size(); ++j)
        all_cols[j] = j;
    SpanTester<Rational> span(bd.select(outside, all_cols));
    return span.contains(target) ? Movability::Movable : Movability::NotMovable;
}

inline Movability movable_in_window(const CoveringWindow& win, int degree, const Vector<Rational>& z,
                                    const Rational& c)
{
    return movable_in_window(win, degree, z, neighborhood_of_infinity(win, c));
}

struct StabilizationResult {
    std::size_t index = 1;          // least N with V_{g^n} = V_{g^N} for all tested n >= N
    std::size_t dimension = 0;      // dim of the stabilized subspace
    std::vector<std::size_t> tested;
    std::vector<std::size_t> dims;
    Label step;                     // the deck element g, with xi(g) < 0
};

namespace detail {

/// Z_A + B_W inside the relative chain space, as columns.
inline std::vector<Vector<Rational>> supported_cycles_plus_boundaries(const SimplicialPair& p, int i,
                                                                       const std::vector<bool>& in_a)
{
    auto rel = p.relative_indices(i);
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < rel.size(); ++j)
        if (in_a[rel[j]])
            cols.push_back(j);
    std::vector<Vector<Rational>> gens;
    if (!cols.empty()) {
        Matrix<Rational> bd = chain_space(p, i, true).boundary;
        std::vector<std::size_t> rows(bd.rows());
        for (std::size_t r = 0; r < rows.size(); ++r)
            rows[r] = r;
        Matrix<Rational> restricted = i == 0 ? Matrix<Rational>(0, cols.size()) : bd.select(rows, cols);
        for (const auto& k : kernel_basis(restricted)) {
            Vector<Rational> full(rel.size(), Rational(0));
            for (std::size_t t = 0; t < cols.size(); ++t)
                full[cols[t]] = k[t];
            gens.push_back(std::move(full));
        }
    }
    Matrix<Rational> up = relative_boundaries(p, i);
    for (std::size_t j = 0; j < up.cols(); ++j)
        gens.push_back(up.column(j));
    return gens;
}

inline std::size_t span_dim(std::size_t dim, const std::vector<Vector<Rational>>& gens)
{
    if (gens.empty() || dim == 0)
        return 0;
    return rank(Matrix<Rational>::from_columns(dim, gens));
}

}  // namespace detail

/// Tracks V_{g^n} = image of H_i(g^n O) in H_i(W) intersected with the image of H_i(K),
/// for O = {f <= 0} and K the lifts with first-vertex label in `k_labels`.
inline StabilizationResult stabilize_images(const CoveringWindow& win, const std::vector<Label>& k_labels, int degree,
                                            std::optional<Label> step = std::nullopt)
{
    StabilizationResult out;
    const auto& p = win.pair();
    if (degree > p.dimension()) {
        out.index = 1;
        out.dimension = 0;
        return out;
    }
    if (win.rank() == 0)
        throw InconclusiveError("xi = 0: there is no deck translation to iterate");
    if (!step) {
        auto gens = win.labeling().lattice.generators();
        for (std::size_t j = 0; j < gens.size() && !step; ++j) {
            double h = win.form().height(gens[j]);
            if (h != 0) {
                Label g(win.rank(), 0);
                g[j] = h > 0 ? -1 : 1;
                step = g;
            }
        }
    }
    out.step = *step;
    FormValue shift = win.labeling().pairing(*step);
    if (!win.form().less(shift, win.form().zero_value()))
        throw ValidationError("deck step must have negative period");

    // K: closure of the lifts whose first vertex carries a label in k_labels.
    std::vector<std::vector<bool>> in_k(static_cast<std::size_t>(p.dimension() + 1));
    for (int k = 0; k <= p.dimension(); ++k)
        in_k[static_cast<std::size_t>(k)].assign(p.count(k), false);
    for (const auto& g : k_labels) {
        if (!win.box().contains(g))
            throw InconclusiveError("K label outside the window");
        for (int k = 0; k <= win.form().pair().dimension(); ++k)
            for (const auto& s : win.form().pair().simplices(k)) {
                auto l = win.lift(s, g);
                if (!l)
                    continue;
                for (std::size_t mask = 1; mask < (std::size_t{1} << l->size()); ++mask) {
                    Simplex f;
                    for (std::size_t t = 0; t < l->size(); ++t)
                        if (mask & (std::size_t{1} << t))
                            f.push_back((*l)[t]);
                    in_k[f.size() - 1][*p.index_of(f)] = true;
                }
            }
    }
    const std::size_t dim = p.relative_indices(degree).size();
    auto s_k = detail::supported_cycles_plus_boundaries(p, degree, in_k[static_cast<std::size_t>(degree)]);
    const std::size_t dim_b = rank(detail::relative_boundaries(p, degree));
    const std::size_t dim_k = detail::span_dim(dim, s_k);

    for (std::size_t n = 1;; ++n) {
        // g^n O = {f <= n xi(g)}
        FormValue level = Rational(static_cast<long>(n)) * shift;
        std::vector<bool> vertex_in(p.vertex_count(), false);
        bool any = false;
        for (std::size_t v = 0; v < p.vertex_count(); ++v) {
            const FormValue& f = win.potential(static_cast<int>(v));
            vertex_in[v] = p.contains(Simplex{static_cast<int>(v)}) && (win.form().less(f, level) || f == level);
            any = any || vertex_in[v];
        }
        if (!any)
            break;
        std::vector<bool> in_o(p.count(degree));
        for (std::size_t j = 0; j < in_o.size(); ++j) {
            bool all = true;
            for (int v : p.simplices(degree)[j])
                all = all && vertex_in[static_cast<std::size_t>(v)];
            in_o[j] = all;
        }
        auto s_o = detail::supported_cycles_plus_boundaries(p, degree, in_o);
        std::vector<Vector<Rational>> both = s_o;
        both.insert(both.end(), s_k.begin(), s_k.end());
        std::size_t inter = detail::span_dim(dim, s_o) + dim_k - detail::span_dim(dim, both);
        out.tested.push_back(n);
        out.dims.push_back(inter - dim_b);
    }
    if (out.tested.size() < 2)
        throw InconclusiveError("window too small to observe stabilization; enlarge the label box");
    std::size_t last_change = 0;
    for (std::size_t t = 1; t < out.dims.size(); ++t)
        if (out.dims[t] != out.dims[t - 1])
            last_change = t;
    out.index = out.tested[last_change];
    out.dimension = out.dims.back();
    return out;
}

}  // namespace relcat
