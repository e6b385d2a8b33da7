// Closed 1-forms as simplicial 1-cocycles.
//
// Edge values live in Q^m: a value (q_1..q_m) stands for the real number
// sum_i q_i * e_i where e_1..e_m are fixed real numbers that are linearly
// independent over Q (e_1 = 1 when m = 1). This is how irrational periods are
// represented without leaving exact arithmetic. The optional `embedding`
// gives numeric stand-ins for e_1..e_m and is used only to order values
// when m > 1.
#pragma once

#include "relcat/complex.hpp"
#include "relcat/linalg.hpp"
#include "relcat/rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace relcat {

class FormValue {
public:
    FormValue() = default;
    explicit FormValue(std::size_t m) : c_(m, Rational(0)) {}
    explicit FormValue(std::vector<Rational> c) : c_(std::move(c)) {}
    static FormValue scalar(const Rational& q) { return FormValue(std::vector<Rational>{q}); }

    std::size_t dim() const { return c_.size(); }
    const std::vector<Rational>& components() const { return c_; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
    }

    FormValue& operator+=(const FormValue& o)
    {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i)
            c_[i] += o.c_[i];
        return *this;
    }
    FormValue& operator-=(const FormValue& o)
    {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i)
            c_[i] -= o.c_[i];
        return *this;
    }
    FormValue operator-() const
    {
        FormValue r = *this;
        for (auto& q : r.c_)
            q = -q;
        return r;
    }
    friend FormValue operator+(FormValue a, const FormValue& b) { return a += b; }
    friend FormValue operator-(FormValue a, const FormValue& b) { return a -= b; }
    friend FormValue operator*(const Rational& s, FormValue a)
    {
        for (auto& q : a.c_)
            q *= s;
        return a;
    }
    friend bool operator==(const FormValue& a, const FormValue& b) { return a.c_ == b.c_; }

    std::string str() const
    {
        if (c_.size() == 1)
            return to_string(c_[0]);
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i)
            s += (i ? "," : "") + to_string(c_[i]);
        return s + "]";
    }

private:
    void check(const FormValue& o) const
    {
        if (o.c_.size() != c_.size())
            throw std::invalid_argument("form value dimension mismatch");
    }
    std::vector<Rational> c_;
};

/// Default numeric stand-ins for the independent reals: 1, sqrt 2, sqrt 3.
inline std::vector<double> default_embedding(std::size_t m)
{
    static const double base[] = {1.0, 1.4142135623730951, 1.7320508075688772, 2.2360679774997898,
                                  2.6457513110645907, 3.3166247903554};
    std::vector<double> e;
    for (std::size_t i = 0; i < m; ++i)
        e.push_back(i < std::size(base) ? base[i] : 1.0 + static_cast<double>(i) * 0.7071067811865476);
    return e;
}

class OneForm {
public:
    OneForm() = default;

    /// `values[i]` is the value on the i-th edge in its canonical orientation (low -> high).
    OneForm(std::shared_ptr<const SimplicialPair> pair, std::vector<FormValue> values, std::vector<double> embedding = {})
        : pair_(std::move(pair)), values_(std::move(values)), embedding_(std::move(embedding))
    {
        if (values_.size() != pair_->count(1))
            throw ValidationError("expected " + std::to_string(pair_->count(1)) + " edge values, got " +
                                  std::to_string(values_.size()));
        dim_ = values_.empty() ? (embedding_.empty() ? 1 : embedding_.size()) : values_[0].dim();
        for (const auto& v : values_)
            if (v.dim() != dim_)
                throw ValidationError("edge values have mixed dimensions");
        if (embedding_.empty())
            embedding_ = default_embedding(dim_);
        if (embedding_.size() != dim_)
            throw ValidationError("embedding length does not match value dimension");
    }

    /// Builds from a map keyed by (a, b); the pair may be given in either orientation.
    static OneForm from_edges(const SimplicialPair& pair, const std::map<std::pair<int, int>, FormValue>& edges,
                              std::vector<double> embedding = {})
    {
        auto shared = std::make_shared<const SimplicialPair>(pair);
        std::vector<std::optional<FormValue>> vals(pair.count(1));
        std::vector<std::string> problems;
        for (const auto& [key, val] : edges) {
            auto idx = pair.edge_index(key.first, key.second);
            if (!idx) {
                problems.push_back("value given for non-edge " + std::to_string(key.first) + "-" +
                                   std::to_string(key.second));
                continue;
            }
            FormValue oriented = key.first < key.second ? val : -val;
            if (vals[*idx] && !(*vals[*idx] == oriented))
                problems.push_back("conflicting values for edge " + simplex_str(pair.simplices(1)[*idx]));
            vals[*idx] = oriented;
        }
        std::vector<FormValue> out;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (!vals[i]) {
                problems.push_back("missing edge value on " + simplex_str(pair.simplices(1)[i]));
                continue;
            }
            out.push_back(*vals[i]);
        }
        if (!problems.empty())
            throw ValidationError(problems);
        return OneForm(shared, std::move(out), std::move(embedding));
    }

    static OneForm zero(const SimplicialPair& pair, std::size_t m = 1)
    {
        return OneForm(std::make_shared<const SimplicialPair>(pair), std::vector<FormValue>(pair.count(1), FormValue(m)));
    }

    const SimplicialPair& pair() const { return *pair_; }
    std::shared_ptr<const SimplicialPair> shared_pair() const { return pair_; }
    std::size_t components() const { return dim_; }
    const std::vector<FormValue>& edge_values() const { return values_; }
    const std::vector<double>& embedding() const { return embedding_; }

    FormValue zero_value() const { return FormValue(dim_); }

    /// Value on the oriented edge a -> b (zero when a == b).
    FormValue value(int a, int b) const
    {
        if (a == b)
            return zero_value();
        auto idx = pair_->edge_index(a, b);
        if (!idx)
            throw ValidationError("no edge between " + std::to_string(a) + " and " + std::to_string(b));
        return a < b ? values_[*idx] : -values_[*idx];
    }

    /// The real number a value stands for, under the embedding.
    double height(const FormValue& v) const
    {
        double h = 0;
        for (std::size_t i = 0; i < v.dim(); ++i)
            h += to_double(v[i]) * embedding_[i];
        return h;
    }

    /// Strict order of represented reals; exact when m == 1.
    bool less(const FormValue& a, const FormValue& b) const
    {
        if (dim_ == 1)
            return a[0] < b[0];
        if (a == b)
            return false;
        return height(a) < height(b);
    }

private:
    std::shared_ptr<const SimplicialPair> pair_;
    std::vector<FormValue> values_;
    std::vector<double> embedding_;
    std::size_t dim_ = 1;
};

struct CocycleViolation {
    Simplex triangle;
    FormValue defect;  // w(b,c) - w(a,c) + w(a,b)
};

/// Every 2-simplex where the cocycle law fails.
inline std::vector<CocycleViolation> validate(const OneForm& w)
{
    std::vector<CocycleViolation> out;
    for (const auto& t : w.pair().simplices(2)) {
        FormValue defect = w.value(t[1], t[2]) - w.value(t[0], t[2]) + w.value(t[0], t[1]);
        if (!defect.is_zero())
            out.push_back({t, defect});
    }
    return out;
}

/// The exact form of a vertex potential: w(i,j) = f(j) - f(i).
inline OneForm d(const SimplicialPair& pair, const std::vector<FormValue>& potential)
{
    if (potential.size() != pair.vertex_count())
        throw ValidationError("potential must have one value per vertex");
    std::vector<FormValue> vals;
    for (const auto& e : pair.simplices(1))
        vals.push_back(potential[static_cast<std::size_t>(e[1])] - potential[static_cast<std::size_t>(e[0])]);
    std::size_t m = potential.empty() ? 1 : potential[0].dim();
    return OneForm(std::make_shared<const SimplicialPair>(pair), std::move(vals), default_embedding(m));
}

inline OneForm d(const SimplicialPair& pair, const std::vector<Rational>& potential)
{
    std::vector<FormValue> p;
    for (const auto& q : potential)
        p.push_back(FormValue::scalar(q));
    return d(pair, p);
}

struct EdgePath {
    std::vector<int> vertices;
    bool closed() const { return !vertices.empty() && vertices.front() == vertices.back(); }
};

inline void check_path(const SimplicialPair& pair, const EdgePath& path)
{
    if (path.vertices.empty())
        throw ValidationError("empty path");
    for (int v : path.vertices)
        if (v < 0 || static_cast<std::size_t>(v) >= pair.vertex_count() || !pair.contains(Simplex{v}))
            throw ValidationError("path vertex " + std::to_string(v) + " is not in the complex");
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
        int a = path.vertices[i], b = path.vertices[i + 1];
        if (a != b && !pair.edge_index(a, b))
            throw ValidationError("path step " + std::to_string(a) + "->" + std::to_string(b) + " is not an edge");
    }
}

inline FormValue integrate(const OneForm& w, const EdgePath& path)
{
    check_path(w.pair(), path);
    FormValue total = w.zero_value();
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i)
        total += w.value(path.vertices[i], path.vertices[i + 1]);
    return total;
}

/// The 1-chain of a path, as coefficients on the canonical edge basis.
inline Vector<Rational> path_chain(const SimplicialPair& pair, const EdgePath& path)
{
    Vector<Rational> c(pair.count(1), Rational(0));
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
        int a = path.vertices[i], b = path.vertices[i + 1];
        if (a == b)
            continue;
        c[*pair.edge_index(a, b)] += a < b ? 1 : -1;
    }
    return c;
}

enum class TreeStrategy { DepthFirst, BreadthFirst };

/// Rooted spanning forest; roots are the least vertex of each component.
struct SpanningForest {
    std::vector<int> parent;  // -1 at roots
    std::vector<int> depth;
    std::vector<int> root;
    std::vector<int> order;   // discovery order
    std::vector<bool> tree_edge;  // by edge index

    /// Vertices from a up to b through the tree; a and b must share a root.
    std::vector<int> path(int a, int b) const
    {
        std::vector<int> up, down;
        while (a != b) {
            if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)]) {
                up.push_back(a);
                a = parent[static_cast<std::size_t>(a)];
            }
            else {
                down.push_back(b);
                b = parent[static_cast<std::size_t>(b)];
            }
        }
        up.push_back(a);
        up.insert(up.end(), down.rbegin(), down.rend());
        return up;
    }
};

inline std::vector<std::vector<int>> adjacency(const SimplicialPair& pair)
{
    std::vector<std::vector<int>> adj(pair.vertex_count());
    for (const auto& e : pair.simplices(1)) {
        adj[static_cast<std::size_t>(e[0])].push_back(e[1]);
        adj[static_cast<std::size_t>(e[1])].push_back(e[0]);
    }
    for (auto& a : adj)
        std::sort(a.begin(), a.end());
    return adj;
}

inline SpanningForest spanning_forest(const SimplicialPair& pair, TreeStrategy strategy = TreeStrategy::DepthFirst)
{
    const std::size_t n = pair.vertex_count();
    SpanningForest f;
    f.parent.assign(n, -1);
    f.depth.assign(n, 0);
    f.root.assign(n, -1);
    f.tree_edge.assign(pair.count(1), false);
    auto adj = adjacency(pair);
    std::vector<bool> seen(n, false);
    auto attach = [&](int child, int par) {
        auto c = static_cast<std::size_t>(child);
        seen[c] = true;
        f.parent[c] = par;
        f.depth[c] = f.depth[static_cast<std::size_t>(par)] + 1;
        f.root[c] = f.root[static_cast<std::size_t>(par)];
        f.tree_edge[*pair.edge_index(child, par)] = true;
        f.order.push_back(child);
    };
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s] || !pair.contains(Simplex{static_cast<int>(s)}))
            continue;
        seen[s] = true;
        f.root[s] = static_cast<int>(s);
        f.order.push_back(static_cast<int>(s));
        if (strategy == TreeStrategy::BreadthFirst) {
            std::vector<int> queue{static_cast<int>(s)};
            for (std::size_t q = 0; q < queue.size(); ++q)
                for (int nb : adj[static_cast<std::size_t>(queue[q])])
                    if (!seen[static_cast<std::size_t>(nb)]) {
                        attach(nb, queue[q]);
                        queue.push_back(nb);
                    }
        }
        else {
            // Iterative form of the recursive visit with ascending neighbours.
            std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(s), 0}};
            while (!stack.empty()) {
                auto& [v, next] = stack.back();
                const auto& nbrs = adj[static_cast<std::size_t>(v)];
                while (next < nbrs.size() && seen[static_cast<std::size_t>(nbrs[next])])
                    ++next;
                if (next == nbrs.size()) {
                    stack.pop_back();
                    continue;
                }
                int child = nbrs[next++];
                attach(child, v);
                stack.emplace_back(child, 0);
            }
        }
    }
    return f;
}

/// Loops whose classes form a basis of H_1(X;Q): fundamental cycles of the
/// spanning forest, kept when independent modulo boundaries. The loop of the
/// non-tree edge [a,b] runs b -> a and then back to b through the tree.
inline std::vector<EdgePath> homology_loops(const SimplicialPair& pair,
                                            TreeStrategy strategy = TreeStrategy::DepthFirst)
{
    auto forest = spanning_forest(pair, strategy);
    const std::size_t ne = pair.count(1);
    Matrix<Rational> bd2 = boundary_matrix(pair, 2);
    std::vector<Vector<Rational>> gens;
    for (std::size_t j = 0; j < bd2.cols(); ++j)
        gens.push_back(bd2.column(j));
    std::vector<EdgePath> loops;
    const std::size_t target = betti(pair.absolute(), 1, false);
    for (std::size_t e = 0; e < ne && loops.size() < target; ++e) {
        if (forest.tree_edge[e])
            continue;
        int a = pair.simplices(1)[e][0], b = pair.simplices(1)[e][1];
        EdgePath loop;
        loop.vertices.push_back(b);
        for (int v : forest.path(a, b))
            loop.vertices.push_back(v);
        auto chain = path_chain(pair, loop);
        SpanTester<Rational> span(Matrix<Rational>::from_columns(ne, gens));
        if (span.contains(chain))
            continue;
        gens.push_back(chain);
        loops.push_back(std::move(loop));
    }
    return loops;
}

namespace detail {

/// Echelon Z-basis of the lattice spanned by integer row vectors.
inline std::vector<std::vector<Integer>> lattice_basis(std::vector<std::vector<Integer>> rows, std::size_t m,
                                                       std::vector<std::size_t>& pivots)
{
    std::size_t r = 0;
    pivots.clear();
    for (std::size_t c = 0; c < m && r < rows.size(); ++c) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])))
                    best = i;
            if (best == rows.size())
                break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0)
                    continue;
                Integer q = rows[i][c] / rows[r][c];
                for (std::size_t j = 0; j < m; ++j)
                    rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (r < rows.size() && rows[r][c] != 0) {
            if (rows[r][c] < 0)
                for (auto& x : rows[r])
                    x = -x;
            pivots.push_back(c);
            ++r;
        }
    }
    rows.resize(r);
    return rows;
}

}  // namespace detail

/// The subgroup of Q^m generated by a set of form values, with a Z-basis.
class PeriodLattice {
public:
    PeriodLattice() = default;
    PeriodLattice(const std::vector<FormValue>& values, std::size_t m) : m_(m)
    {
        Integer den = 1;
        for (const auto& v : values)
            for (const auto& q : v.components())
                den = lcm(den, Integer(denominator(q)));
        scale_ = Rational(den);
        std::vector<std::vector<Integer>> rows;
        for (const auto& v : values) {
            std::vector<Integer> row;
            for (const auto& q : v.components())
                row.push_back(Integer(numerator(Rational(q * scale_))));
            rows.push_back(std::move(row));
        }
        basis_ = detail::lattice_basis(std::move(rows), m_, pivots_);
    }

    std::size_t rank() const { return basis_.size(); }

    std::vector<FormValue> generators() const
    {
        std::vector<FormValue> out;
        for (const auto& row : basis_) {
            std::vector<Rational> c;
            for (const auto& x : row)
                c.push_back(Rational(x) / scale_);
            out.emplace_back(std::move(c));
        }
        return out;
    }

    /// Integer coordinates of a lattice element; throws if `v` is not in the lattice.
    std::vector<int> coordinates(const FormValue& v) const
    {
        std::vector<Integer> x;
        for (const auto& q : v.components()) {
            Rational s = q * scale_;
            if (denominator(s) != 1)
                throw std::domain_error("value is not in the period lattice");
            x.push_back(Integer(numerator(s)));
        }
        std::vector<int> coords;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const std::size_t pc = pivots_[i];
            if (x[pc] % basis_[i][pc] != 0)
                throw std::domain_error("value is not in the period lattice");
            Integer q = x[pc] / basis_[i][pc];
            for (std::size_t j = 0; j < m_; ++j)
                x[j] -= q * basis_[i][j];
            coords.push_back(q.convert_to<int>());
        }
        for (const auto& r : x)
            if (r != 0)
                throw std::domain_error("value is not in the period lattice");
        return coords;
    }

    FormValue combine(const std::vector<int>& g) const
    {
        FormValue v(m_);
        auto gens = generators();
        for (std::size_t i = 0; i < g.size() && i < gens.size(); ++i)
            v += Rational(g[i]) * gens[i];
        return v;
    }

private:
    std::size_t m_ = 1;
    Rational scale_ = 1;
    std::vector<std::vector<Integer>> basis_;
    std::vector<std::size_t> pivots_;
};

struct PeriodVector {
    std::vector<EdgePath> h1_basis;
    std::vector<FormValue> values;
    std::size_t rank = 0;
};

inline PeriodVector periods(const OneForm& w)
{
    PeriodVector out;
    out.h1_basis = homology_loops(w.pair());
    for (const auto& loop : out.h1_basis)
        out.values.push_back(integrate(w, loop));
    out.rank = PeriodLattice(out.values, w.components()).rank();
    return out;
}

/// A potential f with d(f) = w, zero at the least vertex of each component; none if some period is nonzero.
inline std::optional<std::vector<FormValue>> primitive(const OneForm& w)
{
    auto forest = spanning_forest(w.pair());
    std::vector<FormValue> f(w.pair().vertex_count(), w.zero_value());
    for (int v : forest.order) {
        int p = forest.parent[static_cast<std::size_t>(v)];
        if (p >= 0)
            f[static_cast<std::size_t>(v)] = f[static_cast<std::size_t>(p)] + w.value(p, v);
    }
    for (std::size_t e = 0; e < w.pair().count(1); ++e) {
        const auto& s = w.pair().simplices(1)[e];
        if (!(f[static_cast<std::size_t>(s[1])] - f[static_cast<std::size_t>(s[0])] == w.edge_values()[e]))
            return std::nullopt;
    }
    return f;
}

/// Restriction to a subcomplex (same vertex numbering).
inline OneForm restrict(const OneForm& w, const SimplicialPair& sub)
{
    std::vector<std::string> problems;
    for (int k = 0; k <= sub.dimension(); ++k)
        for (const auto& s : sub.simplices(k))
            if (!w.pair().contains(s))
                problems.push_back(simplex_str(s) + " is not a simplex of the form's complex");
    if (!problems.empty())
        throw ValidationError(problems);
    std::vector<FormValue> vals;
    for (const auto& e : sub.simplices(1))
        vals.push_back(w.value(e[0], e[1]));
    return OneForm(std::make_shared<const SimplicialPair>(sub), std::move(vals), w.embedding());
}

/// Pullback along a simplicial map given on vertices (target vertex -> source vertex).
inline OneForm pullback(const OneForm& w, const SimplicialPair& target, const std::vector<int>& vertex_map)
{
    if (vertex_map.size() != target.vertex_count())
        throw ValidationError("vertex map has the wrong length");
    for (int k = 0; k <= target.dimension(); ++k)
        for (const auto& s : target.simplices(k)) {
            std::vector<int> image;
            for (int v : s)
                image.push_back(vertex_map[static_cast<std::size_t>(v)]);
            std::sort(image.begin(), image.end());
            image.erase(std::unique(image.begin(), image.end()), image.end());
            if (!w.pair().contains(image))
                throw ValidationError("vertex map is not simplicial at " + simplex_str(s));
        }
    std::vector<FormValue> vals;
    for (const auto& e : target.simplices(1))
        vals.push_back(w.value(vertex_map[static_cast<std::size_t>(e[0])], vertex_map[static_cast<std::size_t>(e[1])]));
    return OneForm(std::make_shared<const SimplicialPair>(target), std::move(vals), w.embedding());
}

/// Pullback along the projection of a staircase product onto one factor.
inline OneForm pullback_to_product(const OneForm& w, const SimplicialPair& product, std::size_t second_factor_vertices,
                                   bool first_factor)
{
    const int nq = static_cast<int>(second_factor_vertices);
    std::vector<int> map(product.vertex_count());
    for (std::size_t v = 0; v < map.size(); ++v)
        map[v] = first_factor ? static_cast<int>(v) / nq : static_cast<int>(v) % nq;
    return pullback(w, product, map);
}

/// Spanning-tree labels of oriented edges in H = H_1 / ker(xi), a lattice of rank r.
struct DeckLabeling {
    std::size_t rank = 0;
    PeriodLattice lattice;
    SpanningForest forest;
    std::vector<FormValue> tree_potential;  // P(root) = 0, P(child) = P(parent) + w(parent, child)
    std::vector<std::vector<int>> edge_labels;  // canonical orientation, by edge index
    std::shared_ptr<const SimplicialPair> pair;

    std::vector<int> label(int a, int b) const
    {
        if (a == b)
            return std::vector<int>(rank, 0);
        auto idx = pair->edge_index(a, b);
        if (!idx)
            throw ValidationError("no edge between " + std::to_string(a) + " and " + std::to_string(b));
        auto l = edge_labels[*idx];
        if (a > b)
            for (auto& x : l)
                x = -x;
        return l;
    }

    std::vector<int> path_label(const EdgePath& path) const
    {
        std::vector<int> g(rank, 0);
        for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
            auto l = label(path.vertices[i], path.vertices[i + 1]);
            for (std::size_t j = 0; j < rank; ++j)
                g[j] += l[j];
        }
        return g;
    }

    /// xi(g): the real period of a deck element.
    FormValue pairing(const std::vector<int>& g) const { return lattice.combine(g); }
};

inline DeckLabeling deck_labeling(const OneForm& w, TreeStrategy strategy = TreeStrategy::DepthFirst)
{
    DeckLabeling out;
    out.pair = w.shared_pair();
    out.forest = spanning_forest(w.pair(), strategy);
    out.tree_potential.assign(w.pair().vertex_count(), w.zero_value());
    for (int v : out.forest.order) {
        int p = out.forest.parent[static_cast<std::size_t>(v)];
        if (p >= 0)
            out.tree_potential[static_cast<std::size_t>(v)] = out.tree_potential[static_cast<std::size_t>(p)] + w.value(p, v);
    }
    // Defect of each edge against the tree potential; these are the periods of fundamental cycles.
    std::vector<FormValue> defects;
    for (std::size_t e = 0; e < w.pair().count(1); ++e) {
        const auto& s = w.pair().simplices(1)[e];
        defects.push_back(out.tree_potential[static_cast<std::size_t>(s[0])] + w.edge_values()[e] -
                          out.tree_potential[static_cast<std::size_t>(s[1])]);
    }
    out.lattice = PeriodLattice(defects, w.components());
    out.rank = out.lattice.rank();
    for (const auto& def : defects)
        out.edge_labels.push_back(out.lattice.coordinates(def));
    return out;
}

/// Carries a form to the barycentric subdivision. On each simplex the form has a
/// local primitive h (h at the first vertex is 0); a barycenter gets the mean of h
/// over its carrier, and new edges get differences of these values.
inline OneForm transport(const OneForm& w, const Subdivision& sd)
{
    auto local = [&](const Simplex& tau, const Simplex& sigma) {
        FormValue sum = w.zero_value();
        for (int v : sigma)
            sum += w.value(tau[0], v);
        return Rational(1, static_cast<long>(sigma.size())) * sum;
    };
    std::vector<FormValue> vals;
    for (const auto& e : sd.pair.simplices(1)) {
        const Simplex& lo = sd.carrier[static_cast<std::size_t>(e[0])];
        const Simplex& hi = sd.carrier[static_cast<std::size_t>(e[1])];
        // Carriers along an edge are nested; the larger one hosts the local primitive.
        const Simplex& tau = lo.size() > hi.size() ? lo : hi;
        vals.push_back(local(tau, hi) - local(tau, lo));
    }
    return OneForm(std::make_shared<const SimplicialPair>(sd.pair), std::move(vals), w.embedding());
}

/// A path of X as a path of the subdivision through edge midpoints.
inline EdgePath subdivide_path(const Subdivision& sd, const EdgePath& path)
{
    std::map<Simplex, int> id;
    for (std::size_t i = 0; i < sd.carrier.size(); ++i)
        id.emplace(sd.carrier[i], static_cast<int>(i));
    EdgePath out;
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
        if (i > 0 && path.vertices[i] != path.vertices[i - 1]) {
            int a = path.vertices[i - 1], b = path.vertices[i];
            out.vertices.push_back(id.at(a < b ? Simplex{a, b} : Simplex{b, a}));
        }
        out.vertices.push_back(path.vertices[i]);
    }
    return out;
}

}  // namespace relcat
