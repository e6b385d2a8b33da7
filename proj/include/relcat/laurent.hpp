// Multivariate Laurent polynomials over Q in at most three variables.
//
// These are the coefficients of the generic flat bundle: the monodromy of the
// i-th deck generator is the formal variable t_i. Linear algebra over the
// fraction field Q(t_1..t_r) is done fraction-free in this ring, which needs
// exact division only.
#pragma once

#include "relcat/rational.hpp"

#include <array>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace relcat {

inline constexpr std::size_t kMaxLaurentVars = 3;

using Monomial = std::array<int, kMaxLaurentVars>;

class LaurentPoly {
public:
    // Descending lex order so that begin() is the leading term.
    struct LexGreater {
        bool operator()(const Monomial& a, const Monomial& b) const { return a > b; }
    };
    using Terms = std::map<Monomial, Rational, LexGreater>;

    LaurentPoly() = default;
    LaurentPoly(int c) : LaurentPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    LaurentPoly(const Rational& c)                     // NOLINT(google-explicit-constructor)
    {
        if (c != 0)
            terms_.emplace(Monomial{}, c);
    }

    static LaurentPoly monomial(const Monomial& m, const Rational& c = Rational(1))
    {
        LaurentPoly p;
        if (c != 0)
            p.terms_.emplace(m, c);
        return p;
    }

    /// t_i^e
    static LaurentPoly variable(std::size_t i, int e = 1)
    {
        if (i >= kMaxLaurentVars)
            throw std::out_of_range("Laurent variable index out of range");
        Monomial m{};
        m[i] = e;
        return monomial(m);
    }

    /// t^g = prod_i t_i^{g_i}
    static LaurentPoly deck(std::span<const int> g)
    {
        if (g.size() > kMaxLaurentVars)
            throw std::out_of_range("deck label rank exceeds Laurent variable count");
        Monomial m{};
        for (std::size_t i = 0; i < g.size(); ++i)
            m[i] = g[i];
        return monomial(m);
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    const Monomial& leading_monomial() const { return terms_.begin()->first; }
    const Rational& leading_coefficient() const { return terms_.begin()->second; }
    const Monomial& trailing_monomial() const { return terms_.rbegin()->first; }

    LaurentPoly& operator+=(const LaurentPoly& o)
    {
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o)
    {
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    LaurentPoly operator-() const
    {
        LaurentPoly r = *this;
        for (auto& [m, c] : r.terms_)
            c = -c;
        return r;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly r;
        if (a.is_zero() || b.is_zero())
            return r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.add_term(mono_mul(ma, mb), ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    /// Exact quotient a / b. Throws if b does not divide a in the Laurent ring.
    friend LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b)
    {
        if (b.is_zero())
            throw std::domain_error("Laurent division by zero");
        LaurentPoly q;
        if (a.is_zero())
            return q;
        // Any exact quotient has every monomial >= trailing(a)/trailing(b) in lex order.
        const Monomial floor = mono_div(a.trailing_monomial(), b.trailing_monomial());
        LaurentPoly rem = a;
        while (!rem.is_zero()) {
            Monomial m = mono_div(rem.leading_monomial(), b.leading_monomial());
            if (m < floor)
                throw std::domain_error("Laurent division is not exact");
            Rational c = rem.leading_coefficient() / b.leading_coefficient();
            LaurentPoly term = monomial(m, c);
            q.add_term(m, c);
            rem -= term * b;
        }
        return q;
    }

    /// Substitutes t_i := values[i]; variables beyond values.size() are set to 1.
    Rational evaluate(std::span<const Rational> values) const
    {
        Rational total = 0;
        for (const auto& [m, c] : terms_) {
            Rational v = c;
            for (std::size_t i = 0; i < kMaxLaurentVars; ++i) {
                if (m[i] == 0)
                    continue;
                Rational base = i < values.size() ? values[i] : Rational(1);
                if (base == 0)
                    throw std::domain_error("Laurent evaluation at zero");
                Rational p = 1;
                int e = m[i] < 0 ? -m[i] : m[i];
                for (int k = 0; k < e; ++k)
                    p *= base;
                v *= (m[i] < 0 ? Rational(1) / p : p);
            }
            total += v;
        }
        return total;
    }

    /// t_i -> t_i^{-1}
    LaurentPoly inverted() const
    {
        LaurentPoly r;
        for (const auto& [m, c] : terms_) {
            Monomial n{};
            for (std::size_t i = 0; i < kMaxLaurentVars; ++i)
                n[i] = -m[i];
            r.terms_.emplace(n, c);
        }
        return r;
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first)
                os << (c < 0 ? " - " : " + ");
            else if (c < 0)
                os << "-";
            first = false;
            Rational a = c < 0 ? Rational(-c) : c;
            std::vector<std::string> factors;
            if (a != 1 || m == Monomial{})
                factors.push_back(a.str());
            for (std::size_t i = 0; i < kMaxLaurentVars; ++i) {
                if (m[i] == 0)
                    continue;
                std::string f = "t" + std::to_string(i + 1);
                if (m[i] != 1)
                    f += "^" + std::to_string(m[i]);
                factors.push_back(std::move(f));
            }
            for (std::size_t k = 0; k < factors.size(); ++k)
                os << (k ? "*" : "") << factors[k];
        }
        return os.str();
    }

private:
    static Monomial mono_mul(const Monomial& a, const Monomial& b)
    {
        Monomial r{};
        for (std::size_t i = 0; i < kMaxLaurentVars; ++i)
            r[i] = a[i] + b[i];
        return r;
    }
    static Monomial mono_div(const Monomial& a, const Monomial& b)
    {
        Monomial r{};
        for (std::size_t i = 0; i < kMaxLaurentVars; ++i)
            r[i] = a[i] - b[i];
        return r;
    }
    void add_term(const Monomial& m, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    Terms terms_;
};

}  // namespace relcat
