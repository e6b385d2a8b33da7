// Consistency report for tabulated category values against the subadditivity
// inequalities and against computed lower bounds.
//
// Row kinds and the inequality each one checks (all values non-normalized):
//   relative_triangle   cat(X,A,xi) <= cat(X,B,xi) + cat(B,A,i*xi)
//   absolute_corollary  cat(X,xi)   <= cat(X,B,xi) + cat(B,i*xi)
//   product             cat((X,B)x(Y,D),xi) <= cat(X,B,xi_X) + cat(Y,D,xi_Y) - 1
//   bound               computed lower bound <= known value (or known upper bound)
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace relcat {

struct InequalityRow {
    std::string name;
    std::string kind;  // relative_triangle | absolute_corollary | product | bound
    std::string provenance;
    std::optional<long> lhs;        // known value of the left side
    std::vector<long> rhs_terms;    // known values of the right-side terms
    long rhs_offset = 0;            // -1 for the product inequality
    std::optional<long> computed_lower_bound;
    std::optional<long> known_value;   // exact known value of the bounded quantity
    std::optional<long> known_upper;   // an upper bound when the exact value is not tabulated
};

struct InequalityOutcome {
    std::string name;
    std::string kind;
    bool inequality_checked = false;
    bool inequality_holds = true;
    bool bound_checked = false;
    bool bound_holds = true;
    std::string detail;

    bool flagged() const { return !inequality_holds || !bound_holds; }
};

struct InequalityReport {
    std::vector<InequalityOutcome> rows;
    std::size_t flags = 0;
};

inline InequalityOutcome check_row(const InequalityRow& row)
{
    InequalityOutcome o;
    o.name = row.name;
    o.kind = row.kind;
    if (row.lhs && !row.rhs_terms.empty()) {
        long rhs = row.rhs_offset;
        for (long t : row.rhs_terms)
            rhs += t;
        o.inequality_checked = true;
        o.inequality_holds = *row.lhs <= rhs;
        o.detail += std::to_string(*row.lhs) + " <= " + std::to_string(rhs);
    }
    if (row.computed_lower_bound) {
        std::optional<long> cap = row.known_value ? row.known_value : row.known_upper;
        if (!cap && row.lhs)
            cap = row.lhs;
        if (cap) {
            o.bound_checked = true;
            o.bound_holds = *row.computed_lower_bound <= *cap;
            o.detail += std::string(o.detail.empty() ? "" : "; ") + "bound " +
                        std::to_string(*row.computed_lower_bound) + " <= " + std::to_string(*cap);
        }
    }
    return o;
}

inline InequalityReport inequality_report(const std::vector<InequalityRow>& rows)
{
    InequalityReport r;
    for (const auto& row : rows) {
        r.rows.push_back(check_row(row));
        if (r.rows.back().flagged())
            ++r.flags;
    }
    return r;
}

}  // namespace relcat
