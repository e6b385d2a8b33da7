// JSON reading and writing for complexes, forms, bundles and window chains.
//   complex  {"vertices": n, "simplices": [[i, j, ...], ...], "B": [[...], ...]}
//   form     {"edges": {"i-j": "p/q", ...}}; vector values as arrays of "p/q"
//   bundle   {"kind": "generic"} | {"kind": "numeric", "values": ["-1", "3/2"]} | {"kind": "trivial"}
//   chain    {"degree": d, "terms": [{"simplex": [...], "label": [...], "coeff": "p/q"}, ...]}
#pragma once

#include "relcat/complex.hpp"
#include "relcat/covering.hpp"
#include "relcat/local_system.hpp"
#include "relcat/one_form.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

namespace relcat::io {

using json = nlohmann::json;

/// 64-bit FNV-1a of a byte string.
inline std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t h)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(what + ": " + e.what());
    }
}

namespace detail {

inline std::vector<Simplex> simplex_list(const json& j, const std::string& key, std::vector<std::string>& problems)
{
    std::vector<Simplex> out;
    if (!j.contains(key))
        return out;
    if (!j[key].is_array()) {
        problems.push_back("\"" + key + "\" must be an array of simplices");
        return out;
    }
    for (std::size_t i = 0; i < j[key].size(); ++i) {
        const auto& s = j[key][i];
        if (!s.is_array() || s.empty()) {
            problems.push_back(key + "[" + std::to_string(i) + "] is not a nonempty array");
            continue;
        }
        Simplex simplex;
        bool ok = true;
        for (const auto& v : s) {
            if (!v.is_number_integer()) {
                ok = false;
                break;
            }
            simplex.push_back(v.get<int>());
        }
        if (!ok) {
            problems.push_back(key + "[" + std::to_string(i) + "] has a non-integer vertex");
            continue;
        }
        out.push_back(simplex);
    }
    return out;
}

inline FormValue form_value(const json& v, const std::string& where)
{
    try {
        if (v.is_string())
            return FormValue::scalar(parse_rational(v.get<std::string>()));
        if (v.is_number_integer())
            return FormValue::scalar(Rational(v.get<long long>()));
        if (v.is_array() && !v.empty()) {
            std::vector<Rational> c;
            for (const auto& x : v) {
                if (x.is_string())
                    c.push_back(parse_rational(x.get<std::string>()));
                else if (x.is_number_integer())
                    c.push_back(Rational(x.get<long long>()));
                else
                    throw ValidationError(where + ": components must be \"p/q\" strings");
            }
            return FormValue(c);
        }
    } catch (const ParseError& e) {
        throw ValidationError(where + ": " + e.what());
    }
    throw ValidationError(where + ": expected \"p/q\" or an array of them");
}

inline std::pair<int, int> edge_key(const std::string& key)
{
    auto dash = key.find('-', 1);
    if (dash == std::string::npos)
        throw ValidationError("edge key \"" + key + "\" is not of the form i-j");
    try {
        std::size_t used_a = 0, used_b = 0;
        int a = std::stoi(key.substr(0, dash), &used_a);
        int b = std::stoi(key.substr(dash + 1), &used_b);
        if (used_a != dash || used_b != key.size() - dash - 1)
            throw std::invalid_argument(key);
        return {a, b};
    } catch (const std::logic_error&) {
        throw ValidationError("edge key \"" + key + "\" is not of the form i-j");
    }
}

}  // namespace detail

/// Builds and validates the pair; all problems are reported together.
inline SimplicialPair complex_from_json(const json& j)
{
    std::vector<std::string> problems;
    if (!j.is_object())
        throw ValidationError("complex must be a JSON object");
    std::optional<std::size_t> n;
    if (j.contains("vertices")) {
        if (!j["vertices"].is_number_integer() || j["vertices"].get<long long>() < 0)
            problems.push_back("\"vertices\" must be a nonnegative integer");
        else
            n = j["vertices"].get<std::size_t>();
    } else {
        problems.push_back("missing \"vertices\"");
    }
    if (!j.contains("simplices"))
        problems.push_back("missing \"simplices\"");
    auto simplices = detail::simplex_list(j, "simplices", problems);
    auto b = detail::simplex_list(j, "B", problems);
    if (!problems.empty())
        throw ValidationError(problems);
    return build_pair(simplices, b, n);
}

inline json complex_to_json(const SimplicialPair& p)
{
    json simplices = json::array(), b = json::array();
    for (const auto& s : p.maximal_simplices())
        simplices.push_back(s);
    auto bp = p.b_pair();
    for (const auto& s : bp.maximal_simplices())
        b.push_back(s);
    return {{"vertices", p.vertex_count()}, {"simplices", simplices}, {"B", b}};
}

inline OneForm form_from_json(const SimplicialPair& pair, const json& j)
{
    if (!j.is_object() || !j.contains("edges") || !j["edges"].is_object())
        throw ValidationError("form must be an object with an \"edges\" object");
    std::map<std::pair<int, int>, FormValue> edges;
    std::vector<std::string> problems;
    std::size_t dim = 0;
    for (const auto& [key, v] : j["edges"].items()) {
        try {
            auto e = detail::edge_key(key);
            auto val = detail::form_value(v, "edge " + key);
            if (dim == 0)
                dim = val.dim();
            else if (val.dim() != dim)
                throw ValidationError("edge " + key + " has " + std::to_string(val.dim()) + " components, expected " +
                                      std::to_string(dim));
            if (edges.count(e) || edges.count({e.second, e.first}))
                throw ValidationError("edge " + key + " is given twice");
            edges[e] = val;
        } catch (const ValidationError& err) {
            for (const auto& p : err.problems())
                problems.push_back(p);
        }
    }
    if (!problems.empty())
        throw ValidationError(problems);
    if (edges.empty() && pair.count(1) == 0)
        return OneForm::zero(pair);
    return OneForm::from_edges(pair, edges);
}

inline json value_to_json(const FormValue& v)
{
    if (v.dim() == 1)
        return to_string(v[0]);
    json a = json::array();
    for (const auto& c : v.components())
        a.push_back(to_string(c));
    return a;
}

inline json form_to_json(const OneForm& w)
{
    json edges = json::object();
    const auto& p = w.pair();
    for (std::size_t i = 0; i < p.count(1); ++i) {
        const auto& e = p.simplices(1)[i];
        edges[std::to_string(e[0]) + "-" + std::to_string(e[1])] = value_to_json(w.edge_values()[i]);
    }
    return {{"edges", edges}};
}

inline FlatBundle bundle_from_json(const json& j)
{
    if (j.is_string()) {
        auto k = j.get<std::string>();
        if (k == "generic")
            return FlatBundle::generic();
        if (k == "trivial")
            return FlatBundle::trivial();
        throw ValidationError("bundle \"" + k + "\" is not generic or trivial; give a bundle file for numeric values");
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ValidationError("bundle must be an object with a \"kind\"");
    auto kind = j["kind"].get<std::string>();
    FlatBundle b;
    if (kind == "generic")
        b = FlatBundle::generic();
    else if (kind == "trivial")
        b = FlatBundle::trivial();
    else if (kind == "numeric") {
        if (!j.contains("values") || !j["values"].is_array())
            throw ValidationError("numeric bundle needs a \"values\" array");
        std::vector<MonodromyValue> vals;
        for (const auto& v : j["values"]) {
            if (!v.is_string())
                throw ValidationError("monodromy values are strings");
            try {
                vals.push_back(parse_monodromy(v.get<std::string>()));
            } catch (const ParseError& e) {
                throw ValidationError(std::string("monodromy value: ") + e.what());
            }
        }
        b = FlatBundle::numeric(vals);
    } else
        throw ValidationError("unknown bundle kind \"" + kind + "\"");
    if (j.contains("dual") && j["dual"].is_boolean() && j["dual"].get<bool>())
        b = dual(b);
    return b;
}

inline json bundle_to_json(const FlatBundle& b)
{
    json j;
    switch (b.kind) {
    case FlatBundle::Kind::Generic: j["kind"] = "generic"; break;
    case FlatBundle::Kind::Trivial: j["kind"] = "trivial"; break;
    case FlatBundle::Kind::Numeric: {
        j["kind"] = "numeric";
        json vals = json::array();
        for (const auto& v : b.values)
            vals.push_back(v.str());
        j["values"] = vals;
        break;
    }
    }
    if (b.dual)
        j["dual"] = true;
    return j;
}

template <class R>
json matrix_to_json(const Matrix<R>& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) {
            if constexpr (std::is_same_v<R, Rational>)
                row.push_back(to_string(m(i, k)));
            else
                row.push_back(m(i, k).str());
        }
        rows.push_back(row);
    }
    return rows;
}

inline json vector_to_json(const Vector<Rational>& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(to_string(x));
    return a;
}

/// "0,1,2,0" -> an edge path.
inline EdgePath path_from_string(const std::string& s)
{
    EdgePath p;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            p.vertices.push_back(std::stoi(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ValidationError("path entry \"" + item + "\" is not a vertex index");
        }
    }
    if (p.vertices.empty())
        throw ValidationError("empty path");
    return p;
}

/// "-2:2" per coordinate, comma separated for r > 1; a single range is used for every coordinate.
inline LabelBox box_from_string(const std::string& s, std::size_t rank)
{
    LabelBox box;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':', 1);
        if (colon == std::string::npos)
            throw ValidationError("box range \"" + item + "\" is not lo:hi");
        try {
            box.lo.push_back(std::stoi(item.substr(0, colon)));
            box.hi.push_back(std::stoi(item.substr(colon + 1)));
        } catch (const std::logic_error&) {
            throw ValidationError("box range \"" + item + "\" is not lo:hi");
        }
    }
    if (box.lo.size() == 1 && rank > 1)
        box = LabelBox::cube(rank, box.lo[0], box.hi[0]);
    if (rank == 0)
        box = LabelBox{{}, {}};
    return box;
}

struct WindowChain {
    int degree = 0;
    Vector<Rational> chain;
};

inline WindowChain chain_from_json(const CoveringWindow& win, const json& j)
{
    if (!j.is_object() || !j.contains("degree") || !j["degree"].is_number_integer() || !j.contains("terms") ||
        !j["terms"].is_array())
        throw ValidationError("class must be an object with \"degree\" and \"terms\"");
    WindowChain out;
    out.degree = j["degree"].get<int>();
    std::vector<std::tuple<Simplex, Label, Rational>> entries;
    for (const auto& t : j["terms"]) {
        if (!t.contains("simplex") || !t["simplex"].is_array())
            throw ValidationError("class term without a \"simplex\"");
        Simplex s = t["simplex"].get<Simplex>();
        Label g = t.value("label", Label{});
        Rational c = 1;
        if (t.contains("coeff"))
            c = detail::form_value(t["coeff"], "coefficient")[0];
        if (static_cast<int>(s.size()) != out.degree + 1)
            throw ValidationError("term " + simplex_str(s) + " does not have degree " + std::to_string(out.degree));
        entries.emplace_back(s, g, c);
    }
    out.chain = win.chain(out.degree, entries);
    return out;
}

}  // namespace relcat::io
