#include "relcat/io.hpp"
#include "relcat/registry.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

using namespace relcat;
namespace fx = relcat::fixtures;
using io::json;

TEST_CASE("FNV-1a reference values")
{
    CHECK(io::fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(io::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(io::fnv1a64("foobar") == 0x85944171f73967e8ULL);
    CHECK(io::hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("complex round trip")
{
    for (const auto& p : {fx::torus(), fx::cylinder(fx::Ends::Both), fx::interval(fx::Ends::One), fx::point()}) {
        auto back = io::complex_from_json(io::complex_to_json(p));
        CHECK(back == p);
    }
    auto j = json::parse(R"({"vertices": 4, "simplices": [[0, 1, 2], [2, 3]], "B": [[3]]})");
    auto p = io::complex_from_json(j);
    CHECK(p.count(0) == 4);
    CHECK(p.count(1) == 4);
    CHECK(p.in_b(Simplex{3}));
}

TEST_CASE("complex validation lists every problem")
{
    auto bad = json::parse(R"({"vertices": 3, "simplices": [[0, 1, 5], [1, 1], [0, 2]], "B": [[1, 2]]})");
    try {
        io::complex_from_json(bad);
        FAIL("accepted an invalid complex");
    } catch (const ValidationError& e) {
        CHECK(e.problems().size() == 3);
    }
    CHECK_THROWS_AS(io::complex_from_json(json::parse(R"({"simplices": [[0]]})")), ValidationError);
    CHECK_THROWS_AS(io::complex_from_json(json::parse(R"({"vertices": 2, "simplices": [["a"]]})")), ValidationError);
    CHECK_THROWS_AS(io::complex_from_json(json::parse("[1, 2]")), ValidationError);
}

TEST_CASE("form round trip")
{
    for (const auto& w : {fx::circle_form(), fx::torus_factor_form(false), fx::torus_irrational_form()}) {
        auto back = io::form_from_json(w.pair(), io::form_to_json(w));
        CHECK(back.edge_values() == w.edge_values());
    }
    auto c3 = fx::circle();
    // keys in either orientation
    auto w = io::form_from_json(c3, json::parse(R"({"edges": {"0-1": "1", "1-2": "1/2", "0-2": "-3/2"}})"));
    CHECK(w.value(2, 0) == FormValue::scalar(Rational(3, 2)));
    CHECK_THROWS_AS(io::form_from_json(c3, json::parse(R"({"edges": {"0-1": "1", "1-2": "1"}})")), ValidationError);
    CHECK_THROWS_AS(io::form_from_json(c3, json::parse(R"({"edges": {"0-1": "x", "1-2": "1", "2-0": "1"}})")),
                    ValidationError);
    CHECK_THROWS_AS(io::form_from_json(c3, json::parse(R"({"edges": {"0-1": "1", "1-2": "1", "2-0": "1", "0-2": "1"}})")),
                    ValidationError);
    CHECK_THROWS_AS(io::form_from_json(c3, json::parse(R"({"edges": {"01": "1"}})")), ValidationError);
}

TEST_CASE("bundles")
{
    CHECK(io::bundle_from_json(json("generic")) == FlatBundle::generic());
    auto b = io::bundle_from_json(json::parse(R"({"kind": "numeric", "values": ["-1", "3/2"]})"));
    CHECK(b.kind == FlatBundle::Kind::Numeric);
    CHECK(b.values.size() == 2);
    CHECK(io::bundle_from_json(io::bundle_to_json(b)) == b);
    CHECK_THROWS_AS(io::bundle_from_json(json::parse(R"({"kind": "flat"})")), ValidationError);
    CHECK_THROWS_AS(io::bundle_from_json(json::parse(R"({"kind": "numeric"})")), ValidationError);
}

TEST_CASE("paths, boxes and window chains")
{
    CHECK(io::path_from_string("0,1,2,0").vertices == std::vector<int>{0, 1, 2, 0});
    CHECK_THROWS_AS(io::path_from_string("0,x"), ValidationError);
    auto box = io::box_from_string("-2:2", 2);
    CHECK(box.lo == std::vector<int>{-2, -2});
    CHECK(box.hi == std::vector<int>{2, 2});
    CHECK(io::box_from_string("-1:1,0:3", 2).hi == std::vector<int>{1, 3});
    CHECK_THROWS_AS(io::box_from_string("3", 1), ValidationError);

    CoveringWindow win(fx::circle_form(), LabelBox::cube(1, -1, 1));
    auto z = io::chain_from_json(win, json::parse(R"({"degree": 0, "terms": [{"simplex": [1], "label": [0]}]})"));
    CHECK(z.degree == 0);
    CHECK(std::count(z.chain.begin(), z.chain.end(), Rational(1)) == 1);
    CHECK_THROWS_AS(io::chain_from_json(win, json::parse(R"({"degree": 0, "terms": [{"simplex": [1], "label": []}]})")),
                    ValidationError);
    CHECK_THROWS_AS(io::chain_from_json(win, json::parse(R"({"degree": 1, "terms": [{"simplex": [1]}]})")),
                    ValidationError);
}

TEST_CASE("rational matrix dump")
{
    Matrix<Rational> m(2, 2);
    m(0, 0) = Rational(1, 2);
    m(1, 1) = -3;
    CHECK(io::matrix_to_json(m).dump() == R"([["1/2","0"],["0","-3"]])");
}

TEST_CASE("registry entries carry provenance and round trip")
{
    auto reg = registry::registry_json();
    for (const auto& e : registry::entries()) {
        CHECK_FALSE(e.known.empty());
        for (const auto& k : e.known)
            CHECK_FALSE(k.provenance.empty());
        CHECK(e.version == fx::kFixtureVersion);
        auto back = registry::from_json(registry::to_json(e));
        CHECK(registry::to_json(back) == registry::to_json(e));
    }
    auto files = registry::fixture_files();
    for (const auto& e : registry::entries())
        for (const auto* f : {&e.complex, &e.form, &e.bundle, &e.scenario, &e.chain})
            if (!f->empty())
                CHECK(files.count(*f) == 1);
}

TEST_CASE("fixture files on disk match the registry")
{
    namespace fs = std::filesystem;
    fs::path dir(RELCAT_FIXTURE_DIR);
    auto files = registry::fixture_files();
    files["registry.json"] = registry::registry_json().dump(2) + "\n";
    for (const auto& [name, text] : files) {
        INFO(name);
        CHECK(io::read_file((dir / name).string()) == text);
    }
}
