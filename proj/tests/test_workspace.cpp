#include <doctest.h>

#include "tiltkit/derived.hpp"
#include "tiltkit/workspace.hpp"

using namespace tiltkit;

namespace {

std::string fixture(const std::string& name) {
    return std::string(TILTKIT_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("FIX-A2 loads with validated modules and complexes") {
    Workspace ws = load_workspace_file(fixture("fix_a2.json"));
    CHECK(ws.field == FieldSpec::prime(101));
    CHECK(ws.algebra->dim() == 3);
    CHECK(ws.modules.size() >= 4);
    CHECK(ws.module_named("T")->dim() == 3);
    CHECK(ws.module_named("R")->dim() == 3);
    // the rep modules match the canonical ones
    CanonicalModules canon = canonical_modules(ws.algebra);
    CHECK(is_isomorphic(ws.module_named("P1"), canon.projectives[0]).isomorphic);
    CHECK(is_isomorphic(ws.module_named("P2"), canon.projectives[1]).isomorphic);
    CHECK(is_isomorphic(ws.module_named("S1"), canon.simples[0]).isomorphic);
    CHECK(is_isomorphic(ws.module_named("R"), canon.regular).isomorphic);
    CHECK(is_isomorphic(ws.module_named("T"),
                        direct_sum(ws.algebra, {canon.projectives[0], canon.simples[0]}).module)
              .isomorphic);
    const BoundedComplex& c = ws.complex_named("P2toP1");
    CHECK(c.low() == -1);
    CHECK(c.homology_dim(0) == 1);
    CHECK_THROWS(ws.module_named("missing"));
    CHECK_THROWS(ws.complex_named("missing"));
}

TEST_CASE("FIX-N3 loads and certifies from disk") {
    Workspace ws = load_workspace_file(fixture("fix_n3.json"));
    CHECK(ws.algebra->dim() == 5);
    CanonicalModules canon = canonical_modules(ws.algebra);
    CHECK(is_isomorphic(ws.module_named("T"),
                        direct_sum(ws.algebra, {canon.simples[0], canon.projectives[0],
                                                canon.projectives[1]})
                            .module)
              .isomorphic);
    CertifyOutcome out = certify_tilting(ws.algebra, ws.module_named("T"), 2);
    CHECK(out.ok());
}

TEST_CASE("FIX-REG loads with the regular module as T") {
    Workspace ws = load_workspace_file(fixture("fix_reg.json"));
    CanonicalModules canon = canonical_modules(ws.algebra);
    CHECK(is_isomorphic(ws.module_named("T"), canon.regular).isomorphic);
    CertifyOutcome out = certify_tilting(ws.algebra, ws.module_named("T"), 0);
    CHECK(out.ok());
}

TEST_CASE("rejects a non-associative structure constant table") {
    std::string text = R"({
        "field": {"kind": "rational"},
        "algebra": {"kind": "structure_constants", "dim": 2,
            "table": [[[1,0],[0,1]], [[0,1],[1,0]]],
            "unit": [1, 0]},
        "modules": {}
    })";
    // b1*b1 = b1, b1*b2 = b2, b2*b1 = b2, b2*b2 = b1 is the group algebra of
    // Z/2: associative. Break it: b2*b1 = b1, b2*b2 = b1 gives
    // (b2 b1) b2 = b2 while b2 (b1 b2) = b1.
    std::string broken = text;
    broken.replace(broken.find("[[0,1],[1,0]]"), 13, "[[1,0],[1,0]]");
    CHECK_NOTHROW(parse_workspace_text(text));
    CHECK_THROWS_AS(parse_workspace_text(broken), LawViolation);
}

TEST_CASE("rejects an invalid module action") {
    std::string text = R"({
        "field": {"kind": "prime", "p": 101},
        "algebra": {"kind": "bound_quiver", "vertices": ["1","2"],
                    "arrows": [{"name":"a","src":"1","tgt":"2"}], "relations": []},
        "modules": {"M": {"kind": "action", "dim": 1,
                          "action": [[[1]], [[1]], [[1]]]}}
    })";
    // action(e1) = action(e2) = 1 violates e1*e2 = 0
    CHECK_THROWS_WITH_AS(parse_workspace_text(text),
                         doctest::Contains("module 'M'"), std::runtime_error);
}

TEST_CASE("rejects a complex with d∘d != 0, naming the degree") {
    std::string text = R"({
        "field": {"kind": "prime", "p": 101},
        "algebra": {"kind": "bound_quiver", "vertices": ["1"], "arrows": [], "relations": []},
        "modules": {"M": {"kind": "rep", "vertex_dims": {"1": 1}, "arrow_mats": {}}},
        "complexes": {"C": {"low": 0, "terms": ["M", "M", "M"],
                            "differentials": [[[1]], [[1]]]}}
    })";
    CHECK_THROWS_WITH_AS(parse_workspace_text(text), doctest::Contains("d∘d"),
                         std::runtime_error);
}

TEST_CASE("rejects malformed scalars and unknown references with locations") {
    std::string bad_scalar = R"({
        "field": {"kind": "prime", "p": 101},
        "algebra": {"kind": "bound_quiver", "vertices": ["1"], "arrows": [], "relations": []},
        "modules": {"M": {"kind": "action", "dim": 1, "action": [[["x"]]]}}
    })";
    CHECK_THROWS_AS(parse_workspace_text(bad_scalar), std::runtime_error);
    std::string bad_ref = R"({
        "field": {"kind": "prime", "p": 101},
        "algebra": {"kind": "bound_quiver", "vertices": ["1"], "arrows": [], "relations": []},
        "modules": {},
        "complexes": {"C": {"low": 0, "terms": ["nope"], "differentials": []}}
    })";
    CHECK_THROWS_WITH_AS(parse_workspace_text(bad_ref), doctest::Contains("nope"),
                         std::runtime_error);
    CHECK_THROWS_AS(parse_workspace_text("{"), std::runtime_error);
    CHECK_THROWS_AS(parse_workspace_text(R"({"field": {"kind": "prime", "p": 6}})"),
                    std::exception);
}

TEST_CASE("rational workspace with fraction entries") {
    std::string text = R"({
        "field": {"kind": "rational"},
        "algebra": {"kind": "bound_quiver", "vertices": ["1"],
                    "arrows": [{"name":"x","src":"1","tgt":"1"}],
                    "relations": [[{"coeff": "1", "path": ["x","x"]}]]},
        "modules": {"M": {"kind": "rep", "vertex_dims": {"1": 2},
                          "arrow_mats": {"x": [["0", "1/2"], ["0", "0"]]}}}
    })";
    Workspace ws = parse_workspace_text(text);
    CHECK(ws.algebra->dim() == 2);
    CHECK(ws.module_named("M")->dim() == 2);
    CHECK(ws.module_named("M")->action(1).at(0, 1) == mpq_class(1, 2));
}
