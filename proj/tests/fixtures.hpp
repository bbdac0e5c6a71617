#pragma once

// Shared test fixtures: the two bound-quiver algebras over F_101 used across
// the suite, with their canonical modules and tilting modules.

#include "tiltkit/module.hpp"

namespace tiltkit::testfix {

struct FixA2 {
    AlgebraPtr A;
    CanonicalModules canon;
    ModulePtr P1, P2, S1, S2, T;
    FixA2() {
        Quiver q{{"1", "2"}, {{"a", "1", "2"}}};
        A = bound_quiver_algebra(FieldSpec::prime(101), q, {});
        canon = canonical_modules(A);
        P1 = canon.projectives[0];
        P2 = canon.projectives[1];
        S1 = canon.simples[0];
        S2 = canon.simples[1];
        T = direct_sum(A, {P1, S1}).module;
    }
};

struct FixN3 {
    AlgebraPtr A;
    CanonicalModules canon;
    ModulePtr P1, P2, P3, S1, S2, S3, T;
    FixN3() {
        Quiver q{{"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}}};
        RelationSet rels{{Relation{{RelationTerm{1, {"a", "b"}}}}}};
        A = bound_quiver_algebra(FieldSpec::prime(101), q, rels);
        canon = canonical_modules(A);
        P1 = canon.projectives[0];
        P2 = canon.projectives[1];
        P3 = canon.projectives[2];
        S1 = canon.simples[0];
        S2 = canon.simples[1];
        S3 = canon.simples[2];
        T = direct_sum(A, {S1, P1, P2}).module;
    }
};

}  // namespace tiltkit::testfix
