#include <doctest.h>

#include "tiltkit/algebra.hpp"

using namespace tiltkit;

namespace {

Quiver a2() {
    return Quiver{{"1", "2"}, {{"a", "1", "2"}}};
}

Quiver a3() {
    return Quiver{{"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}}};
}

RelationSet rad_square_a3() {
    // b∘a in function notation: first a, then b
    return RelationSet{{Relation{{RelationTerm{1, {"a", "b"}}}}}};
}

// independent path-count oracle: number of paths between vertices, relations
// ignored here because the fixtures only kill the unique length-2 path
std::size_t count_paths_a2() { return 2 + 1; }  // e1, e2, a

}  // namespace

TEST_CASE("bound quiver algebra of 1->2") {
    auto A = bound_quiver_algebra(FieldSpec::rationals(), a2(), {});
    CHECK(A->dim() == count_paths_a2());
    CHECK(A->labels() == std::vector<std::string>{"e_1", "e_2", "a"});
    // e1 * a = a, a * e2 = a, a * a = 0
    CHECK(A->structconst(0, 2, 2) == 1);
    CHECK(A->structconst(2, 1, 2) == 1);
    for (std::size_t k = 0; k < 3; ++k) CHECK(A->structconst(2, 2, k) == 0);
}

TEST_CASE("bound quiver algebra of 1->2->3 with rad^2 = 0") {
    auto A = bound_quiver_algebra(FieldSpec::prime(101), a3(), rad_square_a3());
    CHECK(A->dim() == 5);  // e1, e2, e3, a, b  (ab killed)
}

TEST_CASE("one loop with x^2 = 0") {
    Quiver q{{"1"}, {{"x", "1", "1"}}};
    RelationSet rels{{Relation{{RelationTerm{1, {"x", "x"}}}}}};
    auto A = bound_quiver_algebra(FieldSpec::rationals(), q, rels);
    CHECK(A->dim() == 2);
}

TEST_CASE("loop without relations does not terminate") {
    Quiver q{{"1"}, {{"x", "1", "1"}}};
    BoundQuiverOptions opts;
    opts.degree_bound = 8;
    CHECK_THROWS_WITH_AS(bound_quiver_algebra(FieldSpec::rationals(), q, {}, opts),
                         "quotient not finite-dimensional or bound too small",
                         std::runtime_error);
}

TEST_CASE("truncated polynomial algebra k[x]/x^4") {
    Quiver q{{"1"}, {{"x", "1", "1"}}};
    RelationSet rels{{Relation{{RelationTerm{1, {"x", "x", "x", "x"}}}}}};
    auto A = bound_quiver_algebra(FieldSpec::rationals(), q, rels);
    CHECK(A->dim() == 4);
    ExactMatrix x(A->field(), 1, 4);
    x.set(0, 1, 1);
    ExactMatrix x2 = A->mult(x, x);
    CHECK(x2.at(0, 2) == 1);
    ExactMatrix x3 = A->mult(x2, x);
    ExactMatrix x4 = A->mult(x3, x);
    CHECK(x4.is_zero());
}

TEST_CASE("structure_algebra validates laws with witness") {
    FieldSpec f = FieldSpec::rationals();
    // valid: 1-dimensional algebra
    auto triv = Algebra::from_table(f, {{{mpq_class(1)}}}, {mpq_class(1)});
    CHECK(triv->dim() == 1);

    // upper triangular 2x2 over Q: basis e11, e22, e12 -> dim 3
    std::vector<std::vector<std::vector<mpq_class>>> t(
        3, std::vector<std::vector<mpq_class>>(3, std::vector<mpq_class>(3, 0)));
    auto set = [&](std::size_t i, std::size_t j, std::size_t k) { t[i][j][k] = 1; };
    set(0, 0, 0);  // e11 e11 = e11
    set(1, 1, 1);  // e22 e22 = e22
    set(0, 2, 2);  // e11 e12 = e12
    set(2, 1, 2);  // e12 e22 = e12
    auto ut = Algebra::from_table(f, t, {1, 1, 0});
    CHECK(ut->dim() == 3);

    // break associativity: e12 e12 = e11
    t[2][2][0] = 1;
    CHECK_THROWS_AS(Algebra::from_table(f, t, {1, 1, 0}), LawViolation);
}

TEST_CASE("radical of quiver algebra is the arrow ideal") {
    auto A = bound_quiver_algebra(FieldSpec::rationals(), a2(), {});
    ExactMatrix r = radical(*A);
    REQUIRE(r.rows() == 1);
    CHECK(r.at(0, 2) == 1);  // spanned by the arrow
}

TEST_CASE("radical of a semisimple product is zero") {
    FieldSpec f = FieldSpec::rationals();
    std::vector<std::vector<std::vector<mpq_class>>> t(
        2, std::vector<std::vector<mpq_class>>(2, std::vector<mpq_class>(2, 0)));
    t[0][0][0] = 1;
    t[1][1][1] = 1;  // Q x Q
    auto A = Algebra::from_table(f, t, {1, 1});
    CHECK(radical(*A).rows() == 0);
}

TEST_CASE("radical is a nilpotent two-sided ideal") {
    auto A = bound_quiver_algebra(FieldSpec::prime(101), a3(), rad_square_a3());
    ExactMatrix rad = radical(*A);
    // closed under both multiplications
    for (std::size_t r = 0; r < rad.rows(); ++r)
        for (std::size_t b = 0; b < A->dim(); ++b) {
            ExactMatrix eb(A->field(), 1, A->dim());
            eb.set(0, b, 1);
            ExactMatrix row = rad.submatrix(r, 0, 1, A->dim());
            CHECK(rows_in_span(rad, A->mult(row, eb)));
            CHECK(rows_in_span(rad, A->mult(eb, row)));
        }
    // nilpotent: products of radical elements vanish at length dim
    ExactMatrix power = rad;
    for (std::size_t step = 0; step < A->dim(); ++step) {
        ExactMatrix next(A->field(), power.rows() * rad.rows(), A->dim());
        for (std::size_t i = 0; i < power.rows(); ++i)
            for (std::size_t j = 0; j < rad.rows(); ++j)
                next.paste(A->mult(power.submatrix(i, 0, 1, A->dim()),
                                   rad.submatrix(j, 0, 1, A->dim())),
                           i * rad.rows() + j, 0);
        power = next;
    }
    CHECK(power.is_zero());
}

TEST_CASE("opposite transposes structure constants and is an involution") {
    auto A = bound_quiver_algebra(FieldSpec::rationals(), a2(), {});
    auto Aop = opposite(*A);
    for (std::size_t i = 0; i < A->dim(); ++i)
        for (std::size_t j = 0; j < A->dim(); ++j)
            for (std::size_t k = 0; k < A->dim(); ++k)
                CHECK(Aop->structconst(i, j, k) == A->structconst(j, i, k));
    auto Aopop = opposite(*Aop);
    CHECK(Aopop->same_content(*A));

    // commutative algebra: opposite equals itself
    Quiver loop{{"1"}, {{"x", "1", "1"}}};
    RelationSet rels{{Relation{{RelationTerm{1, {"x", "x"}}}}}};
    auto B = bound_quiver_algebra(FieldSpec::rationals(), loop, rels);
    CHECK(opposite(*B)->same_content(*B));
}

TEST_CASE("primitive idempotents of a quiver algebra are the trivial paths") {
    auto A = bound_quiver_algebra(FieldSpec::prime(101), a3(), rad_square_a3());
    auto es = primitive_idempotents(*A);
    REQUIRE(es.size() == 3);
    ExactMatrix sum(A->field(), 1, A->dim());
    for (const auto& e : es) {
        sum = sum + e;
        CHECK(A->mult(e, e) == e);
    }
    CHECK(sum == A->unit());
}

TEST_CASE("primitive idempotents of the 2x2 matrix algebra over Q") {
    FieldSpec f = FieldSpec::rationals();
    // basis e11, e12, e21, e22
    auto idx = [](std::size_t i, std::size_t j) { return i * 2 + j; };
    std::vector<std::vector<std::vector<mpq_class>>> t(
        4, std::vector<std::vector<mpq_class>>(4, std::vector<mpq_class>(4, 0)));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    if (j == k) t[idx(i, j)][idx(k, l)][idx(i, l)] = 1;
    auto M2 = Algebra::from_table(f, t, {1, 0, 0, 1});
    CHECK(radical(*M2).rows() == 0);
    auto es = primitive_idempotents(*M2);
    REQUIRE(es.size() == 2);
    ExactMatrix sum(f, 1, 4);
    for (const auto& e : es) {
        CHECK(M2->mult(e, e) == e);
        sum = sum + e;
    }
    CHECK(sum == M2->unit());
    CHECK(M2->mult(es[0], es[1]).is_zero());
}

TEST_CASE("primitive idempotents via radical lifting: k[x]/x^2") {
    // local algebra: only idempotent is 1
    Quiver q{{"1"}, {{"x", "1", "1"}}};
    RelationSet rels{{Relation{{RelationTerm{1, {"x", "x"}}}}}};
    auto A = bound_quiver_algebra(FieldSpec::rationals(), q, rels);
    // force the structure-constant route
    std::vector<std::vector<std::vector<mpq_class>>> t(
        2, std::vector<std::vector<mpq_class>>(2, std::vector<mpq_class>(2, 0)));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) t[i][j][k] = A->structconst(i, j, k);
    auto B = Algebra::from_table(FieldSpec::rationals(), t, {1, 0});
    auto es = primitive_idempotents(*B);
    REQUIRE(es.size() == 1);
    CHECK(es[0] == B->unit());
}

TEST_CASE("minimal polynomial and field roots") {
    FieldSpec f = FieldSpec::rationals();
    // diag(1, 2) has minimal polynomial (x-1)(x-2) = 2 - 3x + x^2
    ExactMatrix d(f, 2, 2);
    d.set(0, 0, 1);
    d.set(1, 1, 2);
    auto mp = minimal_polynomial(d);
    REQUIRE(mp.size() == 2);
    CHECK(mp[0] == 2);
    CHECK(mp[1] == -3);
    RootReport roots = field_roots(f, mp);
    CHECK(roots.complete);
    REQUIRE(roots.roots.size() == 2);
    CHECK(((roots.roots[0] == 1 && roots.roots[1] == 2) ||
           (roots.roots[0] == 2 && roots.roots[1] == 1)));

    // (x-1)^2 (x+3): roots with multiplicity stripped
    // p(x) = x^3 + x^2 - 5x + 3
    RootReport multi = field_roots(f, {mpq_class(3), mpq_class(-5), mpq_class(1)});
    CHECK(multi.complete);
    REQUIRE(multi.roots.size() == 2);

    // x^2 + 1 has no rational roots
    RootReport none = field_roots(f, {mpq_class(1), mpq_class(0)});
    CHECK(!none.complete);
    CHECK(none.roots.empty());

    // over F_101: x^2 + 1 = (x-10)(x+10) since 10^2 = 100 = -1
    RootReport f101 = field_roots(FieldSpec::prime(101), {mpq_class(1), mpq_class(0)});
    CHECK(f101.complete);
    CHECK(f101.roots.size() == 2);
}
