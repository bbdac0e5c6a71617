#include <doctest.h>

#include "fixtures.hpp"
#include "tiltkit/homology.hpp"

using namespace tiltkit;
using tiltkit::testfix::FixA2;
using tiltkit::testfix::FixN3;

namespace {

SBimodule bimodule_of(const ModulePtr& t) {
    EndAlgebra e = end_algebra(t);
    std::vector<ExactMatrix> act;
    for (const auto& f : e.basis) act.push_back(f.matrix());
    SBimodule bim{e.algebra, t, std::move(act)};
    bim.validate();
    return bim;
}

// exactness of 0 -> m -> X_0 -> ... -> X_k -> 0 assembled as a complex
bool coresolution_exact(const ModulePtr& m, const AddCoresolution& c) {
    std::vector<ModulePtr> terms{m};
    for (const auto& t : c.terms) terms.push_back(t);
    std::vector<ModuleMap> diffs = c.maps;
    BoundedComplex cx = BoundedComplex::make(m->algebra(), -1, terms, diffs);
    return cx.is_exact();
}

}  // namespace

TEST_CASE("homology of stalks and exact complexes") {
    FixA2 f;
    BoundedComplex stalk = BoundedComplex::stalk(f.P1, 0);
    CHECK(homology(stalk, 0)->dim() == f.P1->dim());
    CHECK(homology(stalk, 1)->dim() == 0);
    CHECK(homology(stalk, -1)->dim() == 0);

    // exact complex 0 -> P2 -> P1 -> S1 -> 0
    auto incl = hom_space(f.P2, f.P1);
    REQUIRE(incl.size() == 1);
    MorphismParts parts = morphism_parts(incl[0]);
    IsoReport iso = is_isomorphic(parts.cokernel.module, f.S1);
    REQUIRE(iso.isomorphic);
    BoundedComplex ex = BoundedComplex::make(
        f.A, -2, {f.P2, f.P1, f.S1},
        {incl[0], parts.cokernel.projection.then(*iso.certificate)});
    CHECK(ex.is_exact());

    // complex 0 -> P2 -> P1 -> 0 in degrees -1, 0 has H^0 = S1
    BoundedComplex two = BoundedComplex::make(f.A, -1, {f.P2, f.P1}, {incl[0]});
    CHECK(homology(two, -1)->dim() == 0);
    ModulePtr h0 = homology(two, 0);
    CHECK(h0->dim() == 1);
    CHECK(is_isomorphic(h0, f.S1).isomorphic);
}

TEST_CASE("cone: identity, shift of a stalk, resolution augmentation") {
    FixA2 f;
    BoundedComplex stalk = BoundedComplex::stalk(f.T, 0);
    ChainMap idc(stalk, stalk, {ModuleMap::identity(f.T)}, 0);
    CHECK(cone(idc).is_exact());
    CHECK(quasi_iso(idc));

    // cone of M -> 0 is the shifted stalk M[1]
    BoundedComplex zero = BoundedComplex::zero(f.A);
    ChainMap to_zero(stalk, zero, {}, 0);
    BoundedComplex c = cone(to_zero);
    CHECK(c.low() == -1);
    CHECK(c.term(-1)->dim() == f.T->dim());
    BoundedComplex shifted = stalk.shifted(1);
    CHECK(shifted.low() == -1);
    CHECK(shifted.term(-1)->dim() == f.T->dim());

    // augmentation P•(S1) -> S1 is a quasi-isomorphism
    Resolution res = min_proj_resolution(f.S1, 4);
    BoundedComplex target = BoundedComplex::stalk(f.S1, 0);
    ChainMap aug(res.complex, target, {res.augmentation}, 0);
    CHECK(quasi_iso(aug));
    CHECK(cone(aug).is_exact());

    // zero map between non-exact complexes is not a quasi-isomorphism
    ChainMap z(stalk, BoundedComplex::stalk(f.S1, 0), {ModuleMap::zero(f.T, f.S1)}, 0);
    CHECK(!quasi_iso(z));
}

TEST_CASE("minimal projective resolutions") {
    FixA2 f;
    Resolution proj = min_proj_resolution(f.P1, 3);
    CHECK(proj.length == 0);
    CHECK(proj.complete);

    Resolution rs1 = min_proj_resolution(f.S1, 3);
    CHECK(rs1.complete);
    CHECK(rs1.length == 1);
    CHECK(is_isomorphic(rs1.complex.term(0), f.P1).isomorphic);
    CHECK(is_isomorphic(rs1.complex.term(-1), f.P2).isomorphic);

    FixN3 g;
    Resolution r3 = min_proj_resolution(g.S1, 4);
    CHECK(r3.complete);
    CHECK(r3.length == 2);
    CHECK(is_isomorphic(r3.complex.term(0), g.P1).isomorphic);
    CHECK(is_isomorphic(r3.complex.term(-1), g.P2).isomorphic);
    CHECK(is_isomorphic(r3.complex.term(-2), g.P3).isomorphic);

    // minimality: every differential image lies in the radical of its target
    for (int d = r3.complex.low(); d < r3.complex.high(); ++d) {
        ExactMatrix rad = radical_span(r3.complex.term(d + 1));
        CHECK(rows_in_span(rad, r3.complex.diff(d).matrix()));
    }
    ExactMatrix rad_aug = radical_span(g.S1);
    (void)rad_aug;  // augmentation is onto a simple; nothing to check there
}

TEST_CASE("resolution length cap") {
    // k[x]/x^2: the simple module has infinite projective dimension
    Quiver q{{"1"}, {{"x", "1", "1"}}};
    RelationSet rels{{Relation{{RelationTerm{1, {"x", "x"}}}}}};
    auto A = bound_quiver_algebra(FieldSpec::prime(101), q, rels);
    CanonicalModules canon = canonical_modules(A);
    CHECK_THROWS_WITH_AS(min_proj_resolution(canon.simples[0], 5),
                         "projective resolution exceeds max_len", std::runtime_error);
    Resolution trunc = min_proj_resolution(canon.simples[0], 5, /*allow_truncation=*/true);
    CHECK(!trunc.complete);
    CHECK(trunc.length == 5);
}

TEST_CASE("ext dimensions match the fixtures") {
    FixA2 f;
    CHECK(ext(f.P1, f.S2, 1).dim == 0);
    CHECK(ext(f.P1, f.S2, 2).dim == 0);
    CHECK(ext(f.S1, f.P2, 1).dim == 1);
    CHECK(ext(f.S1, f.P2, 0).dim == hom_space(f.S1, f.P2).size());
    CHECK(ext(f.S1, f.S1, 1).dim == 0);

    FixN3 g;
    CHECK(ext(g.S1, g.P2, 2).dim == 0);
    CHECK(ext(g.T, g.S3, 2).dim == 1);
    CHECK(ext(g.S1, g.S3, 2).dim == 1);
    // ext(m, n, 0) = hom on a non-projective example
    CHECK(ext(g.S2, g.P1, 0).dim == hom_space(g.S2, g.P1).size());
}

TEST_CASE("ext from a padded, non-minimal resolution agrees") {
    FixA2 f;
    Resolution res = min_proj_resolution(f.S1, 3);
    // pad with P2 == P2 in degrees -1, 0
    DirectSum d1 = direct_sum(f.A, {res.complex.term(-1), f.P2});
    DirectSum d0 = direct_sum(f.A, {res.complex.term(0), f.P2});
    ExactMatrix dm(f.A->field(), d1.module->dim(), d0.module->dim());
    dm.paste(res.complex.diff(-1).matrix(), 0, 0);
    for (std::size_t i = 0; i < f.P2->dim(); ++i)
        dm.set(res.complex.term(-1)->dim() + i, res.complex.term(0)->dim() + i, 1);
    BoundedComplex padded = BoundedComplex::make(
        f.A, -1, {d1.module, d0.module}, {ModuleMap(d1.module, d0.module, dm)});
    for (const auto& n : {f.P1, f.P2, f.S1, f.S2}) {
        HomTotal ht = hom_total_complex(padded, BoundedComplex::stalk(n, 0));
        for (std::size_t i = 0; i <= 2; ++i)
            CHECK(ht.complex.homology_dim(static_cast<int>(i)) == ext(f.S1, n, i).dim);
    }
}

TEST_CASE("Euler characteristic identity on fixtures") {
    FixN3 g;
    Resolution res = min_proj_resolution(g.S1, 4);
    for (const auto& n : {g.P1, g.P2, g.P3, g.S1, g.S2, g.S3}) {
        long lhs = 0, rhs = 0;
        for (std::size_t i = 0; i <= res.length; ++i) {
            long sign = (i % 2 == 0) ? 1 : -1;
            lhs += sign * static_cast<long>(ext(g.S1, n, i).dim);
            rhs += sign * static_cast<long>(
                              hom_space(res.complex.term(-static_cast<int>(i)), n).size());
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("tensor over the endomorphism algebra") {
    FixA2 f;
    SBimodule bim = bimodule_of(f.T);
    // S ⊗_S T ≅ T
    ModulePtr sreg = FdModule::regular(bim.left_algebra);
    TensorResult st = tensor_over(sreg, bim);
    CHECK(st.module->dim() == f.T->dim());
    CHECK(is_isomorphic(st.module, f.T).isomorphic);
    // 0 ⊗ T = 0
    TensorResult zt = tensor_over(FdModule::zero(bim.left_algebra), bim);
    CHECK(zt.module->dim() == 0);
    // dimension = plain dim minus relation rank (checked internally by the
    // quotient construction; assert the arithmetic on the regular case)
    CHECK(st.module->dim() ==
          sreg->dim() * f.T->dim() -
              (sreg->dim() * f.T->dim() - st.module->dim()));
}

TEST_CASE("tor of projectives vanishes and tor_0 is the plain tensor") {
    FixA2 f;
    SBimodule bim = bimodule_of(f.T);
    CanonicalModules canon_s = canonical_modules(bim.left_algebra);
    for (const auto& p : canon_s.projectives) {
        CHECK(tor(p, bim, 1).dim == 0);
        CHECK(tor(p, bim, 2).dim == 0);
        TorResult t0 = tor(p, bim, 0);
        TensorResult direct = tensor_over(p, bim);
        CHECK(t0.dim == direct.module->dim());
        CHECK(is_isomorphic(t0.module, direct.module).isomorphic);
    }
    for (const auto& s : canon_s.simples) {
        TorResult t0 = tor(s, bim, 0);
        TensorResult direct = tensor_over(s, bim);
        CHECK(t0.dim == direct.module->dim());
    }
}

TEST_CASE("hom total complex basics") {
    FixA2 f;
    // both stalks: Hom(P, M) concentrated in degree 0
    HomTotal ht =
        hom_total_complex(BoundedComplex::stalk(f.P1, 0), BoundedComplex::stalk(f.T, 0));
    CHECK(ht.complex.low() == 0);
    CHECK(ht.complex.high() == 0);
    CHECK(ht.complex.term(0)->dim() == hom_space(f.P1, f.T).size());

    // projective stalk against an exact complex stays exact
    auto incl = hom_space(f.P2, f.P1);
    MorphismParts parts = morphism_parts(incl[0]);
    IsoReport iso = is_isomorphic(parts.cokernel.module, f.S1);
    BoundedComplex ex = BoundedComplex::make(
        f.A, -2, {f.P2, f.P1, f.S1},
        {incl[0], parts.cokernel.projection.then(*iso.certificate)});
    HomTotal exact_ht = hom_total_complex(BoundedComplex::stalk(f.P1, 0), ex);
    CHECK(exact_ht.complex.is_exact());

    // Hom(P•(T), S2-stalk) has homology only in degree 1, of dimension 1
    Resolution rt = min_proj_resolution(f.T, 2);
    HomTotal hs2 = hom_total_complex(rt.complex, BoundedComplex::stalk(f.S2, 0));
    CHECK(hs2.complex.homology_dim(0) == 0);
    CHECK(hs2.complex.homology_dim(1) == 1);
    CHECK(hs2.complex.homology_dim(2) == 0);
}

TEST_CASE("hypercohomology consistency of the hom total complex") {
    FixN3 g;
    Resolution rt = min_proj_resolution(g.T, 3);
    for (const auto& m : {g.P1, g.P2, g.P3, g.S1, g.S2, g.S3}) {
        HomTotal ht = hom_total_complex(rt.complex, BoundedComplex::stalk(m, 0));
        for (std::size_t i = 0; i <= 2; ++i)
            CHECK(ht.complex.homology_dim(static_cast<int>(i)) == ext(g.T, m, i).dim);
    }
}

TEST_CASE("tensor total complex basics") {
    FixA2 f;
    SBimodule bim = bimodule_of(f.T);
    ModulePtr sreg = FdModule::regular(bim.left_algebra);
    TensorTotal tt = tensor_total_complex(BoundedComplex::stalk(sreg, 0), bim);
    CHECK(tt.complex.low() == 0);
    CHECK(tt.complex.high() == 0);
    CHECK(is_isomorphic(tt.complex.term(0), f.T).isomorphic);
    TensorTotal zero = tensor_total_complex(BoundedComplex::zero(bim.left_algebra), bim);
    CHECK(zero.complex.empty_range());
}

TEST_CASE("left add approximations") {
    FixA2 f;
    // m in add(t): the approximation splits
    AddApproximation ap = left_add_approximation(f.P1, f.T);
    CHECK(ap.copies == hom_space(f.P1, f.T).size());
    CHECK(rank(ap.map.matrix()) == f.P1->dim());
    // split: some module-map retraction composes to the identity
    auto back = hom_space(ap.target.module, f.P1);
    ExactMatrix stack(f.A->field(), back.size(), f.P1->dim() * f.P1->dim());
    for (std::size_t k = 0; k < back.size(); ++k) {
        ExactMatrix comp = ap.map.matrix() * back[k].matrix();
        for (std::size_t i = 0; i < f.P1->dim(); ++i)
            for (std::size_t j = 0; j < f.P1->dim(); ++j)
                stack.set(k, i * f.P1->dim() + j, comp.at(i, j));
    }
    ExactMatrix idf(f.A->field(), 1, f.P1->dim() * f.P1->dim());
    for (std::size_t i = 0; i < f.P1->dim(); ++i) idf.set(0, i * f.P1->dim() + i, 1);
    CHECK(solve(stack, idf).has_value());

    // no homs: zero approximation
    AddApproximation none = left_add_approximation(f.S2, f.S1);
    CHECK(none.copies == 0);
    CHECK(none.target.module->dim() == 0);

    FixN3 g;
    AddApproximation p3 = left_add_approximation(g.P3, g.T);
    CHECK(p3.copies == 1);
    CHECK(rank(p3.map.matrix()) == g.P3->dim());
}

TEST_CASE("add coresolutions") {
    FixA2 f;
    AddCoresolution self = add_coresolution(f.T, f.T, 1);
    CHECK(self.ok);
    CHECK(self.length == 0);
    CHECK(coresolution_exact(f.T, self));

    AddCoresolution reg = add_coresolution(f.canon.regular, f.T, 1);
    REQUIRE(reg.ok);
    CHECK(reg.length == 1);
    for (const auto& t : reg.terms) CHECK(in_add(t, f.T));
    CHECK(coresolution_exact(f.canon.regular, reg));

    FixN3 g;
    AddCoresolution p3 = add_coresolution(g.P3, g.T, 2);
    REQUIRE(p3.ok);
    CHECK(p3.length == 2);
    for (const auto& t : p3.terms) CHECK(in_add(t, g.T));
    CHECK(coresolution_exact(g.P3, p3));

    AddCoresolution r3 = add_coresolution(g.canon.regular, g.T, 2);
    REQUIRE(r3.ok);
    CHECK(r3.length <= 2);
    CHECK(coresolution_exact(g.canon.regular, r3));

    // failure: S2 over A2 has no injective approximation into add(S1)
    AddCoresolution bad = add_coresolution(f.S2, f.S1, 3);
    CHECK(!bad.ok);
}

TEST_CASE("projective resolution of a complex") {
    FixA2 f;
    // stalk: agrees with the module resolution
    BoundedComplex stalk = BoundedComplex::stalk(f.S1, 0);
    ComplexResolution res = proj_resolve_complex(stalk, -3);
    for (int j = -3; j <= 0; ++j) {
        ModulePtr t = res.complex.term(j);
        if (t->dim() > 0) CHECK(in_add(t, f.canon.regular));
    }
    for (int j = -2; j <= 1; ++j)
        CHECK(res.complex.homology_dim(j) == stalk.homology_dim(j));

    // a two-term complex: homology preserved above the truncation degree
    auto incl = hom_space(f.P2, f.P1);
    BoundedComplex two = BoundedComplex::make(f.A, -1, {f.P2, f.P1}, {incl[0]});
    ComplexResolution r2 = proj_resolve_complex(two, -4);
    for (int j = -3; j <= 0; ++j) CHECK(r2.complex.homology_dim(j) == two.homology_dim(j));
    // cone of the comparison map is exact above the truncation
    BoundedComplex cn = cone(r2.to_input);
    for (int j = -3; j <= 1; ++j) CHECK(cn.homology_dim(j) == 0);
}
