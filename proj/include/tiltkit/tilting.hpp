#pragma once

#include "tiltkit/formal.hpp"
#include "tiltkit/homology.hpp"

namespace tiltkit {

struct TiltingReport {
    std::size_t pd = 0;
    std::vector<std::size_t> t2_checked;
    std::size_t cores_length = 0;
    std::vector<std::size_t> cores_term_dims;
    std::size_t s_dim = 0;
    std::size_t dagger_length = 0;
    bool dagger_exact = false;
    bool double_end_ok = false;
    // the S basis lifts to a strictly multiplicative system of chain
    // endomorphisms of the minimal resolution; when the Hochschild
    // obstruction is nonzero this is impossible and RH falls back to
    // bounded injective resolutions
    bool strict_lifts = false;
    bool rh_via_injectives = false;
};

// A certified tilting module with everything the derived machinery needs:
// the endomorphism algebra S acting on T, the minimal projective resolution
// of T with chain lifts of S (strict, validated), the coresolution of R by
// add(T), and the Hom(-, T) image of that coresolution over S^op.
struct TiltingContext {
    AlgebraPtr R;
    ModulePtr T;
    std::size_t n = 0;

    Resolution proj_res_T;  // degrees [-pd, 0]
    AddCoresolution coresolution;

    EndAlgebra endT;
    AlgebraPtr S;
    AlgebraPtr Sop;
    SBimodule bimodule;  // T with its left S-action

    ModulePtr ST;                    // T as a right S^op-module
    BoundedComplex dagger;           // Hom(T_j, T) in degree -j, over S^op
    ModuleMap dagger_augmentation;   // dagger term 0 -> ST

    // chain lifts of the S basis through the resolution: lifts[s][j] is the
    // degree -j component (an endomorphism matrix of P_j)
    std::vector<std::vector<ExactMatrix>> lifts;

    CanonicalModules canon_R;
    CanonicalModules canon_S;

    // injective-resolution model of RH, used when the lifts are not strict;
    // requires finite global dimension
    AlgebraPtr Rop;
    CanonicalModules canon_Rop;
    std::size_t gldim = 0;

    TiltingReport report;

    std::size_t pd() const { return proj_res_T.length; }
};

struct CertifyOutcome {
    std::optional<TiltingContext> ctx;
    std::vector<std::string> failures;  // itemized axiom violations
    TiltingReport report;
    bool ok() const { return failures.empty() && ctx.has_value(); }
};

CertifyOutcome certify_tilting(const AlgebraPtr& R, const ModulePtr& T, std::size_t n);

// Hom_R(T, m) as a right S-module together with the hom basis realizing it.
struct HImage {
    ModulePtr module;               // over S
    std::vector<ModuleMap> basis;   // maps T -> m, aligned with coordinates
};
HImage functor_H(const TiltingContext& ctx, const ModulePtr& m);
// induced map H(f) : H(m) -> H(m') for f : m -> m'
ModuleMap functor_H_map(const TiltingContext& ctx, const ModuleMap& f, const HImage& src,
                        const HImage& tgt);

TensorResult functor_G(const TiltingContext& ctx, const ModulePtr& nmod);
ModuleMap functor_G_map(const TiltingContext& ctx, const ModuleMap& g, const TensorResult& src,
                        const TensorResult& tgt);

// evaluation G(H(m)) -> m, f ⊗ t -> f(t)
struct CounitResult {
    HImage h;
    TensorResult gh;
    ModuleMap map;  // gh.module -> m
    bool isomorphism = false;
};
CounitResult counit(const TiltingContext& ctx, const ModulePtr& m);

// coevaluation nmod -> H(G(nmod)), p -> (t -> p ⊗ t)
struct UnitResult {
    TensorResult g;
    HImage hg;
    ModuleMap map;  // nmod -> hg.module
    bool isomorphism = false;
};
UnitResult unit(const TiltingContext& ctx, const ModulePtr& nmod);

// dim Ext^i_R(T, m) computed from the certified resolution of T
std::size_t ext_T_dim(const TiltingContext& ctx, const ModulePtr& m, std::size_t i);
// Ext^i_R(T, m) as a right S-module (homology of the strict Hom complex)
ModulePtr ext_T_module(const TiltingContext& ctx, const ModulePtr& m, std::size_t i);

bool perp_infty(const TiltingContext& ctx, const ModulePtr& m);

struct ClassReport {
    std::optional<std::size_t> index;
    std::vector<std::size_t> witness_dims;  // degrees 0..n
};
ClassReport ke_index(const TiltingContext& ctx, const ModulePtr& m);
ClassReport kt_index(const TiltingContext& ctx, const ModulePtr& nmod);

struct RoundtripReport {
    bool ok = false;
    std::vector<std::string> failures;
    std::size_t index = 0;
    std::vector<std::size_t> ke_dims, kt_dims;
    std::size_t witness_dim = 0;  // dim of the transported class witness
};
// m in KE_i: checks Ext^i(T,m) in KT_i and Tor_i(Ext^i(T,m), T) ≅ m
RoundtripReport miyashita_roundtrip(const TiltingContext& ctx, const ModulePtr& m);
// nmod in KT_i: checks Tor_i(nmod,T) in KE_i and Ext^i(T, Tor_i(nmod,T)) ≅ nmod
RoundtripReport miyashita_roundtrip_dual(const TiltingContext& ctx, const ModulePtr& nmod);

struct Lemma13Report {
    bool tor_vanishes = false;      // (1) Tor_i(H(m), T) = 0 for 1 <= i <= n
    bool counit_iso = false;        // (2)
    bool ext_vanishes = false;      // (3) Ext^i(T, G(p)) = 0 for 1 <= i <= n
    bool unit_iso = false;          // (4)
    bool ok() const { return tor_vanishes && counit_iso && ext_vanishes && unit_iso; }
};
Lemma13Report lemma13_check(const TiltingContext& ctx, const ModulePtr& m, const ModulePtr& p);

struct EquivalenceReport {
    bool equivalent = false;
    std::vector<std::string> disagreements;
};
EquivalenceReport equivalence_check(const TiltingContext& ctx, const TiltingContext& ctx2,
                                    const std::vector<ModulePtr>& testset);

}  // namespace tiltkit
