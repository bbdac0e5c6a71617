#pragma once

#include "tiltkit/tilting.hpp"

namespace tiltkit {

// RH(c) = total Hom complex Hom(P•(T), c) carrying the strict right
// S-structure induced by the certified chain lifts.
BoundedComplex rh(const TiltingContext& ctx, const BoundedComplex& c);

struct Window {
    int lo = 0, hi = 0;
};

// LG(nc): resolve nc by projective S-modules down to degree window.lo - 1
// (brutal truncation below) and tensor with T. Homology of the result is the
// hyper-Tor of nc in every degree of the window; outside it is unreliable
// below and vanishes above.
BoundedComplex lg(const TiltingContext& ctx, const BoundedComplex& nc, Window window);
Window lg_guaranteed_window(const TiltingContext& ctx, const BoundedComplex& nc);

struct DerivedReport {
    std::vector<int> degrees;
    std::vector<std::size_t> input_dims;
    std::vector<std::size_t> output_dims;
    std::vector<bool> verdicts;
    Window window;
    bool pass = false;
};

// degreewise homology isomorphism LG(RH(c)) ≅ c
DerivedReport counit_check(const TiltingContext& ctx, const BoundedComplex& c);
// degreewise homology isomorphism RH(LG(nc)) ≅ nc
DerivedReport unit_check(const TiltingContext& ctx, const BoundedComplex& nc);
// nc lies in E = Ker(LG): LG(nc) has no homology on the guaranteed window
bool e_membership(const TiltingContext& ctx, const BoundedComplex& nc);

struct ClassicalProbeReport {
    bool pass = false;
    std::size_t tested = 0;
    std::size_t vacuous = 0;  // exact complexes, zero objects of D(S)
    std::vector<std::string> counterexamples;
};
// per-object form of "classical iff E = 0": no nonzero object of D(S) is
// annihilated by LG, and the unit is a homology isomorphism on all of them
ClassicalProbeReport classical_probe(const TiltingContext& ctx,
                                     const std::vector<BoundedComplex>& testset);

struct RandomComplexParams {
    int low = -3;
    int high = 3;
    std::size_t max_term_dim = 6;
    std::size_t max_summands = 2;
};
// Seeded bounded complex: terms are direct sums of the given indecomposables,
// differentials are random hom combinations restricted so that d∘d = 0.
BoundedComplex random_complex(const AlgebraPtr& alg,
                              const std::vector<ModulePtr>& indecomposables, std::uint64_t seed,
                              const RandomComplexParams& params = {});

}  // namespace tiltkit
