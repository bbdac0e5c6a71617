#pragma once

#include "tiltkit/complex.hpp"

#include <map>

namespace tiltkit {

// 1-dimensional algebra over the field; modules over it are plain vector
// spaces, used for complexes of Hom spaces that carry no module structure.
AlgebraPtr scalar_algebra(FieldSpec field);
ModulePtr vector_space(const AlgebraPtr& scalar_alg, std::size_t dim);

// Kronecker-style block matrix of g ⊗ id: entry block (u, u') is I_t * g[u][u'].
ExactMatrix kron_with_identity(const ExactMatrix& g, std::size_t t);

struct ProjectiveCover {
    ModulePtr projective;
    ModuleMap onto;                       // projective -> m, surjective, radical kernel
    std::vector<std::size_t> multiplicities;  // per indecomposable projective of the algebra
};
ProjectiveCover projective_cover(const ModulePtr& m, const CanonicalModules& canon);

struct Resolution {
    BoundedComplex complex;   // projective terms in degrees [-length, 0]
    ModuleMap augmentation;   // term(0) -> m
    std::size_t length = 0;
    bool complete = false;    // kernel vanished, so length = pd(m)
};

// Minimal projective resolution by iterated covers. With allow_truncation the
// resolution stops quietly at max_len; otherwise exceeding max_len throws.
Resolution min_proj_resolution(const ModulePtr& m, std::size_t max_len,
                               bool allow_truncation = false,
                               const CanonicalModules* canon = nullptr);

struct ExtResult {
    std::size_t dim = 0;
    std::vector<ModuleMap> cocycles;  // representative maps P_i -> n
};
ExtResult ext(const ModulePtr& m, const ModulePtr& n, std::size_t i);

// (S,R)-bimodule: a right module together with a left action of another
// algebra commuting with it. Left action matrices satisfy A(s s') = A(s')A(s)
// on row vectors, one matrix per S-basis element.
struct SBimodule {
    AlgebraPtr left_algebra;
    ModulePtr right_module;
    std::vector<ExactMatrix> left_action;

    void validate() const;
    ExactMatrix left_action_of(const ExactMatrix& coords) const;
};

struct TensorResult {
    ModulePtr module;        // n ⊗_S T as a right module over T's algebra
    ExactMatrix projection;  // plain (dim n * dim T) -> quotient coordinates
    ExactMatrix section;     // quotient -> plain representatives
};
TensorResult tensor_over(const ModulePtr& n, const SBimodule& t);

// induced map n ⊗ T -> n' ⊗ T of a map of right S-modules
ModuleMap tensor_map(const ModuleMap& g, const SBimodule& t, const TensorResult& src,
                     const TensorResult& tgt);

struct TorResult {
    std::size_t dim = 0;
    ModulePtr module;  // over the right algebra of the bimodule
};
TorResult tor(const ModulePtr& n, const SBimodule& t, std::size_t i);

// Total Hom complex of a bounded complex of "arguments" p and coefficients c:
// degree j collects Hom(p^a, c^b) with b - a = j, with differential
// D(f) = d_c ∘ f - (-1)^j f ∘ d_p. Blocks are ordered by ascending a.
struct HomTotal {
    struct Block {
        int p_deg, c_deg;
        std::vector<ModuleMap> basis;
        std::size_t offset;  // coordinate offset inside the total degree
    };
    BoundedComplex complex;  // over scalar_algebra(field)
    std::map<int, std::vector<Block>> blocks;
};
HomTotal hom_total_complex(const BoundedComplex& p, const BoundedComplex& c);

struct TensorTotal {
    BoundedComplex complex;  // over the bimodule's right algebra
    std::map<int, TensorResult> parts;
};
TensorTotal tensor_total_complex(const BoundedComplex& nc, const SBimodule& t);

// Left add(T)-approximation m -> t^r assembled from the full Hom basis.
struct AddApproximation {
    ModuleMap map;      // m -> t^r
    DirectSum target;   // t^r with injections/projections
    std::size_t copies; // r = dim Hom(m, t)
};
AddApproximation left_add_approximation(const ModulePtr& m, const ModulePtr& t);

struct AddCoresolution {
    bool ok = false;
    std::string error;
    std::vector<ModulePtr> terms;  // X_0 .. X_k, all in add(t)
    std::vector<ModuleMap> maps;   // m -> X_0, X_0 -> X_1, ..., X_{k-1} -> X_k
    std::size_t length = 0;        // k
};
AddCoresolution add_coresolution(const ModulePtr& m, const ModulePtr& t, std::size_t n);

// Bounded-above complex of projectives quasi-isomorphic to c in degrees
// > depth_bound, built from the top by covering compatible pairs; the
// truncation at depth_bound is brutal.
struct ComplexResolution {
    BoundedComplex complex;  // projective terms, degrees [depth, high(c)]
    ChainMap to_input;       // quasi-iso onto c above the truncation degree
};
ComplexResolution proj_resolve_complex(const BoundedComplex& c, int depth_bound,
                                       const CanonicalModules* canon = nullptr);

// Bounded complex of injectives quasi-isomorphic to c, built by dualizing a
// projective resolution over the opposite algebra. `top_degree` must majorize
// high(c) plus the injective dimensions involved (finite global dimension);
// the result is then a complete injective resolution.
BoundedComplex inj_resolve_complex(const BoundedComplex& c, int top_degree,
                                   const AlgebraPtr& op_algebra,
                                   const CanonicalModules* op_canon = nullptr);

}  // namespace tiltkit
