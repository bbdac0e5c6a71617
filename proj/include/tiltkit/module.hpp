#pragma once

#include "tiltkit/algebra.hpp"

namespace tiltkit {

class FdModule;
using ModulePtr = std::shared_ptr<const FdModule>;

// Finite-dimensional right module given by one action matrix per algebra
// basis element; vectors are rows and act on the right. The zero module
// (dim 0) is a legal value everywhere.
class FdModule {
public:
    static ModulePtr make(AlgebraPtr alg, std::vector<ExactMatrix> action);
    static ModulePtr zero(AlgebraPtr alg);
    static ModulePtr regular(AlgebraPtr alg);

    const AlgebraPtr& algebra() const { return alg_; }
    std::size_t dim() const { return dim_; }
    const ExactMatrix& action(std::size_t basis_index) const { return action_[basis_index]; }
    // action matrix of the algebra element with coordinate row w
    ExactMatrix action_of(const ExactMatrix& w) const;

private:
    FdModule() = default;
    void validate() const;
    AlgebraPtr alg_;
    std::size_t dim_ = 0;
    std::vector<ExactMatrix> action_;
};

// pointer identity, or equal dimension and identical action matrices over the
// same algebra
bool same_module(const ModulePtr& a, const ModulePtr& b);

// Intertwining linear map between modules over the same algebra.
class ModuleMap {
public:
    // empty slot for result structs; every operation requires a real map
    ModuleMap() = default;
    ModuleMap(ModulePtr source, ModulePtr target, ExactMatrix matrix);
    static ModuleMap identity(ModulePtr m);
    static ModuleMap zero(ModulePtr source, ModulePtr target);

    const ModulePtr& source() const { return src_; }
    const ModulePtr& target() const { return tgt_; }
    const ExactMatrix& matrix() const { return mat_; }

    ModuleMap then(const ModuleMap& g) const;  // this followed by g
    ModuleMap operator+(const ModuleMap& o) const;
    ModuleMap operator-(const ModuleMap& o) const;
    ModuleMap scaled(const mpq_class& c) const;
    bool is_zero() const { return mat_.is_zero(); }
    bool is_isomorphism() const;

private:
    ModulePtr src_, tgt_;
    ExactMatrix mat_;
};

struct SubmodulePart {
    ModulePtr module;
    ModuleMap inclusion;  // module -> ambient
};

struct QuotientPart {
    ModulePtr module;
    ModuleMap projection;    // ambient -> module
    ExactMatrix section;     // linear section: module coords -> ambient representatives
};

// Submodule spanned by the rows of span_rows (need not be independent).
SubmodulePart submodule_from_span(const ModulePtr& ambient, const ExactMatrix& span_rows);
// Quotient of the ambient module by the submodule spanned by span_rows.
QuotientPart quotient_by_span(const ModulePtr& ambient, const ExactMatrix& span_rows);

// Basis of Hom(m, n) as a list of module maps. Solved from the intertwining
// equations; for bound quiver algebras only the trivial paths and arrows are
// imposed, which generate the algebra.
std::vector<ModuleMap> hom_space(const ModulePtr& m, const ModulePtr& n);

struct MorphismParts {
    SubmodulePart kernel;    // submodule of the source
    SubmodulePart image;     // submodule of the target
    ModuleMap corestriction; // source -> image
    QuotientPart cokernel;   // quotient of the target
};
MorphismParts morphism_parts(const ModuleMap& f);

// Submodule of m spanned by m * rad(A).
ExactMatrix radical_span(const ModulePtr& m);

struct CanonicalModules {
    ModulePtr regular;
    std::vector<ModulePtr> projectives;
    std::vector<ModulePtr> injectives;
    std::vector<ModulePtr> simples;
    std::vector<ExactMatrix> idempotents;
    std::vector<ModuleMap> projective_inclusions;  // P_i -> regular
    // index of the first projective isomorphic to P_i; distinct classes carry
    // their own index (non-basic algebras repeat classes)
    std::vector<std::size_t> projective_class_rep;
};
CanonicalModules canonical_modules(const AlgebraPtr& a);

struct DirectSum {
    ModulePtr module;
    std::vector<ModuleMap> injections;
    std::vector<ModuleMap> projections;
};
DirectSum direct_sum(const AlgebraPtr& alg, const std::vector<ModulePtr>& parts);

// Linear dual as a right module over the opposite algebra; `opposite_algebra`
// must carry the transposed structure constants of m's algebra.
ModulePtr dual_module(const ModulePtr& m, const AlgebraPtr& opposite_algebra);

struct EndAlgebra {
    AlgebraPtr algebra;                 // End(m), product = composition (fg)(x) = f(g(x))
    std::vector<ModuleMap> basis;       // basis endomorphisms, aligned with algebra basis
    ExactMatrix identity_coords;        // coordinates of id_m
};
EndAlgebra end_algebra(const ModulePtr& m);

// Hom(t, m) as a right End(t)-module: (f.s)(x) = f(s(x)).
struct HomModule {
    ModulePtr module;              // over endt.algebra
    std::vector<ModuleMap> basis;  // maps t -> m aligned with coordinates
};
HomModule hom_as_right_end_module(const ModulePtr& t, const ModulePtr& m,
                                  const EndAlgebra& endt);

// Projectivity over a split algebra by the cover-dimension test.
bool is_projective(const ModulePtr& m);

struct IndecSummand {
    ModulePtr part;
    ModuleMap injection;   // part -> m
    ModuleMap projection;  // m -> part
};
// Complete split of m into indecomposable summands via primitive idempotents
// of End(m) (requires the split/field regime of primitive_idempotents).
std::vector<IndecSummand> split_indecomposables(const ModulePtr& m);

// Indecomposable summands grouped up to isomorphism, with multiplicities.
std::vector<std::pair<ModulePtr, std::size_t>> decompose(const ModulePtr& m);

struct IsoReport {
    bool isomorphic = false;
    std::optional<ModuleMap> certificate;  // explicit invertible map when isomorphic
};
IsoReport is_isomorphic(const ModulePtr& m, const ModulePtr& n);

bool in_add(const ModulePtr& m, const ModulePtr& t);

}  // namespace tiltkit
