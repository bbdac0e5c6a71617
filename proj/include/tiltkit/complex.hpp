#pragma once

#include "tiltkit/module.hpp"

namespace tiltkit {

// Bounded cochain complex ... -> C^i -> C^{i+1} -> ... with terms in degrees
// [low, high] and differentials d^i : C^i -> C^{i+1}; d∘d = 0 is validated on
// construction. Terms outside the range are the zero module.
class BoundedComplex {
public:
    static BoundedComplex make(AlgebraPtr alg, int low, std::vector<ModulePtr> terms,
                               std::vector<ModuleMap> diffs);
    static BoundedComplex zero(AlgebraPtr alg);
    static BoundedComplex stalk(ModulePtr m, int degree = 0);

    const AlgebraPtr& algebra() const { return alg_; }
    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(terms_.size()) - 1; }
    bool empty_range() const { return terms_.empty(); }

    ModulePtr term(int i) const;
    ModuleMap diff(int i) const;  // d^i : C^i -> C^{i+1}

    // shift by k: result^i = C^{i+k}, differentials scaled by (-1)^k
    BoundedComplex shifted(int k) const;
    // drop zero modules at both ends (empty complex collapses to zero at 0)
    BoundedComplex trimmed() const;

    std::size_t homology_dim(int i) const;
    bool is_exact() const;

private:
    AlgebraPtr alg_;
    int low_ = 0;
    std::vector<ModulePtr> terms_;
    std::vector<ModuleMap> diffs_;
    ModulePtr zero_;
};

// H^i = ker d^i / im d^{i-1} with the induced action.
ModulePtr homology(const BoundedComplex& c, int i);

struct ChainMap {
    ChainMap(BoundedComplex source, BoundedComplex target, std::vector<ModuleMap> components,
             int comp_low);
    ModuleMap component(int i) const;

    BoundedComplex source, target;
    std::vector<ModuleMap> components;  // component i acts C_src^i -> C_tgt^i
    int comp_low = 0;
};

BoundedComplex cone(const ChainMap& f);
bool quasi_iso(const ChainMap& f);

// Linear-dual complex over the opposite algebra: term i is D(c^{-i}) with
// transposed differentials. Applying it twice recovers the original shape.
BoundedComplex dual_complex(const BoundedComplex& c, const AlgebraPtr& opposite_algebra);

}  // namespace tiltkit
