#include "tiltkit/complex.hpp"

namespace tiltkit {

BoundedComplex BoundedComplex::make(AlgebraPtr alg, int low, std::vector<ModulePtr> terms,
                                    std::vector<ModuleMap> diffs) {
    BoundedComplex c;
    c.alg_ = alg;
    c.low_ = low;
    c.terms_ = std::move(terms);
    c.diffs_ = std::move(diffs);
    c.zero_ = FdModule::zero(alg);
    if (!c.terms_.empty() && c.diffs_.size() + 1 != c.terms_.size())
        throw std::invalid_argument("need one differential between consecutive terms");
    for (const auto& t : c.terms_)
        if (!same_algebra(t->algebra(), alg))
            throw std::invalid_argument("complex term over a different algebra");
    for (std::size_t i = 0; i < c.diffs_.size(); ++i) {
        if (!same_module(c.diffs_[i].source(), c.terms_[i]) ||
            !same_module(c.diffs_[i].target(), c.terms_[i + 1]))
            throw std::invalid_argument("differential endpoints do not match the terms");
        if (i + 1 < c.diffs_.size() && !(c.diffs_[i].matrix() * c.diffs_[i + 1].matrix()).is_zero())
            throw std::invalid_argument("d∘d != 0 at degree " +
                                        std::to_string(low + static_cast<int>(i)));
    }
    return c;
}

BoundedComplex BoundedComplex::zero(AlgebraPtr alg) {
    return make(std::move(alg), 0, {}, {});
}

BoundedComplex BoundedComplex::stalk(ModulePtr m, int degree) {
    return make(m->algebra(), degree, {m}, {});
}

ModulePtr BoundedComplex::term(int i) const {
    if (terms_.empty() || i < low_ || i > high()) return zero_;
    return terms_[static_cast<std::size_t>(i - low_)];
}

ModuleMap BoundedComplex::diff(int i) const {
    if (!terms_.empty() && i >= low_ && i < high())
        return diffs_[static_cast<std::size_t>(i - low_)];
    return ModuleMap::zero(term(i), term(i + 1));
}

BoundedComplex BoundedComplex::shifted(int k) const {
    if (terms_.empty()) return *this;
    std::vector<ModuleMap> diffs = diffs_;
    if (k % 2 != 0)
        for (auto& d : diffs) d = d.scaled(-1);
    return make(alg_, low_ - k, terms_, std::move(diffs));
}

BoundedComplex BoundedComplex::trimmed() const {
    int lo = low_, hi = high();
    while (lo <= hi && term(lo)->dim() == 0) ++lo;
    while (hi >= lo && term(hi)->dim() == 0) --hi;
    if (lo > hi) return zero(alg_);
    std::vector<ModulePtr> terms;
    std::vector<ModuleMap> diffs;
    for (int i = lo; i <= hi; ++i) terms.push_back(term(i));
    for (int i = lo; i < hi; ++i) diffs.push_back(diff(i));
    return make(alg_, lo, std::move(terms), std::move(diffs));
}

std::size_t BoundedComplex::homology_dim(int i) const {
    std::size_t dim_ker = term(i)->dim() - rank(diff(i).matrix());
    std::size_t dim_im = rank(diff(i - 1).matrix());
    return dim_ker - dim_im;
}

bool BoundedComplex::is_exact() const {
    for (int i = low_ - 1; i <= high() + 1; ++i)
        if (homology_dim(i) != 0) return false;
    return true;
}

ModulePtr homology(const BoundedComplex& c, int i) {
    ModulePtr ci = c.term(i);
    ExactMatrix cycles = kernel_basis(c.diff(i).matrix());
    SubmodulePart z = submodule_from_span(ci, cycles);
    // boundaries expressed in cycle coordinates
    ExactMatrix b = c.diff(i - 1).matrix();
    auto bz = solve(z.inclusion.matrix(), b);
    if (!bz) throw std::logic_error("boundaries not contained in cycles");
    return quotient_by_span(z.module, *bz).module;
}

ChainMap::ChainMap(BoundedComplex source_, BoundedComplex target_,
                   std::vector<ModuleMap> components_, int comp_low_)
    : source(std::move(source_)),
      target(std::move(target_)),
      components(std::move(components_)),
      comp_low(comp_low_) {
    for (std::size_t k = 0; k < components.size(); ++k) {
        int i = comp_low + static_cast<int>(k);
        if (!same_module(components[k].source(), source.term(i)) ||
            !same_module(components[k].target(), target.term(i)))
            throw std::invalid_argument("chain map component endpoints mismatch at degree " +
                                        std::to_string(i));
    }
    int lo = std::min(source.low(), target.low()) - 1;
    int hi = std::max(source.high(), target.high()) + 1;
    for (int i = lo; i <= hi; ++i) {
        ExactMatrix lhs = component(i).matrix() * target.diff(i).matrix();
        ExactMatrix rhs = source.diff(i).matrix() * component(i + 1).matrix();
        if (!(lhs == rhs))
            throw std::invalid_argument("chain map squares do not commute at degree " +
                                        std::to_string(i));
    }
}

ModuleMap ChainMap::component(int i) const {
    int idx = i - comp_low;
    if (idx >= 0 && idx < static_cast<int>(components.size()))
        return components[static_cast<std::size_t>(idx)];
    return ModuleMap::zero(source.term(i), target.term(i));
}

BoundedComplex cone(const ChainMap& f) {
    const AlgebraPtr alg = f.source.algebra();
    int lo = std::min(f.source.low() - 1, f.target.low());
    int hi = std::max(f.source.high() - 1, f.target.high());
    if (lo > hi) return BoundedComplex::zero(alg);
    std::vector<ModulePtr> terms;
    std::vector<DirectSum> sums;
    for (int i = lo; i <= hi; ++i) {
        DirectSum ds = direct_sum(alg, {f.source.term(i + 1), f.target.term(i)});
        terms.push_back(ds.module);
        sums.push_back(std::move(ds));
    }
    std::vector<ModuleMap> diffs;
    for (int i = lo; i < hi; ++i) {
        std::size_t k = static_cast<std::size_t>(i - lo);
        const auto& cur = sums[k];
        const auto& nxt = sums[k + 1];
        // d(c, t) = (-d_src c, f(c) + d_tgt t)
        ExactMatrix m(alg->field(), terms[k]->dim(), terms[k + 1]->dim());
        ExactMatrix a = -f.source.diff(i + 1).matrix();
        ExactMatrix b = f.component(i + 1).matrix();
        ExactMatrix d = f.target.diff(i).matrix();
        m = cur.projections[0].matrix() * a * nxt.injections[0].matrix() +
            cur.projections[0].matrix() * b * nxt.injections[1].matrix() +
            cur.projections[1].matrix() * d * nxt.injections[1].matrix();
        diffs.emplace_back(terms[k], terms[k + 1], std::move(m));
    }
    return BoundedComplex::make(alg, lo, std::move(terms), std::move(diffs));
}

bool quasi_iso(const ChainMap& f) {
    return cone(f).is_exact();
}

BoundedComplex dual_complex(const BoundedComplex& c, const AlgebraPtr& opposite_algebra) {
    if (c.empty_range()) return BoundedComplex::zero(opposite_algebra);
    std::vector<ModulePtr> terms;
    std::vector<ModuleMap> diffs;
    for (int i = c.high(); i >= c.low(); --i) terms.push_back(dual_module(c.term(i), opposite_algebra));
    for (int i = c.high(); i > c.low(); --i) {
        std::size_t a = static_cast<std::size_t>(c.high() - i);
        diffs.emplace_back(terms[a], terms[a + 1], c.diff(i - 1).matrix().transposed());
    }
    return BoundedComplex::make(opposite_algebra, -c.high(), std::move(terms), std::move(diffs));
}

}  // namespace tiltkit
