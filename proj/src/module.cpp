#include "tiltkit/module.hpp"

#include <algorithm>

namespace tiltkit {

// ---------------------------------------------------------------------------
// FdModule / ModuleMap
// ---------------------------------------------------------------------------

ModulePtr FdModule::make(AlgebraPtr alg, std::vector<ExactMatrix> action) {
    if (!alg) throw std::invalid_argument("module needs an algebra");
    if (action.size() != alg->dim())
        throw std::invalid_argument("need one action matrix per algebra basis element");
    auto m = std::shared_ptr<FdModule>(new FdModule());
    m->alg_ = std::move(alg);
    m->dim_ = action.empty() ? 0 : action[0].rows();
    m->action_ = std::move(action);
    m->validate();
    return m;
}

ModulePtr FdModule::zero(AlgebraPtr alg) {
    std::vector<ExactMatrix> action(alg->dim(), ExactMatrix(alg->field(), 0, 0));
    return make(std::move(alg), std::move(action));
}

ModulePtr FdModule::regular(AlgebraPtr alg) {
    std::vector<ExactMatrix> action;
    for (std::size_t j = 0; j < alg->dim(); ++j) action.push_back(alg->right_mult(j));
    return make(std::move(alg), std::move(action));
}

void FdModule::validate() const {
    for (const auto& a : action_)
        if (a.rows() != dim_ || a.cols() != dim_ || !(a.field() == alg_->field()))
            throw std::invalid_argument("action matrix shape/field mismatch");
    if (!action_of(alg_->unit()).is_identity())
        throw std::invalid_argument("module action violates the unit law");
    const std::size_t d = alg_->dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            ExactMatrix lhs = action_[i] * action_[j];
            ExactMatrix rhs(alg_->field(), dim_, dim_);
            for (std::size_t k = 0; k < d; ++k) {
                mpq_class c = alg_->structconst(i, j, k);
                if (c != 0) rhs = rhs + action_[k].scaled(c);
            }
            if (lhs != rhs)
                throw std::invalid_argument("module action violates multiplicativity at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
        }
}

ExactMatrix FdModule::action_of(const ExactMatrix& w) const {
    ExactMatrix out(alg_->field(), dim_, dim_);
    for (std::size_t j = 0; j < alg_->dim(); ++j) {
        mpq_class c = w.at(0, j);
        if (c != 0) out = out + action_[j].scaled(c);
    }
    return out;
}

bool same_module(const ModulePtr& a, const ModulePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (!same_algebra(a->algebra(), b->algebra()) || a->dim() != b->dim()) return false;
    for (std::size_t i = 0; i < a->algebra()->dim(); ++i)
        if (!(a->action(i) == b->action(i))) return false;
    return true;
}

ModuleMap::ModuleMap(ModulePtr source, ModulePtr target, ExactMatrix matrix)
    : src_(std::move(source)), tgt_(std::move(target)), mat_(std::move(matrix)) {
    if (!same_algebra(src_->algebra(), tgt_->algebra()))
        throw std::invalid_argument("module map across different algebras");
    if (mat_.rows() != src_->dim() || mat_.cols() != tgt_->dim())
        throw std::invalid_argument("module map matrix shape mismatch");
    const auto& alg = *src_->algebra();
    for (std::size_t b = 0; b < alg.dim(); ++b)
        if (!(src_->action(b) * mat_ == mat_ * tgt_->action(b)))
            throw std::invalid_argument("map does not intertwine the actions (basis " +
                                        std::to_string(b) + ")");
}

ModuleMap ModuleMap::identity(ModulePtr m) {
    ExactMatrix id = ExactMatrix::identity(m->algebra()->field(), m->dim());
    return ModuleMap(m, m, std::move(id));
}

ModuleMap ModuleMap::zero(ModulePtr source, ModulePtr target) {
    ExactMatrix z(source->algebra()->field(), source->dim(), target->dim());
    return ModuleMap(std::move(source), std::move(target), std::move(z));
}

ModuleMap ModuleMap::then(const ModuleMap& g) const {
    if (tgt_->dim() != g.src_->dim() || !same_algebra(tgt_->algebra(), g.src_->algebra()))
        throw std::invalid_argument("composition target/source mismatch");
    return ModuleMap(src_, g.tgt_, mat_ * g.mat_);
}

ModuleMap ModuleMap::operator+(const ModuleMap& o) const {
    return ModuleMap(src_, tgt_, mat_ + o.mat_);
}

ModuleMap ModuleMap::operator-(const ModuleMap& o) const {
    return ModuleMap(src_, tgt_, mat_ - o.mat_);
}

ModuleMap ModuleMap::scaled(const mpq_class& c) const {
    return ModuleMap(src_, tgt_, mat_.scaled(c));
}

bool ModuleMap::is_isomorphism() const {
    return src_->dim() == tgt_->dim() && rank(mat_) == src_->dim();
}

// ---------------------------------------------------------------------------
// submodules and quotients
// ---------------------------------------------------------------------------

SubmodulePart submodule_from_span(const ModulePtr& ambient, const ExactMatrix& span_rows) {
    const auto& alg = ambient->algebra();
    RrefResult r = rref(span_rows);
    ExactMatrix basis(alg->field(), r.rank, ambient->dim());
    for (std::size_t i = 0; i < r.rank; ++i)
        basis.paste(r.reduced.submatrix(i, 0, 1, ambient->dim()), i, 0);
    std::vector<ExactMatrix> action;
    for (std::size_t b = 0; b < alg->dim(); ++b) {
        auto sol = solve(basis, basis * ambient->action(b));
        if (!sol) throw std::invalid_argument("span is not closed under the algebra action");
        action.push_back(*sol);
    }
    ModulePtr sub = FdModule::make(alg, std::move(action));
    return SubmodulePart{sub, ModuleMap(sub, ambient, basis)};
}

QuotientPart quotient_by_span(const ModulePtr& ambient, const ExactMatrix& span_rows) {
    const auto& alg = ambient->algebra();
    const std::size_t d = ambient->dim();
    RrefResult r = rref(span_rows);
    std::vector<bool> is_pivot(d, false);
    for (auto c : r.pivot_cols) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < d; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    const std::size_t q = free_cols.size();
    ExactMatrix section(alg->field(), q, d);
    for (std::size_t i = 0; i < q; ++i) section.set(i, free_cols[i], 1);
    ExactMatrix proj(alg->field(), d, q);
    for (std::size_t j = 0; j < d; ++j) {
        ExactMatrix res(alg->field(), 1, d);
        res.set(0, j, 1);
        for (std::size_t k = 0; k < r.rank; ++k) {
            mpq_class c = res.at(0, r.pivot_cols[k]);
            if (c != 0) res = res - r.reduced.submatrix(k, 0, 1, d).scaled(c);
        }
        for (std::size_t i = 0; i < q; ++i) proj.set(j, i, res.at(0, free_cols[i]));
    }
    std::vector<ExactMatrix> action;
    for (std::size_t b = 0; b < alg->dim(); ++b)
        action.push_back(section * ambient->action(b) * proj);
    ModulePtr quot = FdModule::make(alg, std::move(action));
    return QuotientPart{quot, ModuleMap(ambient, quot, proj), section};
}

// ---------------------------------------------------------------------------
// hom spaces
// ---------------------------------------------------------------------------

namespace {

// basis indices whose intertwining constraints generate all others
std::vector<std::size_t> constraint_generators(const Algebra& alg) {
    if (!alg.quiver()) {
        std::vector<std::size_t> all(alg.dim());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return all;
    }
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < alg.dim(); ++i)
        if (alg.quiver()->path_len[i] <= 1) gens.push_back(i);
    return gens;
}

ExactMatrix row_basis(const ExactMatrix& rows) {
    RrefResult r = rref(rows);
    ExactMatrix out(rows.field(), r.rank, rows.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
        out.paste(r.reduced.submatrix(i, 0, 1, rows.cols()), i, 0);
    return out;
}

// Quiver-algebra fast path: a map is block diagonal across the vertex
// decompositions M = ⊕ im(act(e_v)), and only the arrow squares constrain
// the blocks. Cuts the unknown count from (dim m)(dim n) to the sum of the
// per-vertex products.
std::vector<ModuleMap> hom_space_blocked(const ModulePtr& m, const ModulePtr& n,
                                         const QuiverInfo& info) {
    const auto& alg = *m->algebra();
    const FieldSpec field = alg.field();
    const std::size_t nv = info.quiver.vertices.size();
    std::vector<ExactMatrix> bm(nv), bn(nv);
    std::vector<std::size_t> dmv(nv), dnv(nv), offset(nv);
    std::size_t unknowns = 0;
    for (std::size_t v = 0; v < nv; ++v) {
        std::size_t ev = info.vertex_idempotent[v];
        bm[v] = row_basis(m->action(ev));
        bn[v] = row_basis(n->action(ev));
        dmv[v] = bm[v].rows();
        dnv[v] = bn[v].rows();
        offset[v] = unknowns;
        unknowns += dmv[v] * dnv[v];
    }
    if (unknowns == 0) return {};
    // restriction of an arrow action between vertex components, in the bases
    auto arrow_block = [&](const ModulePtr& mod, const std::vector<ExactMatrix>& basis,
                           std::size_t arrow_basis_idx, std::size_t v, std::size_t w) {
        ExactMatrix image = basis[v] * mod->action(arrow_basis_idx);
        auto sol = solve(basis[w], image);
        if (!sol) throw std::logic_error("arrow image left the vertex component");
        return *sol;
    };
    std::size_t constraint_cols = 0;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> arrows;  // (basis idx, v, w)
    for (std::size_t b = 0; b < alg.dim(); ++b)
        if (info.path_len[b] == 1) {
            std::size_t v = info.path_src[b], w = info.path_tgt[b];
            arrows.push_back({b, v, w});
            constraint_cols += dmv[v] * dnv[w];
        }
    ExactMatrix sys(field, unknowns, constraint_cols);
    std::size_t col0 = 0;
    for (auto [b, v, w] : arrows) {
        ExactMatrix rm = arrow_block(m, bm, b, v, w);  // dmv[v] x dmv[w]
        ExactMatrix rn = arrow_block(n, bn, b, v, w);  // dnv[v] x dnv[w]
        // constraint E[i][j] = sum_k rm[i][k] phi_w[k][j] - sum_k phi_v[i][k] rn[k][j]
        for (std::size_t i = 0; i < dmv[v]; ++i)
            for (std::size_t j = 0; j < dnv[w]; ++j) {
                std::size_t col = col0 + i * dnv[w] + j;
                for (std::size_t k = 0; k < dmv[w]; ++k) {
                    mpq_class c = rm.at(i, k);
                    if (c != 0) {
                        std::size_t row = offset[w] + k * dnv[w] + j;
                        sys.set(row, col, sys.at(row, col) + c);
                    }
                }
                for (std::size_t k = 0; k < dnv[v]; ++k) {
                    mpq_class c = rn.at(k, j);
                    if (c != 0) {
                        std::size_t row = offset[v] + i * dnv[v] + k;
                        sys.set(row, col, sys.at(row, col) - c);
                    }
                }
            }
        col0 += dmv[v] * dnv[w];
    }
    ExactMatrix ker = kernel_basis(sys);
    // assemble in ambient coordinates: F = U^{-1} blockdiag(phi) V
    ExactMatrix u(field, m->dim(), m->dim());
    ExactMatrix vmat(field, n->dim(), n->dim());
    {
        std::size_t r = 0;
        for (std::size_t v = 0; v < nv; ++v) {
            u.paste(bm[v], r, 0);
            r += dmv[v];
        }
        r = 0;
        for (std::size_t v = 0; v < nv; ++v) {
            vmat.paste(bn[v], r, 0);
            r += dnv[v];
        }
    }
    auto uinv = inverse(u);
    if (!uinv) throw std::logic_error("vertex decomposition basis not invertible");
    std::vector<ModuleMap> out;
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        ExactMatrix blk(field, m->dim(), n->dim());
        std::size_t row_off = 0, colf_off = 0;
        for (std::size_t v = 0; v < nv; ++v) {
            for (std::size_t i = 0; i < dmv[v]; ++i)
                for (std::size_t j = 0; j < dnv[v]; ++j)
                    blk.set(row_off + i, colf_off + j, ker.at(r, offset[v] + i * dnv[v] + j));
            row_off += dmv[v];
            colf_off += dnv[v];
        }
        out.emplace_back(m, n, *uinv * blk * vmat);
    }
    return out;
}

}  // namespace

std::vector<ModuleMap> hom_space(const ModulePtr& m, const ModulePtr& n) {
    if (!same_algebra(m->algebra(), n->algebra()))
        throw std::invalid_argument("hom_space across different algebras");
    const auto& alg = *m->algebra();
    const std::size_t dm = m->dim(), dn = n->dim();
    if (dm == 0 || dn == 0) return {};
    if (alg.quiver()) return hom_space_blocked(m, n, *alg.quiver());
    std::vector<std::size_t> gens = constraint_generators(alg);
    ExactMatrix stacked(alg.field(), dm * dn, dm * dn * gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const ExactMatrix& am = m->action(gens[g]);
        const ExactMatrix& an = n->action(gens[g]);
        const std::size_t off = g * dm * dn;
        // vec(act_m(b) * F): coefficient of F[k][j] at position (i, j) is am[i][k]
        for (std::size_t i = 0; i < dm; ++i)
            for (std::size_t k = 0; k < dm; ++k) {
                mpq_class c = am.at(i, k);
                if (c == 0) continue;
                for (std::size_t j = 0; j < dn; ++j) {
                    std::size_t row = k * dn + j, col = off + i * dn + j;
                    stacked.set(row, col, stacked.at(row, col) + c);
                }
            }
        // vec(F * act_n(b)): coefficient of F[i][k] at position (i, j) is an[k][j]
        for (std::size_t k = 0; k < dn; ++k)
            for (std::size_t j = 0; j < dn; ++j) {
                mpq_class c = an.at(k, j);
                if (c == 0) continue;
                for (std::size_t i = 0; i < dm; ++i) {
                    std::size_t row = i * dn + k, col = off + i * dn + j;
                    stacked.set(row, col, stacked.at(row, col) - c);
                }
            }
    }
    ExactMatrix ker = kernel_basis(stacked);
    std::vector<ModuleMap> out;
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        ExactMatrix f(alg.field(), dm, dn);
        for (std::size_t i = 0; i < dm; ++i)
            for (std::size_t j = 0; j < dn; ++j) f.set(i, j, ker.at(r, i * dn + j));
        out.emplace_back(m, n, std::move(f));
    }
    return out;
}

MorphismParts morphism_parts(const ModuleMap& f) {
    SubmodulePart ker = submodule_from_span(f.source(), kernel_basis(f.matrix()));
    SubmodulePart img = submodule_from_span(f.target(), f.matrix());
    auto core = solve(img.inclusion.matrix(), f.matrix());
    if (!core) throw std::logic_error("image corestriction failed");
    QuotientPart coker = quotient_by_span(f.target(), f.matrix());
    return MorphismParts{ker, img, ModuleMap(f.source(), img.module, *core), coker};
}

ExactMatrix radical_span(const ModulePtr& m) {
    ExactMatrix rad = radical(*m->algebra());
    ExactMatrix stacked(m->algebra()->field(), rad.rows() * m->dim(), m->dim());
    for (std::size_t r = 0; r < rad.rows(); ++r)
        stacked.paste(m->action_of(rad.submatrix(r, 0, 1, rad.cols())), r * m->dim(), 0);
    return stacked;
}

// ---------------------------------------------------------------------------
// canonical modules
// ---------------------------------------------------------------------------

CanonicalModules canonical_modules(const AlgebraPtr& a) {
    CanonicalModules out;
    out.regular = FdModule::regular(a);
    out.idempotents = primitive_idempotents(*a);
    AlgebraPtr aop = opposite(*a);
    ModulePtr regular_op = FdModule::regular(aop);
    for (const auto& e : out.idempotents) {
        SubmodulePart p = submodule_from_span(out.regular, a->left_mult_of(e));
        out.projectives.push_back(p.module);
        out.projective_inclusions.push_back(p.inclusion);
        out.simples.push_back(quotient_by_span(p.module, radical_span(p.module)).module);
        // injective = dual of the left projective A*e, taken over the opposite algebra
        SubmodulePart pop = submodule_from_span(regular_op, a->right_mult_of(e));
        out.injectives.push_back(dual_module(pop.module, a));
    }
    // group repeated classes (non-basic algebras)
    for (std::size_t i = 0; i < out.projectives.size(); ++i) {
        std::size_t rep = i;
        for (std::size_t j = 0; j < i; ++j)
            if (out.projective_class_rep[j] == j &&
                is_isomorphic(out.projectives[i], out.projectives[j]).isomorphic) {
                rep = j;
                break;
            }
        out.projective_class_rep.push_back(rep);
    }
    return out;
}

DirectSum direct_sum(const AlgebraPtr& alg, const std::vector<ModulePtr>& parts) {
    std::size_t total = 0;
    for (const auto& p : parts) {
        if (!same_algebra(p->algebra(), alg))
            throw std::invalid_argument("direct_sum parts over different algebras");
        total += p->dim();
    }
    std::vector<ExactMatrix> action(alg->dim(), ExactMatrix(alg->field(), total, total));
    std::size_t off = 0;
    for (const auto& p : parts) {
        for (std::size_t b = 0; b < alg->dim(); ++b) action[b].paste(p->action(b), off, off);
        off += p->dim();
    }
    DirectSum ds;
    ds.module = FdModule::make(alg, std::move(action));
    off = 0;
    for (const auto& p : parts) {
        ExactMatrix inj(alg->field(), p->dim(), total);
        ExactMatrix prj(alg->field(), total, p->dim());
        for (std::size_t i = 0; i < p->dim(); ++i) {
            inj.set(i, off + i, 1);
            prj.set(off + i, i, 1);
        }
        ds.injections.emplace_back(p, ds.module, std::move(inj));
        ds.projections.emplace_back(ds.module, p, std::move(prj));
        off += p->dim();
    }
    return ds;
}

ModulePtr dual_module(const ModulePtr& m, const AlgebraPtr& opposite_algebra) {
    if (!(opposite_algebra->field() == m->algebra()->field()) ||
        opposite_algebra->dim() != m->algebra()->dim())
        throw std::invalid_argument("dual_module: algebra mismatch");
    std::vector<ExactMatrix> action;
    for (std::size_t b = 0; b < m->algebra()->dim(); ++b)
        action.push_back(m->action(b).transposed());
    return FdModule::make(opposite_algebra, std::move(action));
}

// ---------------------------------------------------------------------------
// endomorphism algebras, decomposition, isomorphism
// ---------------------------------------------------------------------------

namespace {

ExactMatrix flatten(const ExactMatrix& m) {
    ExactMatrix row(m.field(), 1, m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        row.paste(m.submatrix(i, 0, 1, m.cols()), 0, i * m.cols());
    return row;
}

}  // namespace

EndAlgebra end_algebra(const ModulePtr& m) {
    if (m->dim() == 0)
        throw std::invalid_argument("End of the zero module is the zero ring (not unital)");
    EndAlgebra out;
    out.basis = hom_space(m, m);
    const std::size_t s = out.basis.size();
    const FieldSpec field = m->algebra()->field();
    ExactMatrix stack(field, s, m->dim() * m->dim());
    for (std::size_t i = 0; i < s; ++i) stack.paste(flatten(out.basis[i].matrix()), i, 0);
    std::vector<std::vector<std::vector<mpq_class>>> table(
        s, std::vector<std::vector<mpq_class>>(s, std::vector<mpq_class>(s)));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            // (f_i f_j)(x) = f_i(f_j(x)): apply f_j first, matrix A_j * A_i
            ExactMatrix prod = out.basis[j].matrix() * out.basis[i].matrix();
            auto coords = solve(stack, flatten(prod));
            if (!coords) throw std::logic_error("endomorphism composition left the hom space");
            for (std::size_t k = 0; k < s; ++k) table[i][j][k] = coords->at(0, k);
        }
    auto id_coords = solve(stack, flatten(ExactMatrix::identity(field, m->dim())));
    if (!id_coords) throw std::logic_error("identity not in End(m)");
    std::vector<mpq_class> unit(s);
    for (std::size_t k = 0; k < s; ++k) unit[k] = id_coords->at(0, k);
    out.algebra = Algebra::from_table(field, table, unit);
    out.identity_coords = *id_coords;
    return out;
}

std::vector<IndecSummand> split_indecomposables(const ModulePtr& m) {
    std::vector<IndecSummand> out;
    if (m->dim() == 0) return out;
    EndAlgebra end = end_algebra(m);
    std::vector<ExactMatrix> prims = primitive_idempotents(*end.algebra);
    for (const auto& e : prims) {
        ExactMatrix emat(m->algebra()->field(), m->dim(), m->dim());
        for (std::size_t k = 0; k < end.basis.size(); ++k) {
            mpq_class c = e.at(0, k);
            if (c != 0) emat = emat + end.basis[k].matrix().scaled(c);
        }
        SubmodulePart img = submodule_from_span(m, emat);
        auto coeff = solve(img.inclusion.matrix(), emat);
        if (!coeff) throw std::logic_error("idempotent image projection failed");
        out.push_back(
            IndecSummand{img.module, img.inclusion, ModuleMap(m, img.module, *coeff)});
    }
    return out;
}

namespace {

// X, Y indecomposable: isomorphic iff some composite through a hom basis pair
// is a unit in the local ring End(X)
std::optional<ModuleMap> indec_iso(const ModulePtr& x, const ModulePtr& y) {
    if (x->dim() != y->dim()) return std::nullopt;
    if (x->dim() == 0) return ModuleMap::zero(x, y);
    auto fw = hom_space(x, y);
    auto bw = hom_space(y, x);
    if (fw.empty() || bw.empty()) return std::nullopt;
    EndAlgebra ex = end_algebra(x);
    ExactMatrix rad = radical(*ex.algebra);
    ExactMatrix stack(x->algebra()->field(), ex.basis.size(), x->dim() * x->dim());
    for (std::size_t i = 0; i < ex.basis.size(); ++i)
        stack.paste(flatten(ex.basis[i].matrix()), i, 0);
    for (const auto& f : fw)
        for (const auto& g : bw) {
            ExactMatrix comp = f.matrix() * g.matrix();  // f then g on X
            auto coords = solve(stack, flatten(comp));
            if (!coords) throw std::logic_error("composite not in End(X)");
            if (!rows_in_span(rad, *coords)) {
                // g∘f is a unit, so f is a split mono between equal dims
                if (f.is_isomorphism()) return f;
            }
        }
    return std::nullopt;
}

}  // namespace

std::vector<std::pair<ModulePtr, std::size_t>> decompose(const ModulePtr& m) {
    auto parts = split_indecomposables(m);
    std::vector<std::pair<ModulePtr, std::size_t>> classes;
    for (const auto& p : parts) {
        bool found = false;
        for (auto& [rep, mult] : classes)
            if (indec_iso(p.part, rep)) {
                ++mult;
                found = true;
                break;
            }
        if (!found) classes.push_back({p.part, 1});
    }
    return classes;
}

IsoReport is_isomorphic(const ModulePtr& m, const ModulePtr& n) {
    IsoReport rep;
    if (!same_algebra(m->algebra(), n->algebra())) return rep;
    if (m->dim() != n->dim()) return rep;
    if (m->dim() == 0) {
        rep.isomorphic = true;
        rep.certificate = ModuleMap::zero(m, n);
        return rep;
    }
    auto pm = split_indecomposables(m);
    auto pn = split_indecomposables(n);
    if (pm.size() != pn.size()) return rep;
    std::vector<bool> used(pn.size(), false);
    ExactMatrix total(m->algebra()->field(), m->dim(), n->dim());
    for (const auto& a : pm) {
        bool matched = false;
        for (std::size_t j = 0; j < pn.size(); ++j) {
            if (used[j]) continue;
            auto phi = indec_iso(a.part, pn[j].part);
            if (phi) {
                used[j] = true;
                matched = true;
                total = total + a.projection.matrix() * phi->matrix() * pn[j].injection.matrix();
                break;
            }
        }
        if (!matched) return rep;
    }
    ModuleMap cert(m, n, total);
    if (!cert.is_isomorphism()) throw std::logic_error("assembled certificate not invertible");
    rep.isomorphic = true;
    rep.certificate = cert;
    return rep;
}

HomModule hom_as_right_end_module(const ModulePtr& t, const ModulePtr& m,
                                  const EndAlgebra& endt) {
    HomModule out;
    out.basis = hom_space(t, m);
    const FieldSpec field = t->algebra()->field();
    const std::size_t h = out.basis.size();
    ExactMatrix stack(field, h, t->dim() * m->dim());
    for (std::size_t k = 0; k < h; ++k) stack.paste(flatten(out.basis[k].matrix()), k, 0);
    std::vector<ExactMatrix> action;
    for (std::size_t i = 0; i < endt.algebra->dim(); ++i) {
        // (f.s)(x) = f(s(x)): apply the endomorphism first
        ExactMatrix act(field, h, h);
        for (std::size_t u = 0; u < h; ++u) {
            auto coords = solve(stack, flatten(endt.basis[i].matrix() * out.basis[u].matrix()));
            if (!coords) throw std::logic_error("precomposition escaped the hom space");
            act.paste(*coords, u, 0);
        }
        action.push_back(std::move(act));
    }
    out.module = FdModule::make(endt.algebra, std::move(action));
    return out;
}

namespace {

// multiplicities of the indecomposable projective classes in the projective
// cover, via dim Hom(P_i, top m); the cover dimension bounds dim m from above
// with equality exactly for projective m. Repeated classes (non-basic case)
// are counted once, at their representative index.
struct CoverCount {
    std::vector<std::size_t> mult;       // per prim index; zero off-representatives
    std::vector<std::size_t> class_rep;  // per prim index
    std::size_t cover_dim = 0;
};

CoverCount cover_multiplicities(const ModulePtr& m, const std::vector<ExactMatrix>& prims) {
    CoverCount out;
    const AlgebraPtr alg = m->algebra();
    QuotientPart top = quotient_by_span(m, radical_span(m));
    ModulePtr reg = FdModule::regular(alg);
    std::vector<ModulePtr> pis;
    for (const auto& e : prims)
        pis.push_back(submodule_from_span(reg, alg->left_mult_of(e)).module);
    for (std::size_t i = 0; i < pis.size(); ++i) {
        std::size_t rep = i;
        for (std::size_t j = 0; j < i; ++j)
            if (out.class_rep[j] == j && is_isomorphic(pis[i], pis[j]).isomorphic) {
                rep = j;
                break;
            }
        out.class_rep.push_back(rep);
        if (rep != i) {
            out.mult.push_back(0);
            continue;
        }
        std::size_t mu = hom_space(pis[i], top.module).size();
        out.mult.push_back(mu);
        out.cover_dim += mu * pis[i]->dim();
    }
    return out;
}

}  // namespace

bool is_projective(const ModulePtr& m) {
    if (m->dim() == 0) return true;
    CoverCount c = cover_multiplicities(m, primitive_idempotents(*m->algebra()));
    return c.cover_dim == m->dim();
}

bool in_add(const ModulePtr& m, const ModulePtr& t) {
    if (m->dim() == 0) return true;
    if (t->dim() == 0) return false;
    // the joint image of Hom(t, m) must be all of m
    auto to_m = hom_space(t, m);
    if (to_m.empty()) return false;
    ExactMatrix stacked(m->algebra()->field(), to_m.size() * t->dim(), m->dim());
    for (std::size_t k = 0; k < to_m.size(); ++k)
        stacked.paste(to_m[k].matrix(), k * t->dim(), 0);
    if (rank(stacked) != m->dim()) return false;
    // Hom(t, m) must be a projective End(t)-module whose idempotent blocks
    // tensor back to the dimension of m
    EndAlgebra endt = end_algebra(t);
    HomModule n = hom_as_right_end_module(t, m, endt);
    auto prims = primitive_idempotents(*endt.algebra);
    CoverCount c = cover_multiplicities(n.module, prims);
    if (c.cover_dim != n.module->dim()) return false;
    std::size_t tensor_dim = 0;
    for (std::size_t i = 0; i < prims.size(); ++i) {
        ExactMatrix emat(m->algebra()->field(), t->dim(), t->dim());
        for (std::size_t k = 0; k < endt.basis.size(); ++k) {
            mpq_class cc = prims[i].at(0, k);
            if (cc != 0) emat = emat + endt.basis[k].matrix().scaled(cc);
        }
        tensor_dim += c.mult[i] * rank(emat);
    }
    return tensor_dim == m->dim();
}

}  // namespace tiltkit
