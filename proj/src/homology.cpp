#include "tiltkit/homology.hpp"

namespace tiltkit {

AlgebraPtr scalar_algebra(FieldSpec field) {
    std::vector<std::vector<std::vector<mpq_class>>> table(
        1, std::vector<std::vector<mpq_class>>(1, std::vector<mpq_class>{1}));
    return Algebra::from_table(field, table, {1}, {"1"});
}

ModulePtr vector_space(const AlgebraPtr& scalar_alg, std::size_t dim) {
    return FdModule::make(scalar_alg,
                          {ExactMatrix::identity(scalar_alg->field(), dim)});
}

ExactMatrix kron_with_identity(const ExactMatrix& g, std::size_t t) {
    ExactMatrix out(g.field(), g.rows() * t, g.cols() * t);
    for (std::size_t u = 0; u < g.rows(); ++u)
        for (std::size_t w = 0; w < g.cols(); ++w) {
            mpq_class c = g.at(u, w);
            if (c == 0) continue;
            for (std::size_t v = 0; v < t; ++v) out.set(u * t + v, w * t + v, c);
        }
    return out;
}

// ---------------------------------------------------------------------------
// projective covers and minimal resolutions
// ---------------------------------------------------------------------------

ProjectiveCover projective_cover(const ModulePtr& m, const CanonicalModules& canon) {
    const AlgebraPtr alg = m->algebra();
    ProjectiveCover out;
    out.multiplicities.assign(canon.projectives.size(), 0);
    if (m->dim() == 0) {
        out.projective = FdModule::zero(alg);
        out.onto = ModuleMap::zero(out.projective, m);
        return out;
    }
    QuotientPart top = quotient_by_span(m, radical_span(m));
    std::vector<ModulePtr> parts;
    std::vector<ExactMatrix> lifts;
    for (std::size_t i = 0; i < canon.projectives.size(); ++i) {
        // one contribution per isomorphism class (non-basic algebras repeat)
        if (!canon.projective_class_rep.empty() && canon.projective_class_rep[i] != i) continue;
        const ModulePtr& p = canon.projectives[i];
        auto to_top = hom_space(p, top.module);
        out.multiplicities[i] = to_top.size();
        if (to_top.empty()) continue;
        auto to_m = hom_space(p, m);
        ExactMatrix stack(alg->field(), to_m.size(), p->dim() * top.module->dim());
        auto flat = [&](const ExactMatrix& mm) {
            ExactMatrix row(alg->field(), 1, mm.rows() * mm.cols());
            for (std::size_t r = 0; r < mm.rows(); ++r)
                row.paste(mm.submatrix(r, 0, 1, mm.cols()), 0, r * mm.cols());
            return row;
        };
        for (std::size_t k = 0; k < to_m.size(); ++k)
            stack.paste(flat(to_m[k].matrix() * top.projection.matrix()), k, 0);
        for (const auto& phi : to_top) {
            auto coeff = solve(stack, flat(phi.matrix()));
            if (!coeff) throw std::logic_error("projective lift failed");
            ExactMatrix psi(alg->field(), p->dim(), m->dim());
            for (std::size_t k = 0; k < to_m.size(); ++k) {
                mpq_class c = coeff->at(0, k);
                if (c != 0) psi = psi + to_m[k].matrix().scaled(c);
            }
            parts.push_back(p);
            lifts.push_back(std::move(psi));
        }
    }
    DirectSum ds = direct_sum(alg, parts);
    ExactMatrix mat(alg->field(), ds.module->dim(), m->dim());
    std::size_t off = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        mat.paste(lifts[k], off, 0);
        off += parts[k]->dim();
    }
    out.projective = ds.module;
    out.onto = ModuleMap(ds.module, m, std::move(mat));
    if (rank(out.onto.matrix()) != m->dim())
        throw std::logic_error("projective cover is not surjective");
    return out;
}

Resolution min_proj_resolution(const ModulePtr& m, std::size_t max_len, bool allow_truncation,
                               const CanonicalModules* canon) {
    CanonicalModules local;
    if (!canon) {
        local = canonical_modules(m->algebra());
        canon = &local;
    }
    Resolution res;
    ProjectiveCover cover = projective_cover(m, *canon);
    std::vector<ModulePtr> terms{cover.projective};  // built top degree 0 first
    std::vector<ModuleMap> diffs;
    res.augmentation = cover.onto;
    SubmodulePart ker = morphism_parts(cover.onto).kernel;
    std::size_t len = 0;
    while (ker.module->dim() > 0) {
        if (len == max_len) {
            if (allow_truncation) {
                res.complete = false;
                std::reverse(terms.begin(), terms.end());
                std::reverse(diffs.begin(), diffs.end());
                res.complex = BoundedComplex::make(m->algebra(), -static_cast<int>(len),
                                                   std::move(terms), std::move(diffs));
                res.length = len;
                return res;
            }
            throw std::runtime_error("projective resolution exceeds max_len");
        }
        ProjectiveCover next = projective_cover(ker.module, *canon);
        ModuleMap d = next.onto.then(ker.inclusion);
        diffs.push_back(d);
        terms.push_back(next.projective);
        // kernel of the composite = kernel of the cover (the inclusion is injective)
        ker = submodule_from_span(next.projective, kernel_basis(d.matrix()));
        ++len;
    }
    res.complete = true;
    res.length = len;
    std::reverse(terms.begin(), terms.end());
    std::reverse(diffs.begin(), diffs.end());
    res.complex = BoundedComplex::make(m->algebra(), -static_cast<int>(len), std::move(terms),
                                       std::move(diffs));
    return res;
}

// ---------------------------------------------------------------------------
// hom total complexes and ext
// ---------------------------------------------------------------------------

namespace {

ExactMatrix flatten(const ExactMatrix& m) {
    ExactMatrix row(m.field(), 1, m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        row.paste(m.submatrix(i, 0, 1, m.cols()), 0, i * m.cols());
    return row;
}

ExactMatrix stack_flatten(const std::vector<ModuleMap>& basis, FieldSpec field, std::size_t w) {
    ExactMatrix stack(field, basis.size(), w);
    for (std::size_t k = 0; k < basis.size(); ++k)
        stack.paste(flatten(basis[k].matrix()), k, 0);
    return stack;
}

}  // namespace

HomTotal hom_total_complex(const BoundedComplex& p, const BoundedComplex& c) {
    const FieldSpec field = p.algebra()->field();
    AlgebraPtr k_alg = scalar_algebra(field);
    HomTotal out;
    if (p.empty_range() || c.empty_range()) {
        out.complex = BoundedComplex::zero(k_alg);
        return out;
    }
    const int lo = c.low() - p.high();
    const int hi = c.high() - p.low();
    std::map<int, std::size_t> degree_dim;
    for (int j = lo; j <= hi; ++j) {
        std::size_t off = 0;
        out.blocks[j];  // materialize even when empty
        for (int a = p.low(); a <= p.high(); ++a) {
            int b = j + a;
            if (b < c.low() || b > c.high()) continue;
            HomTotal::Block blk;
            blk.p_deg = a;
            blk.c_deg = b;
            blk.basis = hom_space(p.term(a), c.term(b));
            blk.offset = off;
            off += blk.basis.size();
            out.blocks[j].push_back(std::move(blk));
        }
        degree_dim[j] = off;
    }
    std::vector<ModulePtr> terms;
    for (int j = lo; j <= hi; ++j) terms.push_back(vector_space(k_alg, degree_dim[j]));
    std::vector<ModuleMap> diffs;
    for (int j = lo; j < hi; ++j) {
        ExactMatrix d(field, degree_dim[j], degree_dim[j + 1]);
        const auto& src_blocks = out.blocks.at(j);
        const auto& tgt_blocks = out.blocks.at(j + 1);
        for (const auto& sb : src_blocks) {
            for (const auto& tb : tgt_blocks) {
                ExactMatrix post(field, sb.basis.size(), 0);
                bool relevant = false;
                if (tb.p_deg == sb.p_deg && tb.c_deg == sb.c_deg + 1) {
                    // f -> d_c ∘ f
                    relevant = true;
                    ExactMatrix dc = c.diff(sb.c_deg).matrix();
                    ExactMatrix rows(field, sb.basis.size(),
                                     p.term(sb.p_deg)->dim() * c.term(tb.c_deg)->dim());
                    for (std::size_t k = 0; k < sb.basis.size(); ++k)
                        rows.paste(flatten(sb.basis[k].matrix() * dc), k, 0);
                    auto coords = solve(
                        stack_flatten(tb.basis, field,
                                      p.term(tb.p_deg)->dim() * c.term(tb.c_deg)->dim()),
                        rows);
                    if (!coords) throw std::logic_error("hom total: postcomposition escaped");
                    post = *coords;
                } else if (tb.p_deg == sb.p_deg - 1 && tb.c_deg == sb.c_deg) {
                    // f -> -(-1)^j f ∘ d_p
                    relevant = true;
                    ExactMatrix dp = p.diff(tb.p_deg).matrix();
                    ExactMatrix rows(field, sb.basis.size(),
                                     p.term(tb.p_deg)->dim() * c.term(tb.c_deg)->dim());
                    for (std::size_t k = 0; k < sb.basis.size(); ++k)
                        rows.paste(flatten(dp * sb.basis[k].matrix()), k, 0);
                    auto coords = solve(
                        stack_flatten(tb.basis, field,
                                      p.term(tb.p_deg)->dim() * c.term(tb.c_deg)->dim()),
                        rows);
                    if (!coords) throw std::logic_error("hom total: precomposition escaped");
                    post = coords->scaled(j % 2 == 0 ? -1 : 1);
                }
                if (relevant)
                    for (std::size_t r = 0; r < sb.basis.size(); ++r)
                        for (std::size_t cidx = 0; cidx < tb.basis.size(); ++cidx)
                            d.set(sb.offset + r, tb.offset + cidx,
                                  d.at(sb.offset + r, tb.offset + cidx) + post.at(r, cidx));
            }
        }
        diffs.emplace_back(terms[static_cast<std::size_t>(j - lo)],
                           terms[static_cast<std::size_t>(j + 1 - lo)], std::move(d));
    }
    out.complex = BoundedComplex::make(k_alg, lo, std::move(terms), std::move(diffs));
    return out;
}

ExtResult ext(const ModulePtr& m, const ModulePtr& n, std::size_t i) {
    Resolution res = min_proj_resolution(m, i + 1, /*allow_truncation=*/true);
    HomTotal total = hom_total_complex(res.complex, BoundedComplex::stalk(n, 0));
    ExtResult out;
    const int deg = static_cast<int>(i);
    ModulePtr h = homology(total.complex, deg);
    out.dim = h->dim();
    if (out.dim == 0) return out;
    // representative cocycle rows: basis of ker(d^i) reduced modulo boundaries
    ExactMatrix cycles = kernel_basis(total.complex.diff(deg).matrix());
    SubmodulePart z = submodule_from_span(total.complex.term(deg), cycles);
    auto bz = solve(z.inclusion.matrix(), total.complex.diff(deg - 1).matrix());
    if (!bz) throw std::logic_error("boundaries escaped cycles");
    QuotientPart q = quotient_by_span(z.module, *bz);
    const auto& blocks = total.blocks.at(deg);
    if (blocks.size() != 1) throw std::logic_error("ext total complex should have one block");
    for (std::size_t r = 0; r < q.module->dim(); ++r) {
        ExactMatrix rep = q.section.submatrix(r, 0, 1, q.section.cols()) * z.inclusion.matrix();
        ExactMatrix f(m->algebra()->field(), res.complex.term(deg == 0 ? 0 : -deg)->dim(),
                      n->dim());
        for (std::size_t k = 0; k < blocks[0].basis.size(); ++k) {
            mpq_class c = rep.at(0, blocks[0].offset + k);
            if (c != 0) f = f + blocks[0].basis[k].matrix().scaled(c);
        }
        out.cocycles.emplace_back(res.complex.term(-deg), n, std::move(f));
    }
    return out;
}

// ---------------------------------------------------------------------------
// tensor products over the endomorphism side
// ---------------------------------------------------------------------------

void SBimodule::validate() const {
    const std::size_t s = left_algebra->dim();
    const std::size_t t = right_module->dim();
    if (left_action.size() != s)
        throw std::invalid_argument("need one left action matrix per algebra basis element");
    for (const auto& a : left_action)
        if (a.rows() != t || a.cols() != t)
            throw std::invalid_argument("left action matrix shape mismatch");
    if (!left_action_of(left_algebra->unit()).is_identity())
        throw std::invalid_argument("left action violates the unit law");
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            ExactMatrix expect(left_algebra->field(), t, t);
            for (std::size_t k = 0; k < s; ++k) {
                mpq_class c = left_algebra->structconst(i, j, k);
                if (c != 0) expect = expect + left_action[k].scaled(c);
            }
            if (!(expect == left_action[j] * left_action[i]))
                throw std::invalid_argument("left action violates multiplicativity");
        }
    const auto& r = *right_module->algebra();
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t b = 0; b < r.dim(); ++b)
            if (!(left_action[i] * right_module->action(b) ==
                  right_module->action(b) * left_action[i]))
                throw std::invalid_argument("left and right actions do not commute");
}

ExactMatrix SBimodule::left_action_of(const ExactMatrix& coords) const {
    const std::size_t t = right_module->dim();
    ExactMatrix out(left_algebra->field(), t, t);
    for (std::size_t i = 0; i < left_algebra->dim(); ++i) {
        mpq_class c = coords.at(0, i);
        if (c != 0) out = out + left_action[i].scaled(c);
    }
    return out;
}

TensorResult tensor_over(const ModulePtr& n, const SBimodule& t) {
    if (!same_algebra(n->algebra(), t.left_algebra))
        throw std::invalid_argument("tensor_over: module is not over the bimodule's left algebra");
    const AlgebraPtr ralg = t.right_module->algebra();
    const std::size_t a = n->dim(), td = t.right_module->dim();
    const std::size_t s = t.left_algebra->dim();
    // plain tensor product with the right action id ⊗ act_T
    std::vector<ExactMatrix> plain_action;
    for (std::size_t b = 0; b < ralg->dim(); ++b) {
        ExactMatrix act(ralg->field(), a * td, a * td);
        for (std::size_t u = 0; u < a; ++u) act.paste(t.right_module->action(b), u * td, u * td);
        plain_action.push_back(std::move(act));
    }
    ModulePtr plain = FdModule::make(ralg, std::move(plain_action));
    // balancing relations x*s ⊗ v - x ⊗ s*v
    ExactMatrix rel(ralg->field(), a * s * td, a * td);
    std::size_t row = 0;
    for (std::size_t u = 0; u < a; ++u)
        for (std::size_t i = 0; i < s; ++i) {
            const ExactMatrix& an = n->action(i);
            const ExactMatrix& at = t.left_action[i];
            for (std::size_t v = 0; v < td; ++v) {
                for (std::size_t cc = 0; cc < a; ++cc) {
                    mpq_class x = an.at(u, cc);
                    if (x != 0) rel.set(row, cc * td + v, rel.at(row, cc * td + v) + x);
                }
                for (std::size_t dd = 0; dd < td; ++dd) {
                    mpq_class x = at.at(v, dd);
                    if (x != 0) rel.set(row, u * td + dd, rel.at(row, u * td + dd) - x);
                }
                ++row;
            }
        }
    QuotientPart q = quotient_by_span(plain, rel);
    return TensorResult{q.module, q.projection.matrix(), q.section};
}

ModuleMap tensor_map(const ModuleMap& g, const SBimodule& t, const TensorResult& src,
                     const TensorResult& tgt) {
    ExactMatrix plain = kron_with_identity(g.matrix(), t.right_module->dim());
    return ModuleMap(src.module, tgt.module, src.section * plain * tgt.projection);
}

TorResult tor(const ModulePtr& n, const SBimodule& t, std::size_t i) {
    Resolution res = min_proj_resolution(n, i + 1, /*allow_truncation=*/true);
    TensorTotal tt = tensor_total_complex(res.complex, t);
    TorResult out;
    out.module = homology(tt.complex, -static_cast<int>(i));
    out.dim = out.module->dim();
    return out;
}

TensorTotal tensor_total_complex(const BoundedComplex& nc, const SBimodule& t) {
    TensorTotal out;
    const AlgebraPtr ralg = t.right_module->algebra();
    if (nc.empty_range()) {
        out.complex = BoundedComplex::zero(ralg);
        return out;
    }
    std::vector<ModulePtr> terms;
    for (int j = nc.low(); j <= nc.high(); ++j) {
        out.parts.emplace(j, tensor_over(nc.term(j), t));
        terms.push_back(out.parts.at(j).module);
    }
    std::vector<ModuleMap> diffs;
    for (int j = nc.low(); j < nc.high(); ++j)
        diffs.push_back(tensor_map(nc.diff(j), t, out.parts.at(j), out.parts.at(j + 1)));
    out.complex = BoundedComplex::make(ralg, nc.low(), std::move(terms), std::move(diffs));
    return out;
}

// ---------------------------------------------------------------------------
// add(T) approximations and coresolutions
// ---------------------------------------------------------------------------

AddApproximation left_add_approximation(const ModulePtr& m, const ModulePtr& t) {
    auto homs = hom_space(m, t);
    DirectSum ds = direct_sum(m->algebra(), std::vector<ModulePtr>(homs.size(), t));
    ExactMatrix mat(m->algebra()->field(), m->dim(), ds.module->dim());
    for (std::size_t k = 0; k < homs.size(); ++k)
        mat.paste(homs[k].matrix(), 0, k * t->dim());
    AddApproximation out{ModuleMap(m, ds.module, std::move(mat)), std::move(ds), homs.size()};
    return out;
}

AddCoresolution add_coresolution(const ModulePtr& m, const ModulePtr& t, std::size_t n) {
    AddCoresolution out;
    ModulePtr cur = m;
    std::optional<ModuleMap> pending;  // X_{s-1} -> cur (cokernel projection)
    for (std::size_t step = 0; step <= n; ++step) {
        if (in_add(cur, t)) {
            out.terms.push_back(cur);
            out.maps.push_back(pending ? *pending : ModuleMap::identity(m));
            out.ok = true;
            out.length = step;
            return out;
        }
        AddApproximation ap = left_add_approximation(cur, t);
        if (rank(ap.map.matrix()) < cur->dim()) {
            out.error = "approximation not injective at step " + std::to_string(step);
            return out;
        }
        ModuleMap into = pending ? pending->then(ap.map) : ap.map;
        out.terms.push_back(ap.target.module);
        out.maps.push_back(into);
        MorphismParts parts = morphism_parts(ap.map);
        pending = parts.cokernel.projection;
        cur = parts.cokernel.module;
    }
    out.error = "length exceeded";
    return out;
}

// ---------------------------------------------------------------------------
// projective resolutions of complexes
// ---------------------------------------------------------------------------

BoundedComplex inj_resolve_complex(const BoundedComplex& c, int top_degree,
                                   const AlgebraPtr& op_algebra,
                                   const CanonicalModules* op_canon) {
    if (c.empty_range()) return BoundedComplex::zero(c.algebra());
    BoundedComplex d = dual_complex(c, op_algebra);
    ComplexResolution res = proj_resolve_complex(d, -top_degree, op_canon);
    return dual_complex(res.complex, c.algebra());
}

ComplexResolution proj_resolve_complex(const BoundedComplex& c, int depth_bound,
                                       const CanonicalModules* canon) {
    const AlgebraPtr alg = c.algebra();
    CanonicalModules local;
    if (!canon) {
        local = canonical_modules(alg);
        canon = &local;
    }
    if (c.empty_range() || depth_bound > c.high()) {
        BoundedComplex q = BoundedComplex::zero(alg);
        return ComplexResolution{q, ChainMap(q, c, {}, 0)};
    }
    const int hi = c.high();
    std::map<int, ModulePtr> qterm;
    std::map<int, ModuleMap> qdiff;  // d_Q^j : Q^j -> Q^{j+1}
    std::map<int, ModuleMap> pi;     // Q^j -> C^j
    ModulePtr zero = FdModule::zero(alg);
    auto qt = [&](int j) { return qterm.count(j) ? qterm.at(j) : zero; };
    for (int j = hi; j >= depth_bound; --j) {
        ModulePtr q1 = qt(j + 1), q2 = qt(j + 2);
        ModulePtr cj = c.term(j);
        DirectSum ds = direct_sum(alg, {cj, q1});
        // compatible pairs: d_C x = pi(q), d_Q q = 0
        ExactMatrix phi(alg->field(), cj->dim() + q1->dim(), c.term(j + 1)->dim() + q2->dim());
        phi.paste(c.diff(j).matrix(), 0, 0);
        if (q1->dim() > 0) {
            ExactMatrix pim = pi.count(j + 1) ? pi.at(j + 1).matrix()
                                              : ExactMatrix(alg->field(), q1->dim(),
                                                            c.term(j + 1)->dim());
            phi.paste(-pim, cj->dim(), 0);
            if (q2->dim() > 0)
                phi.paste(qdiff.at(j + 1).matrix(), cj->dim(), c.term(j + 1)->dim());
        }
        SubmodulePart z = submodule_from_span(ds.module, kernel_basis(phi));
        ProjectiveCover cover = projective_cover(z.module, *canon);
        ModuleMap h = cover.onto.then(z.inclusion);
        qterm[j] = cover.projective;
        pi[j] = h.then(ds.projections[0]);
        qdiff[j] = h.then(ds.projections[1]);
    }
    std::vector<ModulePtr> terms;
    std::vector<ModuleMap> diffs;
    std::vector<ModuleMap> comps;
    for (int j = depth_bound; j <= hi; ++j) terms.push_back(qt(j));
    for (int j = depth_bound; j < hi; ++j) {
        // reconstruct d_Q with matching endpoints
        diffs.emplace_back(qt(j), qt(j + 1), qdiff.at(j).matrix());
    }
    BoundedComplex q = BoundedComplex::make(alg, depth_bound, terms, std::move(diffs));
    for (int j = depth_bound; j <= hi; ++j)
        comps.emplace_back(q.term(j), c.term(j), pi.at(j).matrix());
    ChainMap to_input(q, c, std::move(comps), depth_bound);
    return ComplexResolution{q, std::move(to_input)};
}

}  // namespace tiltkit
