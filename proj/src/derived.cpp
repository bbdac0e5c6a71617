#include "tiltkit/derived.hpp"

#include <random>

namespace tiltkit {

namespace {

ExactMatrix flatten(const ExactMatrix& m) {
    ExactMatrix row(m.field(), 1, m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        row.paste(m.submatrix(i, 0, 1, m.cols()), 0, i * m.cols());
    return row;
}

}  // namespace

namespace {

// RH through a bounded injective resolution: Hom(T, I^j) carries a genuine
// right S-action through the T argument, no chain lifts involved
BoundedComplex rh_injective(const TiltingContext& ctx, const BoundedComplex& c) {
    if (c.empty_range()) return BoundedComplex::zero(ctx.S);
    // one degree beyond the hyper-injective-dimension bound, so a nonzero
    // term at the very top would expose a truncated (hence invalid) resolution
    int top = c.high() + static_cast<int>(ctx.gldim) + 1;
    BoundedComplex inj = inj_resolve_complex(c, top, ctx.Rop, &ctx.canon_Rop);
    if (inj.term(top)->dim() != 0)
        throw std::logic_error("injective resolution exceeded the global dimension bound");
    inj = inj.trimmed();
    if (inj.empty_range()) return BoundedComplex::zero(ctx.S);
    std::vector<HImage> images;
    std::vector<ModulePtr> terms;
    for (int j = inj.low(); j <= inj.high(); ++j) {
        HomModule hm = hom_as_right_end_module(ctx.T, inj.term(j), ctx.endT);
        images.push_back(HImage{hm.module, hm.basis});
        terms.push_back(images.back().module);
    }
    std::vector<ModuleMap> diffs;
    for (int j = inj.low(); j < inj.high(); ++j) {
        std::size_t a = static_cast<std::size_t>(j - inj.low());
        diffs.push_back(functor_H_map(ctx, inj.diff(j), images[a], images[a + 1]));
    }
    return BoundedComplex::make(ctx.S, inj.low(), std::move(terms), std::move(diffs));
}

}  // namespace

BoundedComplex rh(const TiltingContext& ctx, const BoundedComplex& c) {
    if (ctx.report.rh_via_injectives) return rh_injective(ctx, c);
    HomTotal total = hom_total_complex(ctx.proj_res_T.complex, c);
    if (total.complex.empty_range()) return BoundedComplex::zero(ctx.S);
    const FieldSpec field = ctx.R->field();
    const int lo = total.complex.low(), hi = total.complex.high();
    std::vector<ModulePtr> terms;
    for (int j = lo; j <= hi; ++j) {
        const std::size_t dim = total.complex.term(j)->dim();
        std::vector<ExactMatrix> action(ctx.S->dim(), ExactMatrix(field, dim, dim));
        for (const auto& blk : total.blocks.at(j)) {
            if (blk.basis.empty()) continue;
            const std::size_t j_res = static_cast<std::size_t>(-blk.p_deg);
            ExactMatrix stack(field, blk.basis.size(),
                              blk.basis[0].matrix().rows() * blk.basis[0].matrix().cols());
            for (std::size_t k = 0; k < blk.basis.size(); ++k)
                stack.paste(flatten(blk.basis[k].matrix()), k, 0);
            for (std::size_t s = 0; s < ctx.S->dim(); ++s) {
                const ExactMatrix& lift = ctx.lifts[s][j_res];
                for (std::size_t u = 0; u < blk.basis.size(); ++u) {
                    auto coords = solve(stack, flatten(lift * blk.basis[u].matrix()));
                    if (!coords)
                        throw std::logic_error("rh: precomposition left the hom block");
                    action[s].paste(*coords, blk.offset + u, blk.offset);
                }
            }
        }
        terms.push_back(FdModule::make(ctx.S, std::move(action)));
    }
    std::vector<ModuleMap> diffs;
    for (int j = lo; j < hi; ++j)
        diffs.emplace_back(terms[static_cast<std::size_t>(j - lo)],
                           terms[static_cast<std::size_t>(j + 1 - lo)],
                           total.complex.diff(j).matrix());
    return BoundedComplex::make(ctx.S, lo, std::move(terms), std::move(diffs));
}

Window lg_guaranteed_window(const TiltingContext& ctx, const BoundedComplex& nc) {
    if (nc.empty_range()) return Window{0, 0};
    return Window{nc.low() - static_cast<int>(ctx.n), nc.high()};
}

BoundedComplex lg(const TiltingContext& ctx, const BoundedComplex& nc, Window window) {
    if (nc.empty_range()) return BoundedComplex::zero(ctx.R);
    Window need = lg_guaranteed_window(ctx, nc);
    if (window.lo > need.lo || window.hi < need.hi)
        throw std::invalid_argument("lg window too small: needs [" + std::to_string(need.lo) +
                                    ", " + std::to_string(need.hi) + "]");
    ComplexResolution res = proj_resolve_complex(nc, window.lo - 1, &ctx.canon_S);
    return tensor_total_complex(res.complex, ctx.bimodule).complex;
}

namespace {

DerivedReport compare_homology(const BoundedComplex& reference, const BoundedComplex& produced,
                               Window window) {
    DerivedReport rep;
    rep.window = window;
    rep.pass = true;
    for (int j = window.lo; j <= window.hi; ++j) {
        rep.degrees.push_back(j);
        ModulePtr hin = homology(reference, j);
        ModulePtr hout = homology(produced, j);
        rep.input_dims.push_back(hin->dim());
        rep.output_dims.push_back(hout->dim());
        bool ok = is_isomorphic(hout, hin).isomorphic;
        rep.verdicts.push_back(ok);
        if (!ok) rep.pass = false;
    }
    return rep;
}

}  // namespace

DerivedReport counit_check(const TiltingContext& ctx, const BoundedComplex& c) {
    DerivedReport rep;
    if (c.empty_range()) {
        rep.pass = true;
        return rep;
    }
    BoundedComplex rhc = rh(ctx, c);
    if (rhc.empty_range()) {
        // RH(c) = 0 forces c exact for the counit to hold
        rep.pass = c.is_exact();
        return rep;
    }
    Window window{rhc.low() - static_cast<int>(ctx.n), rhc.high()};
    BoundedComplex lgrh = lg(ctx, rhc, window);
    return compare_homology(c, lgrh, window);
}

DerivedReport unit_check(const TiltingContext& ctx, const BoundedComplex& nc) {
    DerivedReport rep;
    if (nc.empty_range()) {
        rep.pass = true;
        return rep;
    }
    const int pd = static_cast<int>(ctx.pd());
    const int n = static_cast<int>(ctx.n);
    // resolve deep enough that rh of the truncated lg is trustworthy on the
    // reported window
    Window deep{nc.low() - n - pd, nc.high()};
    BoundedComplex lgc = lg(ctx, nc, deep);
    BoundedComplex rhlg = rh(ctx, lgc);
    Window window{nc.low() - n, nc.high() + pd};
    return compare_homology(nc, rhlg, window);
}

bool e_membership(const TiltingContext& ctx, const BoundedComplex& nc) {
    if (nc.empty_range()) return true;
    Window window = lg_guaranteed_window(ctx, nc);
    BoundedComplex image = lg(ctx, nc, window);
    for (int j = window.lo; j <= window.hi; ++j)
        if (image.homology_dim(j) != 0) return false;
    return true;
}

ClassicalProbeReport classical_probe(const TiltingContext& ctx,
                                     const std::vector<BoundedComplex>& testset) {
    ClassicalProbeReport rep;
    rep.pass = true;
    for (std::size_t idx = 0; idx < testset.size(); ++idx) {
        const BoundedComplex& nc = testset[idx];
        ++rep.tested;
        bool exact = nc.is_exact();
        if (exact) {
            ++rep.vacuous;  // the zero object of D(S) lies in E
            continue;
        }
        if (e_membership(ctx, nc)) {
            rep.pass = false;
            rep.counterexamples.push_back("complex " + std::to_string(idx) +
                                          ": nonzero object annihilated by LG");
        }
        if (!unit_check(ctx, nc).pass) {
            rep.pass = false;
            rep.counterexamples.push_back("complex " + std::to_string(idx) +
                                          ": unit is not a homology isomorphism");
        }
    }
    return rep;
}

BoundedComplex random_complex(const AlgebraPtr& alg,
                              const std::vector<ModulePtr>& indecomposables, std::uint64_t seed,
                              const RandomComplexParams& params) {
    std::mt19937_64 rng(seed);
    const FieldSpec field = alg->field();
    auto rand_coeff = [&]() -> mpq_class {
        if (field.is_rational())
            return mpq_class(static_cast<long>(rng() % 7) - 3);
        return mpq_class(static_cast<long>(rng() % static_cast<std::uint64_t>(field.p)));
    };
    std::vector<ModulePtr> terms;
    for (int j = params.low; j <= params.high; ++j) {
        std::size_t count = rng() % (params.max_summands + 1);
        std::vector<ModulePtr> parts;
        std::size_t total = 0;
        for (std::size_t k = 0; k < count; ++k) {
            const ModulePtr& cand = indecomposables[rng() % indecomposables.size()];
            if (total + cand->dim() > params.max_term_dim) continue;
            parts.push_back(cand);
            total += cand->dim();
        }
        terms.push_back(direct_sum(alg, parts).module);
    }
    std::vector<ModuleMap> diffs;
    ExactMatrix prev(field, 0, 0);
    for (std::size_t k = 0; k + 1 < terms.size(); ++k) {
        auto homs = hom_space(terms[k], terms[k + 1]);
        ExactMatrix chosen(field, terms[k]->dim(), terms[k + 1]->dim());
        if (!homs.empty()) {
            // restrict to maps killed by the previous differential
            ExactMatrix allowed = ExactMatrix::identity(field, homs.size());
            if (prev.rows() > 0) {
                ExactMatrix constraints(field, homs.size(), prev.rows() * terms[k + 1]->dim());
                for (std::size_t u = 0; u < homs.size(); ++u)
                    constraints.paste(flatten(prev * homs[u].matrix()), u, 0);
                allowed = kernel_basis(constraints);
            }
            for (std::size_t r = 0; r < allowed.rows(); ++r) {
                mpq_class c = rand_coeff();
                if (c == 0) continue;
                for (std::size_t u = 0; u < homs.size(); ++u) {
                    mpq_class a = allowed.at(r, u);
                    if (a != 0) chosen = chosen + homs[u].matrix().scaled(a * c);
                }
            }
        }
        diffs.emplace_back(terms[k], terms[k + 1], chosen);
        prev = diffs.back().matrix();
    }
    return BoundedComplex::make(alg, params.low, std::move(terms), std::move(diffs));
}

}  // namespace tiltkit
