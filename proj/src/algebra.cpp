#include "tiltkit/algebra.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace tiltkit {

std::size_t Quiver::vertex_index(const std::string& v) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == v) return i;
    throw std::invalid_argument("unknown vertex '" + v + "'");
}

std::size_t Quiver::arrow_index(const std::string& a) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == a) return i;
    throw std::invalid_argument("unknown arrow '" + a + "'");
}

void Quiver::validate() const {
    std::set<std::string> vs(vertices.begin(), vertices.end());
    if (vs.size() != vertices.size()) throw std::invalid_argument("duplicate vertex labels");
    std::set<std::string> as;
    for (const auto& a : arrows) {
        if (!as.insert(a.name).second)
            throw std::invalid_argument("duplicate arrow name '" + a.name + "'");
        if (!vs.count(a.src) || !vs.count(a.tgt))
            throw std::invalid_argument("arrow '" + a.name + "' has undeclared endpoint");
    }
}

// ---------------------------------------------------------------------------
// Algebra
// ---------------------------------------------------------------------------

std::shared_ptr<const Algebra> Algebra::from_table(
    FieldSpec field, const std::vector<std::vector<std::vector<mpq_class>>>& table,
    const std::vector<mpq_class>& unit, std::vector<std::string> labels,
    std::optional<QuiverInfo> quiver) {
    const std::size_t d = table.size();
    std::vector<ExactMatrix> rmul(d, ExactMatrix(field, d, d));
    for (std::size_t i = 0; i < d; ++i) {
        if (table[i].size() != d) throw std::invalid_argument("structure constant table not square");
        for (std::size_t j = 0; j < d; ++j) {
            if (table[i][j].size() != d)
                throw std::invalid_argument("structure constant row has wrong length");
            for (std::size_t k = 0; k < d; ++k) rmul[j].set(i, k, table[i][j][k]);
        }
    }
    ExactMatrix u(field, 1, d);
    if (unit.size() != d) throw std::invalid_argument("unit coordinate length mismatch");
    for (std::size_t k = 0; k < d; ++k) u.set(0, k, unit[k]);
    return from_right_mult(field, std::move(rmul), std::move(u), std::move(labels),
                           std::move(quiver));
}

std::shared_ptr<const Algebra> Algebra::from_right_mult(FieldSpec field,
                                                        std::vector<ExactMatrix> rmul,
                                                        ExactMatrix unit,
                                                        std::vector<std::string> labels,
                                                        std::optional<QuiverInfo> quiver) {
    auto a = std::shared_ptr<Algebra>(new Algebra());
    a->field_ = field;
    a->dim_ = rmul.size();
    a->rmul_ = std::move(rmul);
    a->unit_ = std::move(unit);
    if (labels.empty()) {
        for (std::size_t i = 0; i < a->dim_; ++i) labels.push_back("b" + std::to_string(i));
    }
    if (labels.size() != a->dim_) throw std::invalid_argument("label count mismatch");
    a->labels_ = std::move(labels);
    a->quiver_ = std::move(quiver);
    a->validate_laws();
    return a;
}

void Algebra::validate_laws() const {
    // associativity: R_j * R_k must equal sum_l c[j][k][l] R_l
    for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) {
            ExactMatrix lhs = rmul_[j] * rmul_[k];
            ExactMatrix rhs(field_, dim_, dim_);
            for (std::size_t l = 0; l < dim_; ++l) {
                mpq_class c = rmul_[k].at(j, l);
                if (c != 0) rhs = rhs + rmul_[l].scaled(c);
            }
            if (lhs != rhs) {
                ExactMatrix diff = lhs - rhs;
                std::size_t wi = 0;
                for (std::size_t i = 0; i < dim_; ++i)
                    if (!(diff.submatrix(i, 0, 1, dim_).is_zero())) {
                        wi = i;
                        break;
                    }
                throw LawViolation("associativity fails at basis triple (" + std::to_string(wi) +
                                       "," + std::to_string(j) + "," + std::to_string(k) + ")",
                                   wi, j, k);
            }
        }
    // unit laws
    if (!right_mult_of(unit_).is_identity())
        throw LawViolation("right unit law fails", 0, 0, 0);
    for (std::size_t j = 0; j < dim_; ++j) {
        ExactMatrix uj = unit_ * rmul_[j];
        for (std::size_t k = 0; k < dim_; ++k)
            if (uj.at(0, k) != (k == j ? 1 : 0))
                throw LawViolation("left unit law fails at basis " + std::to_string(j), j, j, j);
    }
}

ExactMatrix Algebra::right_mult_of(const ExactMatrix& w) const {
    ExactMatrix m(field_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        mpq_class c = w.at(0, j);
        if (c != 0) m = m + rmul_[j].scaled(c);
    }
    return m;
}

ExactMatrix Algebra::left_mult_of(const ExactMatrix& w) const {
    ExactMatrix m(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) m.paste(w * rmul_[i], i, 0);
    return m;
}

ExactMatrix Algebra::mult(const ExactMatrix& v, const ExactMatrix& w) const {
    return v * right_mult_of(w);
}

bool Algebra::same_content(const Algebra& o) const {
    if (!(field_ == o.field_) || dim_ != o.dim_) return false;
    if (!(unit_ == o.unit_)) return false;
    for (std::size_t j = 0; j < dim_; ++j)
        if (!(rmul_[j] == o.rmul_[j])) return false;
    return true;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->same_content(*b);
}

// ---------------------------------------------------------------------------
// Bound quiver algebra: path basis by degreewise linear reduction
// ---------------------------------------------------------------------------

namespace {

struct CanonPath {
    std::size_t src, tgt, len;
    std::vector<std::size_t> arrows;
    std::string label;
};

struct QuiverBuilder {
    const Quiver& q;
    const RelationSet& rels;
    FieldSpec field;
    BoundQuiverOptions opts;

    std::vector<CanonPath> basis;
    std::vector<std::size_t> vertex_idem;
    // ext[ci][a]: coordinates of basis path ci extended by arrow a, over the
    // canonical basis present when the entry was recorded; nullopt = zero
    std::vector<std::vector<std::optional<ExactMatrix>>> ext;
    std::vector<ExactMatrix> seeds;  // relation consequences from the previous degree

    explicit QuiverBuilder(const Quiver& q, const RelationSet& r, FieldSpec f,
                           BoundQuiverOptions o)
        : q(q), rels(r), field(f), opts(o) {}

    ExactMatrix pad(const ExactMatrix& row, std::size_t width) const {
        ExactMatrix out(field, 1, width);
        out.paste(row, 0, 0);
        return out;
    }

    ExactMatrix unit_row(std::size_t idx, std::size_t width) const {
        ExactMatrix out(field, 1, width);
        out.set(0, idx, 1);
        return out;
    }

    // one right extension step over the canonical basis only
    ExactMatrix fold_canonical(const ExactMatrix& row, std::size_t arrow) const {
        ExactMatrix out(field, 1, basis.size());
        for (std::size_t ci = 0; ci < row.cols(); ++ci) {
            mpq_class c = row.at(0, ci);
            if (c == 0) continue;
            if (!ext[ci][arrow]) continue;
            out = out + pad(*ext[ci][arrow], basis.size()).scaled(c);
        }
        return out;
    }

    void run();
    void impose_degree(std::size_t d);
    AlgebraPtr finish() const;
};

void QuiverBuilder::run() {
    const std::size_t nv = q.vertices.size();
    for (std::size_t v = 0; v < nv; ++v) {
        vertex_idem.push_back(basis.size());
        basis.push_back({v, v, 0, {}, "e_" + q.vertices[v]});
    }
    ext.assign(basis.size(), std::vector<std::optional<ExactMatrix>>(q.arrows.size()));
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        std::size_t src = q.vertex_index(q.arrows[ai].src);
        std::size_t tgt = q.vertex_index(q.arrows[ai].tgt);
        std::size_t idx = basis.size();
        basis.push_back({src, tgt, 1, {ai}, q.arrows[ai].name});
        ext.emplace_back(q.arrows.size());
        ext[vertex_idem[src]][ai] = unit_row(idx, idx + 1);
    }
    std::size_t max_rel_len = 0;
    for (const auto& r : rels.relations)
        for (const auto& t : r.terms) max_rel_len = std::max(max_rel_len, t.path.size());

    for (std::size_t d = 2; d <= opts.degree_bound + 1; ++d) {
        std::size_t before = basis.size();
        impose_degree(d);
        if (basis.size() > opts.dim_cap)
            throw std::runtime_error("quotient not finite-dimensional or bound too small");
        bool grew = basis.size() > before;
        bool pending = !seeds.empty();
        if (!grew && !pending && d > max_rel_len) return;
        if (d > opts.degree_bound)
            throw std::runtime_error("quotient not finite-dimensional or bound too small");
    }
}

void QuiverBuilder::impose_degree(std::size_t d) {
    const std::size_t ncanon = basis.size();
    // candidates: composable (canonical of degree d-1, arrow) pairs
    std::vector<std::pair<std::size_t, std::size_t>> cand;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> cand_index;
    for (std::size_t ci = 0; ci < ncanon; ++ci) {
        if (basis[ci].len != d - 1) continue;
        for (std::size_t ai = 0; ai < q.arrows.size(); ++ai)
            if (q.vertex_index(q.arrows[ai].src) == basis[ci].tgt) {
                cand_index[{ci, ai}] = cand.size();
                cand.push_back({ci, ai});
            }
    }
    const std::size_t width = cand.size() + ncanon;  // candidate columns first

    // extend a canonical-coordinate row by one arrow into the candidate space
    auto fold_extended = [&](const ExactMatrix& row, std::size_t arrow) {
        ExactMatrix out(field, 1, width);
        for (std::size_t ci = 0; ci < row.cols(); ++ci) {
            mpq_class c = row.at(0, ci);
            if (c == 0) continue;
            if (basis[ci].len == d - 1) {
                auto it = cand_index.find({ci, arrow});
                if (it == cand_index.end()) continue;  // not composable: zero
                ExactMatrix e(field, 1, width);
                e.set(0, it->second, c);
                out = out + e;
            } else if (ext[ci][arrow]) {
                ExactMatrix sub = pad(*ext[ci][arrow], ncanon).scaled(c);
                ExactMatrix shifted(field, 1, width);
                shifted.paste(sub, 0, cand.size());
                out = out + shifted;
            }
        }
        return out;
    };

    auto fold_path_extended = [&](std::size_t start_canon,
                                  const std::vector<std::size_t>& arrows) {
        // all but the final step stay inside the canonical span
        ExactMatrix row = unit_row(start_canon, basis.size());
        for (std::size_t s = 0; s + 1 < arrows.size(); ++s) row = fold_canonical(row, arrows[s]);
        return fold_extended(row, arrows.back());
    };

    std::vector<ExactMatrix> consequences;
    // fresh relation consequences c*r for canonical c of matching degree
    for (const auto& rel : rels.relations) {
        if (rel.terms.empty()) continue;
        std::size_t maxlen = 0;
        for (const auto& t : rel.terms) maxlen = std::max(maxlen, t.path.size());
        if (maxlen > d) continue;
        std::size_t cdeg = d - maxlen;
        std::size_t rel_src = q.vertex_index(q.arrows[q.arrow_index(rel.terms[0].path[0])].src);
        for (std::size_t ci = 0; ci < ncanon; ++ci) {
            if (basis[ci].len != cdeg || basis[ci].tgt != rel_src) continue;
            ExactMatrix row(field, 1, width);
            for (const auto& term : rel.terms) {
                std::vector<std::size_t> arrows;
                for (const auto& an : term.path) arrows.push_back(q.arrow_index(an));
                if (term.path.size() == maxlen) {
                    row = row + fold_path_extended(ci, arrows).scaled(term.coeff);
                } else {
                    ExactMatrix r = unit_row(ci, basis.size());
                    for (std::size_t a : arrows) r = fold_canonical(r, a);
                    ExactMatrix shifted(field, 1, width);
                    shifted.paste(pad(r, ncanon), 0, cand.size());
                    row = row + shifted.scaled(term.coeff);
                }
            }
            if (!row.is_zero()) consequences.push_back(row);
        }
    }
    // arrow extensions of the previous degree's consequences
    for (const auto& seed : seeds)
        for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
            ExactMatrix row = fold_extended(pad(seed, ncanon), ai);
            if (!row.is_zero()) consequences.push_back(row);
        }

    std::vector<ExactMatrix> originals = consequences;
    ExactMatrix conseq(field, consequences.size(), width);
    for (std::size_t i = 0; i < consequences.size(); ++i) conseq.paste(consequences[i], i, 0);
    RrefResult red = rref(conseq);

    for (std::size_t k = 0; k < red.rank; ++k)
        if (red.pivot_cols[k] >= cand.size())
            throw std::runtime_error(
                "relation consequences collapse a lower-degree basis element; "
                "degreewise reduction cannot present this relation set");

    // surviving candidates become new basis paths
    std::vector<bool> eliminated(cand.size(), false);
    for (std::size_t k = 0; k < red.rank; ++k) eliminated[red.pivot_cols[k]] = true;
    std::vector<std::size_t> new_index(cand.size(), 0);
    for (std::size_t t = 0; t < cand.size(); ++t) {
        if (eliminated[t]) continue;
        auto [ci, ai] = cand[t];
        new_index[t] = basis.size();
        CanonPath cp;
        cp.src = basis[ci].src;
        cp.tgt = q.vertex_index(q.arrows[ai].tgt);
        cp.len = d;
        cp.arrows = basis[ci].arrows;
        cp.arrows.push_back(ai);
        cp.label = basis[ci].label + "*" + q.arrows[ai].name;
        if (basis[ci].len == 0) cp.label = q.arrows[ai].name;  // unreachable at d>=2, kept for safety
        basis.push_back(cp);
        ext.emplace_back(q.arrows.size());
    }
    const std::size_t ntotal = basis.size();

    // rewrite a candidate-space row over the final canonical basis
    auto to_final = [&](const ExactMatrix& row, const std::vector<ExactMatrix>& elim_expr) {
        ExactMatrix out(field, 1, ntotal);
        for (std::size_t t = 0; t < cand.size(); ++t) {
            mpq_class c = row.at(0, t);
            if (c == 0) continue;
            if (eliminated[t])
                out = out + elim_expr[t].scaled(c);
            else {
                ExactMatrix e(field, 1, ntotal);
                e.set(0, new_index[t], c);
                out = out + e;
            }
        }
        for (std::size_t j = 0; j < ncanon; ++j) {
            mpq_class c = row.at(0, cand.size() + j);
            if (c == 0) continue;
            ExactMatrix e(field, 1, ntotal);
            e.set(0, j, c);
            out = out + e;
        }
        return out;
    };

    // expressions for eliminated candidates, in dependency order: a pivot row
    // [0..0 1 tail] says candidate = -tail; tails only involve later pivot
    // columns and free columns, so process pivots from the right
    std::vector<ExactMatrix> elim_expr(cand.size(), ExactMatrix(field, 1, ntotal));
    for (std::size_t k = red.rank; k-- > 0;) {
        std::size_t pc = red.pivot_cols[k];
        ExactMatrix tail = red.reduced.submatrix(k, 0, 1, width);
        tail.set(0, pc, 0);
        elim_expr[pc] = -to_final(tail, elim_expr);
    }

    for (std::size_t t = 0; t < cand.size(); ++t) {
        auto [ci, ai] = cand[t];
        if (eliminated[t])
            ext[ci][ai] = elim_expr[t];
        else
            ext[ci][ai] = unit_row(new_index[t], ntotal);
    }

    seeds.clear();
    for (const auto& row : originals) {
        ExactMatrix s = to_final(row, elim_expr);
        if (!s.is_zero()) seeds.push_back(s);
    }
}

AlgebraPtr QuiverBuilder::finish() const {
    const std::size_t dimension = basis.size();
    std::vector<ExactMatrix> rmul(dimension, ExactMatrix(field, dimension, dimension));
    for (std::size_t j = 0; j < dimension; ++j) {
        for (std::size_t i = 0; i < dimension; ++i) {
            ExactMatrix row(field, 1, dimension);
            if (basis[j].len == 0) {
                if (basis[i].tgt == basis[j].src) row.set(0, i, 1);
            } else if (basis[i].tgt == basis[j].src) {
                row = unit_row(i, dimension);
                for (std::size_t a : basis[j].arrows) row = fold_canonical(row, a);
            }
            rmul[j].paste(row, i, 0);
        }
    }
    ExactMatrix unit(field, 1, dimension);
    for (std::size_t v : vertex_idem) unit.set(0, v, 1);
    std::vector<std::string> labels;
    for (const auto& b : basis) labels.push_back(b.label);

    QuiverInfo info;
    info.quiver = q;
    info.relations = rels;
    for (const auto& b : basis) {
        info.path_len.push_back(b.len);
        info.path_arrows.push_back(b.arrows);
        info.path_src.push_back(b.src);
        info.path_tgt.push_back(b.tgt);
    }
    info.vertex_idempotent = vertex_idem;
    return Algebra::from_right_mult(field, std::move(rmul), std::move(unit), std::move(labels),
                                    std::move(info));
}

void validate_relations(const Quiver& q, const RelationSet& rels) {
    for (const auto& rel : rels.relations) {
        std::optional<std::pair<std::size_t, std::size_t>> endpoints;
        for (const auto& term : rel.terms) {
            if (term.path.size() < 2)
                throw std::invalid_argument("relation path shorter than 2 arrows");
            std::size_t src = 0, cur = 0;
            for (std::size_t s = 0; s < term.path.size(); ++s) {
                const Arrow& a = q.arrows[q.arrow_index(term.path[s])];
                std::size_t as = q.vertex_index(a.src), at = q.vertex_index(a.tgt);
                if (s == 0)
                    src = as;
                else if (as != cur)
                    throw std::invalid_argument("relation path is not composable at '" + a.name +
                                                "'");
                cur = at;
            }
            if (!endpoints)
                endpoints = {src, cur};
            else if (*endpoints != std::make_pair(src, cur))
                throw std::invalid_argument("relation mixes non-parallel paths");
        }
    }
}

}  // namespace

AlgebraPtr bound_quiver_algebra(FieldSpec field, const Quiver& q, const RelationSet& rels,
                                const BoundQuiverOptions& opts) {
    q.validate();
    validate_relations(q, rels);
    for (const auto& rel : rels.relations)
        for (const auto& t : rel.terms)
            if (t.path.size() > opts.degree_bound)
                throw std::runtime_error("relation longer than the degree bound");
    QuiverBuilder b(q, rels, field, opts);
    b.run();
    return b.finish();
}

// ---------------------------------------------------------------------------
// radical / center / opposite
// ---------------------------------------------------------------------------

ExactMatrix radical(const Algebra& a) {
    const std::size_t d = a.dim();
    if (a.quiver()) {
        const auto& info = *a.quiver();
        std::size_t n = 0;
        for (auto l : info.path_len) n += (l >= 1);
        ExactMatrix out(a.field(), n, d);
        std::size_t r = 0;
        for (std::size_t i = 0; i < d; ++i)
            if (info.path_len[i] >= 1) out.set(r++, i, 1);
        return out;
    }
    if (!a.field().is_rational() && a.field().p <= static_cast<std::int64_t>(d))
        throw std::runtime_error("radical computation unsupported for this field/presentation");
    // Dickson trace form: x in rad iff tr(L_x L_y) = 0 for all y
    std::vector<ExactMatrix> lm;
    for (std::size_t i = 0; i < d; ++i) {
        ExactMatrix ei(a.field(), 1, d);
        ei.set(0, i, 1);
        lm.push_back(a.left_mult_of(ei));
    }
    ExactMatrix form(a.field(), d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            mpq_class tr = 0;
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t s = 0; s < d; ++s) tr += lm[i].at(r, s) * lm[j].at(s, r);
            form.set(i, j, tr);
        }
    return kernel_basis(form);
}

ExactMatrix center(const Algebra& a) {
    const std::size_t d = a.dim();
    ExactMatrix stacked(a.field(), d, d * d);
    for (std::size_t i = 0; i < d; ++i) {
        ExactMatrix ei(a.field(), 1, d);
        ei.set(0, i, 1);
        ExactMatrix diff = a.right_mult(i) - a.left_mult_of(ei);
        stacked.paste(diff, 0, i * d);
    }
    return kernel_basis(stacked);
}

AlgebraPtr opposite(const Algebra& a) {
    const std::size_t d = a.dim();
    std::vector<ExactMatrix> rmul(d, ExactMatrix(a.field(), d, d));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i)
            rmul[j].paste(a.right_mult(i).submatrix(j, 0, 1, d), i, 0);
    std::optional<QuiverInfo> qinfo;
    if (a.quiver()) {
        QuiverInfo info = *a.quiver();
        for (auto& ar : info.quiver.arrows) std::swap(ar.src, ar.tgt);
        for (auto& rel : info.relations.relations)
            for (auto& t : rel.terms) std::reverse(t.path.begin(), t.path.end());
        for (auto& pa : info.path_arrows) std::reverse(pa.begin(), pa.end());
        std::swap(info.path_src, info.path_tgt);
        qinfo = std::move(info);
    }
    std::vector<std::string> labels = a.labels();
    return Algebra::from_right_mult(a.field(), std::move(rmul), a.unit(), std::move(labels),
                                    std::move(qinfo));
}

// ---------------------------------------------------------------------------
// minimal polynomials and field roots
// ---------------------------------------------------------------------------

std::vector<mpq_class> minimal_polynomial(const ExactMatrix& op) {
    if (op.rows() != op.cols()) throw std::invalid_argument("minimal_polynomial needs square");
    const std::size_t n = op.rows();
    ExactMatrix power = ExactMatrix::identity(op.field(), n);
    ExactMatrix stack(op.field(), 0, n * n);
    auto flatten = [&](const ExactMatrix& m) {
        ExactMatrix row(op.field(), 1, n * n);
        for (std::size_t i = 0; i < n; ++i) row.paste(m.submatrix(i, 0, 1, n), 0, i * n);
        return row;
    };
    for (std::size_t deg = 0; deg <= n; ++deg) {
        ExactMatrix row = flatten(power);
        if (deg > 0) {
            auto sol = solve(stack, row);
            if (sol) {
                std::vector<mpq_class> coeffs(deg);
                for (std::size_t k = 0; k < deg; ++k) coeffs[k] = -sol->at(0, k);
                return coeffs;
            }
        }
        stack = stack.rows() == 0 ? row : ExactMatrix::vstack(stack, row);
        power = power * op;
    }
    throw std::logic_error("minimal polynomial search exceeded dimension bound");
}

namespace {

// deflate monic poly (low-first coefficients, implicit leading 1) by root r;
// returns true and the quotient when r is a root
bool deflate_root(const FieldSpec& field, std::vector<mpq_class>& coeffs, const mpq_class& r) {
    // synthetic division of x^n + c_{n-1} x^{n-1} + ... + c_0 by (x - r)
    std::size_t n = coeffs.size();
    std::vector<mpq_class> q(n, 0);
    mpq_class carry = 1;  // leading coefficient
    for (std::size_t i = n; i-- > 0;) {
        q[i] = carry;
        carry = reduce_into(field, coeffs[i] + r * carry);
    }
    if (carry != 0) return false;
    q.pop_back();  // drop the leading 1; the quotient stays monic-implicit
    for (auto& c : q) c = reduce_into(field, c);
    coeffs = q;
    return true;
}

void divisors_bounded(const mpz_class& value, std::vector<mpz_class>& out) {
    mpz_class v = abs(value);
    if (v == 0) return;
    std::vector<std::pair<mpz_class, unsigned>> factors;
    mpz_class rem = v;
    for (mpz_class d = 2; d * d <= rem && d < 1000000; ++d) {
        if (rem % d == 0) {
            unsigned e = 0;
            while (rem % d == 0) {
                rem /= d;
                ++e;
            }
            factors.push_back({d, e});
        }
    }
    if (rem > 1) factors.push_back({rem, 1});
    std::vector<mpz_class> divs{1};
    for (auto& [pr, e] : factors) {
        std::size_t sz = divs.size();
        mpz_class pw = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pw *= pr;
            for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pw);
        }
    }
    out = std::move(divs);
}

RootReport rational_roots(std::vector<mpq_class> coeffs) {
    RootReport rep;
    while (!coeffs.empty() && coeffs[0] == 0) {
        if (rep.roots.empty() || rep.roots.back() != 0) rep.roots.push_back(0);
        coeffs.erase(coeffs.begin());
    }
    if (coeffs.empty()) {
        rep.complete = true;
        return rep;
    }
    // scale to integer coefficients: leading coefficient is 1
    mpz_class den_lcm = 1;
    for (const auto& c : coeffs) {
        mpz_class d = c.get_den();
        den_lcm = den_lcm / gcd(den_lcm, d) * d;
    }
    // substitute x = y / den_lcm and clear: monic integer polynomial in y
    std::size_t n = coeffs.size();
    std::vector<mpz_class> icoef(n);
    mpz_class scale = 1;
    for (std::size_t i = n; i-- > 0;) {
        // coefficient of y^i in den_lcm^n * p(y/den_lcm) is c_i * den_lcm^(n-i)
        mpq_class v = coeffs[i] * mpq_class(scale * den_lcm);
        icoef[i] = v.get_num();  // denominator divides out by construction
        scale *= den_lcm;
    }
    std::vector<mpz_class> divs;
    divisors_bounded(icoef[0], divs);
    std::set<mpq_class> candidates;
    for (const auto& d : divs) {
        candidates.insert(mpq_class(d) / mpq_class(den_lcm));
        candidates.insert(mpq_class(-d) / mpq_class(den_lcm));
    }
    FieldSpec f = FieldSpec::rationals();
    bool progress = true;
    while (progress && !coeffs.empty()) {
        progress = false;
        for (const auto& cand : candidates) {
            std::vector<mpq_class> tmp = coeffs;
            if (deflate_root(f, tmp, cand)) {
                coeffs = tmp;
                if (std::find(rep.roots.begin(), rep.roots.end(), cand) == rep.roots.end())
                    rep.roots.push_back(cand);
                progress = true;
                break;
            }
        }
    }
    rep.complete = coeffs.empty();
    return rep;
}

// polynomial helpers over F_p, low-first coefficients
using FpPoly = std::vector<std::int64_t>;

FpPoly fp_trim(FpPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

FpPoly fp_poly_rem(FpPoly a, const FpPoly& b, std::int64_t p) {
    a = fp_trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        std::int64_t f = fp_mul(a.back(), fp_inv(b.back(), p), p);
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[off + i] = fp_sub(a[off + i], fp_mul(f, b[i], p), p);
        a = fp_trim(a);
    }
    return a;
}

FpPoly fp_poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod, std::int64_t p) {
    FpPoly prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = fp_add(prod[i + j], fp_mul(a[i], b[j], p), p);
    }
    return fp_poly_rem(std::move(prod), mod, p);
}

FpPoly fp_poly_gcd(FpPoly a, FpPoly b, std::int64_t p) {
    a = fp_trim(a);
    b = fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::int64_t inv = fp_inv(a.back(), p);
        for (auto& c : a) c = fp_mul(c, inv, p);
    }
    return a;
}

FpPoly fp_poly_powmod(FpPoly base, std::int64_t e, const FpPoly& mod, std::int64_t p) {
    FpPoly result{1};
    base = fp_poly_rem(std::move(base), mod, p);
    while (e > 0) {
        if (e & 1) result = fp_poly_mulmod(result, base, mod, p);
        base = fp_poly_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return result;
}

FpPoly fp_poly_divexact(const FpPoly& a, const FpPoly& b, std::int64_t p) {
    FpPoly rem = fp_trim(a);
    FpPoly q(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, 0);
    while (rem.size() >= b.size()) {
        std::int64_t fac = fp_mul(rem.back(), fp_inv(b.back(), p), p);
        std::size_t off = rem.size() - b.size();
        q[off] = fac;
        for (std::size_t i = 0; i < b.size(); ++i)
            rem[off + i] = fp_sub(rem[off + i], fp_mul(fac, b[i], p), p);
        rem = fp_trim(rem);
        if (rem.empty()) break;
    }
    return q;
}

// f is assumed to be a product of distinct linear factors
void fp_collect_roots(const FpPoly& f, std::int64_t p, std::vector<std::int64_t>& roots) {
    if (f.size() <= 1) return;
    if (f.size() == 2) {
        roots.push_back(fp_mul(fp_neg(f[0], p), fp_inv(f[1], p), p));
        return;
    }
    // split by gcd with (x+c)^((p-1)/2) - 1 for successive shifts c
    for (std::int64_t c = 0; c < 400; ++c) {
        FpPoly xc{fp_normalize(c, p), 1};
        FpPoly g = fp_poly_powmod(xc, (p - 1) / 2, f, p);
        if (g.empty()) g.push_back(0);
        g[0] = fp_sub(g[0], 1, p);
        g = fp_trim(g);
        FpPoly h = fp_poly_gcd(f, g, p);
        if (h.size() > 1 && h.size() < f.size()) {
            fp_collect_roots(h, p, roots);
            fp_collect_roots(fp_poly_divexact(f, h, p), p, roots);
            return;
        }
    }
    // no split found within the shift budget: leave roots incomplete
}

RootReport prime_roots(const FieldSpec& field, std::vector<mpq_class> coeffs) {
    RootReport rep;
    const std::int64_t p = field.p;
    if (p <= 100000) {
        for (std::int64_t r = 0; r < p && !coeffs.empty(); ++r) {
            mpq_class root(static_cast<long>(r));
            std::vector<mpq_class> tmp = coeffs;
            if (deflate_root(field, tmp, root)) {
                rep.roots.push_back(root);
                coeffs = tmp;
                while (deflate_root(field, coeffs, root)) {
                }
            }
        }
        rep.complete = coeffs.empty();
        return rep;
    }
    FpPoly f(coeffs.size() + 1, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        f[i] = reduce_into(field, coeffs[i]).get_num().get_si();
    f[coeffs.size()] = 1;
    // keep only the part that splits into distinct linear factors
    FpPoly xp = fp_poly_powmod(FpPoly{0, 1}, p, f, p);
    if (xp.empty()) xp = FpPoly{0};
    FpPoly xpx = xp;
    if (xpx.size() < 2) xpx.resize(2, 0);
    xpx[1] = fp_sub(xpx[1], 1, p);
    FpPoly split = fp_poly_gcd(f, fp_trim(xpx), p);
    std::vector<std::int64_t> roots;
    fp_collect_roots(split, p, roots);
    std::sort(roots.begin(), roots.end());
    for (auto r : roots) rep.roots.push_back(mpq_class(static_cast<long>(r)));
    // deflate all found roots (with multiplicity) to decide completeness
    for (auto r : roots) {
        mpq_class root(static_cast<long>(r));
        while (deflate_root(field, coeffs, root)) {
        }
    }
    rep.complete = coeffs.empty();
    return rep;
}

}  // namespace

RootReport field_roots(const FieldSpec& field, const std::vector<mpq_class>& monic_coeffs) {
    return field.is_rational() ? rational_roots(monic_coeffs) : prime_roots(field, monic_coeffs);
}

// ---------------------------------------------------------------------------
// primitive idempotents
// ---------------------------------------------------------------------------

namespace {

// semisimple algebra presented inside an ambient algebra as a row space with
// a designated unit; all products happen in the ambient algebra
struct Corner {
    const Algebra* amb;
    ExactMatrix rows;  // k x dim(amb): basis of the corner
    ExactMatrix unit;  // 1 x dim(amb)
};

ExactMatrix corner_mult_op(const Corner& c, const ExactMatrix& x) {
    // matrix of right multiplication by x on the corner, in corner coordinates
    ExactMatrix image = c.rows * c.amb->right_mult_of(x);
    auto sol = solve(c.rows, image);
    if (!sol) throw std::logic_error("corner is not multiplicatively closed");
    return *sol;
}

ExactMatrix row_space_basis(const ExactMatrix& rows) {
    RrefResult r = rref(rows);
    ExactMatrix out(rows.field(), r.rank, rows.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
        out.paste(r.reduced.submatrix(i, 0, 1, rows.cols()), i, 0);
    return out;
}

Corner corner_of(const Algebra& amb, const ExactMatrix& span_rows, const ExactMatrix& unit) {
    return Corner{&amb, row_space_basis(span_rows), unit};
}

// spectral idempotent of x at its first eigenvalue, or nullopt
std::optional<ExactMatrix> splitting_idempotent(const Corner& c, const ExactMatrix& x) {
    ExactMatrix op = corner_mult_op(c, x);
    auto mp = minimal_polynomial(op);
    RootReport rr = field_roots(c.amb->field(), mp);
    if (!rr.complete || rr.roots.size() < 2) return std::nullopt;
    // e = prod_{j >= 1} (x - r_j * unit) / (r_0 - r_j); reduce_into inverts the
    // denominator mod p in the prime case
    ExactMatrix e = c.unit;
    for (std::size_t j = 1; j < rr.roots.size(); ++j) {
        mpq_class denom = rr.roots[0] - rr.roots[j];
        if (reduce_into(c.amb->field(), denom) == 0) return std::nullopt;
        ExactMatrix factor = x - c.unit.scaled(rr.roots[j]);
        e = c.amb->mult(e, factor).scaled(mpq_class(1) / denom);
    }
    if (!(c.amb->mult(e, e) == e)) return std::nullopt;
    if (e.is_zero() || e == c.unit) return std::nullopt;
    return e;
}

void primitive_in_corner(const Corner& c, std::vector<ExactMatrix>& out, int depth) {
    if (depth > 64) throw std::runtime_error("idempotent splitting recursion too deep");
    if (c.rows.rows() == 0) return;
    if (c.rows.rows() == 1) {
        out.push_back(c.unit);
        return;
    }
    std::optional<ExactMatrix> e;
    // candidate elements: basis rows, pairwise sums, then seeded random combos
    for (std::size_t i = 0; i < c.rows.rows() && !e; ++i)
        e = splitting_idempotent(c, c.rows.submatrix(i, 0, 1, c.rows.cols()));
    for (std::size_t i = 0; i < c.rows.rows() && !e; ++i)
        for (std::size_t j = i + 1; j < c.rows.rows() && !e; ++j) {
            ExactMatrix s =
                c.rows.submatrix(i, 0, 1, c.rows.cols()) + c.rows.submatrix(j, 0, 1, c.rows.cols());
            e = splitting_idempotent(c, s);
        }
    std::mt19937_64 rng(0x7115u + 31 * c.rows.rows());
    for (int attempt = 0; attempt < 200 && !e; ++attempt) {
        ExactMatrix x(c.amb->field(), 1, c.rows.cols());
        for (std::size_t i = 0; i < c.rows.rows(); ++i) {
            std::int64_t coeff;
            if (c.amb->field().is_rational())
                coeff = static_cast<std::int64_t>(rng() % 7) - 3;
            else
                coeff = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(
                                                             c.amb->field().p));
            x = x + c.rows.submatrix(i, 0, 1, c.rows.cols()).scaled(mpq_class(long(coeff)));
        }
        e = splitting_idempotent(c, x);
    }
    if (!e)
        throw std::runtime_error(
            "unable to split semisimple block: non-split semisimple quotient unsupported");
    ExactMatrix f = c.unit - *e;
    // Peirce corners e A e and f A f
    auto corner_span = [&](const ExactMatrix& idem) {
        ExactMatrix span(c.amb->field(), c.rows.rows(), c.rows.cols());
        for (std::size_t i = 0; i < c.rows.rows(); ++i) {
            ExactMatrix b = c.rows.submatrix(i, 0, 1, c.rows.cols());
            span.paste(c.amb->mult(idem, c.amb->mult(b, idem)), i, 0);
        }
        return span;
    };
    primitive_in_corner(corner_of(*c.amb, corner_span(*e), *e), out, depth + 1);
    primitive_in_corner(corner_of(*c.amb, corner_span(f), f), out, depth + 1);
}

}  // namespace

std::vector<ExactMatrix> primitive_idempotents(const Algebra& a) {
    const std::size_t d = a.dim();
    if (a.quiver()) {
        std::vector<ExactMatrix> out;
        for (std::size_t idx : a.quiver()->vertex_idempotent) {
            ExactMatrix e(a.field(), 1, d);
            e.set(0, idx, 1);
            out.push_back(e);
        }
        return out;
    }

    ExactMatrix rad = radical(a);
    // quotient algebra A/rad via a section on the non-pivot coordinates
    RrefResult rr = rref(rad);
    std::vector<bool> is_pivot(d, false);
    for (auto c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < d; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    const std::size_t m = free_cols.size();
    ExactMatrix section(a.field(), m, d);
    for (std::size_t i = 0; i < m; ++i) section.set(i, free_cols[i], 1);
    ExactMatrix proj(a.field(), d, m);
    for (std::size_t j = 0; j < d; ++j) {
        ExactMatrix res(a.field(), 1, d);
        res.set(0, j, 1);
        for (std::size_t k = 0; k < rr.rank; ++k) {
            mpq_class c = res.at(0, rr.pivot_cols[k]);
            if (c != 0) res = res - rr.reduced.submatrix(k, 0, 1, d).scaled(c);
        }
        for (std::size_t i = 0; i < m; ++i) proj.set(j, i, res.at(0, free_cols[i]));
    }
    std::vector<std::vector<std::vector<mpq_class>>> table(
        m, std::vector<std::vector<mpq_class>>(m, std::vector<mpq_class>(m)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            ExactMatrix prod = a.mult(section.submatrix(i, 0, 1, d), section.submatrix(j, 0, 1, d));
            ExactMatrix q = prod * proj;
            for (std::size_t k = 0; k < m; ++k) table[i][j][k] = q.at(0, k);
        }
    std::vector<mpq_class> unit_q(m);
    {
        ExactMatrix uq = a.unit() * proj;
        for (std::size_t k = 0; k < m; ++k) unit_q[k] = uq.at(0, k);
    }
    AlgebraPtr bar = Algebra::from_table(a.field(), table, unit_q);

    // central primitive idempotents of the semisimple quotient by common
    // eigenline refinement of the center
    ExactMatrix z = center(*bar);
    std::vector<ExactMatrix> subspaces{row_space_basis(z)};
    for (std::size_t zi = 0; zi < z.rows(); ++zi) {
        ExactMatrix zel = z.submatrix(zi, 0, 1, m);
        std::vector<ExactMatrix> next;
        for (const auto& v : subspaces) {
            if (v.rows() <= 1) {
                next.push_back(v);
                continue;
            }
            ExactMatrix image = v * bar->right_mult_of(zel);
            auto op = solve(v, image);
            if (!op) throw std::logic_error("center not invariant");
            auto mp = minimal_polynomial(*op);
            RootReport roots = field_roots(bar->field(), mp);
            if (!roots.complete)
                throw std::runtime_error("non-split semisimple quotient: unsupported (roots incomplete)");
            std::size_t total = 0;
            for (const auto& lam : roots.roots) {
                ExactMatrix shifted = *op - ExactMatrix::identity(bar->field(), v.rows()).scaled(lam);
                ExactMatrix ker = kernel_basis(shifted);
                if (ker.rows() == 0) continue;
                next.push_back(ker * v);
                total += ker.rows();
            }
            if (total != v.rows())
                throw std::runtime_error("non-split semisimple quotient: unsupported (eigenspaces deficient)");
        }
        subspaces = std::move(next);
    }
    std::vector<ExactMatrix> bar_prims;
    for (const auto& line : subspaces) {
        if (line.rows() != 1)
            throw std::runtime_error("non-split semisimple quotient: unsupported (line not 1-dim)");
        ExactMatrix u = line;
        ExactMatrix sq = bar->mult(u, u);
        auto gamma = solve(u, sq);
        if (!gamma || gamma->at(0, 0) == 0)
            throw std::runtime_error("degenerate central idempotent candidate");
        ExactMatrix eps = u.scaled(mpq_class(1) / gamma->at(0, 0));
        // primitive idempotents inside the central block eps * bar * eps
        ExactMatrix span(bar->field(), m, m);
        for (std::size_t i = 0; i < m; ++i) {
            ExactMatrix b(bar->field(), 1, m);
            b.set(0, i, 1);
            span.paste(bar->mult(eps, bar->mult(b, eps)), i, 0);
        }
        primitive_in_corner(corner_of(*bar, span, eps), bar_prims, 0);
    }

    // lift along the radical: Newton iteration inside shrinking corners
    std::vector<ExactMatrix> lifted;
    ExactMatrix g = a.unit();
    for (std::size_t t = 0; t + 1 < bar_prims.size(); ++t) {
        ExactMatrix x = bar_prims[t] * section;
        x = a.mult(g, a.mult(x, g));
        ExactMatrix e = x;
        bool ok = false;
        for (int it = 0; it < 64; ++it) {
            ExactMatrix e2 = a.mult(e, e);
            if (e2 == e) {
                ok = true;
                break;
            }
            e = e2.scaled(3) - a.mult(e2, e).scaled(2);
        }
        if (!ok) throw std::runtime_error("idempotent lift did not converge");
        lifted.push_back(e);
        g = g - e;
    }
    if (!bar_prims.empty()) {
        if (!(a.mult(g, g) == g)) throw std::logic_error("residual idempotent corrupted");
        lifted.push_back(g);
    }
    // exact family validation
    ExactMatrix sum(a.field(), 1, d);
    for (const auto& e : lifted) sum = sum + e;
    if (!(sum == a.unit())) throw std::logic_error("idempotents do not sum to 1");
    for (std::size_t i = 0; i < lifted.size(); ++i)
        for (std::size_t j = 0; j < lifted.size(); ++j) {
            ExactMatrix prod = a.mult(lifted[i], lifted[j]);
            if (i == j ? !(prod == lifted[i]) : !prod.is_zero())
                throw std::logic_error("idempotent family not orthogonal");
        }
    return lifted;
}

}  // namespace tiltkit
