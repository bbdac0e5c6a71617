#include "tiltkit/matrix.hpp"

#include <sstream>

namespace tiltkit {

namespace {

void check_same_field(const ExactMatrix& a, const ExactMatrix& b) {
    if (!(a.field() == b.field()))
        throw std::invalid_argument("mixed-field matrix operands (" + a.field().str() + " vs " +
                                    b.field().str() + ")");
}

struct QOps {
    using T = mpq_class;
    T zero() const { return mpq_class(0); }
    bool is_zero(const T& a) const { return a == 0; }
    T add(const T& a, const T& b) const { return a + b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T mul(const T& a, const T& b) const { return a * b; }
    T neg(const T& a) const { return -a; }
    T inv(const T& a) const { return 1 / a; }
};

struct FpOps {
    std::int64_t p;
    using T = std::int64_t;
    T zero() const { return 0; }
    bool is_zero(const T& a) const { return a == 0; }
    T add(const T& a, const T& b) const { return fp_add(a, b, p); }
    T sub(const T& a, const T& b) const { return fp_sub(a, b, p); }
    T mul(const T& a, const T& b) const { return fp_mul(a, b, p); }
    T neg(const T& a) const { return fp_neg(a, p); }
    T inv(const T& a) const { return fp_inv(a, p); }
};

// In-place RREF on a row-major buffer. Pivots are searched in columns
// [0, pivot_limit); trailing columns ride along as an augmented block.
template <class Ops>
void rref_buffer(const Ops& ops, std::vector<typename Ops::T>& a, std::size_t rows,
                 std::size_t cols, std::size_t pivot_limit, std::vector<std::size_t>& pivots) {
    pivots.clear();
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_limit && r < rows; ++c) {
        std::size_t pr = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (!ops.is_zero(a[i * cols + c])) {
                pr = i;
                break;
            }
        }
        if (pr == rows) continue;
        if (pr != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[pr * cols + j], a[r * cols + j]);
        const auto piv_inv = ops.inv(a[r * cols + c]);
        for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = ops.mul(a[r * cols + j], piv_inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const auto f = a[i * cols + c];
            if (ops.is_zero(f)) continue;
            for (std::size_t j = c; j < cols; ++j)
                a[i * cols + j] = ops.sub(a[i * cols + j], ops.mul(f, a[r * cols + j]));
        }
        pivots.push_back(c);
        ++r;
    }
}

template <class Ops>
void mul_buffer(const Ops& ops, const std::vector<typename Ops::T>& a,
                const std::vector<typename Ops::T>& b, std::vector<typename Ops::T>& out,
                std::size_t n, std::size_t m, std::size_t k) {
    // (n x m) * (m x k)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const auto& f = a[i * m + j];
            if (ops.is_zero(f)) continue;
            for (std::size_t l = 0; l < k; ++l)
                out[i * k + l] = ops.add(out[i * k + l], ops.mul(f, b[j * k + l]));
        }
}

}  // namespace

// Shared entry points that dispatch on the storage kind.
struct MatrixKernels {
    static ExactMatrix make(const FieldSpec& f, std::size_t rows, std::size_t cols) {
        return ExactMatrix(f, rows, cols);
    }

    template <class F>
    static void binary_entrywise(ExactMatrix& dst, const ExactMatrix& a, const ExactMatrix& b,
                                 F&& fq, F&& fr);

    static void rref_impl(ExactMatrix& m, std::size_t pivot_limit,
                          std::vector<std::size_t>& pivots) {
        if (m.field_.is_rational()) {
            rref_buffer(QOps{}, m.q_, m.rows_, m.cols_, pivot_limit, pivots);
        } else {
            rref_buffer(FpOps{m.field_.p}, m.r_, m.rows_, m.cols_, pivot_limit, pivots);
        }
    }

    static ExactMatrix mul(const ExactMatrix& a, const ExactMatrix& b) {
        ExactMatrix out(a.field_, a.rows_, b.cols_);
        if (a.field_.is_rational())
            mul_buffer(QOps{}, a.q_, b.q_, out.q_, a.rows_, a.cols_, b.cols_);
        else
            mul_buffer(FpOps{a.field_.p}, a.r_, b.r_, out.r_, a.rows_, a.cols_, b.cols_);
        return out;
    }
};

ExactMatrix::ExactMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols) {
    if (field_.is_rational())
        q_.assign(rows * cols, mpq_class(0));
    else
        r_.assign(rows * cols, 0);
}

ExactMatrix ExactMatrix::identity(FieldSpec field, std::size_t n) {
    ExactMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

ExactMatrix ExactMatrix::from_rows(FieldSpec field, std::size_t rows, std::size_t cols,
                                   const std::vector<mpq_class>& entries) {
    if (entries.size() != rows * cols)
        throw std::invalid_argument("entry count does not match matrix shape");
    ExactMatrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, entries[i * cols + j]);
    return m;
}

mpq_class ExactMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index");
    if (field_.is_rational()) return q_[i * cols_ + j];
    return mpq_class(static_cast<long>(r_[i * cols_ + j]));
}

void ExactMatrix::set(std::size_t i, std::size_t j, const mpq_class& value) {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index");
    mpq_class v = reduce_into(field_, value);
    if (field_.is_rational())
        q_[i * cols_ + j] = v;
    else
        r_[i * cols_ + j] = v.get_num().get_si();
}

bool ExactMatrix::is_zero() const {
    if (field_.is_rational()) {
        for (const auto& v : q_)
            if (v != 0) return false;
    } else {
        for (auto v : r_)
            if (v != 0) return false;
    }
    return true;
}

bool ExactMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(field_, rows_);
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
    check_same_field(*this, o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in +");
    ExactMatrix out(field_, rows_, cols_);
    if (field_.is_rational())
        for (std::size_t k = 0; k < q_.size(); ++k) out.q_[k] = q_[k] + o.q_[k];
    else
        for (std::size_t k = 0; k < r_.size(); ++k) out.r_[k] = fp_add(r_[k], o.r_[k], field_.p);
    return out;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
    check_same_field(*this, o);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in -");
    ExactMatrix out(field_, rows_, cols_);
    if (field_.is_rational())
        for (std::size_t k = 0; k < q_.size(); ++k) out.q_[k] = q_[k] - o.q_[k];
    else
        for (std::size_t k = 0; k < r_.size(); ++k) out.r_[k] = fp_sub(r_[k], o.r_[k], field_.p);
    return out;
}

ExactMatrix ExactMatrix::operator-() const {
    ExactMatrix out(field_, rows_, cols_);
    if (field_.is_rational())
        for (std::size_t k = 0; k < q_.size(); ++k) out.q_[k] = -q_[k];
    else
        for (std::size_t k = 0; k < r_.size(); ++k) out.r_[k] = fp_neg(r_[k], field_.p);
    return out;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
    check_same_field(*this, o);
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch in *");
    return MatrixKernels::mul(*this, o);
}

ExactMatrix ExactMatrix::scaled(const mpq_class& c) const {
    mpq_class v = reduce_into(field_, c);
    ExactMatrix out(field_, rows_, cols_);
    if (field_.is_rational())
        for (std::size_t k = 0; k < q_.size(); ++k) out.q_[k] = q_[k] * v;
    else {
        std::int64_t cv = v.get_num().get_si();
        for (std::size_t k = 0; k < r_.size(); ++k) out.r_[k] = fp_mul(r_[k], cv, field_.p);
    }
    return out;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
    if (!(field_ == o.field_) || rows_ != o.rows_ || cols_ != o.cols_) return false;
    return field_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

ExactMatrix ExactMatrix::transposed() const {
    ExactMatrix out(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            if (field_.is_rational())
                out.q_[j * rows_ + i] = q_[i * cols_ + j];
            else
                out.r_[j * rows_ + i] = r_[i * cols_ + j];
        }
    return out;
}

ExactMatrix ExactMatrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr,
                                   std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("submatrix bounds");
    ExactMatrix out(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) {
            if (field_.is_rational())
                out.q_[i * nc + j] = q_[(r0 + i) * cols_ + (c0 + j)];
            else
                out.r_[i * nc + j] = r_[(r0 + i) * cols_ + (c0 + j)];
        }
    return out;
}

void ExactMatrix::paste(const ExactMatrix& block, std::size_t r0, std::size_t c0) {
    check_same_field(*this, block);
    if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_)
        throw std::out_of_range("paste bounds");
    for (std::size_t i = 0; i < block.rows_; ++i)
        for (std::size_t j = 0; j < block.cols_; ++j) {
            if (field_.is_rational())
                q_[(r0 + i) * cols_ + (c0 + j)] = block.q_[i * block.cols_ + j];
            else
                r_[(r0 + i) * cols_ + (c0 + j)] = block.r_[i * block.cols_ + j];
        }
}

ExactMatrix ExactMatrix::hstack(const ExactMatrix& a, const ExactMatrix& b) {
    check_same_field(a, b);
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack row mismatch");
    ExactMatrix out(a.field_, a.rows_, a.cols_ + b.cols_);
    out.paste(a, 0, 0);
    out.paste(b, 0, a.cols_);
    return out;
}

ExactMatrix ExactMatrix::vstack(const ExactMatrix& a, const ExactMatrix& b) {
    check_same_field(a, b);
    if (a.cols_ != b.cols_) throw std::invalid_argument("vstack column mismatch");
    ExactMatrix out(a.field_, a.rows_ + b.rows_, a.cols_);
    out.paste(a, 0, 0);
    out.paste(b, a.rows_, 0);
    return out;
}

std::string ExactMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << scalar_str(at(i, j));
    }
    os << "]";
    return os.str();
}

RrefResult rref(const ExactMatrix& m) {
    // augment with the identity to track the transform
    ExactMatrix aug = ExactMatrix::hstack(m, ExactMatrix::identity(m.field(), m.rows()));
    std::vector<std::size_t> pivots;
    MatrixKernels::rref_impl(aug, m.cols(), pivots);
    RrefResult res;
    res.reduced = aug.submatrix(0, 0, m.rows(), m.cols());
    res.transform = aug.submatrix(0, m.cols(), m.rows(), m.rows());
    res.pivot_cols = pivots;
    res.rank = pivots.size();
    return res;
}

std::size_t rank(const ExactMatrix& m) {
    ExactMatrix copy = m;
    std::vector<std::size_t> pivots;
    MatrixKernels::rref_impl(copy, m.cols(), pivots);
    return pivots.size();
}

ExactMatrix kernel_basis(const ExactMatrix& m) {
    RrefResult r = rref(m);
    // rows of the transform whose reduced image vanished span the row kernel
    ExactMatrix out(m.field(), m.rows() - r.rank, m.rows());
    for (std::size_t i = r.rank; i < m.rows(); ++i)
        out.paste(r.transform.submatrix(i, 0, 1, m.rows()), i - r.rank, 0);
    return out;
}

std::optional<ExactMatrix> solve(const ExactMatrix& a, const ExactMatrix& b) {
    check_same_field(a, b);
    if (a.cols() != b.cols())
        throw std::invalid_argument("solve: a and b must have equal column counts");
    RrefResult r = rref(a);
    ExactMatrix x(a.field(), b.rows(), a.rows());
    for (std::size_t i = 0; i < b.rows(); ++i) {
        ExactMatrix residual = b.submatrix(i, 0, 1, b.cols());
        ExactMatrix coeff(a.field(), 1, a.rows());
        for (std::size_t k = 0; k < r.rank; ++k) {
            mpq_class c = residual.at(0, r.pivot_cols[k]);
            if (c == 0) continue;
            coeff.set(0, k, c);
            residual = residual - r.reduced.submatrix(k, 0, 1, a.cols()).scaled(c);
        }
        if (!residual.is_zero()) return std::nullopt;
        x.paste(coeff * r.transform, i, 0);
    }
    return x;
}

std::optional<ExactMatrix> inverse(const ExactMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve(m, ExactMatrix::identity(m.field(), m.rows()));
    if (!x) return std::nullopt;
    return *x;  // x*m = I and m square forces m*x = I as well
}

bool rows_in_span(const ExactMatrix& space, const ExactMatrix& rows) {
    check_same_field(space, rows);
    if (rows.rows() == 0) return true;
    if (space.cols() != rows.cols()) throw std::invalid_argument("rows_in_span width mismatch");
    return rank(space) == rank(ExactMatrix::vstack(space, rows));
}

}  // namespace tiltkit
