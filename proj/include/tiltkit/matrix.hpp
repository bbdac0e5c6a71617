#pragma once

#include "tiltkit/field.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tiltkit {

// Dense matrix over an exact field, row-major. The whole library uses the
// row-vector convention: vectors are rows, maps act on the right (x -> x*A),
// so right modules act by plain matrix multiplication.
class ExactMatrix {
public:
    ExactMatrix() : field_(FieldSpec::rationals()), rows_(0), cols_(0) {}
    ExactMatrix(FieldSpec field, std::size_t rows, std::size_t cols);

    static ExactMatrix identity(FieldSpec field, std::size_t n);
    static ExactMatrix from_rows(FieldSpec field, std::size_t rows, std::size_t cols,
                                 const std::vector<mpq_class>& entries);

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpq_class at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const mpq_class& value);

    bool is_zero() const;
    bool is_identity() const;

    ExactMatrix operator+(const ExactMatrix& o) const;
    ExactMatrix operator-(const ExactMatrix& o) const;
    ExactMatrix operator-() const;
    ExactMatrix operator*(const ExactMatrix& o) const;
    ExactMatrix scaled(const mpq_class& c) const;
    bool operator==(const ExactMatrix& o) const;
    bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

    ExactMatrix transposed() const;
    ExactMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    ExactMatrix row(std::size_t i) const { return submatrix(i, 0, 1, cols_); }
    // copies `block` into this matrix with upper-left corner at (r0, c0)
    void paste(const ExactMatrix& block, std::size_t r0, std::size_t c0);

    static ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b);
    static ExactMatrix vstack(const ExactMatrix& a, const ExactMatrix& b);

    std::string str() const;

private:
    friend struct MatrixKernels;
    FieldSpec field_;
    std::size_t rows_, cols_;
    std::vector<mpq_class> q_;       // rational storage
    std::vector<std::int64_t> r_;    // prime-field storage (canonical residues)
};

struct RrefResult {
    ExactMatrix reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    // transform * input = reduced; transform is invertible
    ExactMatrix transform;
};

RrefResult rref(const ExactMatrix& m);
std::size_t rank(const ExactMatrix& m);

// Basis of the row kernel {x : x*m = 0}; each row of the result is a basis vector.
ExactMatrix kernel_basis(const ExactMatrix& m);

// Solves x*a = b row by row; nullopt when inconsistent.
std::optional<ExactMatrix> solve(const ExactMatrix& a, const ExactMatrix& b);

std::optional<ExactMatrix> inverse(const ExactMatrix& m);

// True when every row of `rows` lies in the row space of `space`.
bool rows_in_span(const ExactMatrix& space, const ExactMatrix& rows);

}  // namespace tiltkit
