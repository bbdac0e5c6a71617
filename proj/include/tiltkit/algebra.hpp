#pragma once

#include "tiltkit/matrix.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace tiltkit {

struct Arrow {
    std::string name;
    std::string src;
    std::string tgt;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    std::size_t vertex_index(const std::string& v) const;
    std::size_t arrow_index(const std::string& a) const;
    void validate() const;  // unique names, declared endpoints
};

// One relation: a linear combination of parallel paths. Paths are written in
// diagrammatic order (["a","b"] is "a then b") and must have length >= 2.
struct RelationTerm {
    mpq_class coeff;
    std::vector<std::string> path;
};

struct Relation {
    std::vector<RelationTerm> terms;
};

struct RelationSet {
    std::vector<Relation> relations;
};

// Presentation data kept alongside a bound quiver algebra: the basis is a set
// of paths, and knowing which basis elements are trivial paths or long paths
// gives the radical and the idempotents for free.
struct QuiverInfo {
    Quiver quiver;
    RelationSet relations;
    std::vector<std::size_t> path_len;           // per basis element
    std::vector<std::size_t> vertex_idempotent;  // basis index of e_v per vertex
    std::vector<std::vector<std::size_t>> path_arrows;  // arrow index sequence per basis element
    std::vector<std::size_t> path_src, path_tgt;        // vertex indices per basis element
};

struct LawViolation : std::runtime_error {
    LawViolation(std::string msg, std::size_t i, std::size_t j, std::size_t k)
        : std::runtime_error(std::move(msg)), i(i), j(j), k(k) {}
    std::size_t i, j, k;
};

// Finite-dimensional associative unital algebra given by structure constants.
// Multiplication is encoded by the right regular representation: rmul(j) is
// the matrix of x -> x*b_j on coordinate rows, so c[i][j][k] = rmul(j)[i][k].
class Algebra {
public:
    // table[i][j] = coordinate row of b_i * b_j; validates associativity and unit laws
    static std::shared_ptr<const Algebra> from_table(
        FieldSpec field, const std::vector<std::vector<std::vector<mpq_class>>>& table,
        const std::vector<mpq_class>& unit, std::vector<std::string> labels = {},
        std::optional<QuiverInfo> quiver = std::nullopt);

    static std::shared_ptr<const Algebra> from_right_mult(FieldSpec field,
                                                          std::vector<ExactMatrix> rmul,
                                                          ExactMatrix unit,
                                                          std::vector<std::string> labels,
                                                          std::optional<QuiverInfo> quiver);

    const FieldSpec& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const ExactMatrix& unit() const { return unit_; }
    const std::optional<QuiverInfo>& quiver() const { return quiver_; }

    const ExactMatrix& right_mult(std::size_t j) const { return rmul_[j]; }
    // matrix of x -> x*w
    ExactMatrix right_mult_of(const ExactMatrix& w) const;
    // matrix of x -> w*x
    ExactMatrix left_mult_of(const ExactMatrix& w) const;
    ExactMatrix mult(const ExactMatrix& v, const ExactMatrix& w) const;
    mpq_class structconst(std::size_t i, std::size_t j, std::size_t k) const {
        return rmul_[j].at(i, k);
    }

    bool same_content(const Algebra& o) const;

private:
    Algebra() = default;
    void validate_laws() const;

    FieldSpec field_ = FieldSpec::rationals();
    std::size_t dim_ = 0;
    std::vector<ExactMatrix> rmul_;
    ExactMatrix unit_;
    std::vector<std::string> labels_;
    std::optional<QuiverInfo> quiver_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

struct BoundQuiverOptions {
    std::size_t degree_bound = 32;
    std::size_t dim_cap = 4096;
};

// Path basis of kQ/I computed degree by degree by linear reduction.
AlgebraPtr bound_quiver_algebra(FieldSpec field, const Quiver& q, const RelationSet& rels,
                                const BoundQuiverOptions& opts = {});

// Rows spanning the Jacobson radical. Quiver presentations use the arrow
// ideal; structure-constant presentations use the left-multiplication trace
// form, valid over Q or F_p with p > dim.
ExactMatrix radical(const Algebra& a);

// Complete set of pairwise orthogonal primitive idempotents summing to 1,
// for algebras whose semisimple quotient is split over the base field.
std::vector<ExactMatrix> primitive_idempotents(const Algebra& a);

AlgebraPtr opposite(const Algebra& a);

// Rows spanning the center {z : zx = xz for all x}.
ExactMatrix center(const Algebra& a);

// Monic minimal polynomial of a square matrix, low-degree-first coefficients
// (excluding the leading 1).
std::vector<mpq_class> minimal_polynomial(const ExactMatrix& op);

// All roots of a monic polynomial that lie in the field, with multiplicity
// stripped; `complete` reports whether the polynomial splits into linear
// factors over the field.
struct RootReport {
    std::vector<mpq_class> roots;
    bool complete = false;
};
RootReport field_roots(const FieldSpec& field, const std::vector<mpq_class>& monic_coeffs);

}  // namespace tiltkit
