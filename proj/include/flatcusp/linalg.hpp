#pragma once

// Dense exact linear algebra over the rationals: vectors, matrices, symmetric
// forms, rational linear solving, Sylvester signatures and integer Smith
// normal form. Everything is a value; no operation mutates its inputs.
// Dimensions in this problem domain stay tiny (n <= 12), so the
// implementations favour clarity and exactness over asymptotics.

#include "flatcusp/error.hpp"
#include "flatcusp/rational.hpp"

#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <vector>

namespace flatcusp {

class RVector {
public:
    RVector() = default;
    explicit RVector(int dim);
    RVector(std::initializer_list<Rational> entries);
    explicit RVector(std::vector<Rational> entries);

    static RVector unit(int dim, int index);

    int dim() const { return static_cast<int>(entries_.size()); }
    const Rational& operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
    Rational& operator[](int i) { return entries_[static_cast<size_t>(i)]; }

    bool is_zero() const;
    bool is_integral() const;

    friend bool operator==(const RVector&, const RVector&) = default;

private:
    std::vector<Rational> entries_;
};

RVector operator+(const RVector& a, const RVector& b);
RVector operator-(const RVector& a, const RVector& b);
RVector operator-(const RVector& a);
RVector operator*(const Rational& s, const RVector& v);

class RMatrix {
public:
    RMatrix() = default;
    RMatrix(int rows, int cols); // zero-filled

    static RMatrix identity(int n);
    static RMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
    static RMatrix diagonal(const std::vector<Rational>& diag);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const Rational& operator()(int i, int j) const {
        return data_[static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j)];
    }
    Rational& operator()(int i, int j) {
        return data_[static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j)];
    }

    RMatrix transpose() const;
    RVector column(int j) const;
    RVector row(int i) const;

    bool is_integral() const;
    bool is_identity() const;
    bool is_symmetric() const;

    friend bool operator==(const RMatrix&, const RMatrix&) = default;

    // Lexicographic entry order, for use as a set key.
    static int compare(const RMatrix& a, const RMatrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

struct RMatrixLess {
    bool operator()(const RMatrix& a, const RMatrix& b) const { return RMatrix::compare(a, b) < 0; }
};

RMatrix operator+(const RMatrix& a, const RMatrix& b);
RMatrix operator-(const RMatrix& a, const RMatrix& b);
RMatrix operator*(const RMatrix& a, const RMatrix& b);
RVector operator*(const RMatrix& a, const RVector& v);
RMatrix operator*(const Rational& s, const RMatrix& a);

Rational determinant(const RMatrix& a);

// Exact inverse; throws SingularMatrixError.
RMatrix inverse(const RMatrix& a);

RMatrix matrix_power(const RMatrix& a, unsigned int e);

// General solution of a x = b over Q. The particular solution is the reduced
// row echelon one with every free variable set to zero, so output is
// deterministic. Inconsistency is a result, not an error.
struct LinearSolution {
    bool consistent = false;
    RVector particular;
    std::vector<RVector> nullspace;
};

LinearSolution solve_linear(const RMatrix& a, const RVector& b);
std::vector<RVector> nullspace(const RMatrix& a);

struct Signature {
    int positives = 0;
    int negatives = 0;
    int zeros = 0;

    friend bool operator==(const Signature&, const Signature&) = default;
};

class SymmetricForm {
public:
    explicit SymmetricForm(RMatrix m); // throws ValidationError unless square symmetric

    static SymmetricForm identity(int n);
    static SymmetricForm direct_sum(const SymmetricForm& a, const SymmetricForm& b);

    const RMatrix& matrix() const { return mat_; }
    int dim() const { return mat_.rows(); }

    // x^T M y
    Rational apply(const RVector& x, const RVector& y) const;

    friend bool operator==(const SymmetricForm&, const SymmetricForm&) = default;

private:
    RMatrix mat_;
};

// Sylvester signature by exact congruence diagonalization. Zero pivots are
// repaired symmetrically: swap in a later nonzero diagonal entry if one
// exists, otherwise add row/column j with Q(i,j) != 0 (the remaining diagonal
// is zero then, so the new pivot is 2*Q(i,j) != 0).
Signature signature(const SymmetricForm& q);

// Exact: all leading principal minors positive.
bool is_positive_definite(const SymmetricForm& q);

// u * a * v = s with s diagonal, d1 | d2 | ..., d_i >= 0, det(u), det(v) = ±1.
struct SmithDecomposition {
    RMatrix u;
    RMatrix s;
    RMatrix v;
};

SmithDecomposition smith_normal_form(const RMatrix& a); // throws ValidationError on non-integer input

// Least positive integer c with c*x integral.
Integer denominator_lcm(const RVector& x);
Integer denominator_lcm(const RMatrix& x);

// Integral solution of a x = b for integral a, b (via Smith normal form);
// nullopt when none exists.
std::optional<RVector> solve_integer(const RMatrix& a, const RVector& b);

std::ostream& operator<<(std::ostream& os, const RVector& v);
std::ostream& operator<<(std::ostream& os, const RMatrix& m);

} // namespace flatcusp
