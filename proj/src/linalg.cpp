#include "flatcusp/linalg.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

namespace flatcusp {

// ---------------------------------------------------------------- RVector

RVector::RVector(int dim) : entries_(static_cast<size_t>(dim)) {}

RVector::RVector(std::initializer_list<Rational> entries) : entries_(entries) {}

RVector::RVector(std::vector<Rational> entries) : entries_(std::move(entries)) {}

RVector RVector::unit(int dim, int index) {
    RVector v(dim);
    v[index] = 1;
    return v;
}

bool RVector::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& x) { return x == 0; });
}

bool RVector::is_integral() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& x) { return is_integer(x); });
}

RVector operator+(const RVector& a, const RVector& b) {
    if (a.dim() != b.dim()) throw DimensionError("vector sum: dimension mismatch");
    RVector out(a.dim());
    for (int i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
    return out;
}

RVector operator-(const RVector& a, const RVector& b) {
    if (a.dim() != b.dim()) throw DimensionError("vector difference: dimension mismatch");
    RVector out(a.dim());
    for (int i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
    return out;
}

RVector operator-(const RVector& a) {
    RVector out(a.dim());
    for (int i = 0; i < a.dim(); ++i) out[i] = -a[i];
    return out;
}

RVector operator*(const Rational& s, const RVector& v) {
    RVector out(v.dim());
    for (int i = 0; i < v.dim(); ++i) out[i] = s * v[i];
    return out;
}

// ---------------------------------------------------------------- RMatrix

RMatrix::RMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * static_cast<size_t>(cols)) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

RMatrix RMatrix::identity(int n) {
    RMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RMatrix RMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    RMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != c) {
            throw DimensionError("ragged row list");
        }
        for (int j = 0; j < c; ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return m;
}

RMatrix RMatrix::diagonal(const std::vector<Rational>& diag) {
    const int n = static_cast<int>(diag.size());
    RMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = diag[static_cast<size_t>(i)];
    return m;
}

RMatrix RMatrix::transpose() const {
    RMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RVector RMatrix::column(int j) const {
    RVector v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

RVector RMatrix::row(int i) const {
    RVector v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

bool RMatrix::is_integral() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return is_integer(x); });
}

bool RMatrix::is_identity() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool RMatrix::is_symmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

int RMatrix::compare(const RMatrix& a, const RMatrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_ ? -1 : 1;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_ ? -1 : 1;
    for (size_t k = 0; k < a.data_.size(); ++k) {
        const int c = cmp(a.data_[k], b.data_[k]);
        if (c != 0) return c;
    }
    return 0;
}

RMatrix operator+(const RMatrix& a, const RMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix sum: dimension mismatch");
    RMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

RMatrix operator-(const RMatrix& a, const RMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix difference: dimension mismatch");
    RMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix product: dimension mismatch");
    RMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) {
                if (b(k, j) == 0) continue;
                out(i, j) += a(i, k) * b(k, j);
            }
        }
    }
    return out;
}

RVector operator*(const RMatrix& a, const RVector& v) {
    if (a.cols() != v.dim()) throw DimensionError("matrix-vector product: dimension mismatch");
    RVector out(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0 && v[j] != 0) out[i] += a(i, j) * v[j];
    return out;
}

RMatrix operator*(const Rational& s, const RMatrix& a) {
    RMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
    return out;
}

Rational determinant(const RMatrix& a) {
    if (!a.is_square()) throw DimensionError("determinant of non-square matrix");
    const int n = a.rows();
    RMatrix m = a;
    Rational det = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i) {
            if (m(i, col) != 0) { pivot = i; break; }
        }
        if (pivot < 0) return 0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (m(i, col) == 0) continue;
            const Rational f = m(i, col) / m(col, col);
            for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

RMatrix inverse(const RMatrix& a) {
    if (!a.is_square()) throw DimensionError("inverse of non-square matrix");
    const int n = a.rows();
    RMatrix m = a;
    RMatrix inv = RMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i) {
            if (m(i, col) != 0) { pivot = i; break; }
        }
        if (pivot < 0) throw SingularMatrixError("matrix is singular");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(m(pivot, j), m(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        const Rational p = m(col, col);
        for (int j = 0; j < n; ++j) {
            m(col, j) /= p;
            inv(col, j) /= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || m(i, col) == 0) continue;
            const Rational f = m(i, col);
            for (int j = 0; j < n; ++j) {
                m(i, j) -= f * m(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

RMatrix matrix_power(const RMatrix& a, unsigned int e) {
    if (!a.is_square()) throw DimensionError("power of non-square matrix");
    RMatrix out = RMatrix::identity(a.rows());
    RMatrix base = a;
    while (e > 0) {
        if (e & 1u) out = out * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return out;
}

// ---------------------------------------------------------------- solving

namespace {

// Reduced row echelon form of [a | b]; returns pivot column per row.
struct Rref {
    RMatrix m; // rows x (cols+extra)
    std::vector<int> pivot_cols;
};

Rref rref_augmented(const RMatrix& a, const RVector* b) {
    const int rows = a.rows();
    const int cols = a.cols();
    const int width = cols + (b != nullptr ? 1 : 0);
    RMatrix m(rows, width);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = a(i, j);
        if (b != nullptr) m(i, cols) = (*b)[i];
    }
    std::vector<int> pivot_cols;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pivot = -1;
        for (int i = row; i < rows; ++i) {
            if (m(i, col) != 0) { pivot = i; break; }
        }
        if (pivot < 0) continue;
        if (pivot != row) {
            for (int j = 0; j < width; ++j) std::swap(m(pivot, j), m(row, j));
        }
        const Rational p = m(row, col);
        for (int j = 0; j < width; ++j) m(row, j) /= p;
        for (int i = 0; i < rows; ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Rational f = m(i, col);
            for (int j = 0; j < width; ++j) m(i, j) -= f * m(row, j);
        }
        pivot_cols.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivot_cols)};
}

} // namespace

LinearSolution solve_linear(const RMatrix& a, const RVector& b) {
    if (a.rows() != b.dim()) throw DimensionError("solve_linear: rhs dimension mismatch");
    const int cols = a.cols();
    Rref r = rref_augmented(a, &b);
    const int rank = static_cast<int>(r.pivot_cols.size());

    for (int i = rank; i < a.rows(); ++i) {
        if (r.m(i, cols) != 0) return {};
    }

    LinearSolution sol;
    sol.consistent = true;
    sol.particular = RVector(cols);
    for (int i = 0; i < rank; ++i) sol.particular[r.pivot_cols[static_cast<size_t>(i)]] = r.m(i, cols);

    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (int c : r.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        RVector v(cols);
        v[free] = 1;
        for (int i = 0; i < rank; ++i) v[r.pivot_cols[static_cast<size_t>(i)]] = -r.m(i, free);
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

std::vector<RVector> nullspace(const RMatrix& a) {
    RVector zero(a.rows());
    return solve_linear(a, zero).nullspace;
}

// ---------------------------------------------------------------- forms

SymmetricForm::SymmetricForm(RMatrix m) : mat_(std::move(m)) {
    if (!mat_.is_square()) throw ValidationError("symmetric form: matrix not square");
    if (!mat_.is_symmetric()) throw ValidationError("symmetric form: matrix not symmetric");
}

SymmetricForm SymmetricForm::identity(int n) {
    return SymmetricForm(RMatrix::identity(n));
}

SymmetricForm SymmetricForm::direct_sum(const SymmetricForm& a, const SymmetricForm& b) {
    const int n = a.dim(), m = b.dim();
    RMatrix out(n + m, n + m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = a.matrix()(i, j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out(n + i, n + j) = b.matrix()(i, j);
    return SymmetricForm(std::move(out));
}

Rational SymmetricForm::apply(const RVector& x, const RVector& y) const {
    if (x.dim() != dim() || y.dim() != dim()) throw DimensionError("form evaluation: dimension mismatch");
    Rational acc = 0;
    for (int i = 0; i < dim(); ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < dim(); ++j) {
            if (mat_(i, j) == 0 || y[j] == 0) continue;
            acc += x[i] * mat_(i, j) * y[j];
        }
    }
    return acc;
}

Signature signature(const SymmetricForm& q) {
    RMatrix m = q.matrix();
    const int n = m.rows();
    Signature sig;
    for (int i = 0; i < n; ++i) {
        if (m(i, i) == 0) {
            int swap = -1;
            int mix = -1;
            for (int j = i + 1; j < n; ++j) {
                if (swap < 0 && m(j, j) != 0) swap = j;
                if (mix < 0 && m(i, j) != 0) mix = j;
            }
            if (swap >= 0) {
                for (int k = 0; k < n; ++k) std::swap(m(i, k), m(swap, k));
                for (int k = 0; k < n; ++k) std::swap(m(k, i), m(k, swap));
            } else if (mix >= 0) {
                // remaining diagonal is all zero, so the repaired pivot is 2*m(i,mix)
                for (int k = 0; k < n; ++k) m(i, k) += m(mix, k);
                for (int k = 0; k < n; ++k) m(k, i) += m(k, mix);
            } else {
                ++sig.zeros;
                continue;
            }
        }
        const Rational pivot = m(i, i);
        if (pivot > 0) ++sig.positives; else ++sig.negatives;
        for (int j = i + 1; j < n; ++j) {
            if (m(j, i) == 0) continue;
            const Rational f = m(j, i) / pivot;
            for (int k = 0; k < n; ++k) m(j, k) -= f * m(i, k);
            for (int k = 0; k < n; ++k) m(k, j) -= f * m(k, i);
        }
    }
    return sig;
}

bool is_positive_definite(const SymmetricForm& q) {
    const RMatrix& m = q.matrix();
    for (int k = 1; k <= m.rows(); ++k) {
        RMatrix minor(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) minor(i, j) = m(i, j);
        if (determinant(minor) <= 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------- Smith form

namespace {

void swap_rows(RMatrix& m, int a, int b) {
    for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(RMatrix& m, int a, int b) {
    for (int i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void add_row(RMatrix& m, int dst, int src, const Rational& f) {
    for (int j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

void add_col(RMatrix& m, int dst, int src, const Rational& f) {
    for (int i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

} // namespace

SmithDecomposition smith_normal_form(const RMatrix& a) {
    if (!a.is_integral()) throw ValidationError("smith_normal_form: matrix not integral");
    const int rows = a.rows();
    const int cols = a.cols();
    RMatrix s = a;
    RMatrix u = RMatrix::identity(rows);
    RMatrix v = RMatrix::identity(cols);

    const int steps = std::min(rows, cols);
    for (int t = 0; t < steps; ++t) {
        // locate entry of minimal absolute value in the trailing block
        int pi = -1, pj = -1;
        Integer best;
        for (int i = t; i < rows; ++i) {
            for (int j = t; j < cols; ++j) {
                if (s(i, j) == 0) continue;
                Integer mag = abs(s(i, j).get_num());
                if (pi < 0 || mag < best) {
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi < 0) break; // trailing block already zero

        if (pi != t) { swap_rows(s, pi, t); swap_rows(u, pi, t); }
        if (pj != t) { swap_cols(s, pj, t); swap_cols(v, pj, t); }

        bool settled = false;
        while (!settled) {
            settled = true;
            // clear the pivot column
            for (int i = t + 1; i < rows; ++i) {
                if (s(i, t) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), s(i, t).get_num().get_mpz_t(), s(t, t).get_num().get_mpz_t());
                add_row(s, i, t, Rational(-q));
                add_row(u, i, t, Rational(-q));
                if (s(i, t) != 0) {
                    // remainder strictly smaller: promote it to pivot and restart
                    swap_rows(s, i, t);
                    swap_rows(u, i, t);
                    settled = false;
                }
            }
            // clear the pivot row
            for (int j = t + 1; j < cols; ++j) {
                if (s(t, j) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), s(t, j).get_num().get_mpz_t(), s(t, t).get_num().get_mpz_t());
                add_col(s, j, t, Rational(-q));
                add_col(v, j, t, Rational(-q));
                if (s(t, j) != 0) {
                    swap_cols(s, j, t);
                    swap_cols(v, j, t);
                    settled = false;
                }
            }
            if (!settled) continue;
            // divisibility: the pivot must divide the whole trailing block
            for (int i = t + 1; i < rows && settled; ++i) {
                for (int j = t + 1; j < cols && settled; ++j) {
                    if (s(i, j) == 0) continue;
                    Integer rem;
                    mpz_tdiv_r(rem.get_mpz_t(), s(i, j).get_num().get_mpz_t(), s(t, t).get_num().get_mpz_t());
                    if (rem != 0) {
                        add_row(s, t, i, Rational(1));
                        add_row(u, t, i, Rational(1));
                        settled = false;
                    }
                }
            }
        }
        if (s(t, t) < 0) {
            for (int j = 0; j < cols; ++j) s(t, j) = -s(t, j);
            for (int j = 0; j < rows; ++j) u(t, j) = -u(t, j);
        }
    }
    return {std::move(u), std::move(s), std::move(v)};
}

Integer denominator_lcm(const RVector& x) {
    Integer l = 1;
    for (int i = 0; i < x.dim(); ++i) l = lcm(l, x[i].get_den());
    return l;
}

Integer denominator_lcm(const RMatrix& x) {
    Integer l = 1;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) l = lcm(l, x(i, j).get_den());
    return l;
}

std::optional<RVector> solve_integer(const RMatrix& a, const RVector& b) {
    if (a.rows() != b.dim()) throw DimensionError("solve_integer: rhs dimension mismatch");
    if (!a.is_integral() || !b.is_integral()) throw ValidationError("solve_integer: input not integral");
    SmithDecomposition snf = smith_normal_form(a);
    const RVector c = snf.u * b;
    RVector y(a.cols());
    const int r = std::min(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        const Rational d = i < r ? snf.s(i, i) : Rational(0);
        if (d == 0) {
            if (c[i] != 0) return std::nullopt;
            continue;
        }
        Integer rem, quot;
        mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), c[i].get_num().get_mpz_t(), d.get_num().get_mpz_t());
        if (rem != 0) return std::nullopt;
        y[i] = Rational(quot);
    }
    return snf.v * y;
}

// ---------------------------------------------------------------- printing

std::ostream& operator<<(std::ostream& os, const RVector& v) {
    os << '(';
    for (int i = 0; i < v.dim(); ++i) {
        if (i > 0) os << ", ";
        os << to_string(v[i]);
    }
    return os << ')';
}

std::ostream& operator<<(std::ostream& os, const RMatrix& m) {
    for (int i = 0; i < m.rows(); ++i) {
        os << '[';
        for (int j = 0; j < m.cols(); ++j) {
            if (j > 0) os << ' ';
            os << to_string(m(i, j));
        }
        os << "]\n";
    }
    return os;
}

} // namespace flatcusp
