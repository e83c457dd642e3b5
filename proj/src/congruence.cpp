#include "flatcusp/congruence.hpp"

#include "flatcusp/verify.hpp"

#include <deque>
#include <set>
#include <sstream>

namespace flatcusp {

// ---------------------------------------------------------------- ModMatrix

ModMatrix::ModMatrix(int rows, int cols, std::uint64_t modulus)
    : rows_(rows), cols_(cols), modulus_(modulus),
      entries_(static_cast<size_t>(rows) * static_cast<size_t>(cols)) {
    if (modulus < 2) throw ValidationError("modulus must be >= 2");
}

ModMatrix ModMatrix::identity(int n, std::uint64_t modulus) {
    ModMatrix m(n, n, modulus);
    for (int i = 0; i < n; ++i) m(i, i) = 1 % modulus;
    return m;
}

bool ModMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1u % modulus_ : 0u)) return false;
    return true;
}

ModMatrix operator*(const ModMatrix& a, const ModMatrix& b) {
    if (a.cols_ != b.rows_ || a.modulus_ != b.modulus_) {
        throw DimensionError("mod-matrix product: dimension or modulus mismatch");
    }
    ModMatrix out(a.rows_, b.cols_, a.modulus_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int j = 0; j < b.cols_; ++j) {
            // modulus <= 2^31, so term and running sum stay below 2^63
            std::uint64_t acc = 0;
            for (int k = 0; k < a.cols_; ++k) {
                acc = (acc + a(i, k) * b(k, j)) % a.modulus_;
            }
            out(i, j) = acc;
        }
    }
    return out;
}

int ModMatrix::compare(const ModMatrix& a, const ModMatrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_ ? -1 : 1;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_ ? -1 : 1;
    if (a.modulus_ != b.modulus_) return a.modulus_ < b.modulus_ ? -1 : 1;
    for (size_t k = 0; k < a.entries_.size(); ++k) {
        if (a.entries_[k] != b.entries_[k]) return a.entries_[k] < b.entries_[k] ? -1 : 1;
    }
    return 0;
}

ModMatrix reduce_mod(const RMatrix& x, const Integer& m) {
    if (!x.is_integral()) throw ValidationError("reduce_mod: matrix not integral");
    if (m < 2) throw ValidationError("reduce_mod: modulus must be >= 2");
    if (!m.fits_ulong_p() || m.get_ui() > (1ull << 31)) {
        throw ValidationError("reduce_mod: modulus too large for this implementation");
    }
    const std::uint64_t mod = m.get_ui();
    ModMatrix out(x.rows(), x.cols(), mod);
    for (int i = 0; i < x.rows(); ++i) {
        for (int j = 0; j < x.cols(); ++j) {
            Integer r;
            mpz_fdiv_r(r.get_mpz_t(), x(i, j).get_num().get_mpz_t(), m.get_mpz_t());
            out(i, j) = r.get_ui();
        }
    }
    return out;
}

// ---------------------------------------------------------------- T_p

TranslationSubgroupTp build_Tp(const EmbeddingResult& result, const Integer& p) {
    if (p < 1) throw ValidationError("build_Tp: p must be positive");
    const int n = result.dim;
    TranslationSubgroupTp tp{p, n, {}};
    for (int i = 0; i < n; ++i) {
        RVector m(n);
        m[i] = Rational(p);
        RMatrix gen = embedded_translation(result, m);
        if (!gen.is_integral()) {
            throw ValidationError("build_Tp: translation by " + to_string(p) + "*e_" + std::to_string(i + 1) +
                                  " is not integral in this embedding");
        }
        if (!check_isometry(gen, result.form)) {
            throw Error("build_Tp: translation generator is not an isometry of Q' (construction bug)");
        }
        if (gen * result.lightlike != result.lightlike) {
            throw Error("build_Tp: translation generator moves v1 (construction bug)");
        }
        tp.generators.push_back(std::move(gen));
    }
    // pairwise commuting and unipotent, as translations must be
    for (size_t i = 0; i < tp.generators.size(); ++i) {
        const RMatrix nil = tp.generators[i] - RMatrix::identity(n + 2);
        if (!(matrix_power(nil, static_cast<unsigned int>(n + 2)) == RMatrix(n + 2, n + 2))) {
            throw Error("build_Tp: translation generator is not unipotent (construction bug)");
        }
        for (size_t j = i + 1; j < tp.generators.size(); ++j) {
            if (tp.generators[i] * tp.generators[j] != tp.generators[j] * tp.generators[i]) {
                throw Error("build_Tp: translation generators do not commute (construction bug)");
            }
        }
    }
    return tp;
}

std::vector<ModMatrix> tp_image_mod(const TranslationSubgroupTp& tp, const Integer& m, size_t max_elements) {
    std::vector<ModMatrix> gens;
    gens.reserve(tp.generators.size());
    for (const RMatrix& g : tp.generators) gens.push_back(reduce_mod(g, m));

    std::set<ModMatrix, ModMatrixLess> elements;
    std::deque<ModMatrix> frontier;
    const ModMatrix id = ModMatrix::identity(tp.dim + 2, gens.empty() ? 2 : gens[0].modulus());
    elements.insert(id);
    frontier.push_back(id);
    while (!frontier.empty()) {
        ModMatrix current = std::move(frontier.front());
        frontier.pop_front();
        for (const ModMatrix& g : gens) {
            ModMatrix next = current * g;
            if (elements.insert(next).second) {
                if (elements.size() > max_elements) {
                    throw EnumerationLimitError("tp_image_mod: closure exceeds " +
                                                std::to_string(max_elements) + " elements");
                }
                frontier.push_back(std::move(next));
            }
        }
    }
    return {elements.begin(), elements.end()};
}

// ---------------------------------------------------------------- separate

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

Integer smallest_prime_not_dividing(const Integer& value) {
    Integer v = abs(value);
    for (std::uint64_t q = 2;; ++q) {
        if (!is_prime(q)) continue;
        if (!mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(q))) return Integer(q);
    }
}

bool image_contains(const std::vector<ModMatrix>& image, const ModMatrix& m) {
    for (const ModMatrix& e : image) {
        if (e == m) return true;
    }
    return false;
}

} // namespace

std::string to_string(SeparationCase c) {
    switch (c) {
        case SeparationCase::HolonomyBlock: return "holonomy-block";
        case SeparationCase::TranslationRow: return "translation-row";
    }
    return "?";
}

SeparationOutcome separate(const RMatrix& gamma, const TranslationSubgroupTp& tp,
                           const EmbeddingResult& result) {
    const int n = result.dim;
    if (tp.dim != n) throw DimensionError("separate: T_p was built for a different dimension");
    if (gamma.rows() != n + 2 || gamma.cols() != n + 2) throw DimensionError("separate: wrong matrix size");
    if (!gamma.is_integral()) throw ValidationError("separate: element is not integral");
    if (!check_isometry(gamma, result.form)) throw ValidationError("separate: element is not an isometry of Q'");

    if (gamma * result.lightlike != result.lightlike) {
        return {SeparationOutcome::Kind::OutsideStabilizer, std::nullopt,
                "element does not stabilize v1; no congruence witness is attempted for this case"};
    }

    // Upper-left n x n block: identity for every element of T_p.
    int di = -1, dj = -1;
    for (int i = 0; i < n && di < 0; ++i) {
        for (int j = 0; j < n; ++j) {
            if (gamma(i, j) != (i == j ? 1 : 0)) {
                di = i;
                dj = j;
                break;
            }
        }
    }

    if (di < 0) {
        // Translation-type: read the translation vector off the bottom row.
        RVector t(n);
        for (int j = 0; j < n; ++j) t[j] = -gamma(n, j);

        bool divisible = true;
        int bad = -1;
        for (int j = 0; j < n; ++j) {
            if (!mpz_divisible_p(t[j].get_num().get_mpz_t(), tp.p.get_mpz_t())) {
                divisible = false;
                bad = j;
                break;
            }
        }
        if (divisible) {
            if (gamma == embedded_translation(result, t)) {
                return {SeparationOutcome::Kind::Member, std::nullopt,
                        "element is the T_p translation by " + to_string(tp.p) + "-multiples"};
            }
            throw Error("separate: identity block with T_p translation row but a different matrix — "
                        "rigidity violated (construction bug)");
        }

        if (tp.p < 2) throw Error("separate: non-member with p = 1 cannot occur");
        SeparationWitness witness;
        witness.case_tag = SeparationCase::TranslationRow;
        witness.modulus = tp.p;
        std::ostringstream os;
        os << "translation row entry " << bad + 1 << " = " << to_string(t[bad]) << " is not divisible by p = "
           << to_string(tp.p);
        witness.detail = os.str();
        const std::vector<ModMatrix> image = tp_image_mod(tp, witness.modulus);
        witness.gamma_mod = reduce_mod(gamma, witness.modulus);
        witness.image_order = image.size();
        if (image_contains(image, witness.gamma_mod)) {
            throw Error("separate: translation-row witness failed its enumeration check (construction bug)");
        }
        return {SeparationOutcome::Kind::Separated, std::move(witness), ""};
    }

    // Holonomy-block case: pick the first differing entry, then the smallest
    // prime that keeps it visible mod q.
    const Rational diff = gamma(di, dj) - (di == dj ? 1 : 0);
    SeparationWitness witness;
    witness.case_tag = SeparationCase::HolonomyBlock;
    witness.modulus = smallest_prime_not_dividing(to_integer(diff));
    {
        std::ostringstream os;
        os << "block entry (" << di + 1 << ", " << dj + 1 << ") = " << to_string(gamma(di, dj))
           << " differs from I by " << to_string(diff) << "; smallest admissible prime is "
           << to_string(witness.modulus);
        witness.detail = os.str();
    }
    const std::vector<ModMatrix> image = tp_image_mod(tp, witness.modulus);
    witness.gamma_mod = reduce_mod(gamma, witness.modulus);
    witness.image_order = image.size();
    if (image_contains(image, witness.gamma_mod)) {
        throw Error("separate: holonomy-block witness failed its enumeration check (construction bug)");
    }
    return {SeparationOutcome::Kind::Separated, std::move(witness), ""};
}

// ---------------------------------------------------------------- closure demo

namespace {

// Integer kernel basis of an integral matrix, via Smith normal form.
std::vector<RVector> integer_kernel(const RMatrix& m) {
    const SmithDecomposition snf = smith_normal_form(m);
    const int cols = m.cols();
    const int diag = std::min(m.rows(), cols);
    std::vector<RVector> basis;
    for (int j = 0; j < cols; ++j) {
        if (j < diag && snf.s(j, j) != 0) continue;
        basis.push_back(snf.v.column(j));
    }
    return basis;
}

// Canonical basis of the lattice spanned by the rows of w (full story: with
// u w v = s, the row lattice is spanned by d_i * (v^{-T} e_i)).
RMatrix row_lattice_basis(const RMatrix& w) {
    const SmithDecomposition snf = smith_normal_form(w);
    const RMatrix vinvt = inverse(snf.v).transpose();
    const int diag = std::min(w.rows(), w.cols());
    std::vector<std::vector<Rational>> rows;
    for (int i = 0; i < diag; ++i) {
        if (snf.s(i, i) == 0) continue;
        std::vector<Rational> row;
        for (int j = 0; j < w.cols(); ++j) row.push_back(snf.s(i, i) * vinvt(j, i));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) return RMatrix(0, w.cols());
    return RMatrix::from_rows(rows);
}

} // namespace

bool lattice_contains(const RMatrix& basis_rows, const RVector& v) {
    if (basis_rows.rows() == 0) return v.is_zero();
    return solve_integer(basis_rows.transpose(), v).has_value();
}

RMatrix lattice_intersection_with_pzn(const RMatrix& basis_rows, const Integer& p) {
    const int n = basis_rows.cols();
    // x in both lattices iff x = B^T u = p v for integral u, v; the kernel of
    // [B^T | -p I] parameterizes all such pairs
    RMatrix stacked(n, basis_rows.rows() + n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < basis_rows.rows(); ++j) stacked(i, j) = basis_rows(j, i);
        stacked(i, basis_rows.rows() + i) = Rational(-p);
    }
    const std::vector<RVector> kernel = integer_kernel(stacked);
    std::vector<std::vector<Rational>> rows;
    for (const RVector& z : kernel) {
        std::vector<Rational> w(static_cast<size_t>(n), Rational(0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < basis_rows.rows(); ++j) w[static_cast<size_t>(i)] += basis_rows(j, i) * z[j];
        }
        rows.push_back(std::move(w));
    }
    if (rows.empty()) return RMatrix(0, n);
    return row_lattice_basis(RMatrix::from_rows(rows));
}

ClosureDemo demo_theorem_closure(const EmbeddingResult& result, const Integer& p,
                                 const std::optional<RVector>& sample) {
    if (p < 1) throw ValidationError("demo_theorem_closure: p must be positive");
    const int n = result.dim;
    if (result.mu_hat.empty()) throw ValidationError("demo_theorem_closure: embedding carries no mu images");

    // Translation lattice of the group in matrix units, read off the mu images.
    std::vector<std::vector<Rational>> rows;
    for (const RMatrix& mu : result.mu_hat) {
        std::vector<Rational> t;
        for (int j = 0; j < n; ++j) t.push_back(-mu(n, j));
        rows.push_back(std::move(t));
    }
    const RMatrix gamma_lattice = RMatrix::from_rows(rows);
    const RMatrix intersection = lattice_intersection_with_pzn(gamma_lattice, p);

    ClosureDemo demo{p, 1, gamma_lattice, intersection, RVector(n), {}};

    // Minimal r with every r*p*e_i in the intersection lattice.
    bool found = false;
    for (unsigned long r = 1; r <= 1000000; ++r) {
        const Integer rp = p * r;
        bool all = true;
        for (int i = 0; i < n && all; ++i) {
            RVector v(n);
            v[i] = Rational(rp);
            all = lattice_contains(intersection, v);
        }
        if (all) {
            demo.r = Integer(r);
            found = true;
            break;
        }
    }
    if (!found) throw EnumerationLimitError("demo_theorem_closure: no r <= 10^6 with T_rp inside the intersection");

    // Separate a translation outside T_rp from T_rp.
    RVector t = sample.value_or(RVector::unit(n, 0));
    demo.sample_translation = t;
    const TranslationSubgroupTp t_rp = build_Tp(result, demo.r * p);
    demo.sample_outcome = separate(embedded_translation(result, t), t_rp, result);
    return demo;
}

} // namespace flatcusp
