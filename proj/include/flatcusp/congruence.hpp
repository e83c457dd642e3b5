#pragma once

// Congruence separability machinery: reduction of integral matrix groups mod
// m, the translation subgroups T_p of the cusp stabilizer, and the
// deterministic witness finder for separating elements from T_p in finite
// quotients.

#include "flatcusp/embed.hpp"
#include "flatcusp/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace flatcusp {

class ModMatrix {
public:
    ModMatrix() = default;
    ModMatrix(int rows, int cols, std::uint64_t modulus);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::uint64_t modulus() const { return modulus_; }

    std::uint64_t operator()(int i, int j) const {
        return entries_[static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j)];
    }
    std::uint64_t& operator()(int i, int j) {
        return entries_[static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j)];
    }

    static ModMatrix identity(int n, std::uint64_t modulus);
    bool is_identity() const;

    friend bool operator==(const ModMatrix&, const ModMatrix&) = default;
    friend ModMatrix operator*(const ModMatrix& a, const ModMatrix& b);

    // Total order for set storage.
    static int compare(const ModMatrix& a, const ModMatrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::uint64_t modulus_ = 0;
    std::vector<std::uint64_t> entries_;
};

struct ModMatrixLess {
    bool operator()(const ModMatrix& a, const ModMatrix& b) const { return ModMatrix::compare(a, b) < 0; }
};

// Entrywise residue in [0, m); a multiplicative homomorphism on integral
// matrices. Throws ValidationError on non-integral input, m < 2, or m not
// fitting the word size.
ModMatrix reduce_mod(const RMatrix& x, const Integer& m);

// T_p: the abelian subgroup generated by the embedded images of the affine
// translations x -> x + p*e_i (matrix-unit coordinates, i.e. the coordinates
// the integral representation acts on).
struct TranslationSubgroupTp {
    Integer p = 1;
    int dim = 0;
    std::vector<RMatrix> generators;
};

// Builds the n translation generators through the same embedding data (D, K)
// as the main representation and verifies each is an integral isometry of Q'.
TranslationSubgroupTp build_Tp(const EmbeddingResult& result, const Integer& p);

// The image of T_p in GL(n+2, Z/m): closure of the reduced generators under
// products. Throws EnumerationLimitError past max_elements.
std::vector<ModMatrix> tp_image_mod(const TranslationSubgroupTp& tp, const Integer& m,
                                    size_t max_elements = 1000000);

enum class SeparationCase {
    HolonomyBlock,   // upper-left n x n block differs from I; modulus = small prime
    TranslationRow,  // block is I but translation row not divisible by p; modulus = p
};

std::string to_string(SeparationCase c);

struct SeparationWitness {
    SeparationCase case_tag = SeparationCase::HolonomyBlock;
    Integer modulus;
    ModMatrix gamma_mod;
    size_t image_order = 0;  // order of the enumerated T_p image mod modulus
    std::string detail;      // which entry drove the choice of modulus
};

struct SeparationOutcome {
    enum class Kind { Member, Separated, OutsideStabilizer };
    Kind kind = Kind::Member;
    std::optional<SeparationWitness> witness; // present iff kind == Separated
    std::string detail;
};

// The two-case analysis. gamma must be an integral isometry of Q' (hard
// errors otherwise); failing to stabilize v1 yields the OutsideStabilizer
// outcome. Membership in T_p is decided structurally; otherwise the returned
// witness has been checked by enumerating the T_p image at the witness
// modulus and testing non-membership of gamma's reduction.
SeparationOutcome separate(const RMatrix& gamma, const TranslationSubgroupTp& tp,
                           const EmbeddingResult& result);

// Canonical basis (as rows) of the intersection of the integer row lattice
// of basis_rows with p Z^n, computed via Smith normal form.
RMatrix lattice_intersection_with_pzn(const RMatrix& basis_rows, const Integer& p);

// Integral membership of v in the row lattice.
bool lattice_contains(const RMatrix& basis_rows, const RVector& v);

struct ClosureDemo {
    Integer p;
    Integer r;                         // minimal r >= 1 with T_rp inside the intersection
    RMatrix gamma_lattice;             // rows: matrix-unit translation vectors of the mu images
    RMatrix intersection_lattice;      // rows: basis of (gamma lattice) ∩ p Z^n
    RVector sample_translation;        // the gamma separated in the demo
    SeparationOutcome sample_outcome;  // its separation from T_rp
};

// Enacts T_rp ≤ T_Γ ∩ T_p ≤ Γ at desk scale: computes the intersection of
// the group's translation lattice with p Z^n, exhibits the minimal r, then
// separates a sample (or supplied) non-member translation from T_rp.
ClosureDemo demo_theorem_closure(const EmbeddingResult& result, const Integer& p,
                                 const std::optional<RVector>& sample = std::nullopt);

} // namespace flatcusp
