#pragma once

// Independent re-verification of an embedding. Everything here works from
// the produced matrices, forms and the group presentation alone — never from
// the pipeline's internal solution data — so construction bugs cannot
// self-certify.

#include "flatcusp/crystal.hpp"
#include "flatcusp/embed.hpp"
#include "flatcusp/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace flatcusp {

struct VerificationCheck {
    std::string name;
    bool passed = false;
    std::string witness; // nonempty on failure
};

struct VerificationReport {
    std::vector<VerificationCheck> checks;

    bool passed() const;
    std::string first_failure() const;
};

// Exact test x^T q x = q; the failure witness names the violated entry.
bool check_isometry(const RMatrix& x, const SymmetricForm& q);
VerificationCheck check_isometry_detail(const std::string& label, const RMatrix& x, const SymmetricForm& q);

// Q'(v1, v1) = 0 and every generator image fixes v1.
VerificationCheck check_lightlike_stabilizer(const EmbeddingResult& result);

// (a) relators map to I, (b) each mu image is translation-type (theta block
// I), unipotent and not the identity, (c) mu images commute pairwise.
std::vector<VerificationCheck> check_faithfulness_evidence(const EmbeddingResult& result,
                                                           const CrystalGroupSpec& spec);

// Solves for all isometries of Q' of the shape [[I_{n+1}, x], [0, 1]]; passes
// iff the solution space is {0}. Also certifies the uniqueness used by the
// cusp-column solve.
VerificationCheck check_rigidity(const SymmetricForm& form, int dim);
VerificationCheck check_rigidity(const EmbeddingResult& result);

struct VerifyOptions {
    int random_words = 100;
    int max_word_length = 8;
    std::uint64_t seed = 20250809;
};

// All checks: per-generator and random-word isometry + stabilization,
// signature (n+1, 1, 0), lightlike stabilizer, faithfulness evidence,
// rigidity, integrality and determinant ±1 of every generator image, and
// torsion-freeness of the input presentation.
VerificationReport full_report(const EmbeddingResult& result, const CrystalGroupSpec& spec,
                               const VerifyOptions& options = {});

} // namespace flatcusp
