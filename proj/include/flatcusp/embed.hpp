#pragma once

// The cusp-embedding construction: cone the affine action to (n+1)x(n+1)
// matrices, clear denominators, dualize, extend by a hyperbolic plane to an
// integral representation preserving a rational form of signature (n+1,1)
// and stabilizing the lightlike vector e_{n+1}.

#include "flatcusp/crystal.hpp"
#include "flatcusp/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flatcusp {

// Integral coning matrices [[theta, c*t], [0, 1]].
struct ConingRep {
    int dim = 0;
    Integer scale_c = 1;
    std::vector<RMatrix> matrices;
};

// Contragredient matrices (coning^T)^{-1}; integral, last column e_{n+1}.
struct DualRep {
    int dim = 0;
    Integer scale_c = 1;
    std::vector<RMatrix> matrices;
};

// Rational extension over D ⊕ H2 before the final integralizing conjugation.
struct CuspExtension {
    int dim = 0;
    Integer scale_c = 1;
    SymmetricForm form;                 // D ⊕ H2, (n+2)x(n+2)
    SymmetricForm invariant_form;       // D, n x n
    std::vector<RVector> cusp_columns;  // v_g = (W_g, tau_g), length n+1
    std::vector<RMatrix> matrices;      // rational isometries of form
};

struct EmbeddingResult {
    int dim = 0;
    std::vector<std::string> generator_names;
    std::vector<RMatrix> matrices;   // integral (n+2)x(n+2) images of the generators
    SymmetricForm form;              // Q', invariant, signature (n+1, 1)
    SymmetricForm invariant_form;    // D, n x n, positive definite, holonomy-invariant
    Integer scale_c = 1;             // translation denominator lcm
    Integer scale_k = 1;             // cusp column denominator lcm
    RVector lightlike;               // v1 = e_{n+1}
    RVector v2;                      // e_{n+2}
    std::vector<RMatrix> mu_hat;     // images of the mu_words

    EmbeddingResult();
    RMatrix image_of(const Word& w) const;
};

// Coning: c = lcm of translation denominators over the generators; matrices
// are [[theta(g), c*t_g], [0, 1]], integral by construction.
ConingRep cone(const CrystalGroupSpec& spec);

DualRep dualize(const ConingRep& rep);

// Sum of h * seed * h^T over the holonomy group: symmetric, positive
// definite, and h-invariant on the left. Throws ValidationError unless the
// seed is positive definite.
SymmetricForm theta_average(const HolonomyGroup& holonomy, const SymmetricForm& seed);

// Unique positive rational multiple that is integral with entry gcd 1.
SymmetricForm primitive_rescale(const SymmetricForm& form);

// Per generator, solves the linear system from the isometry condition for the
// cusp column (W_g, tau_g); the solution must exist and be unique, and the
// full matrix identity is re-verified afterwards.
CuspExtension hyperbolic_extend(const DualRep& rep, const SymmetricForm& invariant_form);

// Conjugate by diag(I, K) so the last column clears; the invariant form
// becomes the congruence transform of D ⊕ H2, still signature (n+1, 1).
EmbeddingResult integralize_cusp(const CuspExtension& extension,
                                 const std::vector<std::string>& generator_names);

// cone -> dualize -> theta_average (primitive-rescaled) -> hyperbolic_extend
// -> integralize_cusp, with mu images attached and the verification suite run
// before returning (a verification failure is fatal).
EmbeddingResult embed_pipeline(const CrystalGroupSpec& spec,
                               const std::optional<SymmetricForm>& seed = std::nullopt);

// Image of the affine translation x -> x + m (matrix-unit coordinates) under
// the same (D, K) embedding data; integral whenever the result lies in
// O(Q';Z), which is verified by callers that require it.
RMatrix embedded_translation(const EmbeddingResult& result, const RVector& m);

} // namespace flatcusp
