#pragma once

// Crystallographic / Bieberbach group presentations: affine isometries, words
// over generators, structural validation, holonomy closure, torsion
// detection, and the linear solver that recovers translation parts from an
// abstract presentation. Input is assumed lattice-adapted: the translation
// lattice is Z^n, mu_i acts as translation by e_i, holonomy matrices are
// integral with determinant ±1.

#include "flatcusp/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flatcusp {

// Rigid motion v -> holonomy * v + translation.
struct AffineIsometry {
    RMatrix holonomy;
    RVector translation;

    static AffineIsometry identity(int dim);
    bool is_identity() const;

    friend bool operator==(const AffineIsometry&, const AffineIsometry&) = default;
};

AffineIsometry compose(const AffineIsometry& a, const AffineIsometry& b);
AffineIsometry inverse(const AffineIsometry& a);

struct WordLetter {
    int generator = 0;
    int exponent = 1; // +1 or -1

    friend bool operator==(const WordLetter&, const WordLetter&) = default;
};

struct Word {
    std::vector<WordLetter> letters;

    static Word parse(const std::string& text, const std::vector<std::string>& generator_names);
    std::string str(const std::vector<std::string>& generator_names) const;

    Word concat(const Word& other) const;

    friend bool operator==(const Word&, const Word&) = default;
};

// Evaluate a word in any group given images of the generators.
AffineIsometry evaluate_word(const Word& w, const std::vector<AffineIsometry>& images);
RMatrix evaluate_word(const Word& w, const std::vector<RMatrix>& images);

enum class SpecMode { Explicit, Abstract };

struct GeneratorSpec {
    std::string name;
    RMatrix holonomy;                   // n x n, integral, det ±1
    std::optional<RVector> translation; // present in Explicit mode

    AffineIsometry affine() const; // throws ValidationError when translation is missing

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

struct CrystalGroupSpec {
    int dim = 0;
    SpecMode mode = SpecMode::Explicit;
    std::vector<GeneratorSpec> generators;
    std::vector<Word> relators;
    std::vector<Word> mu_words; // exactly dim words; mu_i evaluates to translation by e_i

    int generator_index(const std::string& name) const; // -1 when unknown
    std::vector<std::string> generator_names() const;
    std::vector<AffineIsometry> affine_generators() const;
    std::vector<RMatrix> holonomy_generators() const;

    friend bool operator==(const CrystalGroupSpec&, const CrystalGroupSpec&) = default;
};

// Structural checks only (shapes, integrality, unimodularity, word indices,
// mu_words count). Group axioms are a separate, semantic check.
void validate_structure(const CrystalGroupSpec& spec);

struct HolonomyGroup {
    std::vector<RMatrix> elements;        // sorted, deterministic order
    std::vector<RMatrix> generator_images;

    size_t order() const { return elements.size(); }
};

// Closure of the generator holonomies under products. Throws
// EnumerationLimitError when the closure exceeds max_order: the input is not
// crystallographic in these coordinates.
HolonomyGroup holonomy_closure(const CrystalGroupSpec& spec, size_t max_order = 10000);

struct CheckItem {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct AxiomReport {
    std::vector<CheckItem> checks;
    bool all_passed() const;
    std::string first_failure() const;
};

// Explicit mode: every relator evaluates to the identity isometry, every
// mu_word to translation by e_i, mu translations commute pairwise, and the
// holonomy map kills every relator.
AxiomReport check_group_axioms(const CrystalGroupSpec& spec);

struct TorsionCertificate {
    Word word;                // coset representative whose lattice translate has torsion
    AffineIsometry element;   // the torsion element itself
    RVector fixed_point;
};

struct TorsionResult {
    bool torsion_free = false;
    std::optional<TorsionCertificate> certificate;
};

// Decides, per nontrivial holonomy class h with BFS coset representative g,
// whether -t_g lies in Im(theta(g) - I) + Z^n (a Smith-normal-form lattice
// membership problem); any solution yields an element with a fixed point,
// i.e. torsion.
TorsionResult check_torsion_free(const CrystalGroupSpec& spec);

struct TranslationSolution {
    CrystalGroupSpec spec;        // Explicit mode, canonical solution installed
    size_t free_parameters = 0;
    std::vector<RVector> nullspace; // of the stacked (generator translations) unknown vector
};

// Abstract mode -> Explicit mode: expands relators (target translation 0) and
// mu_words (target e_j) into a linear system over the unknown generator
// translations and solves it exactly. Throws InconsistentSystemError when the
// holonomy/lattice data does not describe a crystallographic group.
TranslationSolution solve_translation_parts_full(const CrystalGroupSpec& spec);
CrystalGroupSpec solve_translation_parts(const CrystalGroupSpec& spec);

// Built-in catalog of flat-manifold groups.
std::vector<std::string> catalog_names();
CrystalGroupSpec catalog_lookup(const std::string& name); // throws ValidationError listing entries

} // namespace flatcusp
