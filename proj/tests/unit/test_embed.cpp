#include "flatcusp/embed.hpp"

#include "flatcusp/verify.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace flatcusp;
using testutil::mat;
using testutil::vec;

namespace {

// the final integral matrices and form of the Hantsche-Wendt example
const char* kHwA = "-1 0 0 0 2; 0 -1 0 0 2; 0 0 1 0 2; 1 1 -1 1 -3; 0 0 0 0 1";
const char* kHwB = "1 0 0 0 2; 0 -1 0 0 0; 0 0 -1 0 0; -1 0 0 1 -1; 0 0 0 0 1";
const char* kHwForm = "1 0 0 0 0; 0 1 0 0 0; 0 0 1 0 0; 0 0 0 0 2; 0 0 0 2 0";

} // namespace

TEST_CASE("coning clears denominators") {
    SUBCASE("Hantsche-Wendt: c = 2, translation column (1,1,1)") {
        const ConingRep rep = cone(catalog_lookup("hantsche-wendt"));
        CHECK(rep.scale_c == 2);
        CHECK(rep.matrices[0] == mat("-1 0 0 1; 0 -1 0 1; 0 0 1 1; 0 0 0 1"));
        CHECK(rep.matrices[1] == mat("1 0 0 1; 0 -1 0 0; 0 0 -1 0; 0 0 0 1"));
    }
    SUBCASE("torus: c = 1, unit translation blocks") {
        const ConingRep rep = cone(catalog_lookup("torus-2"));
        CHECK(rep.scale_c == 1);
        CHECK(rep.matrices[0] == mat("1 0 1; 0 1 0; 0 0 1"));
        CHECK(rep.matrices[1] == mat("1 0 0; 0 1 1; 0 0 1"));
    }
    SUBCASE("Klein bottle: c = 2") {
        CHECK(cone(catalog_lookup("klein-bottle")).scale_c == 2);
    }
}

TEST_CASE("dualization") {
    const DualRep dual = dualize(cone(catalog_lookup("hantsche-wendt")));
    SUBCASE("classical dual of b") {
        CHECK(dual.matrices[1] == mat("1 0 0 0; 0 -1 0 0; 0 0 -1 0; -1 0 0 1"));
    }
    SUBCASE("bottom row of the dual of a") {
        CHECK(dual.matrices[0].row(3) == vec("1 1 -1 1"));
    }
    SUBCASE("dual matrices are integral with last column e_{n+1}") {
        for (const RMatrix& m : dual.matrices) {
            CHECK(m.is_integral());
            CHECK(m.column(3) == RVector::unit(4, 3));
        }
    }
    SUBCASE("identity generator dualizes to the identity") {
        CrystalGroupSpec trivial;
        trivial.dim = 2;
        trivial.mode = SpecMode::Explicit;
        trivial.generators = {{"e", RMatrix::identity(2), RVector(2)}};
        trivial.mu_words = {Word{}, Word{}};
        const DualRep d = dualize(cone(trivial));
        CHECK(d.matrices[0] == RMatrix::identity(3));
    }
}

TEST_CASE("dualization preserves the homomorphism") {
    std::mt19937_64 rng(9001);
    const CrystalGroupSpec hw = catalog_lookup("hantsche-wendt");
    const ConingRep coning = cone(hw);
    const DualRep dual = dualize(coning);
    for (const Word& w : hw.relators) {
        CHECK(evaluate_word(w, coning.matrices).is_identity());
        CHECK(evaluate_word(w, dual.matrices).is_identity());
    }
    for (int trial = 0; trial < 20; ++trial) {
        const Word w1 = testutil::random_word(rng, 2, 5);
        const Word w2 = testutil::random_word(rng, 2, 5);
        CHECK(evaluate_word(w1.concat(w2), dual.matrices) ==
              evaluate_word(w1, dual.matrices) * evaluate_word(w2, dual.matrices));
    }
}

TEST_CASE("theta average") {
    SUBCASE("trivial holonomy returns the seed times the group order") {
        const HolonomyGroup h = holonomy_closure(catalog_lookup("torus-2"));
        const SymmetricForm seed(mat("2 1; 1 3"));
        CHECK(theta_average(h, seed) == seed);
    }
    SUBCASE("Hantsche-Wendt averages the identity seed to 4I") {
        const HolonomyGroup h = holonomy_closure(catalog_lookup("hantsche-wendt"));
        const SymmetricForm d = theta_average(h, SymmetricForm::identity(3));
        CHECK(d.matrix() == mat("4 0 0; 0 4 0; 0 0 4"));
        CHECK(primitive_rescale(d).matrix() == RMatrix::identity(3));
    }
    SUBCASE("Klein bottle averages the pinned seed to diag(2,2)") {
        const HolonomyGroup h = holonomy_closure(catalog_lookup("klein-bottle"));
        const SymmetricForm d = theta_average(h, SymmetricForm(mat("1 1/2; 1/2 1")));
        CHECK(d.matrix() == mat("2 0; 0 2"));
    }
    SUBCASE("non positive definite seeds are rejected") {
        const HolonomyGroup h = holonomy_closure(catalog_lookup("torus-2"));
        CHECK_THROWS_AS(theta_average(h, SymmetricForm(mat("0 1; 1 0"))), ValidationError);
    }
    SUBCASE("averaging an invariant form multiplies by the group order") {
        const HolonomyGroup h = holonomy_closure(catalog_lookup("hantsche-wendt"));
        const SymmetricForm d(mat("1 0 0; 0 2 0; 0 0 3")); // diagonal, invariant under sign flips
        const SymmetricForm averaged = theta_average(h, d);
        CHECK(averaged.matrix() == Rational(4) * d.matrix());
    }
    SUBCASE("the average is invariant: h D h^T = D") {
        std::mt19937_64 rng(9002);
        const HolonomyGroup h = holonomy_closure(catalog_lookup("hantsche-wendt"));
        for (int trial = 0; trial < 20; ++trial) {
            const RMatrix r = testutil::random_integer_matrix(rng, 3, 3, 3);
            const SymmetricForm seed(r.transpose() * r + RMatrix::identity(3)); // positive definite
            const SymmetricForm d = theta_average(h, seed);
            CHECK(is_positive_definite(d));
            for (const RMatrix& el : h.elements) {
                CHECK(el * d.matrix() * el.transpose() == d.matrix());
            }
        }
    }
}

TEST_CASE("hyperbolic extension solves the classical cusp columns") {
    const DualRep dual = dualize(cone(catalog_lookup("hantsche-wendt")));
    const CuspExtension ext = hyperbolic_extend(dual, SymmetricForm::identity(3));
    CHECK(ext.cusp_columns[0] == vec("1 1 1 -3/2"));
    CHECK(ext.cusp_columns[1] == vec("1 0 0 -1/2"));

    SUBCASE("a zero-translation generator gets a zero cusp column") {
        CrystalGroupSpec trivial;
        trivial.dim = 2;
        trivial.mode = SpecMode::Explicit;
        trivial.generators = {{"e", RMatrix::identity(2), RVector(2)}};
        trivial.mu_words = {Word{}, Word{}};
        const CuspExtension t = hyperbolic_extend(dualize(cone(trivial)), SymmetricForm::identity(2));
        CHECK(t.cusp_columns[0] == RVector(3));
        CHECK(t.matrices[0] == RMatrix::identity(4));
    }
}

TEST_CASE("hyperbolic extension rejects a non-invariant form") {
    const DualRep dual = dualize(cone(catalog_lookup("hantsche-wendt")));
    // positive definite but not invariant under theta(b) = diag(1,-1,-1),
    // which flips the sign of the (1,2) entry: the isometry identity fails
    CHECK_THROWS_AS(hyperbolic_extend(dual, SymmetricForm(mat("2 1 0; 1 2 0; 0 0 1"))), Error);
}

TEST_CASE("cusp integralization") {
    const DualRep dual = dualize(cone(catalog_lookup("hantsche-wendt")));
    const CuspExtension ext = hyperbolic_extend(dual, SymmetricForm::identity(3));
    const EmbeddingResult result = integralize_cusp(ext, {"a", "b"});

    SUBCASE("K = 2 and the classical last columns") {
        CHECK(result.scale_k == 2);
        CHECK(result.matrices[0].column(4) == vec("2 2 2 -3 1"));
        CHECK(result.matrices[1].column(4) == vec("2 0 0 -1 1"));
    }
    SUBCASE("the new invariant form is x^2+y^2+z^2+4wt") {
        CHECK(result.form.matrix() == mat(kHwForm));
    }
    SUBCASE("all-integral input keeps K = 1 and the form unchanged") {
        CrystalGroupSpec trivial;
        trivial.dim = 2;
        trivial.mode = SpecMode::Explicit;
        trivial.generators = {{"e", RMatrix::identity(2), RVector(2)}};
        trivial.mu_words = {Word{}, Word{}};
        const CuspExtension t = hyperbolic_extend(dualize(cone(trivial)), SymmetricForm::identity(2));
        const EmbeddingResult r = integralize_cusp(t, {"e"});
        CHECK(r.scale_k == 1);
        CHECK(r.form == t.form);
    }
}

TEST_CASE("embedding pipeline reproduces the worked example exactly") {
    const EmbeddingResult result = embed_pipeline(catalog_lookup("hantsche-wendt"));
    CHECK(result.dim == 3);
    CHECK(result.scale_c == 2);
    CHECK(result.scale_k == 2);
    CHECK(result.invariant_form.matrix() == RMatrix::identity(3));
    CHECK(result.matrices[0] == mat(kHwA));
    CHECK(result.matrices[1] == mat(kHwB));
    CHECK(result.form.matrix() == mat(kHwForm));
    CHECK(result.lightlike == RVector::unit(5, 3));
}

TEST_CASE("embedding pipeline on the torus") {
    const EmbeddingResult result = embed_pipeline(catalog_lookup("torus-2"));
    CHECK(result.matrices[0].rows() == 4);
    CHECK(signature(result.form) == Signature{3, 1, 0});
    for (const RMatrix& m : result.matrices) {
        CHECK(m.is_integral());
        CHECK(m * result.lightlike == result.lightlike); // both generators stabilize e_3
    }
    CHECK(result.matrices[0] == mat("1 0 0 2; 0 1 0 0; -1 0 1 -1; 0 0 0 1"));
    CHECK(result.matrices[1] == mat("1 0 0 0; 0 1 0 2; 0 -1 1 -1; 0 0 0 1"));
}

TEST_CASE("embedding pipeline on the Klein bottle") {
    const EmbeddingResult result = embed_pipeline(catalog_lookup("klein-bottle"));
    CHECK(signature(result.form) == Signature{3, 1, 0});
    CHECK(result.matrices[0] == mat("1 0 0 2; 0 -1 0 0; -1 0 1 -1; 0 0 0 1"));
    CHECK(result.matrices[1] == mat("1 0 0 0; 0 1 0 4; 0 -2 1 -4; 0 0 0 1"));
    CHECK(full_report(result, catalog_lookup("klein-bottle")).passed());
}

TEST_CASE("pipeline accepts abstract-mode input") {
    SUBCASE("klein bottle") {
        CrystalGroupSpec abstract = catalog_lookup("klein-bottle");
        abstract.mode = SpecMode::Abstract;
        for (GeneratorSpec& g : abstract.generators) g.translation.reset();
        const EmbeddingResult result = embed_pipeline(abstract);
        CHECK(signature(result.form) == Signature{3, 1, 0});
    }
    SUBCASE("hantsche-wendt solves to a different valid representative") {
        CrystalGroupSpec abstract = catalog_lookup("hantsche-wendt");
        abstract.mode = SpecMode::Abstract;
        for (GeneratorSpec& g : abstract.generators) g.translation.reset();
        const CrystalGroupSpec solved = solve_translation_parts(abstract);
        CHECK(check_torsion_free(solved).torsion_free);
        const EmbeddingResult result = embed_pipeline(solved);
        CHECK(signature(result.form) == Signature{4, 1, 0});
        CHECK(full_report(result, solved).passed());
    }
}

TEST_CASE("pipeline accepts a custom positive definite seed") {
    const EmbeddingResult result =
        embed_pipeline(catalog_lookup("hantsche-wendt"), SymmetricForm(mat("2 0 0; 0 3 0; 0 0 5")));
    CHECK(signature(result.form) == Signature{4, 1, 0});
    const CrystalGroupSpec hw = catalog_lookup("hantsche-wendt");
    for (const Word& w : hw.relators) {
        CHECK(result.image_of(w).is_identity());
    }
}

TEST_CASE("isometry and stabilization hold for random words") {
    std::mt19937_64 rng(9003);
    for (const std::string name : {"hantsche-wendt", "klein-bottle", "torus-2"}) {
        const EmbeddingResult result = embed_pipeline(catalog_lookup(name));
        for (int trial = 0; trial < 40; ++trial) {
            const Word w = testutil::random_word(rng, static_cast<int>(result.matrices.size()), 8);
            const RMatrix image = result.image_of(w);
            CHECK(image.is_integral());
            CHECK(image.transpose() * result.form.matrix() * image == result.form.matrix());
            CHECK(image * result.lightlike == result.lightlike);
        }
    }
}

TEST_CASE("embedded translations agree with group elements") {
    const EmbeddingResult result = embed_pipeline(catalog_lookup("hantsche-wendt"));
    // a^2 is translation by e_3; in matrix units that is 2*e_3
    const RMatrix sq = result.matrices[0] * result.matrices[0];
    CHECK(sq == embedded_translation(result, vec("0 0 2")));
    // mu images are the translations by c*e_i
    for (int i = 0; i < 3; ++i) {
        RVector m(3);
        m[i] = Rational(result.scale_c);
        CHECK(result.mu_hat[static_cast<size_t>(i)] == embedded_translation(result, m));
    }
}
