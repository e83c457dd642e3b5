#include "flatcusp/crystal.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>

using namespace flatcusp;
using testutil::mat;
using testutil::vec;

namespace {

CrystalGroupSpec dim1_reflection_group() {
    // generated by the point reflection x -> -x and the unit translation:
    // crystallographic but not torsion-free
    CrystalGroupSpec spec;
    spec.dim = 1;
    spec.mode = SpecMode::Explicit;
    GeneratorSpec r{"r", mat("-1"), vec("0")};
    GeneratorSpec t{"t", mat("1"), vec("1")};
    spec.generators = {r, t};
    spec.relators = {Word::parse("r r", {"r", "t"}), Word::parse("r t r^-1 t", {"r", "t"})};
    spec.mu_words = {Word::parse("t", {"r", "t"})};
    return spec;
}

CrystalGroupSpec strip_translations(CrystalGroupSpec spec) {
    spec.mode = SpecMode::Abstract;
    for (GeneratorSpec& g : spec.generators) g.translation.reset();
    return spec;
}

} // namespace

TEST_CASE("affine word evaluation") {
    const CrystalGroupSpec hw = catalog_lookup("hantsche-wendt");
    const auto gens = hw.affine_generators();
    const auto names = hw.generator_names();

    SUBCASE("empty word is the identity") {
        CHECK(evaluate_word(Word{}, gens).is_identity());
    }
    SUBCASE("a^2 is translation by e_3") {
        const AffineIsometry sq = evaluate_word(Word::parse("a a", names), gens);
        CHECK(sq.holonomy == RMatrix::identity(3));
        CHECK(sq.translation == vec("0 0 1"));
    }
    SUBCASE("Klein bottle relator evaluates to the identity") {
        const CrystalGroupSpec kb = catalog_lookup("klein-bottle");
        const AffineIsometry rel = evaluate_word(Word::parse("a b a^-1 b", kb.generator_names()),
                                                 kb.affine_generators());
        CHECK(rel.is_identity());
    }
}

TEST_CASE("word evaluation is a homomorphism") {
    std::mt19937_64 rng(8001);
    const CrystalGroupSpec hw = catalog_lookup("hantsche-wendt");
    const auto gens = hw.affine_generators();
    for (int trial = 0; trial < 60; ++trial) {
        const Word w1 = testutil::random_word(rng, 2, 6);
        const Word w2 = testutil::random_word(rng, 2, 6);
        CHECK(evaluate_word(w1.concat(w2), gens) == compose(evaluate_word(w1, gens), evaluate_word(w2, gens)));
    }
}

TEST_CASE("word parsing") {
    const std::vector<std::string> names{"a", "b"};
    const Word w = Word::parse("a b b a^-1 b b", names);
    CHECK(w.letters.size() == 6);
    CHECK(w.str(names) == "a b b a^-1 b b");
    CHECK_THROWS_AS(Word::parse("a c", names), ParseError);
    CHECK_THROWS_AS(Word::parse("a^2", names), ParseError);
}

TEST_CASE("holonomy closure") {
    SUBCASE("torus is trivial") {
        const HolonomyGroup h = holonomy_closure(catalog_lookup("torus-3"));
        CHECK(h.order() == 1);
    }
    SUBCASE("Hantsche-Wendt has the diagonal Klein four-group") {
        const HolonomyGroup h = holonomy_closure(catalog_lookup("hantsche-wendt"));
        REQUIRE(h.order() == 4);
        const std::vector<RMatrix> expected = {
            RMatrix::identity(3),
            mat("-1 0 0; 0 -1 0; 0 0 1"),
            mat("1 0 0; 0 -1 0; 0 0 -1"),
            mat("-1 0 0; 0 1 0; 0 0 -1"),
        };
        for (const RMatrix& e : expected) {
            CHECK(std::find(h.elements.begin(), h.elements.end(), e) != h.elements.end());
        }
    }
    SUBCASE("Klein bottle has order 2") {
        CHECK(holonomy_closure(catalog_lookup("klein-bottle")).order() == 2);
    }
    SUBCASE("closed under product and inverse, contains generator images") {
        const HolonomyGroup h = holonomy_closure(catalog_lookup("hantsche-wendt"));
        for (const RMatrix& a : h.elements) {
            CHECK(std::find(h.elements.begin(), h.elements.end(), inverse(a)) != h.elements.end());
            for (const RMatrix& b : h.elements) {
                CHECK(std::find(h.elements.begin(), h.elements.end(), a * b) != h.elements.end());
            }
        }
        for (const RMatrix& g : h.generator_images) {
            CHECK(std::find(h.elements.begin(), h.elements.end(), g) != h.elements.end());
        }
    }
    SUBCASE("infinite-order holonomy trips the bound") {
        CrystalGroupSpec bad;
        bad.dim = 2;
        bad.mode = SpecMode::Explicit;
        bad.generators = {{"s", mat("1 1; 0 1"), vec("0 0")}};
        bad.mu_words = {Word{}, Word{}};
        CHECK_THROWS_AS(holonomy_closure(bad, 100), EnumerationLimitError);
    }
}

TEST_CASE("group axioms") {
    SUBCASE("catalog entries pass") {
        for (const std::string& name : catalog_names()) {
            const AxiomReport report = check_group_axioms(catalog_lookup(name));
            INFO(name, ": ", report.first_failure());
            CHECK(report.all_passed());
        }
    }
    SUBCASE("corrupted translation is caught and the relator named") {
        // t_b gains a first coordinate: the relator evaluates to translation
        // by (2/5, 0) instead of the identity
        CrystalGroupSpec kb = catalog_lookup("klein-bottle");
        kb.generators[1].translation = vec("1/5 1");
        const AxiomReport report = check_group_axioms(kb);
        CHECK_FALSE(report.all_passed());
        bool relator_failure = false;
        for (const CheckItem& c : report.checks) {
            if (!c.passed && c.name.find("relator") != std::string::npos &&
                c.name.find("a b a^-1 b") != std::string::npos) {
                relator_failure = true;
            }
        }
        CHECK(relator_failure);
    }
    SUBCASE("a translation corruption invisible to the axioms stays invisible") {
        // shifting t_b by a vector the holonomy averages away moves the
        // presentation inside its affine conjugacy class: all axioms hold
        CrystalGroupSpec hw = catalog_lookup("hantsche-wendt");
        hw.generators[1].translation = vec("1/2 0 1/3");
        CHECK(check_group_axioms(hw).all_passed());
    }
}

TEST_CASE("torsion detection") {
    SUBCASE("torus and Klein bottle are torsion-free") {
        CHECK(check_torsion_free(catalog_lookup("torus-2")).torsion_free);
        CHECK(check_torsion_free(catalog_lookup("klein-bottle")).torsion_free);
        CHECK(check_torsion_free(catalog_lookup("hantsche-wendt")).torsion_free);
    }
    SUBCASE("the dim-1 reflection group is rejected with a certificate") {
        const CrystalGroupSpec spec = dim1_reflection_group();
        CHECK(check_group_axioms(spec).all_passed()); // valid crystallographic data
        const TorsionResult result = check_torsion_free(spec);
        REQUIRE_FALSE(result.torsion_free);
        REQUIRE(result.certificate.has_value());
        CHECK(result.certificate->element.holonomy == mat("-1"));
        CHECK(result.certificate->element.translation == vec("0"));
        CHECK(result.certificate->fixed_point == vec("0"));
    }
}

TEST_CASE("abstract translation solving") {
    SUBCASE("torus: mu words pin the unit translations") {
        const CrystalGroupSpec solved = solve_translation_parts(strip_translations(catalog_lookup("torus-2")));
        CHECK(*solved.generators[0].translation == vec("1 0"));
        CHECK(*solved.generators[1].translation == vec("0 1"));
        CHECK(check_group_axioms(solved).all_passed());
    }
    SUBCASE("Klein bottle: one free parameter, canonical solution") {
        const TranslationSolution sol = solve_translation_parts_full(strip_translations(catalog_lookup("klein-bottle")));
        CHECK(sol.free_parameters == 1);
        CHECK(*sol.spec.generators[0].translation == vec("1/2 0"));
        CHECK(*sol.spec.generators[1].translation == vec("0 1"));
        CHECK(check_group_axioms(sol.spec).all_passed());

        // the free direction is the second coordinate of t_a
        REQUIRE(sol.nullspace.size() == 1);
        CHECK(sol.nullspace[0] == vec("0 1 0 0"));

        // any other particular solution differs by a null-space element and
        // still satisfies the axioms
        CrystalGroupSpec shifted = sol.spec;
        (*shifted.generators[0].translation)[1] += parse_rational("5/7");
        CHECK(check_group_axioms(shifted).all_passed());
    }
    SUBCASE("Hantsche-Wendt: a rational solution exists and round-trips") {
        const CrystalGroupSpec solved = solve_translation_parts(strip_translations(catalog_lookup("hantsche-wendt")));
        CHECK(check_group_axioms(solved).all_passed());
    }
    SUBCASE("inconsistent data is rejected") {
        CrystalGroupSpec bad = strip_translations(catalog_lookup("klein-bottle"));
        // demanding b = translation e_1 contradicts the relator's constraint
        bad.mu_words[0] = Word::parse("b", bad.generator_names());
        CHECK_THROWS_AS(solve_translation_parts(bad), InconsistentSystemError);
    }
    SUBCASE("nontrivial holonomy on a mu word is rejected") {
        CrystalGroupSpec bad = strip_translations(catalog_lookup("klein-bottle"));
        bad.mu_words[0] = Word::parse("a", bad.generator_names());
        CHECK_THROWS_AS(solve_translation_parts(bad), InconsistentSystemError);
    }
}

TEST_CASE("catalog") {
    SUBCASE("required entries present") {
        const std::vector<std::string> names = catalog_names();
        for (const char* required : {"torus-2", "klein-bottle", "torus-3", "hantsche-wendt"}) {
            CHECK(std::find(names.begin(), names.end(), required) != names.end());
        }
    }
    SUBCASE("Hantsche-Wendt matches the classical generators") {
        const CrystalGroupSpec hw = catalog_lookup("hantsche-wendt");
        CHECK(hw.generators[0].holonomy == mat("-1 0 0; 0 -1 0; 0 0 1"));
        CHECK(*hw.generators[0].translation == vec("1/2 1/2 1/2"));
        CHECK(hw.generators[1].holonomy == mat("1 0 0; 0 -1 0; 0 0 -1"));
        CHECK(*hw.generators[1].translation == vec("1/2 0 0"));
    }
    SUBCASE("torus-2 is two unit translations") {
        const CrystalGroupSpec t2 = catalog_lookup("torus-2");
        CHECK(t2.generators[0].holonomy == RMatrix::identity(2));
        CHECK(*t2.generators[0].translation == vec("1 0"));
        CHECK(*t2.generators[1].translation == vec("0 1"));
    }
    SUBCASE("every entry is a valid Bieberbach presentation") {
        for (const std::string& name : catalog_names()) {
            const CrystalGroupSpec spec = catalog_lookup(name);
            CHECK(check_group_axioms(spec).all_passed());
            CHECK(check_torsion_free(spec).torsion_free);
            CHECK(holonomy_closure(spec).order() >= 1);
        }
    }
    SUBCASE("unknown names list the catalog") {
        CHECK_THROWS_WITH_AS(catalog_lookup("nope"),
                             "unknown catalog entry 'nope'; available: torus-2 klein-bottle torus-3 hantsche-wendt",
                             ValidationError);
    }
}

TEST_CASE("structural validation") {
    CrystalGroupSpec spec = catalog_lookup("torus-2");
    SUBCASE("fractional holonomy is rejected") {
        spec.generators[0].holonomy = mat("1/2 0; 0 2");
        CHECK_THROWS_AS(validate_structure(spec), ValidationError);
    }
    SUBCASE("non-unimodular holonomy is rejected") {
        spec.generators[0].holonomy = mat("2 0; 0 1");
        CHECK_THROWS_AS(validate_structure(spec), ValidationError);
    }
    SUBCASE("wrong mu count is rejected") {
        spec.mu_words.pop_back();
        CHECK_THROWS_AS(validate_structure(spec), ValidationError);
    }
    SUBCASE("duplicate generator names are rejected") {
        spec.generators[1].name = "a";
        CHECK_THROWS_AS(validate_structure(spec), ValidationError);
    }
}
