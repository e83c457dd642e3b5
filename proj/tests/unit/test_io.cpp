#include "flatcusp/io.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace flatcusp;
using testutil::mat;
using testutil::vec;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "cannot open ", path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

#ifndef FLATCUSP_DATA_DIR
#define FLATCUSP_DATA_DIR "data"
#endif

TEST_CASE("shipped group files parse to the catalog entries") {
    const std::string dir = FLATCUSP_DATA_DIR;
    CHECK(parse_group_file(slurp(dir + "/groups/hantsche_wendt.json")) == catalog_lookup("hantsche-wendt"));
    CHECK(parse_group_file(slurp(dir + "/groups/klein_bottle.json")) == catalog_lookup("klein-bottle"));
    CHECK(parse_group_file(slurp(dir + "/groups/torus_2.json")) == catalog_lookup("torus-2"));
    CHECK(parse_group_file(slurp(dir + "/groups/torus_3.json")) == catalog_lookup("torus-3"));
    CHECK(parse_group_file(slurp(dir + "/groups/klein_bottle_abstract.json")).mode == SpecMode::Abstract);
}

TEST_CASE("group file round-trip is structural identity") {
    for (const std::string& name : catalog_names()) {
        const CrystalGroupSpec spec = catalog_lookup(name);
        CHECK(parse_group_file(serialize_group(spec)) == spec);
    }
}

TEST_CASE("serialization is deterministic") {
    const CrystalGroupSpec spec = catalog_lookup("hantsche-wendt");
    CHECK(serialize_group(spec) == serialize_group(catalog_lookup("hantsche-wendt")));

    const EmbeddingResult result = embed_pipeline(spec);
    const Report report{spec, result, full_report(result, spec), {}};
    CHECK(serialize_report(report) == serialize_report(report));
}

TEST_CASE("random specs survive the round trip") {
    std::mt19937_64 rng(12001);
    for (int trial = 0; trial < 20; ++trial) {
        CrystalGroupSpec spec;
        spec.dim = 1 + static_cast<int>(rng() % 3);
        spec.mode = rng() % 2 == 0 ? SpecMode::Explicit : SpecMode::Abstract;
        const int gens = 1 + static_cast<int>(rng() % 3);
        for (int g = 0; g < gens; ++g) {
            GeneratorSpec gen;
            gen.name = std::string(1, static_cast<char>('a' + g));
            // signed permutation: integral with determinant ±1
            RMatrix holonomy(spec.dim, spec.dim);
            std::vector<int> perm(static_cast<size_t>(spec.dim));
            for (int i = 0; i < spec.dim; ++i) perm[static_cast<size_t>(i)] = i;
            std::shuffle(perm.begin(), perm.end(), rng);
            for (int i = 0; i < spec.dim; ++i) {
                holonomy(i, perm[static_cast<size_t>(i)]) = rng() % 2 == 0 ? 1 : -1;
            }
            gen.holonomy = holonomy;
            if (spec.mode == SpecMode::Explicit) {
                RVector t(spec.dim);
                for (int i = 0; i < spec.dim; ++i) t[i] = testutil::random_rational(rng, 3, 4);
                gen.translation = t;
            }
            spec.generators.push_back(std::move(gen));
        }
        for (int r = 0; r < 2; ++r) spec.relators.push_back(testutil::random_word(rng, gens, 6));
        for (int i = 0; i < spec.dim; ++i) spec.mu_words.push_back(testutil::random_word(rng, gens, 4));
        validate_structure(spec);
        CHECK(parse_group_file(serialize_group(spec)) == spec);
    }
}

TEST_CASE("positioned parse errors") {
    SUBCASE("zero denominator names the location") {
        const std::string text = R"({
            "dim": 1, "mode": "explicit",
            "generators": [{"name": "t", "holonomy": [["1"]], "translation": ["1/0"]}],
            "relators": [], "mu_words": ["t"]
        })";
        try {
            parse_group_file(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("zero denominator") != std::string::npos);
            CHECK(e.location == "$.generators[0].translation[0]");
        }
    }
    SUBCASE("unknown generator in a relator") {
        const std::string text = R"({
            "dim": 1, "mode": "explicit",
            "generators": [{"name": "t", "holonomy": [["1"]], "translation": ["1"]}],
            "relators": ["t c t^-1"], "mu_words": ["t"]
        })";
        try {
            parse_group_file(text);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("unknown generator 'c'") != std::string::npos);
            CHECK(e.location == "$.relators[0]");
        }
    }
    SUBCASE("malformed JSON reports the line") {
        try {
            parse_group_file("{\n  \"dim\": 2,\n  oops\n}");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.location.find("line") != std::string::npos);
        }
    }
    SUBCASE("wrong mu_words count") {
        const std::string text = R"({
            "dim": 2, "mode": "explicit",
            "generators": [{"name": "t", "holonomy": [["1","0"],["0","1"]], "translation": ["1","0"]}],
            "relators": [], "mu_words": ["t"]
        })";
        CHECK_THROWS_AS(parse_group_file(text), ParseError);
    }
}

TEST_CASE("reports round-trip losslessly") {
    const CrystalGroupSpec spec = catalog_lookup("hantsche-wendt");
    const EmbeddingResult result = embed_pipeline(spec);
    const VerificationReport verification = full_report(result, spec);
    const Report report{spec, result, verification, {}};

    const std::string text = serialize_report(report);
    const Report back = parse_report(text);
    CHECK(back.group == spec);
    CHECK(back.embedding.matrices == result.matrices);
    CHECK(back.embedding.form == result.form);
    CHECK(back.embedding.invariant_form == result.invariant_form);
    CHECK(back.embedding.scale_c == result.scale_c);
    CHECK(back.embedding.scale_k == result.scale_k);
    CHECK(back.embedding.mu_hat == result.mu_hat);
    CHECK(back.embedding.lightlike == result.lightlike);
    CHECK(serialize_report({back.group, back.embedding, back.verification, back.witness_notes}) == text);

    // matrices in a parsed report still verify
    const VerificationReport again = full_report(back.embedding, back.group);
    CHECK(again.passed());
}

TEST_CASE("witness serialization") {
    const EmbeddingResult result = embed_pipeline(catalog_lookup("hantsche-wendt"));
    const SeparationOutcome outcome = separate(result.matrices[1], build_Tp(result, 2), result);
    const std::string text = serialize_witness(outcome, "b", 2);
    CHECK(text.find("\"case\": \"holonomy-block\"") != std::string::npos);
    CHECK(text.find("\"modulus\": \"3\"") != std::string::npos);
}

TEST_CASE("matrix file parsing") {
    const RMatrix m = mat("1 0; -3 1/2");
    CHECK(parse_matrix(serialize_matrix(m)) == m);
    CHECK(parse_matrix("[[\"2\", \"1\"], [\"0\", \"1\"]]") == mat("2 1; 0 1"));
    CHECK_THROWS_AS(parse_matrix("[[\"2\"], [\"0\", \"1\"]]"), ParseError);
}
