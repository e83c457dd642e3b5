#include "flatcusp/io.hpp"

#include <json.hpp>

#include <sstream>

namespace flatcusp {

using nlohmann::json;

namespace {

// Line number of a byte offset, for positioned syntax errors.
int line_of_offset(const std::string& text, size_t offset) {
    int line = 1;
    for (size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(),
                         "line " + std::to_string(line_of_offset(text, e.byte)));
    }
}

const json& require(const json& node, const char* key, const std::string& path) {
    if (!node.is_object()) throw ParseError("expected an object", path);
    const auto it = node.find(key);
    if (it == node.end()) throw ParseError(std::string("missing key '") + key + "'", path);
    return *it;
}

std::string require_string(const json& node, const char* key, const std::string& path) {
    const json& v = require(node, key, path);
    if (!v.is_string()) throw ParseError(std::string("key '") + key + "' must be a string", path);
    return v.get<std::string>();
}

Rational parse_rational_at(const json& v, const std::string& path) {
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
    if (!v.is_string()) throw ParseError("rational values must be strings like \"3\" or \"-1/2\"", path);
    try {
        return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(e.what(), path);
    }
}

RVector parse_vector_at(const json& v, const std::string& path) {
    if (!v.is_array()) throw ParseError("expected an array of rational strings", path);
    std::vector<Rational> entries;
    for (size_t i = 0; i < v.size(); ++i) {
        entries.push_back(parse_rational_at(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return RVector(std::move(entries));
}

RMatrix parse_matrix_at(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) throw ParseError("expected a non-empty array of rows", path);
    std::vector<std::vector<Rational>> rows;
    for (size_t i = 0; i < v.size(); ++i) {
        const std::string row_path = path + "[" + std::to_string(i) + "]";
        if (!v[i].is_array()) throw ParseError("expected a row array", row_path);
        std::vector<Rational> row;
        for (size_t j = 0; j < v[i].size(); ++j) {
            row.push_back(parse_rational_at(v[i][j], row_path + "[" + std::to_string(j) + "]"));
        }
        rows.push_back(std::move(row));
    }
    try {
        return RMatrix::from_rows(rows);
    } catch (const DimensionError& e) {
        throw ParseError(e.what(), path);
    }
}

json vector_json(const RVector& v) {
    json out = json::array();
    for (int i = 0; i < v.dim(); ++i) out.push_back(to_string(v[i]));
    return out;
}

json matrix_json(const RMatrix& m) {
    json out = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace

CrystalGroupSpec parse_group_file(const std::string& text) {
    const json doc = parse_json(text);

    CrystalGroupSpec spec;
    const json& dim = require(doc, "dim", "$");
    if (!dim.is_number_integer()) throw ParseError("'dim' must be an integer", "$.dim");
    spec.dim = dim.get<int>();
    if (spec.dim < 1) throw ParseError("'dim' must be positive", "$.dim");

    const std::string mode = require_string(doc, "mode", "$");
    if (mode == "explicit") {
        spec.mode = SpecMode::Explicit;
    } else if (mode == "abstract") {
        spec.mode = SpecMode::Abstract;
    } else {
        throw ParseError("'mode' must be \"explicit\" or \"abstract\"", "$.mode");
    }

    const json& gens = require(doc, "generators", "$");
    if (!gens.is_array() || gens.empty()) throw ParseError("'generators' must be a non-empty array", "$.generators");
    for (size_t i = 0; i < gens.size(); ++i) {
        const std::string path = "$.generators[" + std::to_string(i) + "]";
        GeneratorSpec g;
        g.name = require_string(gens[i], "name", path);
        g.holonomy = parse_matrix_at(require(gens[i], "holonomy", path), path + ".holonomy");
        if (gens[i].contains("translation")) {
            g.translation = parse_vector_at(gens[i]["translation"], path + ".translation");
        } else if (spec.mode == SpecMode::Explicit) {
            throw ParseError("explicit mode requires a 'translation' for every generator", path);
        }
        spec.generators.push_back(std::move(g));
    }

    const std::vector<std::string> names = spec.generator_names();
    const auto parse_words = [&](const char* key, std::vector<Word>& out) {
        const json& words = require(doc, key, "$");
        if (!words.is_array()) throw ParseError(std::string("'") + key + "' must be an array of word strings",
                                                "$." + std::string(key));
        for (size_t i = 0; i < words.size(); ++i) {
            const std::string path = "$." + std::string(key) + "[" + std::to_string(i) + "]";
            if (!words[i].is_string()) throw ParseError("words are strings like \"a b^-1\"", path);
            try {
                out.push_back(Word::parse(words[i].get<std::string>(), names));
            } catch (const ParseError& e) {
                throw ParseError(e.what(), path);
            }
        }
    };
    parse_words("relators", spec.relators);
    parse_words("mu_words", spec.mu_words);

    try {
        validate_structure(spec);
    } catch (const ValidationError& e) {
        throw ParseError(e.what(), "$");
    }
    return spec;
}

std::string serialize_group(const CrystalGroupSpec& spec) {
    json doc;
    doc["dim"] = spec.dim;
    doc["mode"] = spec.mode == SpecMode::Explicit ? "explicit" : "abstract";
    json gens = json::array();
    for (const GeneratorSpec& g : spec.generators) {
        json node;
        node["name"] = g.name;
        node["holonomy"] = matrix_json(g.holonomy);
        if (g.translation) node["translation"] = vector_json(*g.translation);
        gens.push_back(std::move(node));
    }
    doc["generators"] = std::move(gens);
    const std::vector<std::string> names = spec.generator_names();
    json relators = json::array();
    for (const Word& w : spec.relators) relators.push_back(w.str(names));
    doc["relators"] = std::move(relators);
    json mu = json::array();
    for (const Word& w : spec.mu_words) mu.push_back(w.str(names));
    doc["mu_words"] = std::move(mu);
    return doc.dump(2) + "\n";
}

namespace {

json verification_json(const VerificationReport& report) {
    json checks = json::array();
    for (const VerificationCheck& c : report.checks) {
        json node;
        node["name"] = c.name;
        node["passed"] = c.passed;
        if (!c.witness.empty()) node["witness"] = c.witness;
        checks.push_back(std::move(node));
    }
    json out;
    out["passed"] = report.passed();
    out["checks"] = std::move(checks);
    return out;
}

VerificationReport verification_from_json(const json& node, const std::string& path) {
    VerificationReport report;
    if (!node.is_object()) throw ParseError("expected a verification object", path);
    const json& checks = require(node, "checks", path);
    for (size_t i = 0; i < checks.size(); ++i) {
        const json& c = checks[i];
        const std::string p = path + ".checks[" + std::to_string(i) + "]";
        VerificationCheck check;
        check.name = require_string(c, "name", p);
        check.passed = require(c, "passed", p).get<bool>();
        if (c.contains("witness")) check.witness = c["witness"].get<std::string>();
        report.checks.push_back(std::move(check));
    }
    return report;
}

} // namespace

std::string serialize_report(const Report& report) {
    json doc;
    doc["format"] = "flatcusp-report";
    doc["version"] = 1;
    doc["group"] = json::parse(serialize_group(report.group));

    const EmbeddingResult& e = report.embedding;
    json emb;
    emb["dim"] = e.dim;
    emb["c"] = to_string(e.scale_c);
    emb["K"] = to_string(e.scale_k);
    emb["D"] = matrix_json(e.invariant_form.matrix());
    emb["form"] = matrix_json(e.form.matrix());
    emb["v1"] = vector_json(e.lightlike);
    emb["v2"] = vector_json(e.v2);
    json gens = json::array();
    for (size_t i = 0; i < e.matrices.size(); ++i) {
        json node;
        node["name"] = e.generator_names[i];
        node["matrix"] = matrix_json(e.matrices[i]);
        gens.push_back(std::move(node));
    }
    emb["generators"] = std::move(gens);
    json mu = json::array();
    for (const RMatrix& m : e.mu_hat) mu.push_back(matrix_json(m));
    emb["mu_hat"] = std::move(mu);
    doc["embedding"] = std::move(emb);

    doc["verification"] = verification_json(report.verification);
    if (!report.witness_notes.empty()) {
        json notes = json::array();
        for (const std::string& w : report.witness_notes) notes.push_back(json::parse(w));
        doc["witnesses"] = std::move(notes);
    }
    return doc.dump(2) + "\n";
}

Report parse_report(const std::string& text) {
    const json doc = parse_json(text);
    if (!doc.is_object() || doc.value("format", "") != "flatcusp-report") {
        throw ParseError("not a flatcusp report (missing format tag)", "$.format");
    }

    Report report;
    report.group = parse_group_file(require(doc, "group", "$").dump());

    const json& emb = require(doc, "embedding", "$");
    EmbeddingResult& e = report.embedding;
    e.dim = require(emb, "dim", "$.embedding").get<int>();
    e.scale_c = parse_integer(require_string(emb, "c", "$.embedding"));
    e.scale_k = parse_integer(require_string(emb, "K", "$.embedding"));
    e.invariant_form = SymmetricForm(parse_matrix_at(require(emb, "D", "$.embedding"), "$.embedding.D"));
    e.form = SymmetricForm(parse_matrix_at(require(emb, "form", "$.embedding"), "$.embedding.form"));
    e.lightlike = parse_vector_at(require(emb, "v1", "$.embedding"), "$.embedding.v1");
    e.v2 = parse_vector_at(require(emb, "v2", "$.embedding"), "$.embedding.v2");
    const json& gens = require(emb, "generators", "$.embedding");
    for (size_t i = 0; i < gens.size(); ++i) {
        const std::string path = "$.embedding.generators[" + std::to_string(i) + "]";
        e.generator_names.push_back(require_string(gens[i], "name", path));
        e.matrices.push_back(parse_matrix_at(require(gens[i], "matrix", path), path + ".matrix"));
    }
    const json& mu = require(emb, "mu_hat", "$.embedding");
    for (size_t i = 0; i < mu.size(); ++i) {
        e.mu_hat.push_back(parse_matrix_at(mu[i], "$.embedding.mu_hat[" + std::to_string(i) + "]"));
    }

    report.verification = verification_from_json(require(doc, "verification", "$"), "$.verification");
    if (doc.contains("witnesses")) {
        for (const json& w : doc["witnesses"]) report.witness_notes.push_back(w.dump());
    }
    return report;
}

std::string serialize_witness(const SeparationOutcome& outcome, const std::string& element_label,
                              const Integer& p) {
    json doc;
    doc["element"] = element_label;
    doc["p"] = to_string(p);
    switch (outcome.kind) {
        case SeparationOutcome::Kind::Member: doc["outcome"] = "member"; break;
        case SeparationOutcome::Kind::Separated: doc["outcome"] = "separated"; break;
        case SeparationOutcome::Kind::OutsideStabilizer: doc["outcome"] = "outside-stabilizer"; break;
    }
    if (!outcome.detail.empty()) doc["detail"] = outcome.detail;
    if (outcome.witness) {
        const SeparationWitness& w = *outcome.witness;
        json node;
        node["case"] = to_string(w.case_tag);
        node["modulus"] = to_string(w.modulus);
        node["image_order"] = w.image_order;
        node["detail"] = w.detail;
        json gm = json::array();
        for (int i = 0; i < w.gamma_mod.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < w.gamma_mod.cols(); ++j) row.push_back(w.gamma_mod(i, j));
            gm.push_back(std::move(row));
        }
        node["gamma_mod"] = std::move(gm);
        doc["witness"] = std::move(node);
    }
    return doc.dump(2);
}

std::string serialize_matrix(const RMatrix& m) {
    return matrix_json(m).dump(2) + "\n";
}

RMatrix parse_matrix(const std::string& text) {
    return parse_matrix_at(parse_json(text), "$");
}

} // namespace flatcusp
