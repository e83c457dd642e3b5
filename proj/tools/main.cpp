// Command-line surface: embed | separate | catalog | verify.
// Exit codes: 0 all checks passed, 1 verification failure, 2 input error.

#include "flatcusp/congruence.hpp"
#include "flatcusp/crystal.hpp"
#include "flatcusp/embed.hpp"
#include "flatcusp/io.hpp"
#include "flatcusp/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace flatcusp;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;

struct OutputStyle {
    bool plain = false;

    std::string pass() const { return plain ? "PASS" : "\033[32mPASS\033[0m"; }
    std::string fail() const { return plain ? "FAIL" : "\033[31mFAIL\033[0m"; }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw ParseError("cannot open file", path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out.good()) throw Error("cannot write to " + path);
    out << text;
}

CrystalGroupSpec load_spec(const std::string& source) {
    if (source.rfind("catalog:", 0) == 0) return catalog_lookup(source.substr(8));
    return parse_group_file(read_file(source));
}

// Matrix rendering with right-aligned columns, one bracketed row per line.
void print_matrix(std::ostream& os, const RMatrix& m, const std::string& indent = "  ") {
    std::vector<size_t> width(static_cast<size_t>(m.cols()), 0);
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i)
            width[static_cast<size_t>(j)] = std::max(width[static_cast<size_t>(j)], to_string(m(i, j)).size());
    for (int i = 0; i < m.rows(); ++i) {
        os << indent << "[ ";
        for (int j = 0; j < m.cols(); ++j) {
            const std::string entry = to_string(m(i, j));
            os << std::string(width[static_cast<size_t>(j)] - entry.size(), ' ') << entry;
            os << (j + 1 < m.cols() ? "  " : " ");
        }
        os << "]\n";
    }
}

void print_report_text(std::ostream& os, const Report& report, const OutputStyle& style) {
    const EmbeddingResult& e = report.embedding;
    os << "embedding of a flat " << e.dim << "-manifold group into O(Q'; Z), signature (" << e.dim + 1
       << ", 1)\n";
    os << "scales: c = " << to_string(e.scale_c) << ", K = " << to_string(e.scale_k) << "\n\n";
    os << "invariant form D (holonomy-invariant, positive definite):\n";
    print_matrix(os, e.invariant_form.matrix());
    os << "\npreserved form Q':\n";
    print_matrix(os, e.form.matrix());
    os << "\nlightlike vector v1 = ";
    {
        std::ostringstream tmp;
        tmp << e.lightlike;
        os << tmp.str() << "\n";
    }
    for (size_t i = 0; i < e.matrices.size(); ++i) {
        os << "\nPhi_hat(" << e.generator_names[i] << ") =\n";
        print_matrix(os, e.matrices[i]);
    }
    os << "\nverification:\n";
    for (const VerificationCheck& c : report.verification.checks) {
        os << "  [" << (c.passed ? style.pass() : style.fail()) << "] " << c.name << "\n";
        if (!c.passed && !c.witness.empty()) os << "         " << c.witness << "\n";
    }
    if (report.verification.passed()) {
        os << "all checks passed\n";
    }
}

int cmd_embed(const std::string& source, const std::string& seed_path, const std::string& out_path,
              const std::string& format, const VerifyOptions& options, const OutputStyle& style) {
    const CrystalGroupSpec input = load_spec(source);

    std::optional<SymmetricForm> seed;
    if (!seed_path.empty()) {
        const RMatrix m = parse_matrix(read_file(seed_path));
        seed = SymmetricForm(m);
        if (!is_positive_definite(*seed)) throw ValidationError("seed form is not positive definite");
    }

    CrystalGroupSpec spec = input;
    if (spec.mode == SpecMode::Abstract) spec = solve_translation_parts(spec);

    EmbeddingResult result;
    try {
        result = embed_pipeline(spec, seed);
    } catch (const ValidationError&) {
        throw; // bad input data: exit 2 via the outer handler
    } catch (const Error& e) {
        std::cerr << "embedding failed: " << e.what() << "\n";
        return kExitVerificationFailure;
    }

    const VerificationReport verification = full_report(result, spec, options);
    const Report report{spec, result, verification, {}};

    if (format == "json") {
        std::cout << serialize_report(report);
    } else {
        print_report_text(std::cout, report, style);
    }
    if (!out_path.empty()) write_file(out_path, serialize_report(report));

    if (!verification.passed()) {
        std::cerr << "verification failed: " << verification.first_failure() << "\n";
        return kExitVerificationFailure;
    }
    return kExitOk;
}

int cmd_verify(const std::string& report_path, const VerifyOptions& options, const OutputStyle& style) {
    const Report report = parse_report(read_file(report_path));
    const VerificationReport fresh = full_report(report.embedding, report.group, options);
    for (const VerificationCheck& c : fresh.checks) {
        std::cout << "[" << (c.passed ? style.pass() : style.fail()) << "] " << c.name << "\n";
        if (!c.passed && !c.witness.empty()) std::cout << "       " << c.witness << "\n";
    }
    if (!fresh.passed()) {
        std::cerr << "verification failed: " << fresh.first_failure() << "\n";
        return kExitVerificationFailure;
    }
    std::cout << "all checks passed\n";
    return kExitOk;
}

int cmd_separate(const std::string& report_path, const std::string& element, long p,
                 const std::string& out_path, const OutputStyle& style) {
    const Report report = parse_report(read_file(report_path));
    const EmbeddingResult& result = report.embedding;

    RMatrix gamma;
    if (std::filesystem::exists(element)) {
        gamma = parse_matrix(read_file(element));
    } else {
        const Word w = Word::parse(element, result.generator_names);
        gamma = result.image_of(w);
    }

    const TranslationSubgroupTp tp = build_Tp(result, p);
    const SeparationOutcome outcome = separate(gamma, tp, result);

    switch (outcome.kind) {
        case SeparationOutcome::Kind::Member:
            std::cout << "member of T_" << p << ": " << outcome.detail << "\n";
            break;
        case SeparationOutcome::Kind::OutsideStabilizer:
            std::cout << "outside-stabilizer: " << outcome.detail << "\n";
            break;
        case SeparationOutcome::Kind::Separated: {
            const SeparationWitness& w = *outcome.witness;
            std::cout << "separated from T_" << p << " [" << style.pass() << "]\n";
            std::cout << "  case:    " << to_string(w.case_tag) << "\n";
            std::cout << "  modulus: " << to_string(w.modulus) << "\n";
            std::cout << "  " << w.detail << "\n";
            std::cout << "  T_p image mod " << to_string(w.modulus) << " has order " << w.image_order
                      << "; the element's reduction is not in it\n";
            break;
        }
    }

    if (!out_path.empty()) {
        Report updated = report;
        updated.witness_notes.push_back(serialize_witness(outcome, element, p));
        write_file(out_path, serialize_report(updated));
    }
    return kExitOk;
}

int cmd_catalog_list() {
    for (const std::string& name : catalog_names()) std::cout << name << "\n";
    return kExitOk;
}

int cmd_catalog_show(const std::string& name, const std::string& format) {
    const CrystalGroupSpec spec = catalog_lookup(name);
    if (format == "json") {
        std::cout << serialize_group(spec);
        return kExitOk;
    }
    std::cout << "name: " << name << "\ndim: " << spec.dim << "\ngenerators:\n";
    for (const GeneratorSpec& g : spec.generators) {
        std::cout << "  " << g.name << ": holonomy\n";
        print_matrix(std::cout, g.holonomy, "    ");
        if (g.translation) {
            std::ostringstream tmp;
            tmp << *g.translation;
            std::cout << "    translation " << tmp.str() << "\n";
        }
    }
    const std::vector<std::string> names = spec.generator_names();
    std::cout << "relators:\n";
    for (const Word& w : spec.relators) std::cout << "  " << w.str(names) << "\n";
    std::cout << "mu_words:\n";
    for (const Word& w : spec.mu_words) std::cout << "  " << w.str(names) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact integral cusp embeddings of flat-manifold groups"};
    app.set_version_flag("--version", "flatcusp 0.1.0");
    app.require_subcommand(1);

    OutputStyle style;
    app.add_flag("--plain", style.plain, "disable colored output");

    VerifyOptions verify_options;

    // embed
    auto* embed = app.add_subcommand("embed", "build and verify an embedding");
    std::string embed_source, seed_path, embed_out, embed_format = "text";
    embed->add_option("input", embed_source, "group file or catalog:<name>")->required();
    embed->add_option("--seed-form", seed_path, "positive definite seed form (JSON matrix file)");
    embed->add_option("--out", embed_out, "write the JSON report here");
    embed->add_option("--format", embed_format, "stdout format")->check(CLI::IsMember({"json", "text"}));
    embed->add_option("--words", verify_options.random_words, "random words to verify");
    embed->add_option("--word-length", verify_options.max_word_length, "max random word length");
    embed->add_option("--seed", verify_options.seed, "random word seed");

    // separate
    auto* separate_cmd = app.add_subcommand("separate", "congruence-separate an element from T_p");
    std::string report_path, element, separate_out;
    long p = 2;
    separate_cmd->add_option("report", report_path, "embedding report (JSON)")->required();
    separate_cmd->add_option("--element", element, "word over the generators, or a JSON matrix file")->required();
    separate_cmd->add_option("--p", p, "translation scale p of T_p")->required();
    separate_cmd->add_option("--out", separate_out, "write an updated report with the witness attached");

    // catalog
    auto* catalog = app.add_subcommand("catalog", "built-in groups");
    auto* catalog_list = catalog->add_subcommand("list", "list catalog entries");
    auto* catalog_show = catalog->add_subcommand("show", "print one entry");
    std::string catalog_name, catalog_format = "text";
    catalog_show->add_option("name", catalog_name, "entry name")->required();
    catalog_show->add_option("--format", catalog_format, "output format")->check(CLI::IsMember({"json", "text"}));
    catalog->require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "re-verify a report from its serialized data alone");
    std::string verify_path;
    verify->add_option("report", verify_path, "embedding report (JSON)")->required();
    verify->add_option("--words", verify_options.random_words, "random words to verify");
    verify->add_option("--word-length", verify_options.max_word_length, "max random word length");
    verify->add_option("--seed", verify_options.seed, "random word seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*embed) {
            return cmd_embed(embed_source, seed_path, embed_out, embed_format, verify_options, style);
        }
        if (*separate_cmd) {
            if (p < 1) throw ValidationError("--p must be positive");
            return cmd_separate(report_path, element, p, separate_out, style);
        }
        if (*catalog_list) return cmd_catalog_list();
        if (*catalog_show) return cmd_catalog_show(catalog_name, catalog_format);
        if (*verify) return cmd_verify(verify_path, verify_options, style);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
    return kExitInputError;
}
