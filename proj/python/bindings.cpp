// Python bindings for the embedding pipeline, verification and congruence
// machinery. Exact values cross the boundary as python ints / Fractions so
// nothing is ever rounded.

#include "flatcusp/congruence.hpp"
#include "flatcusp/crystal.hpp"
#include "flatcusp/embed.hpp"
#include "flatcusp/io.hpp"
#include "flatcusp/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace py = pybind11;
using namespace flatcusp;

namespace {

py::object py_int(const Integer& z) {
    return py::module_::import("builtins").attr("int")(z.get_str());
}

py::object py_rational(const Rational& q) {
    if (is_integer(q)) return py_int(q.get_num());
    return py::module_::import("fractions").attr("Fraction")(to_string(q));
}

py::list vector_to_py(const RVector& v) {
    py::list out;
    for (int i = 0; i < v.dim(); ++i) out.append(py_rational(v[i]));
    return out;
}

py::list matrix_to_py(const RMatrix& m) {
    py::list out;
    for (int i = 0; i < m.rows(); ++i) {
        py::list row;
        for (int j = 0; j < m.cols(); ++j) row.append(py_rational(m(i, j)));
        out.append(std::move(row));
    }
    return out;
}

Rational rational_from_py(const py::handle& x) {
    return parse_rational(py::str(x).cast<std::string>());
}

RMatrix matrix_from_py(const py::handle& rows) {
    std::vector<std::vector<Rational>> data;
    for (const py::handle& row : rows) {
        std::vector<Rational> r;
        for (const py::handle& x : row) r.push_back(rational_from_py(x));
        data.push_back(std::move(r));
    }
    return RMatrix::from_rows(data);
}

py::dict check_to_py(const std::string& name, bool passed, const std::string& witness) {
    py::dict d;
    d["name"] = name;
    d["passed"] = passed;
    if (!witness.empty()) d["witness"] = witness;
    return d;
}

py::dict report_to_py(const VerificationReport& report) {
    py::list checks;
    for (const VerificationCheck& c : report.checks) checks.append(check_to_py(c.name, c.passed, c.witness));
    py::dict d;
    d["passed"] = report.passed();
    d["checks"] = std::move(checks);
    return d;
}

py::dict outcome_to_py(const SeparationOutcome& outcome) {
    py::dict d;
    switch (outcome.kind) {
        case SeparationOutcome::Kind::Member: d["outcome"] = "member"; break;
        case SeparationOutcome::Kind::Separated: d["outcome"] = "separated"; break;
        case SeparationOutcome::Kind::OutsideStabilizer: d["outcome"] = "outside-stabilizer"; break;
    }
    if (!outcome.detail.empty()) d["detail"] = outcome.detail;
    if (outcome.witness) {
        const SeparationWitness& w = *outcome.witness;
        py::dict wd;
        wd["case"] = to_string(w.case_tag);
        wd["modulus"] = py_int(w.modulus);
        wd["image_order"] = w.image_order;
        wd["detail"] = w.detail;
        py::list gm;
        for (int i = 0; i < w.gamma_mod.rows(); ++i) {
            py::list row;
            for (int j = 0; j < w.gamma_mod.cols(); ++j) row.append(w.gamma_mod(i, j));
            gm.append(std::move(row));
        }
        wd["gamma_mod"] = std::move(gm);
        d["witness"] = std::move(wd);
    }
    return d;
}

RMatrix element_from_py(const EmbeddingResult& result, const py::handle& element) {
    if (py::isinstance<py::str>(element)) {
        return result.image_of(Word::parse(element.cast<std::string>(), result.generator_names));
    }
    return matrix_from_py(element);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact integral cusp embeddings of flat-manifold groups";

    py::register_exception<ParseError>(m, "GroupParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "GroupValidationError", PyExc_ValueError);
    py::register_exception<InconsistentSystemError>(m, "InconsistentSystemError", PyExc_ValueError);

    py::class_<CrystalGroupSpec>(m, "GroupSpec")
        .def_readonly("dim", &CrystalGroupSpec::dim)
        .def_property_readonly(
            "mode",
            [](const CrystalGroupSpec& s) { return s.mode == SpecMode::Explicit ? "explicit" : "abstract"; })
        .def_property_readonly("generator_names", &CrystalGroupSpec::generator_names)
        .def_property_readonly("relators",
                               [](const CrystalGroupSpec& s) {
                                   std::vector<std::string> out;
                                   for (const Word& w : s.relators) out.push_back(w.str(s.generator_names()));
                                   return out;
                               })
        .def_property_readonly("mu_words",
                               [](const CrystalGroupSpec& s) {
                                   std::vector<std::string> out;
                                   for (const Word& w : s.mu_words) out.push_back(w.str(s.generator_names()));
                                   return out;
                               })
        .def("holonomy",
             [](const CrystalGroupSpec& s, const std::string& name) {
                 const int i = s.generator_index(name);
                 if (i < 0) throw ValidationError("unknown generator '" + name + "'");
                 return matrix_to_py(s.generators[static_cast<size_t>(i)].holonomy);
             })
        .def("translation",
             [](const CrystalGroupSpec& s, const std::string& name) -> py::object {
                 const int i = s.generator_index(name);
                 if (i < 0) throw ValidationError("unknown generator '" + name + "'");
                 const auto& t = s.generators[static_cast<size_t>(i)].translation;
                 if (!t) return py::none();
                 return vector_to_py(*t);
             })
        .def("to_json", &serialize_group)
        .def_static("from_json", &parse_group_file, py::arg("text"))
        .def("__eq__", [](const CrystalGroupSpec& a, const CrystalGroupSpec& b) { return a == b; })
        .def("__repr__", [](const CrystalGroupSpec& s) {
            std::ostringstream os;
            os << "GroupSpec(dim=" << s.dim << ", generators=" << s.generators.size() << ")";
            return os.str();
        });

    py::class_<EmbeddingResult>(m, "Embedding")
        .def_readonly("dim", &EmbeddingResult::dim)
        .def_readonly("generator_names", &EmbeddingResult::generator_names)
        .def_property_readonly("c", [](const EmbeddingResult& e) { return py_int(e.scale_c); })
        .def_property_readonly("K", [](const EmbeddingResult& e) { return py_int(e.scale_k); })
        .def_property_readonly("form", [](const EmbeddingResult& e) { return matrix_to_py(e.form.matrix()); })
        .def_property_readonly(
            "invariant_form",
            [](const EmbeddingResult& e) { return matrix_to_py(e.invariant_form.matrix()); })
        .def_property_readonly("v1", [](const EmbeddingResult& e) { return vector_to_py(e.lightlike); })
        .def_property_readonly("mu_hat",
                               [](const EmbeddingResult& e) {
                                   py::list out;
                                   for (const RMatrix& m_ : e.mu_hat) out.append(matrix_to_py(m_));
                                   return out;
                               })
        .def("matrix",
             [](const EmbeddingResult& e, const std::string& name) {
                 for (size_t i = 0; i < e.generator_names.size(); ++i) {
                     if (e.generator_names[i] == name) return matrix_to_py(e.matrices[i]);
                 }
                 throw ValidationError("unknown generator '" + name + "'");
             })
        .def("matrices",
             [](const EmbeddingResult& e) {
                 py::dict out;
                 for (size_t i = 0; i < e.generator_names.size(); ++i) {
                     out[py::str(e.generator_names[i])] = matrix_to_py(e.matrices[i]);
                 }
                 return out;
             })
        .def("image_of",
             [](const EmbeddingResult& e, const std::string& word) {
                 return matrix_to_py(e.image_of(Word::parse(word, e.generator_names)));
             })
        .def("__repr__", [](const EmbeddingResult& e) {
            std::ostringstream os;
            os << "Embedding(dim=" << e.dim << ", c=" << to_string(e.scale_c) << ", K=" << to_string(e.scale_k)
               << ")";
            return os.str();
        });

    m.def("catalog_list", &catalog_names, "names of the built-in groups");
    m.def("catalog_lookup", &catalog_lookup, py::arg("name"));

    m.def(
        "check_group_axioms",
        [](const CrystalGroupSpec& spec) {
            const AxiomReport report = check_group_axioms(spec);
            py::list checks;
            for (const CheckItem& c : report.checks) checks.append(check_to_py(c.name, c.passed, c.detail));
            py::dict d;
            d["passed"] = report.all_passed();
            d["checks"] = std::move(checks);
            return d;
        },
        py::arg("spec"));

    m.def(
        "check_torsion_free",
        [](const CrystalGroupSpec& spec) {
            const TorsionResult result = check_torsion_free(spec);
            py::dict d;
            d["torsion_free"] = result.torsion_free;
            if (result.certificate) {
                py::dict cert;
                cert["word"] = result.certificate->word.str(spec.generator_names());
                cert["holonomy"] = matrix_to_py(result.certificate->element.holonomy);
                cert["translation"] = vector_to_py(result.certificate->element.translation);
                cert["fixed_point"] = vector_to_py(result.certificate->fixed_point);
                d["certificate"] = std::move(cert);
            }
            return d;
        },
        py::arg("spec"));

    m.def("solve_translation_parts", &solve_translation_parts, py::arg("spec"),
          "abstract-mode spec -> explicit-mode spec with solved translations");

    m.def(
        "embed",
        [](const CrystalGroupSpec& spec, const py::object& seed) {
            std::optional<SymmetricForm> seed_form;
            if (!seed.is_none()) seed_form = SymmetricForm(matrix_from_py(seed));
            return embed_pipeline(spec, seed_form);
        },
        py::arg("spec"), py::arg("seed") = py::none(),
        "run the full pipeline; raises on any verification failure");

    m.def(
        "verify",
        [](const EmbeddingResult& result, const CrystalGroupSpec& spec, int words, int max_word_length,
           std::uint64_t seed) {
            VerifyOptions options;
            options.random_words = words;
            options.max_word_length = max_word_length;
            options.seed = seed;
            return report_to_py(full_report(result, spec, options));
        },
        py::arg("embedding"), py::arg("spec"), py::arg("words") = 100, py::arg("max_word_length") = 8,
        py::arg("seed") = VerifyOptions{}.seed);

    m.def(
        "separate",
        [](const EmbeddingResult& result, const py::handle& element, long p) {
            const RMatrix gamma = element_from_py(result, element);
            return outcome_to_py(separate(gamma, build_Tp(result, p), result));
        },
        py::arg("embedding"), py::arg("element"), py::arg("p"),
        "separate a word or matrix from T_p; returns the witness data");

    m.def(
        "demo_theorem_closure",
        [](const EmbeddingResult& result, long p) {
            const ClosureDemo demo = demo_theorem_closure(result, p);
            py::dict d;
            d["p"] = py_int(demo.p);
            d["r"] = py_int(demo.r);
            d["group_translation_lattice"] = matrix_to_py(demo.gamma_lattice);
            d["intersection_lattice"] = matrix_to_py(demo.intersection_lattice);
            d["sample_translation"] = vector_to_py(demo.sample_translation);
            d["sample"] = outcome_to_py(demo.sample_outcome);
            return d;
        },
        py::arg("embedding"), py::arg("p"));

    m.def(
        "report_json",
        [](const CrystalGroupSpec& spec, const EmbeddingResult& result) {
            return serialize_report({spec, result, full_report(result, spec), {}});
        },
        py::arg("spec"), py::arg("embedding"), "canonical JSON report (byte-deterministic)");

    m.def(
        "load_report",
        [](const std::string& text) {
            const Report report = parse_report(text);
            return py::make_tuple(report.group, report.embedding);
        },
        py::arg("text"), "parse a report back into (GroupSpec, Embedding)");

    m.def("parse_group_file", &parse_group_file, py::arg("text"));
}
