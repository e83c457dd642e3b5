#pragma once

// On-disk formats. Group files and reports are JSON with every number
// serialized as an exact "p/q" or integer string; keys are emitted sorted so
// identical inputs produce byte-identical documents.

#include "flatcusp/congruence.hpp"
#include "flatcusp/crystal.hpp"
#include "flatcusp/embed.hpp"
#include "flatcusp/verify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flatcusp {

// Parse errors carry the JSON path (and for syntax errors, the line) of the
// offending element.
CrystalGroupSpec parse_group_file(const std::string& text);
std::string serialize_group(const CrystalGroupSpec& spec);

struct Report {
    CrystalGroupSpec group;           // explicit-mode spec the embedding was built from
    EmbeddingResult embedding;
    VerificationReport verification;
    std::vector<std::string> witness_notes; // serialized separation witnesses, if any
};

std::string serialize_report(const Report& report);
Report parse_report(const std::string& text);

std::string serialize_witness(const SeparationOutcome& outcome, const std::string& element_label,
                              const Integer& p);

// Rational matrix/vector helpers shared by the CLI and the python bindings.
std::string serialize_matrix(const RMatrix& m);
RMatrix parse_matrix(const std::string& text);

} // namespace flatcusp
