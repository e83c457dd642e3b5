#include "flatcusp/crystal.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace flatcusp {

// ---------------------------------------------------------------- affine

AffineIsometry AffineIsometry::identity(int dim) {
    return {RMatrix::identity(dim), RVector(dim)};
}

bool AffineIsometry::is_identity() const {
    return holonomy.is_identity() && translation.is_zero();
}

AffineIsometry compose(const AffineIsometry& a, const AffineIsometry& b) {
    return {a.holonomy * b.holonomy, a.translation + a.holonomy * b.translation};
}

AffineIsometry inverse(const AffineIsometry& a) {
    RMatrix inv = inverse(a.holonomy);
    return {inv, -(inv * a.translation)};
}

// ---------------------------------------------------------------- words

namespace {

bool valid_generator_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

} // namespace

Word Word::parse(const std::string& text, const std::vector<std::string>& generator_names) {
    Word w;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        int exponent = 1;
        std::string name = token;
        if (const size_t caret = token.find('^'); caret != std::string::npos) {
            name = token.substr(0, caret);
            const std::string suffix = token.substr(caret);
            if (suffix != "^-1") {
                throw ParseError("bad exponent '" + suffix + "' (only ^-1 is allowed)", token);
            }
            exponent = -1;
        }
        const auto it = std::find(generator_names.begin(), generator_names.end(), name);
        if (it == generator_names.end()) {
            throw ParseError("unknown generator '" + name + "'", token);
        }
        w.letters.push_back({static_cast<int>(it - generator_names.begin()), exponent});
    }
    return w;
}

std::string Word::str(const std::vector<std::string>& generator_names) const {
    std::string out;
    for (const WordLetter& l : letters) {
        if (!out.empty()) out += ' ';
        out += generator_names[static_cast<size_t>(l.generator)];
        if (l.exponent < 0) out += "^-1";
    }
    return out;
}

Word Word::concat(const Word& other) const {
    Word w = *this;
    w.letters.insert(w.letters.end(), other.letters.begin(), other.letters.end());
    return w;
}

AffineIsometry evaluate_word(const Word& w, const std::vector<AffineIsometry>& images) {
    if (images.empty()) throw ValidationError("evaluate_word: no generator images");
    AffineIsometry acc = AffineIsometry::identity(images[0].holonomy.rows());
    for (const WordLetter& l : w.letters) {
        if (l.generator < 0 || l.generator >= static_cast<int>(images.size())) {
            throw ValidationError("evaluate_word: generator index out of range");
        }
        const AffineIsometry& g = images[static_cast<size_t>(l.generator)];
        acc = compose(acc, l.exponent > 0 ? g : inverse(g));
    }
    return acc;
}

RMatrix evaluate_word(const Word& w, const std::vector<RMatrix>& images) {
    if (images.empty()) throw ValidationError("evaluate_word: no generator images");
    RMatrix acc = RMatrix::identity(images[0].rows());
    for (const WordLetter& l : w.letters) {
        if (l.generator < 0 || l.generator >= static_cast<int>(images.size())) {
            throw ValidationError("evaluate_word: generator index out of range");
        }
        const RMatrix& g = images[static_cast<size_t>(l.generator)];
        acc = acc * (l.exponent > 0 ? g : inverse(g));
    }
    return acc;
}

// ---------------------------------------------------------------- spec

AffineIsometry GeneratorSpec::affine() const {
    if (!translation) throw ValidationError("generator '" + name + "' has no translation part");
    return {holonomy, *translation};
}

int CrystalGroupSpec::generator_index(const std::string& name) const {
    for (size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<std::string> CrystalGroupSpec::generator_names() const {
    std::vector<std::string> names;
    names.reserve(generators.size());
    for (const GeneratorSpec& g : generators) names.push_back(g.name);
    return names;
}

std::vector<AffineIsometry> CrystalGroupSpec::affine_generators() const {
    std::vector<AffineIsometry> out;
    out.reserve(generators.size());
    for (const GeneratorSpec& g : generators) out.push_back(g.affine());
    return out;
}

std::vector<RMatrix> CrystalGroupSpec::holonomy_generators() const {
    std::vector<RMatrix> out;
    out.reserve(generators.size());
    for (const GeneratorSpec& g : generators) out.push_back(g.holonomy);
    return out;
}

void validate_structure(const CrystalGroupSpec& spec) {
    if (spec.dim < 1) throw ValidationError("dim must be positive");
    if (spec.generators.empty()) throw ValidationError("no generators");

    std::set<std::string> seen;
    for (const GeneratorSpec& g : spec.generators) {
        if (!valid_generator_name(g.name)) throw ValidationError("bad generator name '" + g.name + "'");
        if (!seen.insert(g.name).second) throw ValidationError("duplicate generator name '" + g.name + "'");
        if (g.holonomy.rows() != spec.dim || g.holonomy.cols() != spec.dim) {
            throw ValidationError("generator '" + g.name + "': holonomy is not " + std::to_string(spec.dim) +
                                  "x" + std::to_string(spec.dim));
        }
        if (!g.holonomy.is_integral()) {
            throw ValidationError("generator '" + g.name + "': holonomy not integral (lattice-adapted coordinates required)");
        }
        const Rational det = determinant(g.holonomy);
        if (det != 1 && det != -1) {
            throw ValidationError("generator '" + g.name + "': holonomy determinant is " + to_string(det) +
                                  ", expected ±1");
        }
        if (spec.mode == SpecMode::Explicit) {
            if (!g.translation) throw ValidationError("generator '" + g.name + "': missing translation (explicit mode)");
            if (g.translation->dim() != spec.dim) {
                throw ValidationError("generator '" + g.name + "': translation has wrong dimension");
            }
        }
    }
    const auto check_word = [&](const Word& w, const char* what) {
        for (const WordLetter& l : w.letters) {
            if (l.generator < 0 || l.generator >= static_cast<int>(spec.generators.size())) {
                throw ValidationError(std::string(what) + ": generator index out of range");
            }
            if (l.exponent != 1 && l.exponent != -1) {
                throw ValidationError(std::string(what) + ": exponent must be ±1");
            }
        }
    };
    for (const Word& w : spec.relators) check_word(w, "relator");
    if (static_cast<int>(spec.mu_words.size()) != spec.dim) {
        throw ValidationError("expected " + std::to_string(spec.dim) + " mu_words, got " +
                              std::to_string(spec.mu_words.size()));
    }
    for (const Word& w : spec.mu_words) check_word(w, "mu_word");
}

// ---------------------------------------------------------------- holonomy

HolonomyGroup holonomy_closure(const CrystalGroupSpec& spec, size_t max_order) {
    for (const GeneratorSpec& g : spec.generators) {
        if (!g.holonomy.is_integral()) {
            throw ValidationError("holonomy_closure: non-integral holonomy for '" + g.name + "'");
        }
    }
    std::set<RMatrix, RMatrixLess> elements;
    std::deque<RMatrix> frontier;
    elements.insert(RMatrix::identity(spec.dim));
    frontier.push_back(RMatrix::identity(spec.dim));
    while (!frontier.empty()) {
        RMatrix current = std::move(frontier.front());
        frontier.pop_front();
        for (const GeneratorSpec& g : spec.generators) {
            RMatrix next = current * g.holonomy;
            if (elements.insert(next).second) {
                if (elements.size() > max_order) {
                    throw EnumerationLimitError(
                        "holonomy not verified finite within " + std::to_string(max_order) +
                        " elements — input is not crystallographic in these coordinates");
                }
                frontier.push_back(std::move(next));
            }
        }
    }
    HolonomyGroup group;
    group.elements.assign(elements.begin(), elements.end());
    group.generator_images = spec.holonomy_generators();
    return group;
}

// ---------------------------------------------------------------- axioms

bool AxiomReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckItem& c) { return c.passed; });
}

std::string AxiomReport::first_failure() const {
    for (const CheckItem& c : checks) {
        if (!c.passed) return c.name + ": " + c.detail;
    }
    return {};
}

AxiomReport check_group_axioms(const CrystalGroupSpec& spec) {
    if (spec.mode != SpecMode::Explicit) throw ValidationError("check_group_axioms: explicit mode required");
    validate_structure(spec);

    AxiomReport report;
    const std::vector<AffineIsometry> gens = spec.affine_generators();
    const std::vector<RMatrix> holos = spec.holonomy_generators();
    const std::vector<std::string> names = spec.generator_names();

    for (size_t i = 0; i < spec.relators.size(); ++i) {
        const Word& w = spec.relators[i];
        const AffineIsometry value = evaluate_word(w, gens);
        CheckItem item{"relator '" + w.str(names) + "'", value.is_identity(), ""};
        if (!item.passed) {
            std::ostringstream os;
            os << "evaluates to holonomy\n" << value.holonomy << "translation " << value.translation;
            item.detail = os.str();
        }
        report.checks.push_back(std::move(item));

        const RMatrix holo_value = evaluate_word(w, holos);
        report.checks.push_back({"holonomy kills relator '" + w.str(names) + "'", holo_value.is_identity(), ""});
    }

    std::vector<AffineIsometry> mus;
    for (int i = 0; i < static_cast<int>(spec.mu_words.size()); ++i) {
        const Word& w = spec.mu_words[static_cast<size_t>(i)];
        const AffineIsometry value = evaluate_word(w, gens);
        mus.push_back(value);
        const AffineIsometry expected{RMatrix::identity(spec.dim), RVector::unit(spec.dim, i)};
        CheckItem item{"mu_word '" + w.str(names) + "' = translation by e_" + std::to_string(i + 1),
                       value == expected, ""};
        if (!item.passed) {
            std::ostringstream os;
            os << "evaluates to holonomy\n" << value.holonomy << "translation " << value.translation;
            item.detail = os.str();
        }
        report.checks.push_back(std::move(item));
    }

    bool commute = true;
    std::string commute_detail;
    for (size_t i = 0; i < mus.size() && commute; ++i) {
        for (size_t j = i + 1; j < mus.size() && commute; ++j) {
            if (compose(mus[i], mus[j]) != compose(mus[j], mus[i])) {
                commute = false;
                commute_detail = "mu_" + std::to_string(i + 1) + " and mu_" + std::to_string(j + 1);
            }
        }
    }
    report.checks.push_back({"mu translations commute pairwise", commute, commute_detail});
    return report;
}

// ---------------------------------------------------------------- torsion

namespace {

// Shortest-word coset representatives, one per holonomy class, BFS over
// generator symbols in a fixed order for determinism.
std::map<RMatrix, Word, RMatrixLess> coset_representatives(const CrystalGroupSpec& spec,
                                                           const HolonomyGroup& holonomy) {
    std::map<RMatrix, Word, RMatrixLess> reps;
    std::deque<std::pair<RMatrix, Word>> frontier;
    reps.emplace(RMatrix::identity(spec.dim), Word{});
    frontier.emplace_back(RMatrix::identity(spec.dim), Word{});
    const std::vector<RMatrix> holos = spec.holonomy_generators();
    while (!frontier.empty() && reps.size() < holonomy.order()) {
        auto [mat, word] = std::move(frontier.front());
        frontier.pop_front();
        for (int gi = 0; gi < static_cast<int>(holos.size()); ++gi) {
            for (int e : {1, -1}) {
                const RMatrix next = e > 0 ? mat * holos[static_cast<size_t>(gi)]
                                           : mat * inverse(holos[static_cast<size_t>(gi)]);
                if (reps.count(next)) continue;
                Word w = word;
                w.letters.push_back({gi, e});
                reps.emplace(next, w);
                frontier.emplace_back(next, std::move(w));
            }
        }
    }
    return reps;
}

} // namespace

TorsionResult check_torsion_free(const CrystalGroupSpec& spec) {
    if (spec.mode != SpecMode::Explicit) throw ValidationError("check_torsion_free: explicit mode required");
    const HolonomyGroup holonomy = holonomy_closure(spec);
    const std::vector<AffineIsometry> gens = spec.affine_generators();
    const auto reps = coset_representatives(spec, holonomy);

    for (const auto& [h, word] : reps) {
        if (h.is_identity()) continue; // nontrivial translations never have fixed points
        const AffineIsometry g = evaluate_word(word, gens);

        // Some lattice translate of g fixes a point iff -t_g lies in
        // Im(theta - I) + Z^n. Project onto the cokernel of (theta - I): with
        // Y a basis of the left null space, the condition becomes
        // Y*lambda = -Y*t_g solvable for integral lambda.
        const RMatrix m = g.holonomy - RMatrix::identity(spec.dim);
        const std::vector<RVector> left_null = nullspace(m.transpose());

        RVector lambda(spec.dim); // integral translation to apply
        bool has_fixed_point = true;
        if (!left_null.empty()) {
            const int k = static_cast<int>(left_null.size());
            RMatrix y(k, spec.dim);
            RVector rhs(k);
            for (int i = 0; i < k; ++i) {
                Rational acc = 0;
                for (int j = 0; j < spec.dim; ++j) {
                    y(i, j) = left_null[static_cast<size_t>(i)][j];
                    acc += y(i, j) * g.translation[j];
                }
                rhs[i] = -acc;
            }
            // clear denominators so the membership test is integral
            Integer d = denominator_lcm(y);
            d = lcm(d, denominator_lcm(rhs));
            RMatrix yi(k, spec.dim);
            RVector ri(k);
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < spec.dim; ++j) yi(i, j) = Rational(d) * y(i, j);
                ri[i] = Rational(d) * rhs[i];
            }
            const std::optional<RVector> solution = solve_integer(yi, ri);
            if (!solution) {
                has_fixed_point = false;
            } else {
                lambda = *solution;
            }
        }
        // left_null empty means theta - I is surjective: always a fixed point.

        if (has_fixed_point) {
            const AffineIsometry torsion{g.holonomy, g.translation + lambda};
            const LinearSolution fix = solve_linear(m, -torsion.translation);
            TorsionCertificate cert{word, torsion, fix.consistent ? fix.particular : RVector(spec.dim)};
            return {false, std::move(cert)};
        }
    }
    return {true, std::nullopt};
}

// ---------------------------------------------------------------- abstract solver

TranslationSolution solve_translation_parts_full(const CrystalGroupSpec& spec) {
    validate_structure(spec);
    const int n = spec.dim;
    const int p = static_cast<int>(spec.generators.size());
    const std::vector<RMatrix> holos = spec.holonomy_generators();
    const std::vector<std::string> names = spec.generator_names();

    // Holonomy must already be a homomorphism killing relators and mu_words.
    for (const Word& w : spec.relators) {
        if (!evaluate_word(w, holos).is_identity()) {
            throw InconsistentSystemError("holonomy does not kill relator '" + w.str(names) + "'");
        }
    }
    for (const Word& w : spec.mu_words) {
        if (!evaluate_word(w, holos).is_identity()) {
            throw InconsistentSystemError("mu_word '" + w.str(names) + "' has nontrivial holonomy");
        }
    }

    // The translation part of a word is a signed sum of prefix-holonomy
    // products applied to generator translations; each equation row is linear
    // in the stacked unknown (t_1, ..., t_p).
    struct Equation {
        std::vector<RMatrix> coeff; // per generator, n x n
        RVector rhs;
    };
    std::vector<Equation> equations;

    const auto expand = [&](const Word& w, const RVector& target) {
        Equation eq;
        eq.coeff.assign(static_cast<size_t>(p), RMatrix(n, n));
        eq.rhs = target;
        RMatrix prefix = RMatrix::identity(n);
        for (const WordLetter& l : w.letters) {
            const RMatrix& h = holos[static_cast<size_t>(l.generator)];
            if (l.exponent > 0) {
                eq.coeff[static_cast<size_t>(l.generator)] = eq.coeff[static_cast<size_t>(l.generator)] + prefix;
                prefix = prefix * h;
            } else {
                const RMatrix hinv = inverse(h);
                eq.coeff[static_cast<size_t>(l.generator)] =
                    eq.coeff[static_cast<size_t>(l.generator)] - prefix * hinv;
                prefix = prefix * hinv;
            }
        }
        equations.push_back(std::move(eq));
    };

    for (const Word& w : spec.relators) expand(w, RVector(n));
    for (int j = 0; j < n; ++j) expand(spec.mu_words[static_cast<size_t>(j)], RVector::unit(n, j));

    const int rows = n * static_cast<int>(equations.size());
    const int cols = n * p;
    RMatrix a(rows, cols);
    RVector b(rows);
    for (int e = 0; e < static_cast<int>(equations.size()); ++e) {
        const Equation& eq = equations[static_cast<size_t>(e)];
        for (int i = 0; i < n; ++i) {
            b[e * n + i] = eq.rhs[i];
            for (int g = 0; g < p; ++g)
                for (int j = 0; j < n; ++j) a(e * n + i, g * n + j) = eq.coeff[static_cast<size_t>(g)](i, j);
        }
    }

    const LinearSolution sol = solve_linear(a, b);
    if (!sol.consistent) {
        throw InconsistentSystemError(
            "inconsistent system — spec does not describe a Bieberbach group with this holonomy/lattice data");
    }

    TranslationSolution out;
    out.spec = spec;
    out.spec.mode = SpecMode::Explicit;
    for (int g = 0; g < p; ++g) {
        RVector t(n);
        for (int i = 0; i < n; ++i) t[i] = sol.particular[g * n + i];
        out.spec.generators[static_cast<size_t>(g)].translation = std::move(t);
    }
    out.free_parameters = sol.nullspace.size();
    out.nullspace = sol.nullspace;
    return out;
}

CrystalGroupSpec solve_translation_parts(const CrystalGroupSpec& spec) {
    return solve_translation_parts_full(spec).spec;
}

} // namespace flatcusp
