#include "flatcusp/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace flatcusp {

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerificationCheck& c) { return c.passed; });
}

std::string VerificationReport::first_failure() const {
    for (const VerificationCheck& c : checks) {
        if (!c.passed) return c.name + (c.witness.empty() ? "" : " — " + c.witness);
    }
    return {};
}

bool check_isometry(const RMatrix& x, const SymmetricForm& q) {
    if (!x.is_square() || x.rows() != q.dim()) throw DimensionError("check_isometry: dimension mismatch");
    return x.transpose() * q.matrix() * x == q.matrix();
}

VerificationCheck check_isometry_detail(const std::string& label, const RMatrix& x, const SymmetricForm& q) {
    if (!x.is_square() || x.rows() != q.dim()) throw DimensionError("check_isometry: dimension mismatch");
    const RMatrix lhs = x.transpose() * q.matrix() * x;
    for (int i = 0; i < q.dim(); ++i) {
        for (int j = 0; j < q.dim(); ++j) {
            if (lhs(i, j) != q.matrix()(i, j)) {
                std::ostringstream os;
                os << "entry (" << i + 1 << ", " << j + 1 << "): x^T q x has " << to_string(lhs(i, j))
                   << ", form has " << to_string(q.matrix()(i, j));
                return {label, false, os.str()};
            }
        }
    }
    return {label, true, ""};
}

VerificationCheck check_lightlike_stabilizer(const EmbeddingResult& result) {
    const RVector& v1 = result.lightlike;
    const Rational norm = result.form.apply(v1, v1);
    if (norm != 0) {
        return {"lightlike stabilizer", false, "Q'(v1, v1) = " + to_string(norm) + ", expected 0"};
    }
    for (size_t i = 0; i < result.matrices.size(); ++i) {
        if (result.matrices[i] * v1 != v1) {
            std::ostringstream os;
            os << "generator '" << result.generator_names[i] << "' moves v1";
            return {"lightlike stabilizer", false, os.str()};
        }
    }
    return {"lightlike stabilizer", true, ""};
}

namespace {

bool is_translation_type(const RMatrix& m, int n) {
    // theta block I, zero column above v_g, fixed v1-column and bottom row
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m(i, j) != (i == j ? 1 : 0)) return false;
    for (int i = 0; i < n; ++i)
        if (m(i, n) != 0) return false;
    if (m(n, n) != 1) return false;
    for (int j = 0; j < n + 1; ++j)
        if (m(n + 1, j) != 0) return false;
    return m(n + 1, n + 1) == 1;
}

} // namespace

std::vector<VerificationCheck> check_faithfulness_evidence(const EmbeddingResult& result,
                                                           const CrystalGroupSpec& spec) {
    std::vector<VerificationCheck> checks;
    const std::vector<std::string> names = spec.generator_names();
    const int n = result.dim;

    // tampered input may not even be invertible; an evaluation failure is a
    // failed check with the exception as witness, never a crash
    const auto image_of = [&](const Word& w) -> std::optional<RMatrix> {
        try {
            return result.image_of(w);
        } catch (const Error&) {
            return std::nullopt;
        }
    };

    for (const Word& w : spec.relators) {
        const std::optional<RMatrix> image = image_of(w);
        VerificationCheck c{"relator '" + w.str(names) + "' maps to I", image && image->is_identity(), ""};
        if (!c.passed) {
            std::ostringstream os;
            if (image) {
                os << "image:\n" << *image;
            } else {
                os << "word could not be evaluated (singular generator image)";
            }
            c.witness = os.str();
        }
        checks.push_back(std::move(c));
    }

    // mu images are recomputed from the generator matrices, never taken from
    // the result's stored copies
    std::vector<RMatrix> mus;
    for (size_t i = 0; i < spec.mu_words.size(); ++i) {
        const std::string label = "mu_" + std::to_string(i + 1);
        const std::optional<RMatrix> mu_image = image_of(spec.mu_words[i]);
        if (!mu_image) {
            checks.push_back({label + " is translation-type", false,
                              "word could not be evaluated (singular generator image)"});
            continue;
        }
        const RMatrix& mu = *mu_image;

        VerificationCheck shape{label + " is translation-type", is_translation_type(mu, n), ""};
        if (!shape.passed) {
            std::ostringstream os;
            os << "image:\n" << mu;
            shape.witness = os.str();
        }
        checks.push_back(std::move(shape));

        const RMatrix nil = mu - RMatrix::identity(n + 2);
        const bool unipotent = matrix_power(nil, static_cast<unsigned int>(n + 2)) == RMatrix(n + 2, n + 2);
        checks.push_back({label + " is unipotent", unipotent, unipotent ? "" : "(mu - I)^(n+2) != 0"});
        checks.push_back({label + " has infinite order", !mu.is_identity(), mu.is_identity() ? "image is I" : ""});

        if (i < result.mu_hat.size()) {
            checks.push_back({label + " stored image matches its word", result.mu_hat[i] == mu,
                              result.mu_hat[i] == mu ? "" : "stored mu_hat differs from the recomputed image"});
        }
        mus.push_back(mu);
    }

    bool commute = true;
    std::string witness;
    for (size_t i = 0; i < mus.size() && commute; ++i) {
        for (size_t j = i + 1; j < mus.size() && commute; ++j) {
            if (mus[i] * mus[j] != mus[j] * mus[i]) {
                commute = false;
                witness = "mu_" + std::to_string(i + 1) + " and mu_" + std::to_string(j + 1) + " do not commute";
            }
        }
    }
    checks.push_back({"mu images commute pairwise", commute, witness});
    return checks;
}

VerificationCheck check_rigidity(const SymmetricForm& form, int dim) {
    const int n = dim;
    if (form.dim() != n + 2) throw DimensionError("check_rigidity: form dimension mismatch");

    // An isometry [[I_{n+1}, x], [0, 1]] of Q' = [[B, u], [u^T, s]] requires
    // B x = 0 and x^T B x + 2 u^T x = 0, which given B x = 0 is linear:
    // the solution space is the null space of [B; u^T].
    RMatrix stacked(n + 2, n + 1);
    for (int i = 0; i < n + 1; ++i)
        for (int j = 0; j < n + 1; ++j) stacked(i, j) = form.matrix()(i, j);
    for (int j = 0; j < n + 1; ++j) stacked(n + 1, j) = form.matrix()(j, n + 1);

    const std::vector<RVector> null = nullspace(stacked);
    if (null.empty()) return {"rigidity (identity block forces identity)", true, ""};

    std::ostringstream os;
    os << "nonzero solution x = " << null.front();
    return {"rigidity (identity block forces identity)", false, os.str()};
}

VerificationCheck check_rigidity(const EmbeddingResult& result) {
    return check_rigidity(result.form, result.dim);
}

VerificationReport full_report(const EmbeddingResult& result, const CrystalGroupSpec& spec,
                               const VerifyOptions& options) {
    VerificationReport report;
    const int n = result.dim;

    for (size_t i = 0; i < result.matrices.size(); ++i) {
        const std::string& name = result.generator_names[i];
        const RMatrix& m = result.matrices[i];
        std::string fractional;
        for (int r = 0; r < m.rows() && fractional.empty(); ++r) {
            for (int c = 0; c < m.cols() && fractional.empty(); ++c) {
                if (!is_integer(m(r, c))) {
                    fractional = "entry (" + std::to_string(r + 1) + ", " + std::to_string(c + 1) + ") = " +
                                 to_string(m(r, c));
                }
            }
        }
        report.checks.push_back({"generator '" + name + "' integral", fractional.empty(), fractional});
        const Rational det = determinant(m);
        report.checks.push_back({"generator '" + name + "' determinant ±1", det == 1 || det == -1,
                                 det == 1 || det == -1 ? "" : "det = " + to_string(det)});
        report.checks.push_back(check_isometry_detail("generator '" + name + "' isometry of Q'", m, result.form));
    }

    const Signature sig = signature(result.form);
    {
        const bool ok = sig == Signature{n + 1, 1, 0};
        std::ostringstream os;
        if (!ok) {
            os << "signature (" << sig.positives << ", " << sig.negatives << ", " << sig.zeros << ")";
        }
        report.checks.push_back({"form signature (" + std::to_string(n + 1) + ", 1, 0)", ok, os.str()});
    }

    report.checks.push_back(check_lightlike_stabilizer(result));

    {
        const bool pd = is_positive_definite(result.invariant_form);
        report.checks.push_back({"invariant form positive definite", pd, pd ? "" : "a leading minor is <= 0"});
    }

    for (VerificationCheck& c : check_faithfulness_evidence(result, spec)) {
        report.checks.push_back(std::move(c));
    }

    report.checks.push_back(check_rigidity(result));

    try {
        const TorsionResult torsion = check_torsion_free(spec);
        std::string witness;
        if (!torsion.torsion_free && torsion.certificate) {
            std::ostringstream os;
            os << "torsion element from word '" << torsion.certificate->word.str(spec.generator_names())
               << "' with lattice translate, fixed point " << torsion.certificate->fixed_point;
            witness = os.str();
        }
        report.checks.push_back({"input group torsion-free", torsion.torsion_free, witness});
    } catch (const Error& e) {
        report.checks.push_back({"input group torsion-free", false, e.what()});
    }

    // Random words: isometry + stabilization must hold across the whole
    // group, not just the generators.
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> length_dist(1, options.max_word_length);
    std::uniform_int_distribution<int> letter_dist(0, static_cast<int>(result.matrices.size()) * 2 - 1);
    bool words_ok = true;
    std::string word_witness;
    for (int i = 0; i < options.random_words && words_ok; ++i) {
        Word w;
        const int len = length_dist(rng);
        for (int j = 0; j < len; ++j) {
            const int pick = letter_dist(rng);
            w.letters.push_back({pick / 2, pick % 2 == 0 ? 1 : -1});
        }
        try {
            const RMatrix image = result.image_of(w);
            if (!check_isometry(image, result.form) || image * result.lightlike != result.lightlike ||
                !image.is_integral()) {
                words_ok = false;
                word_witness = "word '" + w.str(spec.generator_names()) + "'";
            }
        } catch (const Error&) {
            words_ok = false;
            word_witness = "word '" + w.str(spec.generator_names()) + "' could not be evaluated";
        }
    }
    report.checks.push_back({"random words are integral isometries stabilizing v1 (" +
                                 std::to_string(options.random_words) + " samples)",
                             words_ok, word_witness});

    return report;
}

} // namespace flatcusp
