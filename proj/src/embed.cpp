#include "flatcusp/embed.hpp"

#include "flatcusp/verify.hpp"

#include <sstream>
#include <utility>

namespace flatcusp {

namespace {

SymmetricForm hyperbolic_plane() {
    RMatrix h(2, 2);
    h(0, 1) = 1;
    h(1, 0) = 1;
    return SymmetricForm(std::move(h));
}

} // namespace

EmbeddingResult::EmbeddingResult() : form(RMatrix::identity(0)), invariant_form(RMatrix::identity(0)) {}

RMatrix EmbeddingResult::image_of(const Word& w) const {
    return evaluate_word(w, matrices);
}

ConingRep cone(const CrystalGroupSpec& spec) {
    if (spec.mode != SpecMode::Explicit) throw ValidationError("cone: explicit mode required");
    const int n = spec.dim;

    Integer c = 1;
    for (const GeneratorSpec& g : spec.generators) c = lcm(c, denominator_lcm(*g.translation));

    ConingRep rep;
    rep.dim = n;
    rep.scale_c = c;
    for (const GeneratorSpec& g : spec.generators) {
        RMatrix m(n + 1, n + 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = g.holonomy(i, j);
        for (int i = 0; i < n; ++i) m(i, n) = Rational(c) * (*g.translation)[i];
        m(n, n) = 1;
        rep.matrices.push_back(std::move(m));
    }
    return rep;
}

DualRep dualize(const ConingRep& rep) {
    DualRep dual;
    dual.dim = rep.dim;
    dual.scale_c = rep.scale_c;
    for (const RMatrix& m : rep.matrices) {
        if (!m.is_integral()) throw ValidationError("dualize: coning matrix not integral");
        const Rational det = determinant(m);
        if (det != 1 && det != -1) {
            throw ValidationError("dualize: coning matrix determinant " + to_string(det) + ", expected ±1");
        }
        dual.matrices.push_back(inverse(m.transpose()));
    }
    return dual;
}

SymmetricForm theta_average(const HolonomyGroup& holonomy, const SymmetricForm& seed) {
    if (!is_positive_definite(seed)) throw ValidationError("theta_average: seed not positive definite");
    const int n = seed.dim();
    RMatrix sum(n, n);
    for (const RMatrix& h : holonomy.elements) {
        if (h.rows() != n) throw DimensionError("theta_average: holonomy/seed dimension mismatch");
        sum = sum + h * seed.matrix() * h.transpose();
    }
    return SymmetricForm(std::move(sum));
}

SymmetricForm primitive_rescale(const SymmetricForm& form) {
    const RMatrix& m = form.matrix();
    const Integer den = denominator_lcm(m);
    Integer num_gcd = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const Rational scaled = Rational(den) * m(i, j);
            num_gcd = gcd(num_gcd, to_integer(scaled));
        }
    if (num_gcd == 0) return form; // zero form; nothing to rescale
    return SymmetricForm(make_rational(den, num_gcd) * m);
}

CuspExtension hyperbolic_extend(const DualRep& rep, const SymmetricForm& invariant_form) {
    const int n = rep.dim;
    if (invariant_form.dim() != n) throw DimensionError("hyperbolic_extend: form dimension mismatch");
    const RMatrix& d = invariant_form.matrix();

    CuspExtension ext{n, rep.scale_c, SymmetricForm::direct_sum(invariant_form, hyperbolic_plane()),
                      invariant_form, {}, {}};

    for (size_t gi = 0; gi < rep.matrices.size(); ++gi) {
        const RMatrix& phi = rep.matrices[gi];
        // phi = [[A, 0], [b^T, 1]] with A the inverse-transposed holonomy.
        RMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = phi(i, j);
        RVector b(n);
        for (int j = 0; j < n; ++j) b[j] = phi(n, j);

        // The isometry condition on [[phi, v], [0, 1]] reduces to the linear
        // system A^T D W = -b plus the normalization tau = -(W^T D W)/2.
        const RMatrix coeff = a.transpose() * d;
        const LinearSolution sol = solve_linear(coeff, -b);
        if (!sol.consistent) {
            throw Error("hyperbolic_extend: no cusp column for generator " + std::to_string(gi) +
                        " — invalid invariant form");
        }
        if (!sol.nullspace.empty()) {
            throw Error("hyperbolic_extend: cusp column for generator " + std::to_string(gi) +
                        " is not unique — degenerate invariant form");
        }
        const RVector w = sol.particular;

        Rational wdw = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) wdw += w[i] * d(i, j) * w[j];
        const Rational tau = -wdw / 2;

        RVector v(n + 1);
        for (int i = 0; i < n; ++i) v[i] = w[i];
        v[n] = tau;

        RMatrix hat(n + 2, n + 2);
        for (int i = 0; i < n + 1; ++i)
            for (int j = 0; j < n + 1; ++j) hat(i, j) = phi(i, j);
        for (int i = 0; i < n + 1; ++i) hat(i, n + 1) = v[i];
        hat(n + 1, n + 1) = 1;

        if (hat.transpose() * ext.form.matrix() * hat != ext.form.matrix()) {
            throw Error("hyperbolic_extend: extended matrix is not an isometry of D ⊕ H2 (construction bug)");
        }

        ext.cusp_columns.push_back(std::move(v));
        ext.matrices.push_back(std::move(hat));
    }
    return ext;
}

EmbeddingResult integralize_cusp(const CuspExtension& extension,
                                 const std::vector<std::string>& generator_names) {
    const int n = extension.dim;

    Integer k = 1;
    for (const RVector& v : extension.cusp_columns) k = lcm(k, denominator_lcm(v));

    RMatrix conj = RMatrix::identity(n + 2);
    conj(n + 1, n + 1) = Rational(k);

    EmbeddingResult result;
    result.dim = n;
    result.generator_names = generator_names;
    result.scale_c = extension.scale_c;
    result.scale_k = k;
    result.invariant_form = extension.invariant_form;
    result.form = SymmetricForm(conj.transpose() * extension.form.matrix() * conj);
    result.lightlike = RVector::unit(n + 2, n);
    result.v2 = RVector::unit(n + 2, n + 1);

    for (const RMatrix& m : extension.matrices) {
        RMatrix scaled = m;
        for (int i = 0; i < n + 1; ++i) scaled(i, n + 1) = Rational(k) * m(i, n + 1);
        if (!scaled.is_integral()) {
            throw Error("integralize_cusp: matrix still fractional after conjugation (construction bug)");
        }
        result.matrices.push_back(std::move(scaled));
    }

    const Signature sig = signature(result.form);
    if (sig != Signature{n + 1, 1, 0}) {
        std::ostringstream os;
        os << "integralize_cusp: form signature (" << sig.positives << ", " << sig.negatives << ", "
           << sig.zeros << "), expected (" << n + 1 << ", 1, 0)";
        throw Error(os.str());
    }
    return result;
}

EmbeddingResult embed_pipeline(const CrystalGroupSpec& input, const std::optional<SymmetricForm>& seed) {
    CrystalGroupSpec spec = input;
    if (spec.mode == SpecMode::Abstract) spec = solve_translation_parts(spec);

    const AxiomReport axioms = check_group_axioms(spec);
    if (!axioms.all_passed()) {
        throw ValidationError("group axioms failed: " + axioms.first_failure());
    }

    const HolonomyGroup holonomy = holonomy_closure(spec);
    const ConingRep coning = cone(spec);
    const DualRep dual = dualize(coning);
    const SymmetricForm averaged =
        theta_average(holonomy, seed ? *seed : SymmetricForm::identity(spec.dim));
    const SymmetricForm d = primitive_rescale(averaged);
    const CuspExtension ext = hyperbolic_extend(dual, d);
    EmbeddingResult result = integralize_cusp(ext, spec.generator_names());

    for (const Word& w : spec.mu_words) result.mu_hat.push_back(result.image_of(w));

    const VerificationReport report = full_report(result, spec);
    if (!report.passed()) {
        throw Error("embedding failed verification: " + report.first_failure());
    }
    return result;
}

RMatrix embedded_translation(const EmbeddingResult& result, const RVector& m) {
    const int n = result.dim;
    if (m.dim() != n) throw DimensionError("embedded_translation: dimension mismatch");
    const RMatrix dinv = inverse(result.invariant_form.matrix());
    const RVector w = dinv * m;

    Rational mdm = 0;
    for (int i = 0; i < n; ++i)
        if (w[i] != 0 && m[i] != 0) mdm += m[i] * w[i]; // m^T D^{-1} m

    RMatrix out = RMatrix::identity(n + 2);
    for (int j = 0; j < n; ++j) out(n, j) = -m[j];
    for (int i = 0; i < n; ++i) out(i, n + 1) = Rational(result.scale_k) * w[i];
    out(n, n + 1) = Rational(result.scale_k) * (-mdm / 2);
    return out;
}

} // namespace flatcusp
