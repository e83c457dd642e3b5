#include "flatcusp/crystal.hpp"

#include <sstream>

namespace flatcusp {

namespace {

Rational q(long num, long den = 1) { return make_rational(num, den); }

CrystalGroupSpec make_torus(int n) {
    CrystalGroupSpec spec;
    spec.dim = n;
    spec.mode = SpecMode::Explicit;
    const std::string letters = "abcd";
    for (int i = 0; i < n; ++i) {
        GeneratorSpec g;
        g.name = std::string(1, letters[static_cast<size_t>(i)]);
        g.holonomy = RMatrix::identity(n);
        g.translation = RVector::unit(n, i);
        spec.generators.push_back(std::move(g));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            spec.relators.push_back(Word{{{i, 1}, {j, 1}, {i, -1}, {j, -1}}});
        }
    }
    for (int i = 0; i < n; ++i) spec.mu_words.push_back(Word{{{i, 1}}});
    return spec;
}

CrystalGroupSpec make_klein_bottle() {
    CrystalGroupSpec spec;
    spec.dim = 2;
    spec.mode = SpecMode::Explicit;

    GeneratorSpec a;
    a.name = "a";
    a.holonomy = RMatrix::diagonal({q(1), q(-1)});
    a.translation = RVector{q(1, 2), q(0)};
    GeneratorSpec b;
    b.name = "b";
    b.holonomy = RMatrix::identity(2);
    b.translation = RVector{q(0), q(1)};
    spec.generators = {std::move(a), std::move(b)};

    // a b a^-1 b = 1
    spec.relators = {Word{{{0, 1}, {1, 1}, {0, -1}, {1, 1}}}};
    // mu_1 = a^2, mu_2 = b
    spec.mu_words = {Word{{{0, 1}, {0, 1}}}, Word{{{1, 1}}}};
    return spec;
}

CrystalGroupSpec make_hantsche_wendt() {
    CrystalGroupSpec spec;
    spec.dim = 3;
    spec.mode = SpecMode::Explicit;

    GeneratorSpec a;
    a.name = "a";
    a.holonomy = RMatrix::diagonal({q(-1), q(-1), q(1)});
    a.translation = RVector{q(1, 2), q(1, 2), q(1, 2)};
    GeneratorSpec b;
    b.name = "b";
    b.holonomy = RMatrix::diagonal({q(1), q(-1), q(-1)});
    b.translation = RVector{q(1, 2), q(0), q(0)};
    spec.generators = {std::move(a), std::move(b)};

    // a b^2 a^-1 b^2 = 1 and b a^2 b^-1 a^2 = 1 (verified by affine evaluation)
    spec.relators = {
        Word{{{0, 1}, {1, 1}, {1, 1}, {0, -1}, {1, 1}, {1, 1}}},
        Word{{{1, 1}, {0, 1}, {0, 1}, {1, -1}, {0, 1}, {0, 1}}},
    };
    // mu_1 = b^2, mu_2 = (ab)^2, mu_3 = a^2
    spec.mu_words = {
        Word{{{1, 1}, {1, 1}}},
        Word{{{0, 1}, {1, 1}, {0, 1}, {1, 1}}},
        Word{{{0, 1}, {0, 1}}},
    };
    return spec;
}

} // namespace

std::vector<std::string> catalog_names() {
    return {"torus-2", "klein-bottle", "torus-3", "hantsche-wendt"};
}

CrystalGroupSpec catalog_lookup(const std::string& name) {
    if (name == "torus-2") return make_torus(2);
    if (name == "torus-3") return make_torus(3);
    if (name == "klein-bottle") return make_klein_bottle();
    if (name == "hantsche-wendt") return make_hantsche_wendt();

    std::ostringstream os;
    os << "unknown catalog entry '" << name << "'; available:";
    for (const std::string& n : catalog_names()) os << ' ' << n;
    throw ValidationError(os.str());
}

} // namespace flatcusp
