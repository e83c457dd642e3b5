#pragma once

// Small builders shared by the test files: compact matrix/vector literals
// ("rows ; separated, entries space separated") and seeded random data.

#include "flatcusp/crystal.hpp"
#include "flatcusp/linalg.hpp"

#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

inline flatcusp::RVector vec(const std::string& text) {
    std::istringstream in(text);
    std::vector<flatcusp::Rational> entries;
    std::string token;
    while (in >> token) entries.push_back(flatcusp::parse_rational(token));
    return flatcusp::RVector(std::move(entries));
}

inline flatcusp::RMatrix mat(const std::string& text) {
    std::vector<std::vector<flatcusp::Rational>> rows;
    std::string row_text;
    std::istringstream in(text);
    while (std::getline(in, row_text, ';')) {
        std::istringstream row_in(row_text);
        std::vector<flatcusp::Rational> row;
        std::string token;
        while (row_in >> token) row.push_back(flatcusp::parse_rational(token));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return flatcusp::RMatrix::from_rows(rows);
}

inline flatcusp::Rational rat(const std::string& text) { return flatcusp::parse_rational(text); }

// Uniform random rational with numerator in [-bound, bound] and denominator
// in [1, den_bound].
inline flatcusp::Rational random_rational(std::mt19937_64& rng, int bound = 5, int den_bound = 4) {
    std::uniform_int_distribution<int> num(-bound, bound);
    std::uniform_int_distribution<int> den(1, den_bound);
    return flatcusp::make_rational(num(rng), den(rng));
}

inline flatcusp::RMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int bound = 5,
                                       int den_bound = 4) {
    flatcusp::RMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = random_rational(rng, bound, den_bound);
    return m;
}

inline flatcusp::RMatrix random_integer_matrix(std::mt19937_64& rng, int rows, int cols, int bound = 6) {
    std::uniform_int_distribution<int> entry(-bound, bound);
    flatcusp::RMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = entry(rng);
    return m;
}

// Random unimodular integral matrix: product of elementary row operations.
inline flatcusp::RMatrix random_unimodular(std::mt19937_64& rng, int n, int ops = 12) {
    flatcusp::RMatrix m = flatcusp::RMatrix::identity(n);
    std::uniform_int_distribution<int> idx(0, n - 1);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (int k = 0; k < ops; ++k) {
        const int i = idx(rng);
        int j = idx(rng);
        if (i == j) j = (j + 1) % n;
        const flatcusp::Rational f = coeff(rng);
        for (int col = 0; col < n; ++col) m(i, col) += f * m(j, col);
    }
    return m;
}

inline flatcusp::Word random_word(std::mt19937_64& rng, int generator_count, int max_length) {
    std::uniform_int_distribution<int> length(0, max_length);
    std::uniform_int_distribution<int> pick(0, generator_count * 2 - 1);
    flatcusp::Word w;
    const int len = length(rng);
    for (int i = 0; i < len; ++i) {
        const int p = pick(rng);
        w.letters.push_back({p / 2, p % 2 == 0 ? 1 : -1});
    }
    return w;
}

} // namespace testutil
