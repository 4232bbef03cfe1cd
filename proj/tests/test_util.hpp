#ifndef HYPAUT_TEST_UTIL_HPP
#define HYPAUT_TEST_UTIL_HPP

#include <random>
#include <string>
#include <vector>

#include "hypaut/forms.hpp"

namespace testutil {

inline std::vector<hypaut::Exps> all_monomials(int r, int d) {
    std::vector<hypaut::Exps> out;
    hypaut::Exps e(r, 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == r - 1) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[i] = k;
            self(self, i + 1, left - k);
        }
    };
    if (r > 0) rec(rec, 0, d);
    return out;
}

inline hypaut::CycNum random_scalar(std::mt19937_64& rng, int N, int span = 5) {
    std::uniform_int_distribution<int> num(-span, span);
    std::vector<hypaut::Rational> c(hypaut::euler_phi(N));
    for (auto& q : c) q = hypaut::Rational(num(rng));
    return hypaut::CycNum(N, c);
}

/// Random form with about `density` of all monomials present, integer coefficients in [-span, span].
inline hypaut::Form random_form(std::mt19937_64& rng, int r, int d, double density, int N = 1, int span = 5) {
    std::bernoulli_distribution keep(density);
    std::vector<hypaut::Term> t;
    for (const auto& e : all_monomials(r, d))
        if (keep(rng)) t.push_back({e, random_scalar(rng, N, span)});
    return hypaut::Form(r, d, t);
}

inline hypaut::Matrix random_matrix(std::mt19937_64& rng, int n, int N = 1, int span = 2) {
    std::vector<hypaut::CycNum> e;
    for (int i = 0; i < n * n; ++i) e.push_back(random_scalar(rng, N, span));
    return hypaut::Matrix(n, e);
}

inline std::string data_path(const std::string& rel) { return std::string(HYPAUT_TEST_DATA_DIR) + "/" + rel; }

}  // namespace testutil

#endif
