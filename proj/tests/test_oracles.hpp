#ifndef HYPAUT_TEST_ORACLES_HPP
#define HYPAUT_TEST_ORACLES_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "hypaut/diaglattice.hpp"
#include "hypaut/forms.hpp"
#include "test_util.hpp"

// Independent oracles shared by the unit suites and the acceptance binary.
namespace oracle {

using namespace hypaut;

// Bareiss fraction-free determinant
inline mpz_class det(IntMatrix a) {
    int n = a.rows();
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int s = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) s = i;
            if (s < 0) return 0;
            a.swap_rows(k, s);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

// Counts block-scalar stabilizer elements among tuples of K-th roots of unity,
// with K the absolute determinant of a nonsingular maximal minor of the block
// degree matrix. Returns -1 when there is no such minor.
inline long long brute_force_order(const Form& F, const std::vector<int>& sizes) {
    int m = static_cast<int>(sizes.size());
    std::vector<std::vector<int>> rows;
    for (const auto& t : F.terms()) rows.push_back(block_degrees(t.exps, sizes));
    long long K = 0;
    std::vector<int> pick(m);
    auto choose = [&](auto&& self, int k, int start) -> void {
        if (K) return;
        if (k == m) {
            IntMatrix a(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) a(i, j) = rows[pick[i]][j];
            mpz_class d = abs(det(a));
            if (d != 0) K = d.get_si();
            return;
        }
        for (int i = start; i < static_cast<int>(rows.size()); ++i) {
            pick[k] = i;
            self(self, k + 1, i + 1);
        }
    };
    choose(choose, 0, 0);
    if (!K) return -1;
    long long count = 0;
    std::vector<long long> t(m, 0);
    for (;;) {
        bool ok = true;
        for (const auto& row : rows) {
            long long s = 0;
            for (int k = 0; k < m; ++k) s += row[k] * t[k];
            if (s % K) {
                ok = false;
                break;
            }
        }
        count += ok;
        int k = 0;
        while (k < m && ++t[k] == K) t[k++] = 0;
        if (k == m) break;
    }
    return count;
}

inline std::vector<std::vector<int>> compositions(int r) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << (r - 1)); ++mask) {
        std::vector<int> c = {1};
        for (int i = 0; i < r - 1; ++i) {
            if (mask >> i & 1)
                c.push_back(1);
            else
                ++c.back();
        }
        out.push_back(c);
    }
    return out;
}

// sparse form built around pure powers and x_i^{d-1} x_j terms, plus a few extras
inline Form random_sparse_form(std::mt19937_64& rng, int r, int d) {
    std::uniform_int_distribution<int> coef(1, 4), var(0, r - 1), extra(0, 2);
    std::bernoulli_distribution coin(0.5);
    std::vector<Term> t;
    for (int i = 0; i < r; ++i) {
        Exps e(r, 0);
        if (coin(rng)) {
            e[i] = d;
        } else {
            e[i] = d - 1;
            e[(i + 1 + var(rng) % std::max(1, r - 1)) % r] += 1;
        }
        t.push_back({e, CycNum(coef(rng))});
    }
    auto all = testutil::all_monomials(r, d);
    std::uniform_int_distribution<std::size_t> mono(0, all.size() - 1);
    for (int k = extra(rng); k > 0; --k) t.push_back({all[mono(rng)], CycNum(coef(rng))});
    return Form(r, d, t);
}

inline bool only_pure_powers(const Form& F) {
    for (const auto& t : F.terms())
        if (*std::max_element(t.exps.begin(), t.exps.end()) != F.degree()) return false;
    return true;
}

// determinant by fraction-field elimination
inline CycNum det(std::vector<std::vector<CycNum>> a) {
    int n = static_cast<int>(a.size());
    CycNum d(1);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (!a[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return CycNum(0);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            d = -d;
        }
        d = d * a[c][c];
        CycNum inv = a[c][c].inv();
        for (int r = c + 1; r < n; ++r) {
            if (a[r][c].is_zero()) continue;
            CycNum f = a[r][c] * inv;
            for (int k = c; k < n; ++k) a[r][k] = a[r][k] - f * a[c][k];
        }
    }
    return d;
}

// resultant of two binary forms of the same degree m, via the Sylvester matrix
inline CycNum binary_resultant(const Form& f, const Form& g) {
    int m = f.degree();
    auto coeffs = [&](const Form& h) {
        std::vector<CycNum> c(m + 1, CycNum(0));
        for (int i = 0; i <= m; ++i) c[i] = h.coeff({m - i, i}).value_or(CycNum(0));
        return c;
    };
    auto a = coeffs(f), b = coeffs(g);
    std::vector<std::vector<CycNum>> S(2 * m, std::vector<CycNum>(2 * m, CycNum(0)));
    for (int row = 0; row < m; ++row)
        for (int i = 0; i <= m; ++i) {
            S[row][row + i] = a[i];
            S[m + row][row + i] = b[i];
        }
    return det(S);
}

}  // namespace oracle

#endif
