/*
   Copyright 2026 The hypaut authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#include "hypaut/diaglattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hypaut {

namespace {

Rational frac(const Rational& q) {
    mpz_class n = q.num(), d = q.den(), f;
    mpz_fdiv_r(f.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return Rational(mpq_class(f, d));
}

Rational to_rational(const mpz_class& z) { return Rational(z); }

// diag(exp(2 pi i t_k) on block k)
Matrix block_diagonal(const std::vector<int>& sizes, const std::vector<Rational>& t) {
    std::vector<CycNum> d;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        CycNum l = exp_2pi_i(t[k]);
        for (int i = 0; i < sizes[k]; ++i) d.push_back(l);
    }
    return Matrix::diagonal(d);
}

}  // namespace

CycNum exp_2pi_i(const Rational& q) {
    Rational f = frac(q);
    mpz_class n = f.num(), d = f.den();
    if (!d.fits_sint_p()) throw std::overflow_error("root of unity order too large");
    return CycNum::root_of_unity(static_cast<int>(d.get_si()), static_cast<long long>(n.get_si()));
}

std::optional<Rational> root_of_unity_angle(const CycNum& c) {
    CycNum x = c.reduced();
    int N = x.conductor();
    int M = N % 2 ? 2 * N : N;
    for (int k = 0; k < M; ++k)
        if (CycNum::root_of_unity(M, k) == x) return Rational(k, M);
    return std::nullopt;
}

DiagGroup block_scalar_group(const Form& F, const std::vector<int>& block_sizes) {
    int total = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
    if (total != F.nvars()) throw std::invalid_argument("block sizes must sum to the number of variables");
    for (int s : block_sizes)
        if (s < 1) throw std::invalid_argument("block sizes must be positive");
    int m = static_cast<int>(block_sizes.size());

    DiagGroup g;
    g.block_sizes = block_sizes;
    std::set<std::vector<int>> rows;
    for (const auto& t : F.terms()) rows.insert(block_degrees(t.exps, block_sizes));
    g.relations = IntMatrix(static_cast<int>(rows.size()), m);
    int i = 0;
    for (const auto& row : rows) {
        for (int k = 0; k < m; ++k) g.relations(i, k) = row[k];
        ++i;
    }

    SmithForm s = smith_normal_form(g.relations);
    g.divisors = s.divisors;
    g.finite = s.rank == m;
    if (!g.finite) return g;
    g.order = 1;
    for (int j = 0; j < s.rank; ++j) {
        g.order *= s.divisors[j];
        if (s.divisors[j] == 1) continue;
        std::vector<Rational> t(m);
        for (int k = 0; k < m; ++k) t[k] = to_rational(s.V(k, j)) / to_rational(s.divisors[j]);
        g.generators.push_back(block_diagonal(block_sizes, t));
    }
    return g;
}

bool check_diag_bound(const Form& F, const std::vector<int>& block_sizes) {
    DiagGroup g = block_scalar_group(F, block_sizes);
    if (!g.finite) return false;
    mpz_class bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), F.degree(), block_sizes.size());
    return g.order <= bound;
}

std::vector<Matrix> SemiPermGroup::generators() const {
    std::vector<Matrix> out = diagonal.generators;
    for (std::size_t i = 1; i < representatives.size(); ++i) out.push_back(representatives[i]);
    return out;
}

SemiPermGroup semi_permutation_group(const Form& F, int max_vars) {
    int r = F.nvars();
    if (r > max_vars) throw std::invalid_argument("semi-permutation search limited to " + std::to_string(max_vars) +
                                                  " variables");
    SemiPermGroup out;
    out.diagonal = block_scalar_group(F, std::vector<int>(r, 1));

    const auto& terms = F.terms();
    int T = static_cast<int>(terms.size());
    std::map<Exps, int> index;
    for (int i = 0; i < T; ++i) index[terms[i].exps] = i;

    IntMatrix B(T, r);
    for (int i = 0; i < T; ++i)
        for (int k = 0; k < r; ++k) B(i, k) = terms[i].exps[k];
    SmithForm s = smith_normal_form(B);

    std::vector<std::vector<int>> profile(r);
    for (int k = 0; k < r; ++k) {
        for (const auto& t : terms) profile[k].push_back(t.exps[k]);
        std::sort(profile[k].begin(), profile[k].end());
    }

    // solves l^e = c_{p(e)} / c_e for every term e
    auto solve = [&](const std::vector<int>& p) -> std::optional<Matrix> {
        std::vector<Rational> a(T);
        Exps f(r);
        for (int i = 0; i < T; ++i) {
            for (int k = 0; k < r; ++k) f[p[k]] = terms[i].exps[k];
            auto it = index.find(f);
            if (it == index.end()) return std::nullopt;
            auto ang = root_of_unity_angle(terms[it->second].coeff / terms[i].coeff);
            if (!ang) return std::nullopt;
            a[i] = *ang;
        }
        std::vector<Rational> ua(T);
        for (int i = 0; i < T; ++i)
            for (int j = 0; j < T; ++j)
                if (s.U(i, j) != 0) ua[i] += to_rational(s.U(i, j)) * a[j];
        for (int i = s.rank; i < T; ++i)
            if (!ua[i].is_integer()) return std::nullopt;
        std::vector<Rational> sv(r);
        for (int i = 0; i < s.rank; ++i) sv[i] = ua[i] / to_rational(s.divisors[i]);
        Matrix g(r);
        for (int k = 0; k < r; ++k) {
            Rational t;
            for (int i = 0; i < r; ++i)
                if (s.V(k, i) != 0) t += to_rational(s.V(k, i)) * sv[i];
            g(k, p[k]) = exp_2pi_i(t);
        }
        return g;
    };

    std::vector<int> p(r, -1);
    std::vector<bool> used(r, false);
    auto rec = [&](auto&& self, int k) -> void {
        if (k == r) {
            ++out.candidates;
            if (auto g = solve(p)) {
                out.permutations.push_back(p);
                out.representatives.push_back(*g);
            }
            return;
        }
        // identity first so that the first admissible permutation is the trivial one
        for (int j0 = 0; j0 < r; ++j0) {
            int j = (j0 + k) % r;
            if (used[j] || profile[j] != profile[k]) continue;
            used[j] = true;
            p[k] = j;
            self(self, k + 1);
            used[j] = false;
        }
    };
    rec(rec, 0);

    out.finite = out.diagonal.finite;
    if (out.finite) out.order = out.diagonal.order * static_cast<unsigned long>(out.permutations.size());
    return out;
}

}  // namespace hypaut
