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

#include "hypaut/matgroups.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

namespace hypaut {

std::uint64_t default_closure_cap() {
    if (const char* env = std::getenv("HYPAUT_CLOSURE_CAP")) {
        try {
            unsigned long long v = std::stoull(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    return 1ULL << 21;
}

ModMat mod_mul(const ModMat& x, const ModMat& y) {
    int n = x.n;
    ModMat z{n, x.p, std::vector<std::uint32_t>(static_cast<std::size_t>(n) * n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::uint64_t s = 0;
            for (int k = 0; k < n; ++k) s += static_cast<std::uint64_t>(x(i, k)) * y(k, j);
            z.a[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint32_t>(s % x.p);
        }
    return z;
}

ModMat reduce_matrix(const Matrix& m, const CycReduction& red) {
    ModMat out{m.dim(), red.prime(), {}};
    out.a.reserve(m.entries().size());
    for (const auto& x : m.entries()) {
        auto v = red(x.reduced());
        if (!v) throw DivisionByZero();
        out.a.push_back(*v);
    }
    return out;
}

namespace {

int matrix_conductor(const std::vector<Matrix>& gens) {
    long long N = 1;
    for (const auto& g : gens)
        for (const auto& x : g.entries()) N = std::lcm(N, static_cast<long long>(x.reduced().conductor()));
    return static_cast<int>(N);
}

std::shared_ptr<CycReduction> good_reduction(const std::vector<Matrix>& gens, int N) {
    for (std::uint32_t p : split_primes(N, 16, 0x5eed)) {
        auto red = std::make_shared<CycReduction>(N, p);
        bool ok = true;
        for (const auto& g : gens) {
            for (const auto& x : g.entries())
                if (!(*red)(x)) {
                    ok = false;
                    break;
                }
            if (!ok) break;
        }
        if (ok) return red;
    }
    throw GroupError("no prime in range reduces the generators");
}

std::uint64_t mix(std::uint64_t h) {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return h;
}

bool is_scalar_mod(const std::uint32_t* a, int n) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::uint32_t v = a[i * n + j];
            if (i != j && v != 0) return false;
            if (i == j && v != a[0]) return false;
        }
    return true;
}

bool is_diagonal_mod(const std::uint32_t* a, int n) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && a[i * n + j] != 0) return false;
    return true;
}

}  // namespace

std::uint64_t MatGroup::hash_at(const std::uint32_t* x) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    std::size_t len = static_cast<std::size_t>(dim_) * dim_;
    for (std::size_t i = 0; i < len; ++i) h = mix(h ^ (x[i] + 0x632be59bd9b4e019ULL * (i + 1)));
    return h;
}

std::optional<std::uint64_t> MatGroup::lookup(const std::uint32_t* x) const {
    if (table_.empty()) return std::nullopt;
    std::size_t len = static_cast<std::size_t>(dim_) * dim_;
    std::uint64_t mask = table_.size() - 1;
    for (std::uint64_t s = hash_at(x) & mask;; s = (s + 1) & mask) {
        std::uint32_t v = table_[s];
        if (v == 0) return std::nullopt;
        const std::uint32_t* y = &data_[(v - 1) * len];
        if (std::equal(x, x + len, y)) return v - 1;
    }
}

void MatGroup::insert(std::uint64_t idx) {
    std::size_t len = static_cast<std::size_t>(dim_) * dim_;
    if ((count_ + 1) * 2 > table_.size()) {
        std::vector<std::uint32_t> old;
        old.swap(table_);
        table_.assign(std::max<std::size_t>(1024, old.size() * 2), 0);
        std::uint64_t mask = table_.size() - 1;
        for (std::uint32_t v : old) {
            if (!v) continue;
            std::uint64_t s = hash_at(&data_[(v - 1) * len]) & mask;
            while (table_[s]) s = (s + 1) & mask;
            table_[s] = v;
        }
    }
    std::uint64_t mask = table_.size() - 1;
    std::uint64_t s = hash_at(&data_[idx * len]) & mask;
    while (table_[s]) s = (s + 1) & mask;
    table_[s] = static_cast<std::uint32_t>(idx + 1);
}

ModMat MatGroup::mod_element(std::uint64_t i) const {
    if (i >= count_) throw std::out_of_range("group element index");
    std::size_t len = static_cast<std::size_t>(dim_) * dim_;
    ModMat m{dim_, prime(), std::vector<std::uint32_t>(data_.begin() + i * len, data_.begin() + (i + 1) * len)};
    return m;
}

std::vector<int> MatGroup::word(std::uint64_t i) const {
    if (i >= count_) throw std::out_of_range("group element index");
    std::vector<int> w;
    while (i != 0) {
        w.push_back(via_[i]);
        i = parent_[i];
    }
    std::reverse(w.begin(), w.end());
    return w;
}

Matrix MatGroup::element(std::uint64_t i) const {
    if (exact_) return exact_->at(i);
    Matrix m = Matrix::identity(dim_).lift(N_);
    for (int g : word(i)) m = m * gens_[g];
    return m;
}

const std::vector<Matrix>& MatGroup::elements(std::uint64_t limit) const {
    if (!exact_) {
        if (count_ > limit)
            throw GroupError("group has " + std::to_string(count_) + " elements, above the materialisation limit");
        auto v = std::make_shared<std::vector<Matrix>>();
        v->reserve(count_);
        v->push_back(Matrix::identity(dim_).lift(N_));
        for (std::uint64_t i = 1; i < count_; ++i) v->push_back((*v)[parent_[i]] * gens_[via_[i]]);
        exact_ = v;
    }
    return *exact_;
}

std::optional<std::uint64_t> MatGroup::find(const ModMat& m) const {
    if (m.n != dim_ || m.p != prime()) throw GroupError("modular matrix does not match the group");
    return lookup(m.a.data());
}

std::optional<std::uint64_t> MatGroup::find(const Matrix& m) const {
    if (m.dim() != dim_) return std::nullopt;
    Matrix r = m.reduced();
    if (N_ % r.conductor() != 0) return std::nullopt;
    ModMat x;
    try {
        x = reduce_matrix(r.lift(N_), *red_);
    } catch (const DivisionByZero&) {
        return std::nullopt;
    }
    auto idx = lookup(x.a.data());
    if (idx && element(*idx) == m) return idx;
    return std::nullopt;
}

MatGroup closure(const std::vector<Matrix>& gens, std::uint64_t cap) {
    if (gens.empty()) throw GroupError("closure needs at least one generator");
    if (gens.size() > 255) throw GroupError("at most 255 generators");
    int n = gens[0].dim();
    for (const auto& g : gens) {
        if (g.dim() != n) throw GroupError("generators differ in dimension");
        if (g.det().is_zero()) throw GroupError("generator is not invertible");
    }
    MatGroup G;
    G.dim_ = n;
    G.N_ = matrix_conductor(gens);
    for (const auto& g : gens) G.gens_.push_back(g.reduced().lift(G.N_));
    G.red_ = good_reduction(G.gens_, G.N_);
    for (const auto& g : G.gens_) G.mod_gens_.push_back(reduce_matrix(g, *G.red_));
    std::size_t len = static_cast<std::size_t>(n) * n;
    ModMat id{n, G.prime(), std::vector<std::uint32_t>(len, 0)};
    for (int i = 0; i < n; ++i) id.a[i * n + i] = 1;
    G.data_ = id.a;
    G.parent_.push_back(0);
    G.via_.push_back(0);
    G.count_ = 1;
    G.insert(0);
    G.closed_ = true;
    std::vector<std::uint32_t> prod(len);
    const std::uint32_t p = G.prime();
    for (std::uint64_t cur = 0; cur < G.count_; ++cur) {
        for (std::size_t gi = 0; gi < G.mod_gens_.size(); ++gi) {
            const auto& g = G.mod_gens_[gi].a;
            const std::uint32_t* x = &G.data_[cur * len];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    std::uint64_t s = 0;
                    for (int k = 0; k < n; ++k) s += static_cast<std::uint64_t>(x[i * n + k]) * g[k * n + j];
                    prod[i * n + j] = static_cast<std::uint32_t>(s % p);
                }
            if (G.lookup(prod.data())) continue;
            if (G.count_ >= cap) {
                G.closed_ = false;
                return G;
            }
            G.data_.insert(G.data_.end(), prod.begin(), prod.end());
            G.parent_.push_back(static_cast<std::uint32_t>(cur));
            G.via_.push_back(static_cast<std::uint8_t>(gi));
            G.insert(G.count_);
            ++G.count_;
        }
    }
    return G;
}

MatGroup scalar_group(int r, int d) { return closure({Matrix::scalar(r, CycNum::root_of_unity(d, 1))}); }

bool preserves(const std::vector<Matrix>& gens, const Form& F) {
    for (const auto& g : gens) {
        if (g.dim() != F.nvars()) throw GroupError("dimension mismatch between group and form");
        if (act(F, g) != F) return false;
    }
    return true;
}

bool preserves(const MatGroup& G, const Form& F) { return preserves(G.generators(), F); }

namespace {

void require_closed(const MatGroup& G) {
    if (!G.closed()) throw GroupError("operation needs a closed group");
}

}  // namespace

MatGroup center(const MatGroup& G) {
    require_closed(G);
    std::vector<Matrix> central;
    std::vector<ModMat> gens;
    for (const auto& g : G.generators()) gens.push_back(reduce_matrix(g, G.reduction()));
    for (std::uint64_t i = 0; i < G.order(); ++i) {
        ModMat x = G.mod_element(i);
        bool commutes = true;
        for (const auto& g : gens)
            if (mod_mul(x, g).a != mod_mul(g, x).a) {
                commutes = false;
                break;
            }
        if (commutes) central.push_back(G.element(i));
    }
    return closure(central);
}

std::uint64_t scalar_count(const MatGroup& G) {
    require_closed(G);
    std::uint64_t c = 0;
    for (std::uint64_t i = 0; i < G.order(); ++i)
        if (is_scalar_mod(G.mod_element(i).a.data(), G.dim())) ++c;
    return c;
}

std::uint64_t projective_order(const MatGroup& G) { return G.order() / scalar_count(G); }

std::vector<std::uint64_t> diagonal_subgroup(const MatGroup& G) {
    require_closed(G);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < G.order(); ++i)
        if (is_diagonal_mod(G.mod_element(i).a.data(), G.dim())) {
            if (!G.element(i).is_diagonal()) throw GroupError("reduction identified a non-diagonal element");
            out.push_back(i);
        }
    return out;
}

namespace {

// Monomials of degree k in r variables, indexed by rank in a fixed enumeration.
class MonoIndex {
   public:
    MonoIndex(int r, int maxdeg) : r_(r) {
        binom_.assign(maxdeg + r + 2, std::vector<std::uint64_t>(r + 2, 0));
        for (std::size_t a = 0; a < binom_.size(); ++a) {
            binom_[a][0] = 1;
            for (int b = 1; b <= r + 1 && b <= static_cast<int>(a); ++b)
                binom_[a][b] = binom_[a - 1][b - 1] + (b <= static_cast<int>(a) - 1 ? binom_[a - 1][b] : 0);
        }
        lists_.resize(maxdeg + 1);
        for (int k = 0; k <= maxdeg; ++k) {
            lists_[k].assign(count(k), Exps(r, 0));
            Exps e(r, 0);
            enumerate(k, 0, k, e);
        }
    }
    std::uint64_t count(int k) const { return binom_[k + r_ - 1][r_ - 1]; }
    // monomials with larger leading exponents come later
    std::uint64_t rank(const Exps& e) const {
        int left = 0;
        for (int x : e) left += x;
        std::uint64_t idx = 0;
        for (int i = 0; i < r_ - 1; ++i) {
            // monomials of degree `left` in variables i.. whose i-th exponent is below e[i]
            int vars = r_ - i - 1;
            for (int a = 0; a < e[i]; ++a) idx += binom_[left - a + vars - 1][vars - 1];
            left -= e[i];
        }
        return idx;
    }
    const std::vector<Exps>& list(int k) const { return lists_[k]; }

   private:
    void enumerate(int k, int i, int left, Exps& e) {
        if (i == r_ - 1) {
            e[i] = left;
            lists_[k][rank(e)] = e;
            return;
        }
        for (int a = 0; a <= left; ++a) {
            e[i] = a;
            enumerate(k, i + 1, left - a, e);
        }
        e[i] = 0;
    }
    int r_;
    std::vector<std::vector<std::uint64_t>> binom_;
    std::vector<std::vector<Exps>> lists_;
};

using DensePoly = std::vector<std::uint32_t>;

DensePoly poly_mul(const DensePoly& a, int da, const DensePoly& b, int db, const MonoIndex& idx, std::uint32_t p) {
    DensePoly out(idx.count(da + db), 0);
    const auto& la = idx.list(da);
    const auto& lb = idx.list(db);
    Exps e(la.empty() ? 0 : la[0].size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!b[j]) continue;
            for (std::size_t v = 0; v < e.size(); ++v) e[v] = la[i][v] + lb[j][v];
            auto k = idx.rank(e);
            out[k] = static_cast<std::uint32_t>((out[k] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
        }
    }
    return out;
}

std::uint64_t rank_mod_p(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p) {
    std::uint64_t rank = 0;
    if (rows.empty()) return 0;
    std::size_t cols = rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        std::uint64_t inv = invmod(rows[rank][c], p);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (!rows[r][c]) continue;
            std::uint64_t f = rows[r][c] * inv % p;
            for (std::size_t k = c; k < cols; ++k)
                rows[r][k] = static_cast<std::uint32_t>((rows[r][k] + (p - f) * rows[rank][k]) % p);
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::uint64_t invariant_dimension_reynolds(const MatGroup& G, int e) {
    require_closed(G);
    if (e < 0) throw std::invalid_argument("degree must be non-negative");
    if (e == 0) return 1;
    const int r = G.dim();
    const std::uint32_t p = G.prime();
    MonoIndex idx(r, e);
    // Sum over g of F.g = sum over cosets D t of (sum over D of F.delta).t, and the
    // D-average of a monomial is the monomial itself or zero.
    auto D = diagonal_subgroup(G);
    std::vector<Exps> S;
    for (const auto& m : idx.list(e)) {
        bool inv = true;
        for (auto d : D) {
            ModMat x = G.mod_element(d);
            std::uint64_t v = 1;
            for (int i = 0; i < r; ++i) v = v * powmod(x(i, i), m[i], p) % p;
            if (v != 1) {
                inv = false;
                break;
            }
        }
        if (inv) S.push_back(m);
    }
    if (S.empty()) return 0;
    std::vector<char> seen(G.order(), 0);
    std::vector<std::uint64_t> reps;
    std::vector<ModMat> Dm;
    for (auto d : D) Dm.push_back(G.mod_element(d));
    for (std::uint64_t t = 0; t < G.order(); ++t) {
        if (seen[t]) continue;
        reps.push_back(t);
        ModMat x = G.mod_element(t);
        for (const auto& d : Dm) seen[*G.find(mod_mul(d, x))] = 1;
    }
    std::vector<std::vector<std::uint32_t>> rows(S.size(), std::vector<std::uint32_t>(idx.count(e), 0));
    for (auto t : reps) {
        ModMat x = G.mod_element(t);
        // powers of the linear forms x_i -> sum_j x(i,j) x_j
        std::vector<std::vector<DensePoly>> pw(r, std::vector<DensePoly>(e + 1));
        for (int i = 0; i < r; ++i) {
            pw[i][0] = DensePoly{1};
            DensePoly lin(idx.count(1), 0);
            for (int j = 0; j < r; ++j) {
                Exps u(r, 0);
                u[j] = 1;
                lin[idx.rank(u)] = x(i, j);
            }
            for (int k = 1; k <= e; ++k) pw[i][k] = poly_mul(pw[i][k - 1], k - 1, lin, 1, idx, p);
        }
        for (std::size_t s = 0; s < S.size(); ++s) {
            DensePoly acc{1};
            int deg = 0;
            for (int i = 0; i < r; ++i) {
                if (!S[s][i]) continue;
                acc = poly_mul(acc, deg, pw[i][S[s][i]], S[s][i], idx, p);
                deg += S[s][i];
            }
            for (std::size_t k = 0; k < acc.size(); ++k) rows[s][k] = (rows[s][k] + acc[k]) % p;
        }
    }
    return rank_mod_p(std::move(rows), p);
}

Rational molien_coefficient(const MatGroup& G, int e) {
    require_closed(G);
    if (e < 0) throw std::invalid_argument("degree must be non-negative");
    if (e == 0) return Rational(1);
    const auto& els = G.elements();
    std::unordered_map<std::string, int> trace_ids;
    std::vector<CycNum> traces;
    std::vector<int> tid(els.size());
    for (std::size_t i = 0; i < els.size(); ++i) {
        CycNum t(0);
        for (int k = 0; k < G.dim(); ++k) t += els[i](k, k);
        t = t.reduced();
        auto [it, fresh] = trace_ids.emplace(t.canonical_key(), static_cast<int>(traces.size()));
        if (fresh) traces.push_back(t);
        tid[i] = it->second;
    }
    // power-sum signature (tr g, tr g^2, ..., tr g^e) determines the coefficient
    std::map<std::vector<int>, std::uint64_t> classes;
    for (std::size_t i = 0; i < els.size(); ++i) {
        std::vector<int> sig;
        sig.reserve(e);
        ModMat g = G.mod_element(i);
        ModMat x = g;
        sig.push_back(tid[i]);
        for (int j = 2; j <= e; ++j) {
            x = mod_mul(x, g);
            sig.push_back(tid[*G.find(x)]);
        }
        ++classes[sig];
    }
    CycNum total(0);
    for (const auto& [sig, count] : classes) {
        std::vector<CycNum> h(e + 1, CycNum(0));
        h[0] = CycNum(1);
        for (int k = 1; k <= e; ++k) {
            CycNum s(0);
            for (int j = 1; j <= k; ++j) s += traces[sig[j - 1]] * h[k - j];
            h[k] = s * CycNum(Rational(1, k));
        }
        total += h[e] * CycNum(static_cast<long long>(count));
    }
    total = total.reduced();
    if (!total.is_rational()) throw GroupError("Molien coefficient is not rational");
    return total.rational_part() / Rational(static_cast<long long>(G.order()));
}

std::uint64_t invariant_dimension_molien(const MatGroup& G, int e) {
    Rational c = molien_coefficient(G, e);
    if (!(c.den() == 1) || c < Rational(0)) throw GroupError("Molien coefficient is not a non-negative integer");
    return c.num().get_ui();
}

std::uint64_t invariant_dimension(const MatGroup& G, int e, InvMethod method) {
    if (method == InvMethod::reynolds) return invariant_dimension_reynolds(G, e);
    if (method == InvMethod::molien) return invariant_dimension_molien(G, e);
    auto a = invariant_dimension_reynolds(G, e);
    auto b = invariant_dimension_molien(G, e);
    if (a != b)
        throw GroupError("Reynolds (" + std::to_string(a) + ") and Molien (" + std::to_string(b) +
                         ") invariant dimensions disagree");
    return a;
}

namespace {

template <class T>
ProjectiveClosure projective_run(const std::vector<std::vector<std::uint32_t>>& gens, int n, std::uint32_t p,
                                 std::uint64_t cap) {
    const std::size_t len = static_cast<std::size_t>(n) * n;
    std::vector<std::uint32_t> inv(p < 65536 ? p : 0);
    for (std::uint32_t a = 1; a < inv.size(); ++a) inv[a] = static_cast<std::uint32_t>(invmod(a, p));
    auto inverse = [&](std::uint32_t a) -> std::uint64_t { return inv.empty() ? invmod(a, p) : inv[a]; };
    auto normalise = [&](std::vector<std::uint32_t>& m) {
        std::size_t f = 0;
        while (m[f] == 0) ++f;
        std::uint64_t c = inverse(m[f]);
        for (auto& v : m) v = static_cast<std::uint32_t>(v * c % p);
    };
    std::vector<T> data;
    std::vector<std::uint32_t> table(1 << 12, 0);
    std::uint64_t count = 0;
    auto hash = [&](const auto* x) {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (std::size_t i = 0; i < len; ++i) h = mix(h ^ (static_cast<std::uint64_t>(x[i]) + 0x632be59bd9b4e019ULL * (i + 1)));
        return h;
    };
    auto lookup = [&](const std::vector<std::uint32_t>& x) {
        std::uint64_t mask = table.size() - 1;
        for (std::uint64_t s = hash(x.data()) & mask;; s = (s + 1) & mask) {
            std::uint32_t v = table[s];
            if (!v) return false;
            const T* y = &data[(v - 1) * len];
            bool eq = true;
            for (std::size_t i = 0; i < len && eq; ++i) eq = y[i] == x[i];
            if (eq) return true;
        }
    };
    auto insert = [&](std::uint64_t idx) {
        if ((count + 1) * 2 > table.size()) {
            std::vector<std::uint32_t> old;
            old.swap(table);
            table.assign(old.size() * 2, 0);
            std::uint64_t mask = table.size() - 1;
            for (std::uint32_t v : old) {
                if (!v) continue;
                std::uint64_t s = hash(&data[(v - 1) * len]) & mask;
                while (table[s]) s = (s + 1) & mask;
                table[s] = v;
            }
        }
        std::uint64_t mask = table.size() - 1;
        std::uint64_t s = hash(&data[idx * len]) & mask;
        while (table[s]) s = (s + 1) & mask;
        table[s] = static_cast<std::uint32_t>(idx + 1);
    };
    std::vector<std::uint32_t> cur(len, 0), prod(len);
    for (int i = 0; i < n; ++i) cur[i * n + i] = 1;
    data.insert(data.end(), cur.begin(), cur.end());
    count = 1;
    insert(0);
    ProjectiveClosure out;
    out.prime = p;
    for (std::uint64_t c = 0; c < count; ++c) {
        for (std::size_t i = 0; i < len; ++i) cur[i] = data[c * len + i];
        for (const auto& g : gens) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    std::uint64_t s = 0;
                    for (int k = 0; k < n; ++k) s += static_cast<std::uint64_t>(cur[i * n + k]) * g[k * n + j];
                    prod[i * n + j] = static_cast<std::uint32_t>(s % p);
                }
            normalise(prod);
            if (lookup(prod)) continue;
            if (count >= cap) {
                out.order = count;
                return out;
            }
            data.insert(data.end(), prod.begin(), prod.end());
            insert(count);
            ++count;
        }
    }
    out.closed = true;
    out.order = count;
    return out;
}

}  // namespace

ProjectiveClosure projective_closure_modp(const std::vector<Matrix>& gens, std::uint32_t p, std::uint64_t cap) {
    if (gens.empty()) throw GroupError("closure needs at least one generator");
    int n = gens[0].dim();
    int N = matrix_conductor(gens);
    if (p < 3 || !is_prime_u64(p) || (p - 1) % static_cast<std::uint32_t>(N) != 0)
        throw GroupError("projective closure needs an odd prime p = 1 mod " + std::to_string(N));
    CycReduction red(N, p);
    std::vector<std::vector<std::uint32_t>> mg;
    for (const auto& g : gens) {
        if (g.dim() != n) throw GroupError("generators differ in dimension");
        if (g.det().is_zero()) throw GroupError("generator is not invertible");
        try {
            mg.push_back(reduce_matrix(g.reduced().lift(N), red).a);
        } catch (const DivisionByZero&) {
            throw GroupError("generator entry has a denominator divisible by p");
        }
    }
    if (p < 256) return projective_run<std::uint8_t>(mg, n, p, cap);
    return projective_run<std::uint32_t>(mg, n, p, cap);
}

}  // namespace hypaut
