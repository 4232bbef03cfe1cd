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

#ifndef HYPAUT_GROEBNER_HPP
#define HYPAUT_GROEBNER_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypaut/forms.hpp"
#include "hypaut/modp.hpp"

namespace hypaut {

constexpr int kMaxVars = 32;

struct Mono {
    std::array<std::uint8_t, kMaxVars> e{};
    bool operator==(const Mono& o) const { return e == o.e; }
};

struct GBOptions {
    int max_degree = 0;  // 0 means no cap
    long long max_pairs = 20'000'000;
    bool stop_when_zero_dim = false;
    std::uint64_t dense_limit = 1ULL << 22;
    bool interreduce = true;
};

enum class GBStatus { complete, zero_dim, degree_cap, budget };

const char* to_string(GBStatus s);

template <class Elem>
struct GBResult {
    GBStatus status = GBStatus::complete;
    std::vector<std::vector<std::pair<Exps, Elem>>> basis;
    std::vector<int> pure_power;  // smallest k with x_i^k a leading term, -1 if none
    int degree_reached = 0;
    long long pairs_processed = 0;
    bool all_pure_powers() const {
        return std::all_of(pure_power.begin(), pure_power.end(), [](int k) { return k >= 0; });
    }
};

/*
 * Buchberger's algorithm for homogeneous ideals under grevlex.
 * Work proceeds one degree at a time, which is the sugar strategy for
 * homogeneous input. Pairs are pruned with the Gebauer-Moeller update,
 * which contains both Buchberger criteria. A degree slice whose monomial
 * count is below dense_limit is reduced in a dense array indexed by the
 * grevlex rank of the monomial; larger slices use an ordered map.
 */
template <class Field>
class HomogeneousGB {
   public:
    using Elem = typename Field::Elem;
    struct Poly {
        int deg = 0;
        std::vector<Mono> m;  // grevlex-descending
        std::vector<Elem> c;
    };

    HomogeneousGB(int r, Field field, GBOptions opt) : r_(r), F_(std::move(field)), opt_(opt) {
        if (r < 1 || r > kMaxVars) throw std::invalid_argument("variable count must be in 1..32");
        pure_.assign(r, -1);
    }

    void add_input(const std::vector<std::pair<Exps, Elem>>& terms) {
        Poly p;
        bool first = true;
        for (const auto& [e, c] : terms) {
            if (F_.is_zero(c)) continue;
            if (static_cast<int>(e.size()) != r_) throw std::invalid_argument("exponent length mismatch");
            Mono mo;
            int d = 0;
            for (int i = 0; i < r_; ++i) {
                if (e[i] < 0 || e[i] > 255) throw std::invalid_argument("exponent out of range");
                mo.e[i] = static_cast<std::uint8_t>(e[i]);
                d += e[i];
            }
            if (first) p.deg = d;
            if (d != p.deg) throw std::invalid_argument("Groebner input must be homogeneous");
            first = false;
            p.m.push_back(mo);
            p.c.push_back(c);
        }
        if (p.m.empty()) return;
        std::vector<std::size_t> order(p.m.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return greater(p.m[a], p.m[b]); });
        Poly q;
        q.deg = p.deg;
        for (std::size_t i : order) {
            if (!q.m.empty() && q.m.back() == p.m[i]) {
                q.c.back() = F_.add(q.c.back(), p.c[i]);
                if (F_.is_zero(q.c.back())) {
                    q.m.pop_back();
                    q.c.pop_back();
                }
            } else {
                q.m.push_back(p.m[i]);
                q.c.push_back(p.c[i]);
            }
        }
        if (!q.m.empty()) inputs_[q.deg].push_back(std::move(q));
    }

    GBResult<Elem> run() {
        GBResult<Elem> res;
        for (;;) {
            int D = next_degree();
            if (D < 0) {
                res.status = GBStatus::complete;
                break;
            }
            if (opt_.max_degree > 0 && D > opt_.max_degree) {
                res.status = GBStatus::degree_cap;
                break;
            }
            res.degree_reached = D;
            prepare_degree(D);
            bool stop = false;
            // inputs of this degree first, then the critical pairs
            auto in = inputs_.find(D);
            if (in != inputs_.end()) {
                for (auto& p : in->second) {
                    load(p, Mono{}, F_.one(), D, false);
                    if (finish_reduction(D)) stop = true;
                    if (stop) break;
                }
                inputs_.erase(in);
            }
            if (!stop) {
                auto pit = pairs_.find(D);
                if (pit != pairs_.end()) {
                    std::vector<Pair> todo = std::move(pit->second);
                    pairs_.erase(pit);
                    for (const auto& pr : todo) {
                        if (++processed_ > opt_.max_pairs) {
                            res.status = GBStatus::budget;
                            res.pairs_processed = processed_;
                            fill(res);
                            return res;
                        }
                        load_spair(pr, D);
                        if (finish_reduction(D)) {
                            stop = true;
                            break;
                        }
                    }
                }
            }
            if (stop) {
                res.status = GBStatus::zero_dim;
                break;
            }
        }
        res.pairs_processed = processed_;
        if (res.status == GBStatus::complete && opt_.interreduce) interreduce();
        fill(res);
        return res;
    }

   private:
    struct Pair {
        int i, j;
        Mono lcm;
    };

    struct Slice {
        bool dense = false;
        std::uint64_t count = 0;
        std::vector<std::uint8_t> monos;  // dense: count * r
        std::vector<std::int32_t> red;    // dense: reducer id or -1
        std::vector<Elem> acc;            // dense accumulator
    };

    bool greater(const Mono& a, const Mono& b) const {
        int da = 0, db = 0;
        for (int i = 0; i < r_; ++i) {
            da += a.e[i];
            db += b.e[i];
        }
        if (da != db) return da > db;
        for (int v = r_ - 1; v >= 0; --v)
            if (a.e[v] != b.e[v]) return a.e[v] < b.e[v];
        return false;
    }

    struct SparseCmp {
        const HomogeneousGB* self;
        bool operator()(const Mono& a, const Mono& b) const { return self->greater(a, b); }
    };

    bool divides(const Mono& a, const Mono& b) const {
        for (int i = 0; i < r_; ++i)
            if (a.e[i] > b.e[i]) return false;
        return true;
    }

    Mono lcm(const Mono& a, const Mono& b) const {
        Mono m;
        for (int i = 0; i < r_; ++i) m.e[i] = std::max(a.e[i], b.e[i]);
        return m;
    }

    bool disjoint(const Mono& a, const Mono& b) const {
        for (int i = 0; i < r_; ++i)
            if (a.e[i] && b.e[i]) return false;
        return true;
    }

    int degree_of(const Mono& a) const {
        int d = 0;
        for (int i = 0; i < r_; ++i) d += a.e[i];
        return d;
    }

    // number of monomials of degree t in k variables, saturating
    std::uint64_t count(int k, int t) {
        if (t < 0) return 0;
        if (k == 0) return t == 0 ? 1 : 0;
        ensure_tables(t);
        return cnt_[k][t];
    }

    void ensure_tables(int t) {
        if (t <= tab_deg_) return;
        int T = std::max(t, tab_deg_ * 2 + 8);
        cnt_.assign(r_ + 1, std::vector<std::uint64_t>(T + 1, 0));
        pre_.assign(r_ + 1, std::vector<std::uint64_t>(T + 1, 0));
        const std::uint64_t cap = 1ULL << 62;
        for (int x = 0; x <= T; ++x) cnt_[1][x] = 1;
        for (int k = 2; k <= r_; ++k) {
            std::uint64_t s = 0;
            for (int x = 0; x <= T; ++x) {
                s = std::min(cap, s + cnt_[k - 1][x]);
                cnt_[k][x] = s;  // sum over the last exponent
            }
        }
        for (int k = 1; k <= r_; ++k) {
            std::uint64_t s = 0;
            for (int x = 0; x <= T; ++x) {
                s = std::min(cap, s + cnt_[k][x]);
                pre_[k][x] = s;
            }
        }
        tab_deg_ = T;
    }

    std::uint64_t rank(const Mono& m, int D) const {
        std::uint64_t idx = 0;
        int rem = D;
        for (int v = r_ - 1; v >= 1; --v) {
            int e = m.e[v];
            if (e) idx += pre_[v][rem] - (rem - e >= 0 ? pre_[v][rem - e] : 0);
            rem -= e;
        }
        return idx;
    }

    Mono mono_at(const Slice& s, std::uint64_t idx) const {
        Mono m;
        const std::uint8_t* p = &s.monos[idx * r_];
        for (int i = 0; i < r_; ++i) m.e[i] = p[i];
        return m;
    }

    void prepare_degree(int D) {
        if (slices_.count(D)) return;
        Slice& s = slices_[D];
        s.count = count(r_, D);
        ensure_tables(D);
        s.dense = s.count <= opt_.dense_limit;
        if (!s.dense) return;
        s.monos.assign(s.count * r_, 0);
        // enumerate all monomials of degree D and place them by rank
        Mono cur;
        auto rec = [&](auto&& self, int i, int left) -> void {
            if (i == r_ - 1) {
                cur.e[i] = static_cast<std::uint8_t>(left);
                std::uint64_t k = rank(cur, D);
                for (int v = 0; v < r_; ++v) s.monos[k * r_ + v] = cur.e[v];
                return;
            }
            for (int x = 0; x <= left; ++x) {
                cur.e[i] = static_cast<std::uint8_t>(x);
                self(self, i + 1, left - x);
            }
        };
        rec(rec, 0, D);
        s.red.assign(s.count, -1);
        auto prev = slices_.find(D - 1);
        bool prev_dense = prev != slices_.end() && prev->second.dense;
        for (std::uint64_t k = 0; k < s.count; ++k) {
            Mono m = mono_at(s, k);
            int id = -1;
            if (prev_dense) {
                for (int v = 0; v < r_ && id < 0; ++v) {
                    if (!m.e[v]) continue;
                    Mono q = m;
                    --q.e[v];
                    id = prev->second.red[rank(q, D - 1)];
                }
            } else {
                id = scan_reducer(m, D);
            }
            s.red[k] = id;
        }
        s.acc.assign(s.count, F_.zero());
    }

    int scan_reducer(const Mono& m, int D) const {
        for (std::size_t g = 0; g < basis_.size(); ++g)
            if (basis_[g].deg <= D && divides(basis_[g].m[0], m)) return static_cast<int>(g);
        return -1;
    }

    int next_degree() const {
        int D = -1;
        if (!inputs_.empty()) D = inputs_.begin()->first;
        if (!pairs_.empty()) {
            int pd = pairs_.begin()->first;
            if (D < 0 || pd < D) D = pd;
        }
        return D;
    }

    // adds coef * u * p into the accumulator of degree D (negated when subtract)
    void load(const Poly& p, const Mono& u, const Elem& coef, int D, bool subtract) {
        Slice& s = slices_[D];
        for (std::size_t k = 0; k < p.m.size(); ++k) {
            Mono m;
            for (int i = 0; i < r_; ++i) m.e[i] = static_cast<std::uint8_t>(p.m[k].e[i] + u.e[i]);
            Elem v = F_.mul(coef, p.c[k]);
            if (s.dense) {
                std::uint64_t idx = rank(m, D);
                s.acc[idx] = subtract ? F_.sub(s.acc[idx], v) : F_.add(s.acc[idx], v);
            } else {
                auto it = sparse_.find(m);
                if (it == sparse_.end()) {
                    sparse_.emplace(m, subtract ? F_.neg(v) : v);
                } else {
                    it->second = subtract ? F_.sub(it->second, v) : F_.add(it->second, v);
                    if (F_.is_zero(it->second)) sparse_.erase(it);
                }
            }
        }
    }

    Mono quotient(const Mono& a, const Mono& b) const {
        Mono q;
        for (int i = 0; i < r_; ++i) q.e[i] = static_cast<std::uint8_t>(a.e[i] - b.e[i]);
        return q;
    }

    void load_spair(const Pair& pr, int D) {
        const Poly& a = basis_[pr.i];
        const Poly& b = basis_[pr.j];
        load(a, quotient(pr.lcm, a.m[0]), F_.one(), D, false);
        load(b, quotient(pr.lcm, b.m[0]), F_.one(), D, true);
    }

    // fully reduces the accumulator; returns true when the zero-dimension stop fires
    bool finish_reduction(int D) {
        Slice& s = slices_[D];
        Poly h;
        h.deg = D;
        if (s.dense) {
            for (std::uint64_t i = 0; i < s.count; ++i) {
                if (F_.is_zero(s.acc[i])) continue;
                int id = s.red[i];
                if (id >= 0) {
                    const Poly& g = basis_[id];
                    Mono m = mono_at(s, i);
                    Mono u = quotient(m, g.m[0]);
                    Elem c = s.acc[i];
                    s.acc[i] = F_.zero();
                    for (std::size_t k = 1; k < g.m.size(); ++k) {
                        Mono t;
                        for (int v = 0; v < r_; ++v) t.e[v] = static_cast<std::uint8_t>(g.m[k].e[v] + u.e[v]);
                        std::uint64_t j = rank(t, D);
                        s.acc[j] = F_.submul(s.acc[j], c, g.c[k]);
                    }
                } else {
                    h.m.push_back(mono_at(s, i));
                    h.c.push_back(s.acc[i]);
                    s.acc[i] = F_.zero();
                }
            }
        } else {
            while (!sparse_.empty()) {
                auto it = sparse_.begin();
                Mono m = it->first;
                Elem c = it->second;
                sparse_.erase(it);
                int id = scan_reducer(m, D);
                if (id >= 0) {
                    const Poly& g = basis_[id];
                    Mono u = quotient(m, g.m[0]);
                    for (std::size_t k = 1; k < g.m.size(); ++k) {
                        Mono t;
                        for (int v = 0; v < r_; ++v) t.e[v] = static_cast<std::uint8_t>(g.m[k].e[v] + u.e[v]);
                        Elem v = F_.mul(c, g.c[k]);
                        auto jt = sparse_.find(t);
                        if (jt == sparse_.end()) {
                            sparse_.emplace(t, F_.neg(v));
                        } else {
                            jt->second = F_.sub(jt->second, v);
                            if (F_.is_zero(jt->second)) sparse_.erase(jt);
                        }
                    }
                } else {
                    h.m.push_back(m);
                    h.c.push_back(c);
                }
            }
        }
        if (h.m.empty()) return false;
        Elem li = F_.inv(h.c[0]);
        for (auto& c : h.c) c = F_.mul(c, li);
        return add_to_basis(std::move(h), D);
    }

    bool add_to_basis(Poly h, int D) {
        int id = static_cast<int>(basis_.size());
        const Mono lt = h.m[0];
        // Gebauer-Moeller update
        std::vector<Pair> C;
        C.reserve(basis_.size());
        for (int g = 0; g < id; ++g) C.push_back({g, id, lcm(basis_[g].m[0], lt)});
        std::vector<Pair> Dset;
        for (std::size_t a = 0; a < C.size(); ++a) {
            const Pair& p = C[a];
            bool keep = disjoint(basis_[p.i].m[0], lt);
            if (!keep) {
                keep = true;
                for (std::size_t b = a + 1; b < C.size() && keep; ++b)
                    if (divides(C[b].lcm, p.lcm)) keep = false;
                for (std::size_t b = 0; b < Dset.size() && keep; ++b)
                    if (divides(Dset[b].lcm, p.lcm)) keep = false;
            }
            if (keep) Dset.push_back(p);
        }
        std::vector<Pair> E;
        for (const auto& p : Dset)
            if (!disjoint(basis_[p.i].m[0], lt)) E.push_back(p);
        for (auto& [deg, vec] : pairs_) {
            if (deg <= D) continue;
            std::vector<Pair> kept;
            kept.reserve(vec.size());
            for (const auto& p : vec) {
                bool drop = divides(lt, p.lcm) && !(lcm(basis_[p.i].m[0], lt) == p.lcm) &&
                            !(lcm(basis_[p.j].m[0], lt) == p.lcm);
                if (!drop) kept.push_back(p);
            }
            vec.swap(kept);
        }
        for (const auto& p : E) pairs_[degree_of(p.lcm)].push_back(p);
        for (auto it = pairs_.begin(); it != pairs_.end();) {
            if (it->second.empty())
                it = pairs_.erase(it);
            else
                ++it;
        }
        basis_.push_back(std::move(h));
        Slice& s = slices_[D];
        if (s.dense) s.red[rank(lt, D)] = id;
        int nz = 0, var = -1;
        for (int i = 0; i < r_; ++i)
            if (lt.e[i]) {
                ++nz;
                var = i;
            }
        if (nz == 1 && (pure_[var] < 0 || lt.e[var] < pure_[var])) pure_[var] = lt.e[var];
        if (opt_.stop_when_zero_dim)
            return std::all_of(pure_.begin(), pure_.end(), [](int k) { return k >= 0; });
        return false;
    }

    void interreduce() {
        // tails of earlier elements may contain leading terms found later in the same degree
        for (std::size_t g = 0; g < basis_.size(); ++g) {
            Poly& p = basis_[g];
            bool needs = false;
            for (std::size_t k = 1; k < p.m.size() && !needs; ++k)
                for (std::size_t o = 0; o < basis_.size() && !needs; ++o)
                    if (o != g && basis_[o].deg <= p.deg && divides(basis_[o].m[0], p.m[k])) needs = true;
            if (!needs) continue;
            std::map<Mono, Elem, SparseCmp> acc(SparseCmp{this});
            for (std::size_t k = 1; k < p.m.size(); ++k) acc.emplace(p.m[k], p.c[k]);
            Poly out;
            out.deg = p.deg;
            out.m.push_back(p.m[0]);
            out.c.push_back(p.c[0]);
            while (!acc.empty()) {
                auto it = acc.begin();
                Mono m = it->first;
                Elem c = it->second;
                acc.erase(it);
                int id = -1;
                for (std::size_t o = 0; o < basis_.size() && id < 0; ++o)
                    if (o != g && basis_[o].deg <= p.deg && divides(basis_[o].m[0], m)) id = static_cast<int>(o);
                if (id < 0) {
                    out.m.push_back(m);
                    out.c.push_back(c);
                    continue;
                }
                const Poly& q = basis_[id];
                Mono u = quotient(m, q.m[0]);
                for (std::size_t k = 1; k < q.m.size(); ++k) {
                    Mono t;
                    for (int v = 0; v < r_; ++v) t.e[v] = static_cast<std::uint8_t>(q.m[k].e[v] + u.e[v]);
                    Elem v = F_.mul(c, q.c[k]);
                    auto jt = acc.find(t);
                    if (jt == acc.end()) {
                        acc.emplace(t, F_.neg(v));
                    } else {
                        jt->second = F_.sub(jt->second, v);
                        if (F_.is_zero(jt->second)) acc.erase(jt);
                    }
                }
            }
            p = std::move(out);
        }
    }

    void fill(GBResult<Elem>& res) const {
        res.pure_power = pure_;
        res.basis.clear();
        std::vector<std::size_t> order(basis_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return greater(basis_[b].m[0], basis_[a].m[0]); });
        for (std::size_t g : order) {
            std::vector<std::pair<Exps, Elem>> t;
            for (std::size_t k = 0; k < basis_[g].m.size(); ++k) {
                Exps e(r_);
                for (int i = 0; i < r_; ++i) e[i] = basis_[g].m[k].e[i];
                t.emplace_back(std::move(e), basis_[g].c[k]);
            }
            res.basis.push_back(std::move(t));
        }
    }

    int r_;
    Field F_;
    GBOptions opt_;
    std::vector<Poly> basis_;
    std::map<int, std::vector<Poly>> inputs_;
    std::map<int, std::vector<Pair>> pairs_;
    std::map<int, Slice> slices_;
    std::map<Mono, Elem, SparseCmp> sparse_{SparseCmp{this}};
    std::vector<int> pure_;
    long long processed_ = 0;
    int tab_deg_ = -1;
    std::vector<std::vector<std::uint64_t>> cnt_, pre_;
};

/// Reduced Groebner basis of homogeneous forms over their cyclotomic field.
GBResult<CycNum> groebner_basis(const std::vector<Form>& polys, const GBOptions& opt = {});

/// Same computation after reducing coefficients through `red`; throws if a denominator vanishes.
GBResult<std::uint32_t> groebner_basis_modp(const std::vector<Form>& polys, const CycReduction& red,
                                            const GBOptions& opt = {});

}  // namespace hypaut

#endif
