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

#include "hypaut/smoothness.hpp"

#include <numeric>
#include <stdexcept>

#include "hypaut/groebner.hpp"

namespace hypaut {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::smooth:
            return "smooth";
        case Verdict::singular:
            return "singular";
        case Verdict::undecided:
            return "undecided";
    }
    return "?";
}

const char* to_string(SmoothMethod m) {
    switch (m) {
        case SmoothMethod::groebner_char0:
            return "groebner-char0";
        case SmoothMethod::groebner_modp:
            return "groebner-modp";
        case SmoothMethod::split_variables:
            return "split-variables";
    }
    return "?";
}

SmoothStrategy parse_strategy(const std::string& s) {
    if (s == "auto") return SmoothStrategy::automatic;
    if (s == "char0") return SmoothStrategy::char0;
    if (s == "modp") return SmoothStrategy::modp;
    if (s == "split") return SmoothStrategy::split;
    throw std::invalid_argument("unknown strategy '" + s + "' (expected auto, char0, modp or split)");
}

int macaulay_bound(int r, int d) { return r * (d - 2) + 1; }

std::vector<std::vector<int>> variable_blocks(const Form& F) {
    int r = F.nvars();
    std::vector<int> parent(r);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& t : F.terms()) {
        int first = -1;
        for (int i = 0; i < static_cast<int>(t.exps.size()); ++i) {
            if (!t.exps[i]) continue;
            if (first < 0)
                first = i;
            else
                parent[find(i)] = find(first);
        }
    }
    std::vector<std::vector<int>> blocks;
    std::vector<int> slot(r, -1);
    for (int i = 0; i < r; ++i) {
        int root = find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<int>(blocks.size());
            blocks.emplace_back();
        }
        blocks[slot[root]].push_back(i);
    }
    return blocks;
}

Form restrict_to(const Form& F, const std::vector<int>& vars) {
    std::vector<int> pos(F.nvars(), -1);
    for (std::size_t k = 0; k < vars.size(); ++k) pos.at(vars[k]) = static_cast<int>(k);
    std::vector<Term> out;
    for (const auto& t : F.terms()) {
        Exps e(vars.size(), 0);
        bool inside = true;
        for (int i = 0; i < static_cast<int>(t.exps.size()); ++i) {
            if (!t.exps[i]) continue;
            if (pos[i] < 0) {
                inside = false;
                break;
            }
            e[pos[i]] = t.exps[i];
        }
        if (inside) out.push_back({e, t.coeff});
    }
    return Form(static_cast<int>(vars.size()), F.degree(), out);
}

std::optional<std::vector<CycNum>> find_singular_point(const Form& F, int max_vars) {
    int r = F.nvars();
    if (F.is_zero()) {
        std::vector<CycNum> e(r, CycNum(0));
        e[0] = CycNum(1);
        return e;
    }
    auto ps = partials(F);
    auto vanishes = [&](const std::vector<CycNum>& x) {
        for (const auto& p : ps)
            if (!p.is_zero() && !p.eval(x).is_zero()) return false;
        return true;
    };
    // coordinate points first: cheap and often enough
    for (int i = 0; i < r; ++i) {
        std::vector<CycNum> x(r, CycNum(0));
        x[i] = CycNum(1);
        if (vanishes(x)) return x;
    }
    if (r > max_vars) return std::nullopt;
    std::vector<int> digit(r, 0);
    std::vector<CycNum> x(r);
    for (;;) {
        int i = 0;
        while (i < r && digit[i] == 2) digit[i++] = 0;
        if (i == r) break;
        ++digit[i];
        int lead = -1, nz = 0;
        for (int k = 0; k < r; ++k)
            if (digit[k]) {
                if (lead < 0) lead = k;
                ++nz;
            }
        if (digit[lead] != 1 || nz < 2) continue;
        for (int k = 0; k < r; ++k) x[k] = CycNum(digit[k] == 0 ? 0 : (digit[k] == 1 ? 1 : -1));
        if (vanishes(x)) return x;
    }
    return std::nullopt;
}

namespace {

GBOptions gb_options(const Form& F, const SmoothOptions& opt, int& cap) {
    cap = opt.max_degree > 0 ? opt.max_degree : macaulay_bound(F.nvars(), F.degree());
    GBOptions g;
    g.max_degree = cap;
    g.max_pairs = opt.budget;
    g.stop_when_zero_dim = true;
    g.interreduce = false;
    return g;
}

template <class Elem>
void record(SmoothnessCertificate& c, const GBResult<Elem>& res) {
    c.pure_powers = res.pure_power;
    c.degree_reached = res.degree_reached;
    c.pairs = res.pairs_processed;
    c.missing.clear();
    for (int i = 0; i < static_cast<int>(res.pure_power.size()); ++i)
        if (res.pure_power[i] < 0) c.missing.push_back(i);
}

void attach_witness(SmoothnessCertificate& c, const Form& F, const SmoothOptions& opt) {
    if (opt.search_witness) c.witness = find_singular_point(F);
    if (!c.witness) c.note = "leading-term ideal has no pure power of some variable up to the degree cap";
}

SmoothnessCertificate trivial_cases(const Form& F, bool& done) {
    SmoothnessCertificate c;
    done = true;
    if (F.is_zero()) {
        c.verdict = Verdict::singular;
        c.witness = find_singular_point(F);
        c.note = "zero form";
        return c;
    }
    done = false;
    return c;
}

SmoothnessCertificate run_char0(const Form& F, const SmoothOptions& opt) {
    bool done;
    auto c = trivial_cases(F, done);
    c.method = SmoothMethod::groebner_char0;
    c.conductor = F.conductor();
    if (done) return c;
    int cap;
    GBOptions g = gb_options(F, opt, cap);
    c.degree_cap = cap;
    auto res = groebner_basis(partials(F), g);
    record(c, res);
    if (res.all_pure_powers()) {
        c.verdict = Verdict::smooth;
    } else if (res.status == GBStatus::budget) {
        c.verdict = Verdict::undecided;
        c.note = "pair budget exhausted";
    } else if (res.status == GBStatus::complete || cap >= macaulay_bound(F.nvars(), F.degree())) {
        c.verdict = Verdict::singular;
        attach_witness(c, F, opt);
    } else {
        c.verdict = Verdict::undecided;
        c.note = "degree cap below the Macaulay bound";
    }
    return c;
}

// Only a smooth verdict is trusted from a prime; anything else is undecided here.
SmoothnessCertificate run_modp(const Form& F, const SmoothOptions& opt) {
    bool done;
    auto c = trivial_cases(F, done);
    c.method = SmoothMethod::groebner_modp;
    c.conductor = F.conductor();
    if (done) return c;
    std::vector<std::uint32_t> primes;
    if (opt.prime) {
        std::uint32_t p = *opt.prime;
        if (!is_prime_u64(p) || (p - 1) % static_cast<std::uint32_t>(c.conductor) != 0)
            throw std::invalid_argument("prime must be a prime congruent to 1 mod " + std::to_string(c.conductor));
        primes.push_back(p);
    } else {
        primes = split_primes(c.conductor, opt.primes, opt.seed);
    }
    int cap;
    GBOptions g = gb_options(F, opt, cap);
    c.degree_cap = cap;
    auto ps = partials(F);
    for (std::uint32_t p : primes) {
        c.primes_tried.push_back(p);
        CycReduction red(c.conductor, p);
        GBResult<std::uint32_t> res;
        try {
            res = groebner_basis_modp(ps, red, g);
        } catch (const DivisionByZero&) {
            continue;  // bad prime
        }
        record(c, res);
        if (res.all_pure_powers()) {
            c.verdict = Verdict::smooth;
            c.prime = p;
            c.root = red.root();
            return c;
        }
    }
    c.verdict = Verdict::undecided;
    c.note = "no tried prime certified smoothness";
    return c;
}

SmoothnessCertificate run_direct(const Form& F, const SmoothOptions& opt) {
    if (opt.strategy == SmoothStrategy::char0) return run_char0(F, opt);
    auto m = run_modp(F, opt);
    if (m.verdict != Verdict::undecided || opt.strategy == SmoothStrategy::modp) return m;
    if (opt.search_witness && !F.is_zero()) {
        if (auto w = find_singular_point(F)) {
            SmoothnessCertificate c;
            c.verdict = Verdict::singular;
            c.method = SmoothMethod::groebner_char0;
            c.conductor = F.conductor();
            c.witness = w;
            c.primes_tried = m.primes_tried;
            c.note = "exact singular point found; Groebner run skipped";
            return c;
        }
    }
    auto c = run_char0(F, opt);
    c.primes_tried = m.primes_tried;
    return c;
}

}  // namespace

SmoothnessCertificate is_smooth(const Form& F, const SmoothOptions& opt) {
    if (F.degree() < 2) throw std::invalid_argument("smoothness needs degree at least 2");
    if (opt.strategy == SmoothStrategy::char0 || opt.strategy == SmoothStrategy::modp) return run_direct(F, opt);
    auto blocks = variable_blocks(F);
    if (blocks.size() == 1) return run_direct(F, opt);
    SmoothnessCertificate c;
    c.method = SmoothMethod::split_variables;
    c.conductor = F.conductor();
    c.blocks = blocks;
    c.verdict = Verdict::smooth;
    SmoothOptions inner = opt;
    inner.strategy = SmoothStrategy::automatic;
    for (const auto& b : blocks) {
        auto part = run_direct(restrict_to(F, b), inner);
        if (part.verdict == Verdict::singular) {
            c.verdict = Verdict::singular;
            if (part.witness) {
                std::vector<CycNum> w(F.nvars(), CycNum(0));
                for (std::size_t k = 0; k < b.size(); ++k) w[b[k]] = (*part.witness)[k];
                c.witness = w;
            }
        } else if (part.verdict == Verdict::undecided && c.verdict == Verdict::smooth) {
            c.verdict = Verdict::undecided;
        }
        c.parts.push_back(std::move(part));
    }
    return c;
}

SmtosmResult smtosm_witness(const Form& F, int k, int a, bool check_smooth) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if (a <= 0) throw std::invalid_argument("a must be positive");
    if (F.nvars() != k + a) throw std::invalid_argument("form must have k+a variables");
    if (check_smooth) {
        if (is_smooth(F).verdict != Verdict::smooth) throw std::invalid_argument("form is not smooth");
        std::vector<int> first(k);
        std::iota(first.begin(), first.end(), 0);
        if (is_smooth(restrict_to(F, first)).verdict != Verdict::singular)
            throw std::invalid_argument("restriction to the first k variables is not singular");
    }
    SmtosmResult out;
    for (const auto& t : F.terms()) {
        int tail = 0;
        for (int i = k; i < static_cast<int>(t.exps.size()); ++i) tail += t.exps[i];
        if (tail == 1) {
            Exps e = t.exps;
            e.resize(F.nvars(), 0);
            out.monomial = e;
            return out;
        }
    }
    out.contradiction = true;
    return out;
}

}  // namespace hypaut
