#include <doctest.h>

#include <map>

#include "hypaut/groebner.hpp"
#include "test_util.hpp"

using namespace hypaut;

namespace {

using PolyP = std::map<Exps, std::uint32_t>;

// grevlex "a > b"
bool grevlex_greater(const Exps& a, const Exps& b) {
    int da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da > db;
    for (int v = static_cast<int>(a.size()) - 1; v >= 0; --v)
        if (a[v] != b[v]) return a[v] < b[v];
    return false;
}

Exps leading(const PolyP& p) {
    Exps best;
    for (const auto& [e, c] : p)
        if (best.empty() || grevlex_greater(e, best)) best = e;
    return best;
}

bool divides(const Exps& a, const Exps& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// textbook full reduction, independent of the engine's dense tables
PolyP normal_form(PolyP f, const std::vector<PolyP>& G, std::uint32_t p) {
    FpField F{p};
    PolyP rem;
    while (!f.empty()) {
        Exps lt = leading(f);
        std::uint32_t c = f[lt];
        const PolyP* red = nullptr;
        for (const auto& g : G)
            if (divides(leading(g), lt)) {
                red = &g;
                break;
            }
        if (!red) {
            rem[lt] = c;
            f.erase(lt);
            continue;
        }
        Exps glt = leading(*red);
        std::uint32_t k = F.mul(c, F.inv(red->at(glt)));
        for (const auto& [e, gc] : *red) {
            Exps m(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) m[i] = e[i] + lt[i] - glt[i];
            std::uint32_t v = F.sub(f[m], F.mul(k, gc));
            if (v == 0)
                f.erase(m);
            else
                f[m] = v;
        }
    }
    return rem;
}

PolyP to_poly(const std::vector<std::pair<Exps, std::uint32_t>>& t) {
    PolyP out;
    for (const auto& [e, c] : t) out[e] = c;
    return out;
}

PolyP reduce_form(const Form& f, const CycReduction& red) {
    PolyP out;
    for (const auto& t : f.terms()) {
        Exps e = t.exps;
        e.resize(f.nvars(), 0);
        auto v = red(t.coeff);
        REQUIRE(v);
        if (*v) out[e] = *v;
    }
    return out;
}

PolyP spoly(const PolyP& a, const PolyP& b, std::uint32_t p) {
    FpField F{p};
    Exps la = leading(a), lb = leading(b), l(la.size());
    for (std::size_t i = 0; i < l.size(); ++i) l[i] = std::max(la[i], lb[i]);
    PolyP out;
    auto add = [&](const PolyP& g, const Exps& lt, bool neg) {
        std::uint32_t k = F.inv(g.at(lt));
        if (neg) k = F.neg(k);
        for (const auto& [e, c] : g) {
            Exps m(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) m[i] = e[i] + l[i] - lt[i];
            std::uint32_t v = F.add(out[m], F.mul(k, c));
            if (v == 0)
                out.erase(m);
            else
                out[m] = v;
        }
    };
    add(a, la, false);
    add(b, lb, true);
    return out;
}

void check_groebner_property(const std::vector<Form>& input, const CycReduction& red, const GBOptions& opt) {
    auto res = groebner_basis_modp(input, red, opt);
    REQUIRE(res.status == GBStatus::complete);
    std::vector<PolyP> G;
    for (const auto& g : res.basis) G.push_back(to_poly(g));
    for (const auto& f : input) CHECK(normal_form(reduce_form(f, red), G, red.prime()).empty());
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j)
            CHECK(normal_form(spoly(G[i], G[j], red.prime()), G, red.prime()).empty());
    // reduced: monic, and no term of any element divisible by another leading term
    for (std::size_t i = 0; i < G.size(); ++i) {
        CHECK(G[i].at(leading(G[i])) == 1u);
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (i == j) continue;
            for (const auto& [e, c] : G[i]) CHECK_FALSE(divides(leading(G[j]), e));
        }
    }
}

}  // namespace

TEST_SUITE("groebner") {
    TEST_CASE("monomial ideal is its own basis") {
        auto res = groebner_basis({Form::parse("x1^2", 2), Form::parse("x2^2", 2)});
        CHECK(res.status == GBStatus::complete);
        REQUIRE(res.basis.size() == 2);
        CHECK(res.pure_power == std::vector<int>{2, 2});
    }

    TEST_CASE("Fermat cubic partials normalise to monic squares") {
        auto res = groebner_basis(partials(Form::fermat(3, 3)));
        REQUIRE(res.basis.size() == 3);
        for (const auto& g : res.basis) {
            REQUIRE(g.size() == 1);
            CHECK(g[0].second.is_one());
        }
        CHECK(res.all_pure_powers());
    }

    TEST_CASE("Klein quartic partials reach pure powers") {
        auto res = groebner_basis(partials(Form::parse("x1^3*x2 + x2^3*x3 + x3^3*x1")));
        CHECK(res.status == GBStatus::complete);
        CHECK(res.all_pure_powers());
    }

    TEST_CASE("singular cubic never reaches all pure powers") {
        // x1^3 + x2^3 + x1*x2*x3 is singular at (0:0:1)
        auto res = groebner_basis(partials(Form::parse("x1^3 + x2^3 + x1*x2*x3")));
        CHECK(res.status == GBStatus::complete);
        CHECK_FALSE(res.all_pure_powers());
        CHECK(res.pure_power[2] == -1);
    }

    TEST_CASE("Groebner property against a naive reducer") {
        std::mt19937_64 rng(99);
        auto primes = split_primes(1, 1, 5);
        CycReduction red(1, primes[0]);
        for (int it = 0; it < 12; ++it) {
            int r = 2 + it % 3, d = 2 + it % 2;
            std::vector<Form> in;
            for (int k = 0; k < r; ++k) in.push_back(testutil::random_form(rng, r, d, 0.5));
            GBOptions opt;
            CAPTURE(it);
            check_groebner_property(in, red, opt);
            opt.dense_limit = 0;  // forces the sparse path
            check_groebner_property(in, red, opt);
        }
    }

    TEST_CASE("char 0 basis reduces to the mod p basis") {
        std::mt19937_64 rng(5);
        for (int it = 0; it < 6; ++it) {
            int N = it % 2 ? 3 : 1;
            std::vector<Form> in;
            for (int k = 0; k < 3; ++k) in.push_back(testutil::random_form(rng, 3, 2, 0.6, N, 3));
            auto q = groebner_basis(in);
            auto primes = split_primes(N, 1, 11 + it);
            CycReduction red(N, primes[0]);
            auto m = groebner_basis_modp(in, red);
            REQUIRE(q.basis.size() == m.basis.size());
            for (std::size_t g = 0; g < q.basis.size(); ++g) {
                REQUIRE(q.basis[g].size() == m.basis[g].size());
                for (std::size_t k = 0; k < q.basis[g].size(); ++k) {
                    CHECK(q.basis[g][k].first == m.basis[g][k].first);
                    CHECK(*red(q.basis[g][k].second) == m.basis[g][k].second);
                }
            }
        }
    }

    TEST_CASE("early stop and caps") {
        GBOptions opt;
        opt.stop_when_zero_dim = true;
        auto res = groebner_basis(partials(Form::fermat(4, 5)), opt);
        CHECK(res.status == GBStatus::zero_dim);
        opt = GBOptions{};
        opt.max_degree = 3;
        auto capped = groebner_basis(partials(Form::parse("x1^3*x2 + x2^3*x3 + x3^3*x1")), opt);
        CHECK(capped.status == GBStatus::degree_cap);
    }
}
