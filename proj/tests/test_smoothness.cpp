#include <doctest.h>

#include "hypaut/smoothness.hpp"
#include "test_oracles.hpp"
#include "test_util.hpp"

using namespace hypaut;
using oracle::binary_resultant;

TEST_SUITE("smoothness") {
    TEST_CASE("Fermat forms are smooth") {
        for (auto [d, n] : std::vector<std::pair<int, int>>{{3, 1}, {6, 2}, {17, 25}}) {
            auto c = is_smooth(Form::fermat(n + 2, d));
            CAPTURE(d);
            CHECK(c.verdict == Verdict::smooth);
        }
        auto split = is_smooth(Form::fermat(27, 17));
        CHECK(split.method == SmoothMethod::split_variables);
        CHECK(split.parts.size() == 27);
    }

    TEST_CASE("icosahedral binary form is smooth") {
        Form F = Form::parse("x1^11*x2 + 11*x1^6*x2^6 - x1*x2^11");
        auto ps = partials(F);
        CHECK_FALSE(binary_resultant(ps[0], ps[1]).is_zero());
        for (auto s : {SmoothStrategy::char0, SmoothStrategy::modp, SmoothStrategy::automatic}) {
            SmoothOptions o;
            o.strategy = s;
            CHECK(is_smooth(F, o).verdict == Verdict::smooth);
        }
    }

    TEST_CASE("x1^3 x2 is singular at (0,1)") {
        SmoothOptions o;
        o.strategy = SmoothStrategy::char0;
        auto c = is_smooth(Form::parse("x1^3*x2"), o);
        CHECK(c.verdict == Verdict::singular);
        REQUIRE(c.witness);
        CHECK((*c.witness)[0].is_zero());
        CHECK((*c.witness)[1] == CycNum(1));
        auto a = is_smooth(Form::parse("x1^3*x2"));
        CHECK(a.verdict == Verdict::singular);
        CHECK(a.method == SmoothMethod::groebner_char0);
    }

    TEST_CASE("modp alone never reports singular") {
        SmoothOptions o;
        o.strategy = SmoothStrategy::modp;
        auto c = is_smooth(Form::parse("x1^3*x2"), o);
        CHECK(c.verdict == Verdict::undecided);
        CHECK(c.primes_tried.size() == 3);
    }

    TEST_CASE("verdict agrees with the resultant on random binary forms") {
        std::mt19937_64 rng(314);
        int singular = 0;
        for (int it = 0; it < 100; ++it) {
            int d = 3 + it % 4;
            Form F = testutil::random_form(rng, 2, d, 0.5, it % 5 == 0 ? 3 : 1, 3);
            if (F.is_zero()) continue;
            // force some singular cases: square a linear factor in
            if (it % 3 == 0) {
                Form L = testutil::random_form(rng, 2, 1, 1.0, 1, 2);
                Form R = testutil::random_form(rng, 2, d - 2, 0.8, 1, 3);
                if (!L.is_zero() && !R.is_zero()) F = L * L * R;
            }
            auto ps = partials(F);
            bool expected = !binary_resultant(ps[0], ps[1]).is_zero();
            SmoothOptions o;
            o.strategy = it % 2 ? SmoothStrategy::char0 : SmoothStrategy::automatic;
            auto c = is_smooth(F, o);
            CAPTURE(F.str());
            CHECK(c.verdict == (expected ? Verdict::smooth : Verdict::singular));
            if (!expected) ++singular;
            if (c.witness) {
                for (const auto& p : ps) CHECK(p.eval(*c.witness).is_zero());
            }
        }
        CHECK(singular > 10);
    }

    TEST_CASE("modp and char0 agree on small smooth forms") {
        std::mt19937_64 rng(77);
        for (int it = 0; it < 20; ++it) {
            Form F = testutil::random_form(rng, 3, 3 + it % 2, 0.5, it % 2 ? 3 : 1, 3);
            if (F.is_zero()) continue;
            SmoothOptions c0, mp;
            c0.strategy = SmoothStrategy::char0;
            mp.strategy = SmoothStrategy::modp;
            auto a = is_smooth(F, c0), b = is_smooth(F, mp);
            if (b.verdict == Verdict::smooth) CHECK(a.verdict == Verdict::smooth);
            if (a.verdict == Verdict::smooth) CHECK(b.verdict == Verdict::smooth);
        }
    }

    TEST_CASE("split-variables agrees with direct Groebner on block sums") {
        std::vector<std::string> forms = {
            "x1^3*x2 + x2^3*x3 + x3^3*x1 + x4^4",
            "x1^5*x2 + x1*x2^5 + x3^5*x4 + x3*x4^5",
            "x1^4 + x2^4 + x3^3*x4",
            "x1^3 + x2^3 + x3^3 + x4^2*x5",
        };
        for (const auto& s : forms) {
            Form F = Form::parse(s);
            SmoothOptions sp, c0;
            sp.strategy = SmoothStrategy::split;
            c0.strategy = SmoothStrategy::char0;
            auto a = is_smooth(F, sp), b = is_smooth(F, c0);
            CAPTURE(s);
            CHECK(a.method == SmoothMethod::split_variables);
            CHECK(a.verdict == b.verdict);
        }
    }

    TEST_CASE("Todd sextic is smooth by the mod p certificate") {
        std::string s;
        for (int i = 1; i <= 6; ++i) s += "+x" + std::to_string(i) + "^6";
        for (int i = 1; i <= 6; ++i)
            for (int j = 1; j <= 6; ++j)
                if (i != j) s += "+15*x" + std::to_string(i) + "^4*x" + std::to_string(j) + "^2";
        for (int i = 1; i <= 6; ++i)
            for (int j = i + 1; j <= 6; ++j)
                for (int k = j + 1; k <= 6; ++k)
                    s += "-30*x" + std::to_string(i) + "^2*x" + std::to_string(j) + "^2*x" + std::to_string(k) + "^2";
        s += "+240*(1+2*z3)*x1*x2*x3*x4*x5*x6";
        auto c = is_smooth(Form::parse(s));
        CHECK(c.verdict == Verdict::smooth);
        CHECK(c.method == SmoothMethod::groebner_modp);
        CHECK(c.prime % 3 == 1);
        CHECK(c.degree_cap == 25);
    }

    TEST_CASE("smtosm witnesses") {
        auto w = smtosm_witness(Form::parse("x1^3*x3 + x2^4 + x3^4"), 2, 1);
        REQUIRE(w.monomial);
        CHECK(*w.monomial == Exps{3, 0, 1});
        auto v = smtosm_witness(Form::parse("x1^2*x3 + x2^3 + x3^3"), 2, 1);
        REQUIRE(v.monomial);
        CHECK(*v.monomial == Exps{2, 0, 1});
        CHECK_THROWS_AS(smtosm_witness(Form::parse("x1^3 + x2^3 + x3^3"), 2, 1), std::invalid_argument);
        CHECK_THROWS_AS(smtosm_witness(Form::parse("x1^3 + x2^3 + x3^3"), 1, 2), std::invalid_argument);
        CHECK_THROWS_AS(smtosm_witness(Form::parse("x1^3 + x2^3 + x3^3"), 2, 2), std::invalid_argument);
    }

    TEST_CASE("smtosm: randomized, witness always exists") {
        std::mt19937_64 rng(2024);
        int tested = 0;
        for (int it = 0; it < 200 && tested < 25; ++it) {
            int k = 2 + it % 2, a = 1 + it % 2, d = 3 + it % 2;
            int r = k + a;
            // x1 absent from the first block makes F_1 singular at e_1
            std::vector<Term> t;
            for (const auto& e : testutil::all_monomials(r, d)) {
                int tail = 0;
                for (int i = k; i < r; ++i) tail += e[i];
                bool first_block_only = tail == 0;
                if (first_block_only && e[0] > 0) continue;
                std::bernoulli_distribution keep(first_block_only ? 0.7 : (tail == 1 ? 0.5 : 0.35));
                if (keep(rng)) t.push_back({e, testutil::random_scalar(rng, 1, 3)});
            }
            Form F(r, d, t);
            SmoothOptions mp;
            mp.strategy = SmoothStrategy::modp;
            if (F.is_zero() || is_smooth(F, mp).verdict != Verdict::smooth) continue;
            ++tested;
            auto w = smtosm_witness(F, k, a);
            CHECK_FALSE(w.contradiction);
            REQUIRE(w.monomial);
            int tail = 0;
            for (int i = k; i < r; ++i) tail += (*w.monomial)[i];
            CHECK(tail == 1);
        }
        CHECK(tested >= 10);
    }
}
