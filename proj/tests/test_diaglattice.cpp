#include <doctest.h>

#include <numeric>

#include "hypaut/diaglattice.hpp"
#include "hypaut/matgroups.hpp"
#include "hypaut/smoothness.hpp"
#include "test_oracles.hpp"
#include "test_util.hpp"

using namespace hypaut;
using namespace oracle;

namespace {

IntMatrix random_int(std::mt19937_64& rng, int r, int c, int span) {
    std::uniform_int_distribution<int> u(-span, span);
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = u(rng);
    return m;
}

}  // namespace

TEST_SUITE("diaglattice") {
    TEST_CASE("Smith form is a unimodular diagonalization with a divisibility chain") {
        std::mt19937_64 rng(11);
        for (int t = 0; t < 200; ++t) {
            std::uniform_int_distribution<int> dim(1, 5);
            int r = dim(rng), c = dim(rng);
            IntMatrix A = random_int(rng, r, c, t % 2 ? 3 : 40);
            SmithForm s = smith_normal_form(A);
            CHECK(s.U * A * s.V == s.D);
            CHECK(abs(det(s.U)) == 1);
            CHECK(abs(det(s.V)) == 1);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j)
                    if (i != j || i >= s.rank) CHECK(s.D(i, j) == 0);
            for (int i = 0; i + 1 < s.rank; ++i) CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
            for (const auto& d : s.divisors) CHECK(d > 0);
            if (r == c) {
                mpz_class prod = 1;
                for (const auto& d : s.divisors) prod *= d;
                CHECK((s.rank == r ? prod : mpz_class(0)) == abs(det(A)));
            }
        }
    }

    TEST_CASE("Fermat forms: singleton blocks give d^r") {
        for (int r = 2; r <= 5; ++r)
            for (int d = 3; d <= 6; ++d) {
                DiagGroup g = block_scalar_group(Form::fermat(r, d), std::vector<int>(r, 1));
                REQUIRE(g.finite);
                mpz_class expect;
                mpz_ui_pow_ui(expect.get_mpz_t(), d, r);
                CHECK(g.order == expect);
                CHECK(check_diag_bound(Form::fermat(r, d), std::vector<int>(r, 1)));
            }
    }

    TEST_CASE("Klein quartic diagonal group has order 28") {
        Form F = Form::parse("x1^3*x2 + x2^3*x3 + x3^3*x1");
        DiagGroup g = block_scalar_group(F, {1, 1, 1});
        CHECK(g.order == 28);
        CHECK(brute_force_order(F, {1, 1, 1}) == 28);
        CHECK(check_diag_bound(F, {1, 1, 1}));
        MatGroup G = closure(g.generators);
        CHECK(G.order() == 28);
        CHECK(preserves(g.generators, F));
    }

    TEST_CASE("single block gives the scalars") {
        std::mt19937_64 rng(5);
        for (int t = 0; t < 10; ++t) {
            Form F = testutil::random_form(rng, 3, 3 + t % 4, 0.4);
            if (F.is_zero()) continue;
            DiagGroup g = block_scalar_group(F, {3});
            CHECK(g.order == F.degree());
        }
    }

    TEST_CASE("loop forms: circulant determinant below d^r") {
        for (int r = 2; r <= 5; ++r)
            for (int d = 3; d <= 6; ++d) {
                std::vector<Term> t;
                for (int i = 0; i < r; ++i) {
                    Exps e(r, 0);
                    e[i] = d - 1;
                    e[(i + 1) % r] += 1;
                    t.push_back({e, CycNum(1)});
                }
                Form F(r, d, t);
                DiagGroup g = block_scalar_group(F, std::vector<int>(r, 1));
                mpz_class circ, pw;
                mpz_ui_pow_ui(circ.get_mpz_t(), d - 1, r);
                circ += (r % 2 ? 1 : -1);
                mpz_ui_pow_ui(pw.get_mpz_t(), d, r);
                CHECK(g.order == circ);
                CHECK(g.order < pw);
            }
    }

    TEST_CASE("infinite stabilizers are flagged") {
        Form F = Form::parse("x1^2*x2^2*x3 + x3^5", 3);
        DiagGroup g = block_scalar_group(F, {1, 1, 1});
        CHECK_FALSE(g.finite);
        CHECK_FALSE(check_diag_bound(F, {1, 1, 1}));
        CHECK(brute_force_order(F, {1, 1, 1}) == -1);
    }

    TEST_CASE("SNF orders match brute force on random smooth forms") {
        std::mt19937_64 rng(2026);
        SmoothOptions opt;
        opt.strategy = SmoothStrategy::modp;
        int tested = 0, fermat_like = 0;
        for (int it = 0; it < 400 && tested < 60; ++it) {
            int r = 2 + it % 2, d = 3 + (it / 2) % 3;
            Form F = random_sparse_form(rng, r, d);
            if (is_smooth(F, opt).verdict != Verdict::smooth) continue;
            ++tested;
            for (const auto& sizes : compositions(r)) {
                DiagGroup g = block_scalar_group(F, sizes);
                long long bf = brute_force_order(F, sizes);
                REQUIRE(g.finite);
                CHECK(mpz_class(static_cast<long>(bf)) == g.order);
                CHECK(check_diag_bound(F, sizes));
                CHECK(preserves(g.generators, F));
            }
            DiagGroup s = block_scalar_group(F, std::vector<int>(r, 1));
            mpz_class full;
            mpz_ui_pow_ui(full.get_mpz_t(), d, r);
            CHECK((s.order == full) == only_pure_powers(F));
            fermat_like += only_pure_powers(F);
        }
        CHECK(tested >= 50);
        CHECK(fermat_like >= 1);
    }

    TEST_CASE("generators generate a group of the computed order") {
        std::mt19937_64 rng(8);
        for (int t = 0; t < 15; ++t) {
            Form F = random_sparse_form(rng, 3, 3 + t % 3);
            DiagGroup g = block_scalar_group(F, {1, 1, 1});
            if (!g.finite) continue;
            std::vector<Matrix> gens = g.generators;
            if (gens.empty()) gens.push_back(Matrix::identity(3));
            CHECK(mpz_class(static_cast<unsigned long>(closure(gens).order())) == g.order);
        }
    }

    TEST_CASE("roots of unity angles") {
        CHECK(root_of_unity_angle(CycNum(1)) == std::optional<Rational>(Rational(0)));
        CHECK(root_of_unity_angle(CycNum(-1)) == std::optional<Rational>(Rational(1, 2)));
        CHECK(root_of_unity_angle(CycNum::root_of_unity(12, 5)) == std::optional<Rational>(Rational(5, 12)));
        CHECK(root_of_unity_angle(-CycNum::root_of_unity(3)) == std::optional<Rational>(Rational(5, 6)));
        CHECK_FALSE(root_of_unity_angle(CycNum(2)).has_value());
        CHECK_FALSE(root_of_unity_angle(CycNum::parse("1+z3")  * CycNum(2)).has_value());
        for (int k = 0; k < 20; ++k) CHECK(exp_2pi_i(Rational(k, 20)) == CycNum::root_of_unity(20, k));
    }

    TEST_CASE("semi-permutations of Fermat forms") {
        for (auto [r, d] : {std::pair{3, 3}, {3, 5}, {4, 3}, {5, 3}}) {
            Form F = Form::fermat(r, d);
            SemiPermGroup s = semi_permutation_group(F);
            long long fact = 1;
            for (int i = 2; i <= r; ++i) fact *= i;
            mpz_class expect;
            mpz_ui_pow_ui(expect.get_mpz_t(), d, r);
            expect *= static_cast<long>(fact);
            CHECK(s.order == expect);
            CHECK(static_cast<long long>(s.permutations.size()) == fact);
            CHECK(preserves(s.representatives, F));
            if (r <= 4) CHECK(mpz_class(static_cast<unsigned long>(closure(s.generators()).order())) == expect);
        }
    }

    TEST_CASE("semi-permutations of the octahedral pair divide 41472") {
        Form F = Form::parse("x1^5*x2+x2^5*x1+x3^5*x4+x4^5*x3");
        SemiPermGroup s = semi_permutation_group(F);
        REQUIRE(s.finite);
        CHECK(preserves(s.generators(), F));
        MatGroup G = closure(s.generators());
        CHECK(mpz_class(static_cast<unsigned long>(G.order())) == s.order);
        CHECK(41472 % G.order() == 0);
        CHECK(s.permutations.size() == 8);
    }

    TEST_CASE("semi-permutations with twisted coefficients") {
        Form F = Form::parse("x1^3*x2 + x2^3*x3 + x3^3*x1");
        SemiPermGroup s = semi_permutation_group(F);
        CHECK(s.order == 84);
        CHECK(closure(s.generators()).order() == 84);
        // a swap that needs a nontrivial diagonal part: x2 -> z4 x1 maps x2^4 to x1^4
        Form H = Form::parse("x1^4 + x2^4 + x1^2*x2^2*z4^2", 2);
        SemiPermGroup h = semi_permutation_group(H);
        CHECK(preserves(h.representatives, H));
        CHECK(closure(h.generators()).order() == h.order.get_ui());
    }

    TEST_CASE("generic ternary cubic has only scalar semi-permutations") {
        std::mt19937_64 rng(99);
        Form F = testutil::random_form(rng, 3, 3, 1.0, 1, 9);
        SemiPermGroup s = semi_permutation_group(F);
        CHECK(s.order == 3);
        CHECK(s.permutations.size() == 1);
    }

    TEST_CASE("block sizes are validated") {
        Form F = Form::fermat(3, 3);
        CHECK_THROWS(block_scalar_group(F, {1, 1}));
        CHECK_THROWS(semi_permutation_group(Form::fermat(13, 3)));
    }
}
