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

#ifndef HYPAUT_CYCLOTOMIC_HPP
#define HYPAUT_CYCLOTOMIC_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "hypaut/rational.hpp"

namespace hypaut {

int euler_phi(int n);
long long lcm_conductor(long long a, long long b);

/// Integer data for Q(zeta_N): Phi_N and the power-basis images of zeta_N^k.
struct CycTable {
    int N = 1;
    int phi = 1;
    std::vector<long long> Phi;               // monic, Phi[phi] == 1
    std::vector<std::vector<long long>> red;  // red[k] = zeta_N^k, k < N
    int red_bits = 0;                         // bit size of max |red[k][j]|
};

const CycTable& cyc_table(int N);

/// Coefficients of the N-th cyclotomic polynomial, constant term first.
std::vector<long long> cyclotomic_polynomial(int N);

/*
 * Element of Q(zeta_N) in the power basis 1, z, ..., z^{phi(N)-1}.
 * Binary operations lift both sides to the lcm conductor; the result
 * is not reduced to a smaller conductor (use reduced() for that).
 */
class CycNum {
   public:
    CycNum() : N_(1), c_(1) {}
    CycNum(Rational q) : N_(1), c_{std::move(q)} {}
    template <std::integral T>
    CycNum(T n) : N_(1), c_{Rational(n)} {}
    CycNum(int conductor, std::vector<Rational> coeffs);

    static CycNum root_of_unity(int k, long long power = 1);
    static CycNum parse(const std::string& text);

    int conductor() const { return N_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rational rational_part() const { return c_[0]; }

    CycNum lift(int M) const;
    CycNum reduced() const;
    CycNum galois(long long a) const;
    CycNum conj() const { return galois(-1); }

    CycNum operator-() const;
    CycNum inv() const;
    CycNum pow(long long e) const;

    friend CycNum operator+(const CycNum& a, const CycNum& b);
    friend CycNum operator-(const CycNum& a, const CycNum& b);
    friend CycNum operator*(const CycNum& a, const CycNum& b);
    friend CycNum operator/(const CycNum& a, const CycNum& b);
    CycNum& operator+=(const CycNum& b);
    CycNum& operator-=(const CycNum& b);
    CycNum& operator*=(const CycNum& b) { return *this = *this * b; }
    CycNum& operator/=(const CycNum& b) { return *this = *this / b; }

    friend bool operator==(const CycNum& a, const CycNum& b);
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    /// Equality-compatible only among values sharing a conductor.
    std::size_t hash() const;
    /// Injective on values regardless of conductor.
    std::string canonical_key() const;
    /// Text in the scalar syntax, at minimal conductor.
    std::string str() const;
    /// True when str() is a single signed monomial, so no parentheses are needed in products.
    bool is_monomial_text() const;
    std::complex<double> to_complex() const;

   private:
    friend CycNum mul_same(const CycNum& a, const CycNum& b);
    int N_;
    std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const CycNum& a);

}  // namespace hypaut

#endif
