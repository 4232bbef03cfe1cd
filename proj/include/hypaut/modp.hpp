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

#ifndef HYPAUT_MODP_HPP
#define HYPAUT_MODP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "hypaut/cyclotomic.hpp"

namespace hypaut {

bool is_prime_u64(std::uint64_t n);
std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

/// Primes p = 1 mod N in [lo, hi), picked reproducibly from the seed.
std::vector<std::uint32_t> split_primes(int N, int count, std::uint64_t seed, std::uint32_t lo = 1u << 20,
                                        std::uint32_t hi = 1u << 21);

/// Ring map Z[zeta_N][1/m] -> F_p sending zeta_N to a fixed primitive N-th root.
class CycReduction {
   public:
    CycReduction(int N, std::uint32_t p);
    int conductor() const { return N_; }
    std::uint32_t prime() const { return p_; }
    std::uint32_t root() const { return root_; }
    /// nullopt when a denominator vanishes mod p.
    std::optional<std::uint32_t> operator()(const CycNum& x) const;

   private:
    int N_;
    std::uint32_t p_;
    std::uint32_t root_;
};

struct FpField {
    using Elem = std::uint32_t;
    std::uint32_t p;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }
    Elem add(Elem a, Elem b) const {
        std::uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem mul(Elem a, Elem b) const { return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p); }
    Elem inv(Elem a) const { return static_cast<Elem>(invmod(a, p)); }
    /// a - c*b
    Elem submul(Elem a, Elem c, Elem b) const { return sub(a, mul(c, b)); }
};

struct CycField {
    using Elem = CycNum;
    int N = 1;
    Elem zero() const { return CycNum(0).lift(N); }
    Elem one() const { return CycNum(1).lift(N); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const { return a.inv(); }
    Elem submul(const Elem& a, const Elem& c, const Elem& b) const { return a - c * b; }
};

}  // namespace hypaut

#endif
