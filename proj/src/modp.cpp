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

#include "hypaut/modp.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <tuple>

namespace hypaut {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    unsigned __int128 r = 1, x = b % p;
    while (e) {
        if (e & 1) r = r * x % p;
        x = x * x % p;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw DivisionByZero();
    return powmod(a, p - 2, p);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint32_t> split_primes(int N, int count, std::uint64_t seed, std::uint32_t lo, std::uint32_t hi) {
    static std::mutex mu;
    static std::map<std::tuple<int, std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> cache;
    std::vector<std::uint32_t> pool;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto& cached = cache[{N, lo, hi}];
        if (cached.empty()) {
            std::uint64_t step = static_cast<std::uint64_t>(N) % 2 == 0 ? N : 2ULL * N;
            std::uint64_t start = lo + ((1 + step - lo % step) % step);
            for (std::uint64_t p = start; p < hi; p += step)
                if (p % N == 1 % N && is_prime_u64(p)) cached.push_back(static_cast<std::uint32_t>(p));
        }
        pool = cached;
    }
    if (static_cast<int>(pool.size()) < count) throw std::runtime_error("not enough split primes in range");
    std::mt19937_64 rng(seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(count);
    return pool;
}

CycReduction::CycReduction(int N, std::uint32_t p) : N_(N), p_(p) {
    if ((p - 1) % static_cast<std::uint32_t>(N) != 0) throw std::invalid_argument("prime must be 1 mod the conductor");
    std::vector<int> qs;
    int m = N;
    for (int q = 2; q * q <= m; ++q)
        if (m % q == 0) {
            qs.push_back(q);
            while (m % q == 0) m /= q;
        }
    if (m > 1) qs.push_back(m);
    for (std::uint64_t g = 2;; ++g) {
        std::uint64_t x = powmod(g, (p - 1) / N, p);
        bool primitive = true;
        for (int q : qs)
            if (powmod(x, N / q, p) == 1) primitive = false;
        if (primitive) {
            root_ = static_cast<std::uint32_t>(x);
            break;
        }
    }
}

std::optional<std::uint32_t> CycReduction::operator()(const CycNum& x) const {
    int M = x.conductor();
    if (N_ % M != 0) throw std::invalid_argument("value conductor does not divide the reduction conductor");
    std::uint64_t z = powmod(root_, N_ / M, p_);
    std::uint64_t acc = 0, zp = 1;
    for (const auto& q : x.coeffs()) {
        if (!q.is_zero()) {
            mpz_class n = q.num(), d = q.den();
            std::uint64_t dm = mpz_fdiv_ui(d.get_mpz_t(), p_);
            if (dm == 0) return std::nullopt;
            std::uint64_t nm = mpz_fdiv_ui(n.get_mpz_t(), p_);
            std::uint64_t v = nm * invmod(dm, p_) % p_;
            acc = (acc + v * zp) % p_;
        }
        zp = zp * z % p_;
    }
    return static_cast<std::uint32_t>(acc);
}

}  // namespace hypaut
