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

#include "hypaut/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <ostream>
#include <shared_mutex>
#include <unordered_map>

#include "hypaut/detail/expr_parser.hpp"

namespace hypaut {

namespace {

using i128 = __int128;

int bit_length(unsigned __int128 v) {
    int b = 0;
    while (v) {
        ++b;
        v >>= 1;
    }
    return b;
}

unsigned __int128 uabs(i128 v) { return v < 0 ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v); }

std::vector<long long> poly_divide_monic(std::vector<long long> num, const std::vector<long long>& den) {
    int dn = static_cast<int>(num.size()) - 1;
    int dd = static_cast<int>(den.size()) - 1;
    std::vector<long long> q(dn - dd + 1, 0);
    for (int i = dn; i >= dd; --i) {
        long long c = num[i];
        q[i - dd] = c;
        if (c == 0) continue;
        for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    for (int i = 0; i < dd; ++i)
        if (num[i] != 0) throw std::logic_error("cyclotomic division left a remainder");
    return q;
}

std::unique_ptr<CycTable> build_table(int N) {
    auto t = std::make_unique<CycTable>();
    t->N = N;
    t->Phi = cyclotomic_polynomial(N);
    t->phi = static_cast<int>(t->Phi.size()) - 1;
    int phi = t->phi;
    t->red.assign(N, std::vector<long long>(phi, 0));
    std::vector<long long> cur(phi, 0);
    cur[0] = 1;
    long long maxabs = 0;
    for (int k = 0; k < N; ++k) {
        if (phi == 0) break;
        t->red[k] = cur;
        for (long long v : cur) maxabs = std::max(maxabs, std::llabs(v));
        long long top = cur[phi - 1];
        for (int j = phi - 1; j > 0; --j) cur[j] = cur[j - 1] - top * t->Phi[j];
        cur[0] = -top * t->Phi[0];
    }
    t->red_bits = bit_length(static_cast<unsigned __int128>(maxabs));
    return t;
}

std::shared_mutex table_mutex;
std::unordered_map<int, std::unique_ptr<CycTable>> table_cache;

}  // namespace

int euler_phi(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

long long lcm_conductor(long long a, long long b) { return std::lcm(a, b); }

std::vector<long long> cyclotomic_polynomial(int N) {
    if (N < 1) throw std::invalid_argument("cyclotomic polynomial needs N >= 1");
    std::vector<long long> p(N + 1, 0);
    p[0] = -1;
    p[N] = 1;
    for (int d = 1; d < N; ++d)
        if (N % d == 0) p = poly_divide_monic(p, cyc_table(d).Phi);
    return p;
}

const CycTable& cyc_table(int N) {
    if (N < 1) throw std::invalid_argument("conductor must be positive");
    {
        std::shared_lock lock(table_mutex);
        auto it = table_cache.find(N);
        if (it != table_cache.end()) return *it->second;
    }
    // build outside the lock; divisor tables are requested recursively
    auto t = build_table(N);
    std::unique_lock lock(table_mutex);
    auto [it, inserted] = table_cache.emplace(N, std::move(t));
    return *it->second;
}

CycNum::CycNum(int conductor, std::vector<Rational> coeffs) : N_(conductor), c_(std::move(coeffs)) {
    if (conductor < 1) throw std::invalid_argument("conductor must be positive");
    if (static_cast<int>(c_.size()) != euler_phi(conductor))
        throw std::invalid_argument("coefficient vector length must equal phi(N)");
}

CycNum CycNum::root_of_unity(int k, long long power) {
    if (k < 1) throw std::invalid_argument("root of unity order must be positive");
    const CycTable& t = cyc_table(k);
    long long e = ((power % k) + k) % k;
    std::vector<Rational> c(t.phi);
    for (int j = 0; j < t.phi; ++j) c[j] = Rational(t.red[e][j]);
    return CycNum(k, std::move(c));
}

bool CycNum::is_zero() const {
    for (const auto& q : c_)
        if (!q.is_zero()) return false;
    return true;
}

bool CycNum::is_rational() const {
    for (std::size_t j = 1; j < c_.size(); ++j)
        if (!c_[j].is_zero()) return false;
    return true;
}

bool CycNum::is_one() const { return is_rational() && c_[0].is_one(); }

CycNum CycNum::lift(int M) const {
    if (M == N_) return *this;
    if (M % N_ != 0) throw std::invalid_argument("lift target must be a multiple of the conductor");
    const CycTable& t = cyc_table(M);
    int step = M / N_;
    std::vector<Rational> out(t.phi);
    if (N_ == 1) {
        out[0] = c_[0];
        return CycNum(M, std::move(out));
    }
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        const auto& r = t.red[(j * step) % M];
        for (int k = 0; k < t.phi; ++k)
            if (r[k] != 0) out[k] += c_[j] * Rational(r[k]);
    }
    return CycNum(M, std::move(out));
}

namespace {

// Solve E y = x over Q where the columns of E are the lifts of zeta_M^j.
bool solve_descent(const CycNum& x, int M, std::vector<Rational>& y) {
    int N = x.conductor();
    const CycTable& tn = cyc_table(N);
    int pm = euler_phi(M);
    int step = N / M;
    int rows = tn.phi;
    std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(pm + 1));
    for (int j = 0; j < pm; ++j) {
        const auto& r = tn.red[(static_cast<long long>(j) * step) % N];
        for (int i = 0; i < rows; ++i) A[i][j] = Rational(r[i]);
    }
    for (int i = 0; i < rows; ++i) A[i][pm] = x.coeffs()[i];
    std::vector<int> pivcol;
    int row = 0;
    for (int col = 0; col < pm && row < rows; ++col) {
        int piv = -1;
        for (int i = row; i < rows; ++i)
            if (!A[i][col].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(A[piv], A[row]);
        Rational inv = A[row][col].inv();
        for (int j = col; j <= pm; ++j) A[row][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == row || A[i][col].is_zero()) continue;
            Rational f = A[i][col];
            for (int j = col; j <= pm; ++j)
                if (!A[row][j].is_zero()) A[i][j] -= f * A[row][j];
        }
        pivcol.push_back(col);
        ++row;
    }
    for (int i = row; i < rows; ++i)
        if (!A[i][pm].is_zero()) return false;
    y.assign(pm, Rational());
    for (int i = 0; i < row; ++i) y[pivcol[i]] = A[i][pm];
    return true;
}

}  // namespace

CycNum CycNum::reduced() const {
    if (N_ == 1) return *this;
    if (is_rational()) return CycNum(c_[0]);
    std::vector<int> divs;
    for (int m = 1; m < N_; ++m)
        if (N_ % m == 0 && m % 4 != 2) divs.push_back(m);
    for (int m : divs) {
        std::vector<Rational> y;
        if (solve_descent(*this, m, y)) return CycNum(m, std::move(y));
    }
    if (N_ % 4 == 2) {
        std::vector<Rational> y;
        if (solve_descent(*this, N_ / 2, y)) return CycNum(N_ / 2, std::move(y));
    }
    return *this;
}

CycNum CycNum::galois(long long a) const {
    if (N_ == 1) return *this;
    long long e = ((a % N_) + N_) % N_;
    if (std::gcd(e, static_cast<long long>(N_)) != 1) throw std::invalid_argument("galois exponent must be a unit");
    const CycTable& t = cyc_table(N_);
    std::vector<Rational> out(t.phi);
    for (int j = 0; j < t.phi; ++j) {
        if (c_[j].is_zero()) continue;
        const auto& r = t.red[(j * e) % N_];
        for (int k = 0; k < t.phi; ++k)
            if (r[k] != 0) out[k] += c_[j] * Rational(r[k]);
    }
    return CycNum(N_, std::move(out));
}

CycNum CycNum::operator-() const {
    CycNum r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

CycNum operator+(const CycNum& a, const CycNum& b) {
    CycNum r = a;
    r += b;
    return r;
}

CycNum operator-(const CycNum& a, const CycNum& b) {
    CycNum r = a;
    r -= b;
    return r;
}

CycNum& CycNum::operator+=(const CycNum& b) {
    if (b.N_ == 1) {
        c_[0] += b.c_[0];
        return *this;
    }
    if (N_ == b.N_) {
        for (std::size_t j = 0; j < c_.size(); ++j)
            if (!b.c_[j].is_zero()) c_[j] += b.c_[j];
        return *this;
    }
    int M = static_cast<int>(std::lcm(N_, b.N_));
    if (M != N_) *this = lift(M);
    CycNum bl = b.lift(M);
    for (std::size_t j = 0; j < c_.size(); ++j)
        if (!bl.c_[j].is_zero()) c_[j] += bl.c_[j];
    return *this;
}

CycNum& CycNum::operator-=(const CycNum& b) { return *this += -b; }

CycNum mul_same(const CycNum& a, const CycNum& b) {
    const int N = a.N_;
    const CycTable& t = cyc_table(N);
    const int phi = t.phi;

    // integer fast path: clear denominators, convolve in 128-bit, reduce with the zeta table
    auto clear = [&](const CycNum& x, std::vector<i128>& ints, i128& L) -> bool {
        L = 1;
        for (const auto& q : x.c_) {
            if (!q.is_small()) return false;
            if (q.is_zero()) continue;
            L = std::lcm(static_cast<long long>(L), q.small_den());
            if (L > (static_cast<i128>(1) << 40)) return false;
        }
        ints.resize(phi);
        for (int j = 0; j < phi; ++j) {
            const auto& q = x.c_[j];
            ints[j] = q.is_zero() ? 0 : static_cast<i128>(q.small_num()) * (L / q.small_den());
            if (uabs(ints[j]) > (static_cast<unsigned __int128>(1) << 40)) return false;
        }
        return true;
    };
    std::vector<i128> A, B;
    i128 La, Lb;
    int logN = bit_length(static_cast<unsigned __int128>(N));
    if (2 * 40 + 2 * logN + t.red_bits < 124 && clear(a, A, La) && clear(b, B, Lb)) {
        std::vector<i128> buf(N, 0);
        for (int i = 0; i < phi; ++i) {
            if (A[i] == 0) continue;
            for (int j = 0; j < phi; ++j) {
                if (B[j] == 0) continue;
                int k = i + j;
                if (k >= N) k -= N;
                buf[k] += A[i] * B[j];
            }
        }
        std::vector<i128> out(phi, 0);
        for (int k = 0; k < N; ++k) {
            if (buf[k] == 0) continue;
            const auto& r = t.red[k];
            for (int j = 0; j < phi; ++j)
                if (r[j] != 0) out[j] += buf[k] * r[j];
        }
        std::vector<Rational> c(phi);
        i128 den = La * Lb;
        for (int j = 0; j < phi; ++j)
            if (out[j] != 0) c[j] = Rational::from_i128(out[j], den);
        return CycNum(N, std::move(c));
    }

    std::vector<Rational> buf(N);
    for (int i = 0; i < phi; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (int j = 0; j < phi; ++j) {
            if (b.c_[j].is_zero()) continue;
            buf[(i + j) % N] += a.c_[i] * b.c_[j];
        }
    }
    std::vector<Rational> c(phi);
    for (int k = 0; k < N; ++k) {
        if (buf[k].is_zero()) continue;
        const auto& r = t.red[k];
        for (int j = 0; j < phi; ++j)
            if (r[j] != 0) c[j] += buf[k] * Rational(r[j]);
    }
    return CycNum(N, std::move(c));
}

CycNum operator*(const CycNum& a, const CycNum& b) {
    if (a.N_ == 1 || b.N_ == 1) {
        const CycNum& s = a.N_ == 1 ? a : b;
        const CycNum& v = a.N_ == 1 ? b : a;
        const Rational& q = s.c_[0];
        if (q.is_zero()) return CycNum(0);
        CycNum r = v;
        if (!q.is_one())
            for (auto& x : r.c_)
                if (!x.is_zero()) x *= q;
        return r;
    }
    if (a.N_ == b.N_) return mul_same(a, b);
    int M = static_cast<int>(std::lcm(a.N_, b.N_));
    return mul_same(a.lift(M), b.lift(M));
}

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// returns quotient, remainder left in a
QPoly poly_divmod(QPoly& a, const QPoly& b) {
    trim(a);
    int db = static_cast<int>(b.size()) - 1;
    if (static_cast<int>(a.size()) - 1 < db) return {};
    QPoly q(a.size() - db, Rational());
    Rational lead_inv = b.back().inv();
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        if (a[i].is_zero()) continue;
        Rational c = a[i] * lead_inv;
        q[i - db] = c;
        for (int j = 0; j <= db; ++j)
            if (!b[j].is_zero()) a[i - db + j] -= c * b[j];
    }
    trim(a);
    return q;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!a[i].is_zero() && !b[j].is_zero()) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rational());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

}  // namespace

CycNum CycNum::inv() const {
    if (is_zero()) throw DivisionByZero();
    if (N_ == 1) return CycNum(c_[0].inv());
    const CycTable& t = cyc_table(N_);
    // extended Euclid: track s with s*a = r (mod Phi)
    QPoly r0(t.Phi.begin(), t.Phi.end());
    QPoly r1 = c_;
    trim(r1);
    QPoly s0, s1{Rational(1)};
    while (r1.size() > 1) {
        QPoly rem = r0;
        QPoly q = poly_divmod(rem, r1);
        QPoly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 is a nonzero constant since Phi is irreducible
    Rational k = r1[0].inv();
    std::vector<Rational> out(t.phi);
    QPoly s = s1;
    QPoly phi_poly(t.Phi.begin(), t.Phi.end());
    poly_divmod(s, phi_poly);
    for (std::size_t j = 0; j < s.size() && j < out.size(); ++j) out[j] = s[j] * k;
    return CycNum(N_, std::move(out));
}

CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inv(); }

CycNum CycNum::pow(long long e) const {
    if (e < 0) return inv().pow(-e);
    CycNum result(1), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool operator==(const CycNum& a, const CycNum& b) {
    if (a.N_ == b.N_) return a.c_ == b.c_;
    int M = static_cast<int>(std::lcm(a.N_, b.N_));
    return a.lift(M).c_ == b.lift(M).c_;
}

std::size_t CycNum::hash() const {
    std::size_t h = static_cast<std::size_t>(N_) * 0x100000001b3ULL;
    for (const auto& q : c_) h = (h ^ q.hash()) * 0x100000001b3ULL;
    return h;
}

std::string CycNum::canonical_key() const {
    CycNum r = reduced();
    std::string k = std::to_string(r.N_) + ":";
    for (std::size_t j = 0; j < r.c_.size(); ++j) {
        if (j) k += ',';
        k += r.c_[j].str();
    }
    return k;
}

std::string CycNum::str() const {
    CycNum r = reduced();
    std::string out;
    bool first = true;
    for (std::size_t j = 0; j < r.c_.size(); ++j) {
        const Rational& q = r.c_[j];
        if (q.is_zero()) continue;
        bool neg = q.sign() < 0;
        Rational mag = neg ? -q : q;
        std::string atom;
        if (j > 0) {
            atom = "z" + std::to_string(r.N_);
            if (j > 1) atom += "^" + std::to_string(j);
        }
        std::string term;
        if (j == 0) {
            term = mag.str();
        } else if (mag.is_one()) {
            term = atom;
        } else {
            term = mag.str() + "*" + atom;
        }
        if (first) {
            out = neg ? "-" + term : term;
        } else {
            out += neg ? " - " : " + ";
            out += term;
        }
        first = false;
    }
    return first ? "0" : out;
}

bool CycNum::is_monomial_text() const {
    CycNum r = reduced();
    int nz = 0;
    for (const auto& q : r.c_)
        if (!q.is_zero()) ++nz;
    return nz <= 1;
}

std::complex<double> CycNum::to_complex() const {
    std::complex<double> s = 0;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / N_;
        s += c_[j].to_double() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

std::ostream& operator<<(std::ostream& os, const CycNum& a) { return os << a.str(); }

namespace {

struct ScalarOps {
    using Value = CycNum;
    static constexpr bool allow_vars = false;
    Value integer(const std::string& digits) { return CycNum(Rational(digits)); }
    Value zeta(int k) { return CycNum::root_of_unity(k, 1); }
    template <class Fail>
    Value var(int, Fail&&) {
        return CycNum();
    }
    Value add(const Value& a, const Value& b) { return a + b; }
    Value sub(const Value& a, const Value& b) { return a - b; }
    Value mul(const Value& a, const Value& b) { return a * b; }
    Value neg(const Value& a) { return -a; }
    template <class Fail>
    Value div(const Value& a, const Value& b, Fail&& fail) {
        if (b.is_zero()) fail("division by zero");
        return a / b;
    }
    template <class Fail>
    Value pow(const Value& a, long long e, Fail&& fail) {
        if (e < 0 && a.is_zero()) fail("zero raised to a negative power");
        return a.pow(e);
    }
};

}  // namespace

CycNum CycNum::parse(const std::string& text) {
    ScalarOps ops;
    detail::ExprParser<ScalarOps> p(text, ops);
    return p.parse_all();
}

}  // namespace hypaut
