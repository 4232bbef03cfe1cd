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

#include "hypaut/rational.hpp"

#include <functional>
#include <numeric>
#include <ostream>

namespace hypaut {

namespace {

using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(i128 v) { return v > static_cast<i128>(INT64_MIN) && v <= static_cast<i128>(INT64_MAX); }

bool mpz_fits64(const mpz_class& z) {
    // INT64_MIN is excluded so that negation never overflows
    return mpz_sizeinbase(z.get_mpz_t(), 2) <= 63;
}

std::int64_t mpz_get64(const mpz_class& z) {
    std::uint64_t mag = 0;
    std::size_t count = 0;
    mpz_export(&mag, &count, -1, sizeof(mag), 0, 0, z.get_mpz_t());
    auto v = static_cast<std::int64_t>(mag);
    return sgn(z) < 0 ? -v : v;
}

}  // namespace

mpz_class to_mpz(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 m = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    std::uint64_t limbs[2] = {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(m >> 64)};
    mpz_class z;
    mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
    if (neg) z = -z;
    return z;
}

void Rational::init(long long n) {
    big_.reset();
    d_ = 1;
    if (n == INT64_MIN) {
        n_ = 0;
        set_big(mpq_class(to_mpz(static_cast<i128>(n))));
    } else {
        n_ = n;
    }
}

Rational::Rational(long long n, long long d) {
    if (d == 0) throw DivisionByZero();
    *this = from_i128(n, d);
}

Rational::Rational(const mpz_class& z) { set_big(mpq_class(z)); }

Rational::Rational(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    set_big(std::move(c));
}

Rational::Rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpz_class d(s.substr(slash + 1));
        if (d == 0) throw DivisionByZero();
        mpq_class q(mpz_class(s.substr(0, slash)), d);
        q.canonicalize();
        set_big(std::move(q));
    } else {
        set_big(mpq_class(mpz_class(s)));
    }
}

void Rational::set_big(mpq_class q) {
    if (mpz_fits64(q.get_num()) && mpz_fits64(q.get_den())) {
        n_ = mpz_get64(q.get_num());
        d_ = mpz_get64(q.get_den());
        big_.reset();
    } else {
        n_ = 0;
        d_ = 1;
        big_ = std::make_unique<mpq_class>(std::move(q));
    }
}

void Rational::normalize_big() {
    if (big_) set_big(std::move(*big_));
}

Rational Rational::from_i128(__int128 n, __int128 d) {
    if (d == 0) throw DivisionByZero();
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    if (n == 0) return r;
    if (fits64(n) && fits64(d)) {
        r.n_ = static_cast<std::int64_t>(n);
        r.d_ = static_cast<std::int64_t>(d);
    } else {
        r.big_ = std::make_unique<mpq_class>(to_mpz(n), to_mpz(d));
    }
    return r;
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
}

mpz_class Rational::num() const { return big_ ? mpz_class(big_->get_num()) : to_mpz(n_); }
mpz_class Rational::den() const { return big_ ? mpz_class(big_->get_den()) : to_mpz(d_); }

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(to_mpz(n_), to_mpz(d_));
}

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(n_) / static_cast<double>(d_);
}

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

std::size_t Rational::hash() const {
    if (!big_) {
        std::size_t h = std::hash<std::int64_t>{}(n_);
        return h ^ (std::hash<std::int64_t>{}(d_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
    return std::hash<std::string>{}(big_->get_str());
}

Rational Rational::operator-() const {
    Rational r;
    if (big_) {
        r.set_big(-*big_);
    } else {
        r.n_ = -n_;
        r.d_ = d_;
    }
    return r;
}

Rational Rational::inv() const {
    if (is_zero()) throw DivisionByZero();
    if (big_) {
        Rational r;
        r.set_big(1 / *big_);
        return r;
    }
    return from_i128(d_, n_);
}

Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.d_ == 1 && b.d_ == 1) return Rational::from_i128(static_cast<i128>(a.n_) + b.n_, 1);
        std::int64_t g = std::gcd(a.d_, b.d_);
        i128 n = static_cast<i128>(a.n_) * (b.d_ / g) + static_cast<i128>(b.n_) * (a.d_ / g);
        i128 d = static_cast<i128>(a.d_) * (b.d_ / g);
        return Rational::from_i128(n, d);
    }
    Rational r;
    r.set_big(a.to_mpq() + b.to_mpq());
    return r;
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.n_ == 0 || b.n_ == 0) return Rational();
        std::int64_t g1 = std::gcd(a.n_, b.d_);
        std::int64_t g2 = std::gcd(b.n_, a.d_);
        i128 n = static_cast<i128>(a.n_ / g1) * (b.n_ / g2);
        i128 d = static_cast<i128>(a.d_ / g2) * (b.d_ / g1);
        Rational r;
        if (fits64(n) && fits64(d)) {
            r.n_ = static_cast<std::int64_t>(n);
            r.d_ = static_cast<std::int64_t>(d);
        } else {
            r.big_ = std::make_unique<mpq_class>(to_mpz(n), to_mpz(d));
        }
        return r;
    }
    Rational r;
    r.set_big(a.to_mpq() * b.to_mpq());
    return r;
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inv(); }

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
}

bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return static_cast<i128>(a.n_) * b.d_ < static_cast<i128>(b.n_) * a.d_;
    return a.to_mpq() < b.to_mpq();
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace hypaut
