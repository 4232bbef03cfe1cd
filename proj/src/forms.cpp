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

#include "hypaut/forms.hpp"

#include <algorithm>
#include <numeric>

#include "hypaut/detail/expr_parser.hpp"

namespace hypaut {

namespace {

using SPoly = std::map<Exps, CycNum, std::greater<Exps>>;

void accumulate(SPoly& p, const Exps& e, const CycNum& c) {
    if (c.is_zero()) return;
    auto it = p.find(e);
    if (it == p.end()) {
        p.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

SPoly spoly_mul(const SPoly& a, const SPoly& b) {
    SPoly out;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            Exps e(std::max(ea.size(), eb.size()), 0);
            for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
            for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
            accumulate(out, e, ca * cb);
        }
    }
    return out;
}

int total(const Exps& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

std::string monomial_str(const Exps& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += "x" + std::to_string(i + 1);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

Form::Form(int nvars, int degree, const std::vector<Term>& terms) : r_(nvars), d_(degree) {
    SPoly acc;
    for (const auto& t : terms) {
        if (static_cast<int>(t.exps.size()) != nvars) throw FormError("exponent vector length differs from nvars");
        for (int v : t.exps)
            if (v < 0) throw FormError("negative exponent");
        if (total(t.exps) != degree)
            throw FormError("term " + monomial_str(t.exps) + " has degree " + std::to_string(total(t.exps)) +
                            ", expected " + std::to_string(degree));
        accumulate(acc, t.exps, t.coeff);
    }
    terms_.reserve(acc.size());
    for (auto& [e, c] : acc) terms_.push_back({e, c});
}

Form Form::fermat(int r, int d) {
    std::vector<Term> t;
    for (int i = 0; i < r; ++i) {
        Exps e(r, 0);
        e[i] = d;
        t.push_back({e, CycNum(1)});
    }
    return Form(r, d, t);
}

Form Form::monomial(const Exps& e, const CycNum& c) {
    return Form(static_cast<int>(e.size()), total(e), {{e, c}});
}

int Form::conductor() const {
    long long N = 1;
    for (const auto& t : terms_) N = std::lcm(N, static_cast<long long>(t.coeff.conductor()));
    return static_cast<int>(N);
}

std::optional<CycNum> Form::coeff(const Exps& e) const {
    for (const auto& t : terms_)
        if (t.exps == e) return t.coeff;
    return std::nullopt;
}

std::string Form::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        std::string mono = monomial_str(t.exps);
        CycNum c = t.coeff.reduced();
        bool neg = false;
        std::string ctext;
        if (c.is_monomial_text()) {
            std::string s = c.str();
            if (!s.empty() && s[0] == '-') {
                neg = true;
                s = s.substr(1);
            }
            ctext = s;
        } else {
            ctext = "(" + c.str() + ")";
        }
        std::string term;
        if (mono.empty()) {
            term = ctext;
        } else if (ctext == "1") {
            term = mono;
        } else {
            term = ctext + "*" + mono;
        }
        if (first) {
            out = neg ? "-" + term : term;
        } else {
            out += neg ? " - " : " + ";
            out += term;
        }
        first = false;
    }
    return out;
}

CycNum Form::eval(const std::vector<CycNum>& x) const {
    if (static_cast<int>(x.size()) != r_) throw FormError("point dimension differs from nvars");
    CycNum s(0);
    for (const auto& t : terms_) {
        CycNum m = t.coeff;
        for (int i = 0; i < r_; ++i)
            if (t.exps[i]) m = m * x[i].pow(t.exps[i]);
        s += m;
    }
    return s;
}

Form Form::operator-() const { return scaled(CycNum(-1)); }

Form Form::scaled(const CycNum& c) const {
    Form f(r_, d_);
    if (c.is_zero()) return f;
    for (const auto& t : terms_) f.terms_.push_back({t.exps, t.coeff * c});
    return f;
}

Form operator+(const Form& a, const Form& b) {
    if (a.is_zero() && a.r_ == b.r_) return b;
    if (b.is_zero() && a.r_ == b.r_) return a;
    if (a.r_ != b.r_ || a.d_ != b.d_) throw FormError("adding forms of different shape");
    std::vector<Term> t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return Form(a.r_, a.d_, t);
}

Form operator-(const Form& a, const Form& b) { return a + (-b); }

Form operator*(const Form& a, const Form& b) {
    if (a.r_ != b.r_) throw FormError("multiplying forms in different variable counts");
    std::vector<Term> t;
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) {
            Exps e(a.r_);
            for (int i = 0; i < a.r_; ++i) e[i] = x.exps[i] + y.exps[i];
            t.push_back({e, x.coeff * y.coeff});
        }
    return Form(a.r_, a.d_ + b.d_, t);
}

bool operator==(const Form& a, const Form& b) {
    if (a.r_ != b.r_) return false;
    if (a.terms_.empty() && b.terms_.empty()) return true;
    if (a.d_ != b.d_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].exps != b.terms_[i].exps || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

namespace {

// parse-time polynomial: exponent vectors trimmed of trailing zeros
struct PolyValue {
    SPoly terms;
};

void trim_exps(Exps& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
}

struct PolyOps {
    using Value = PolyValue;
    static constexpr bool allow_vars = true;
    int max_var = 0;

    static Value constant(const CycNum& c) {
        Value v;
        accumulate(v.terms, {}, c);
        return v;
    }
    static bool is_constant(const Value& v) { return v.terms.empty() || (v.terms.size() == 1 && v.terms.begin()->first.empty()); }
    static CycNum constant_value(const Value& v) { return v.terms.empty() ? CycNum(0) : v.terms.begin()->second; }

    Value integer(const std::string& digits) { return constant(CycNum(Rational(digits))); }
    Value zeta(int k) { return constant(CycNum::root_of_unity(k, 1)); }
    template <class Fail>
    Value var(int i, Fail&& fail) {
        if (i > 32) fail("variable index exceeds 32");
        max_var = std::max(max_var, i);
        Exps e(i, 0);
        e[i - 1] = 1;
        Value v;
        v.terms.emplace(e, CycNum(1));
        return v;
    }
    Value add(const Value& a, const Value& b) {
        Value r = a;
        for (const auto& [e, c] : b.terms) accumulate(r.terms, e, c);
        return r;
    }
    Value neg(const Value& a) {
        Value r;
        for (const auto& [e, c] : a.terms) r.terms.emplace(e, -c);
        return r;
    }
    Value sub(const Value& a, const Value& b) { return add(a, neg(b)); }
    Value mul(const Value& a, const Value& b) {
        Value r;
        r.terms = spoly_mul(a.terms, b.terms);
        SPoly clean;
        for (const auto& [e, c] : r.terms) {
            Exps t = e;
            trim_exps(t);
            accumulate(clean, t, c);
        }
        r.terms = std::move(clean);
        return r;
    }
    template <class Fail>
    Value div(const Value& a, const Value& b, Fail&& fail) {
        if (!is_constant(b)) fail("division by a non-constant polynomial");
        CycNum c = constant_value(b);
        if (c.is_zero()) fail("division by zero");
        return mul(a, constant(c.inv()));
    }
    template <class Fail>
    Value pow(const Value& a, long long e, Fail&& fail) {
        if (is_constant(a)) {
            CycNum c = constant_value(a);
            if (e < 0 && c.is_zero()) fail("zero raised to a negative power");
            return constant(c.pow(e));
        }
        if (e < 0) fail("negative power of a non-constant polynomial");
        if (e > 4096) fail("exponent too large");
        Value r = constant(CycNum(1));
        for (long long k = 0; k < e; ++k) r = mul(r, a);
        return r;
    }
};

}  // namespace

Form Form::parse(const std::string& text, int nvars) {
    PolyOps ops;
    detail::ExprParser<PolyOps> p(text, ops);
    PolyValue v = p.parse_all();
    if (v.terms.empty()) throw FormError("the zero polynomial is not a form");
    int r = std::max(nvars, ops.max_var);
    if (nvars > 0 && ops.max_var > nvars)
        throw FormError("variable x" + std::to_string(ops.max_var) + " exceeds nvars " + std::to_string(nvars));
    if (r == 0) r = 1;
    int d = -1;
    for (const auto& [e, c] : v.terms) d = std::max(d, total(e));
    std::vector<Term> terms;
    for (const auto& [e, c] : v.terms) {
        Exps full = e;
        full.resize(r, 0);
        if (total(full) != d) {
            std::string m = monomial_str(full);
            if (m.empty()) m = "1";
            throw FormError("not homogeneous: monomial " + m + " has degree " + std::to_string(total(full)) +
                            ", expected " + std::to_string(d));
        }
        terms.push_back({full, c});
    }
    return Form(r, d, terms);
}

Matrix::Matrix(int n, std::vector<CycNum> entries) : n_(n), a_(std::move(entries)) {
    if (static_cast<int>(a_.size()) != n * n) throw FormError("matrix entry count must be dim^2");
}

Matrix Matrix::identity(int n) { return scalar(n, CycNum(1)); }

Matrix Matrix::scalar(int n, const CycNum& c) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = c;
    return m;
}

Matrix Matrix::diagonal(const std::vector<CycNum>& d) {
    Matrix m(static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::permutation(const std::vector<int>& perm) {
    int n = static_cast<int>(perm.size());
    Matrix m(n);
    for (int j = 0; j < n; ++j) m(perm[j], j) = CycNum(1);
    return m;
}

Matrix Matrix::parse(const std::vector<std::vector<std::string>>& rows) {
    int n = static_cast<int>(rows.size());
    std::vector<CycNum> e;
    e.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) throw FormError("matrix must be square");
        for (const auto& s : row) e.push_back(CycNum::parse(s));
    }
    return Matrix(n, std::move(e));
}

int Matrix::conductor() const {
    long long N = 1;
    for (const auto& x : a_) N = std::lcm(N, static_cast<long long>(x.conductor()));
    return static_cast<int>(N);
}

Matrix Matrix::lift(int N) const {
    Matrix m = *this;
    for (auto& x : m.a_) x = x.lift(N);
    return m;
}

Matrix Matrix::reduced() const {
    Matrix m = *this;
    for (auto& x : m.a_) x = x.reduced();
    return m;
}

bool Matrix::is_identity() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            const CycNum& x = (*this)(i, j);
            if (i == j ? !x.is_one() : !x.is_zero()) return false;
        }
    return true;
}

bool Matrix::is_diagonal() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
}

bool Matrix::is_scalar() const {
    if (!is_diagonal()) return false;
    for (int i = 1; i < n_; ++i)
        if ((*this)(i, i) != (*this)(0, 0)) return false;
    return true;
}

CycNum Matrix::det() const {
    Matrix m = *this;
    CycNum d(1);
    for (int c = 0; c < n_; ++c) {
        int piv = -1;
        for (int i = c; i < n_; ++i)
            if (!m(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) return CycNum(0);
        if (piv != c) {
            for (int j = 0; j < n_; ++j) std::swap(m(piv, j), m(c, j));
            d = -d;
        }
        d = d * m(c, c);
        CycNum inv = m(c, c).inv();
        for (int i = c + 1; i < n_; ++i) {
            if (m(i, c).is_zero()) continue;
            CycNum f = m(i, c) * inv;
            for (int j = c; j < n_; ++j)
                if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

Matrix Matrix::inverse() const {
    Matrix m = *this, inv = identity(n_);
    for (int c = 0; c < n_; ++c) {
        int piv = -1;
        for (int i = c; i < n_; ++i)
            if (!m(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) throw FormError("matrix is singular");
        if (piv != c)
            for (int j = 0; j < n_; ++j) {
                std::swap(m(piv, j), m(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        CycNum p = m(c, c).inv();
        for (int j = 0; j < n_; ++j) {
            if (!m(c, j).is_zero()) m(c, j) = m(c, j) * p;
            if (!inv(c, j).is_zero()) inv(c, j) = inv(c, j) * p;
        }
        for (int i = 0; i < n_; ++i) {
            if (i == c || m(i, c).is_zero()) continue;
            CycNum f = m(i, c);
            for (int j = 0; j < n_; ++j) {
                if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
                if (!inv(c, j).is_zero()) inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

Matrix Matrix::transpose() const {
    Matrix t(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::block(const std::vector<int>& rows, const std::vector<int>& cols) const {
    if (rows.size() != cols.size()) throw FormError("block must be square");
    int k = static_cast<int>(rows.size());
    Matrix b(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) b(i, j) = (*this)(rows[i], cols[j]);
    return b;
}

std::vector<std::vector<std::string>> Matrix::to_strings() const {
    std::vector<std::vector<std::string>> out(n_, std::vector<std::string>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) out[i][j] = (*this)(i, j).str();
    return out;
}

std::size_t Matrix::hash() const {
    std::size_t h = static_cast<std::size_t>(n_);
    for (const auto& x : a_) h = (h ^ x.hash()) * 0x9e3779b97f4a7c15ULL + (h >> 29);
    return h;
}

std::string Matrix::canonical_key() const {
    std::string k = std::to_string(n_);
    for (const auto& x : a_) k += "|" + x.canonical_key();
    return k;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.n_ != b.n_) throw FormError("matrix dimension mismatch");
    int n = a.n_;
    // zeros start at the common conductor so hashes stay comparable
    CycNum zero = CycNum(0).lift(static_cast<int>(std::lcm(a.conductor(), b.conductor())));
    Matrix c(n, std::vector<CycNum>(static_cast<std::size_t>(n) * n, zero));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const CycNum& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                const CycNum& y = b(k, j);
                if (y.is_zero()) continue;
                c(i, j) += x * y;
            }
        }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.n_ != b.n_) throw FormError("matrix dimension mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.n_ != b.n_) throw FormError("matrix dimension mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] -= b.a_[i];
    return c;
}

bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

Form act(const Form& F, const Matrix& A) {
    int r = F.nvars();
    if (A.dim() != r) throw FormError("matrix dimension differs from nvars");
    int N = static_cast<int>(std::lcm(F.conductor(), A.conductor()));
    Matrix B = A.lift(N);
    // memoized powers of the substituted linear forms
    std::vector<std::vector<SPoly>> pw(r);
    std::vector<int> maxe(r, 0);
    for (const auto& t : F.terms())
        for (int i = 0; i < r; ++i) maxe[i] = std::max(maxe[i], t.exps[i]);
    for (int i = 0; i < r; ++i) {
        SPoly lin;
        for (int j = 0; j < r; ++j) {
            if (B(i, j).is_zero()) continue;
            Exps e(r, 0);
            e[j] = 1;
            lin.emplace(e, B(i, j));
        }
        pw[i].push_back(SPoly{{Exps(r, 0), CycNum(1).lift(N)}});
        for (int k = 1; k <= maxe[i]; ++k) pw[i].push_back(spoly_mul(pw[i].back(), lin));
    }
    SPoly acc;
    for (const auto& t : F.terms()) {
        SPoly prod{{Exps(r, 0), t.coeff.lift(N)}};
        for (int i = 0; i < r; ++i)
            if (t.exps[i]) prod = spoly_mul(prod, pw[i][t.exps[i]]);
        for (const auto& [e, c] : prod) accumulate(acc, e, c);
    }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [e, c] : acc) terms.push_back({e, c});
    return Form(r, F.degree(), terms);
}

std::vector<int> block_degrees(const Exps& e, const std::vector<int>& block_sizes) {
    std::vector<int> out;
    std::size_t pos = 0;
    for (int b : block_sizes) {
        int s = 0;
        for (int k = 0; k < b; ++k) s += e.at(pos++);
        out.push_back(s);
    }
    return out;
}

namespace {

void check_blocks(const Form& F, const std::vector<int>& block_sizes) {
    int s = 0;
    for (int b : block_sizes) {
        if (b <= 0) throw FormError("block sizes must be positive");
        s += b;
    }
    if (s != F.nvars()) throw FormError("block sizes must sum to nvars");
}

}  // namespace

Form component(const Form& F, const std::vector<int>& block_sizes, const std::vector<int>& exps) {
    check_blocks(F, block_sizes);
    if (exps.size() != block_sizes.size()) throw FormError("exponent tuple length differs from block count");
    if (std::accumulate(exps.begin(), exps.end(), 0) != F.degree()) throw FormError("exponent tuple must sum to the degree");
    std::vector<Term> t;
    for (const auto& term : F.terms())
        if (block_degrees(term.exps, block_sizes) == exps) t.push_back(term);
    return Form(F.nvars(), F.degree(), t);
}

std::vector<Form> partials(const Form& F) {
    if (F.degree() < 1) throw FormError("partials need degree >= 1");
    std::vector<Form> out;
    for (int i = 0; i < F.nvars(); ++i) {
        std::vector<Term> t;
        for (const auto& term : F.terms()) {
            if (term.exps[i] == 0) continue;
            Exps e = term.exps;
            CycNum c = term.coeff * CycNum(e[i]);
            e[i] -= 1;
            t.push_back({e, c});
        }
        out.emplace_back(F.nvars(), F.degree() - 1, t);
    }
    return out;
}

std::optional<Exps> has_monomial_pattern(const Form& F, const std::vector<int>& block_sizes,
                                         const std::vector<DegreeRange>& pattern) {
    check_blocks(F, block_sizes);
    if (pattern.size() != block_sizes.size()) throw FormError("pattern length differs from block count");
    for (const auto& t : F.terms()) {
        auto bd = block_degrees(t.exps, block_sizes);
        bool ok = true;
        for (std::size_t i = 0; i < bd.size() && ok; ++i) ok = bd[i] >= pattern[i].lo && bd[i] <= pattern[i].hi;
        if (ok) return t.exps;
    }
    return std::nullopt;
}

}  // namespace hypaut
