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


#include "hypaut/sequences.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hypaut {

SubdegreeSequence::SubdegreeSequence(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("subdegree sequence must be nonempty");
    for (int p : parts_)
        if (p < 1) throw std::invalid_argument("subdegrees must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<int>());
}

SubdegreeSequence SubdegreeSequence::parse(const std::string& text) {
    std::vector<int> parts;
    std::string s = text;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        auto caret = tok.find('^');
        int r, k = 1;
        try {
            std::size_t used = 0;
            r = std::stoi(tok.substr(0, caret), &used);
            if (used != (caret == std::string::npos ? tok.size() : caret)) throw std::invalid_argument(tok);
            if (caret != std::string::npos) {
                std::string e = tok.substr(caret + 1);
                k = std::stoi(e, &used);
                if (used != e.size()) throw std::invalid_argument(tok);
            }
        } catch (const std::logic_error&) {
            throw std::invalid_argument("bad subdegree token '" + tok + "'");
        }
        if (r < 1 || k < 0) throw std::invalid_argument("bad subdegree token '" + tok + "'");
        parts.insert(parts.end(), k, r);
    }
    return SubdegreeSequence(std::move(parts));
}

int SubdegreeSequence::total() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::vector<std::pair<int, int>> SubdegreeSequence::exponential_type() const {
    std::vector<std::pair<int, int>> out;
    for (int p : parts_) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.push_back({p, 1});
    }
    return out;
}

std::vector<int> SubdegreeSequence::multiplicities() const {
    std::vector<int> k;
    for (auto [r, m] : exponential_type()) k.push_back(m);
    return k;
}

int SubdegreeSequence::multiplicity(int r) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), r));
}

SubdegreeSequence SubdegreeSequence::operator+(const SubdegreeSequence& o) const {
    std::vector<int> p = parts_;
    p.insert(p.end(), o.parts_.begin(), o.parts_.end());
    return SubdegreeSequence(std::move(p));
}

std::string SubdegreeSequence::str() const {
    std::string s;
    for (auto [r, k] : exponential_type()) {
        if (!s.empty()) s += ' ';
        s += std::to_string(r) + "^" + std::to_string(k);
    }
    return s;
}

std::ostream& operator<<(std::ostream& os, const SubdegreeSequence& l) { return os << l.str(); }

mpz_class factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of a negative number");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

mpz_class jc(int r) {
    if (r < 1) throw std::invalid_argument("JC(r) needs r >= 1");
    switch (r) {
        case 1: return 1;
        case 2: return 60;
        case 3: return 360;
        case 4: return 25920;
        case 5: return 25920;
        case 6: return 6531840;
        case 7: return 1451520;
        case 8: return 348364800;
        case 9: return 4199040;
        case 12: return mpz_class("448345497600");
        default: return factorial(r + 1);
    }
}

namespace {

mpz_class power(int d, int e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(e));
    return p;
}

Rational frac(const mpz_class& num, const mpz_class& den) { return Rational(mpq_class(num, den)); }

// memoized JC and factorials for the scans
struct Tables {
    std::vector<mpz_class> jc, fact;
    explicit Tables(int n) {
        for (int i = 0; i <= n; ++i) {
            jc.push_back(i ? hypaut::jc(i) : mpz_class(1));
            fact.push_back(factorial(i));
        }
    }
    Rational ratio(const SubdegreeSequence& l, int d) const {
        mpz_class num = power(d, l.length());
        for (int p : l.parts()) num *= jc[p];
        for (int k : l.multiplicities()) num *= fact[k];
        int v = l.total();
        mpz_class den = power(d, v) * fact[v];
        return frac(num, den);
    }
};

const Tables& tables() {
    static const Tables t(64);
    return t;
}

Rational fast_ratio(const SubdegreeSequence& l, int d) {
    if (l.total() <= 64) return tables().ratio(l, d);
    return ratio(l, d);
}

void check_d(int d) {
    if (d < 3) throw std::invalid_argument("degree d must be at least 3");
}

}  // namespace

Rational ratio(const SubdegreeSequence& l, int d) {
    check_d(d);
    mpz_class num = power(d, l.length());
    for (int p : l.parts()) num *= jc(p);
    for (int k : l.multiplicities()) num *= factorial(k);
    int v = l.total();
    return frac(num, power(d, v) * factorial(v));
}

Rational ratio_with_groups(const ConstituentOrders& H, int d) {
    check_d(d);
    if (H.empty()) throw std::invalid_argument("empty constituent list");
    std::vector<int> parts;
    mpz_class num = power(d, static_cast<int>(H.size()));
    for (const auto& [r, h] : H) {
        if (r < 1 || h < 1) throw std::invalid_argument("constituent subdegrees and orders must be positive");
        if (h > jc(r))
            throw std::invalid_argument("order " + h.get_str() + " exceeds JC(" + std::to_string(r) + ")");
        parts.push_back(r);
        num *= h;
    }
    SubdegreeSequence l(parts);
    for (int k : l.multiplicities()) num *= factorial(k);
    int v = l.total();
    return frac(num, power(d, v) * factorial(v));
}

mpz_class canonical_bound(const ConstituentOrders& H, const std::vector<int>& intrinsic, int d) {
    int s = static_cast<int>(H.size());
    if (std::accumulate(intrinsic.begin(), intrinsic.end(), 0) != s)
        throw std::invalid_argument("intrinsic multiplicities must sum to the number of constituents");
    std::size_t pos = 0;
    for (int k : intrinsic) {
        if (k < 1) throw std::invalid_argument("intrinsic multiplicities must be positive");
        for (int j = 1; j < k; ++j)
            if (H[pos + j].first != H[pos].first)
                throw std::invalid_argument("blocks of one isotypic group must share a subdegree");
        pos += k;
    }
    mpz_class b = power(d, s);
    for (const auto& [r, h] : H) b *= h;
    for (int k : intrinsic) b *= factorial(k);
    return b;
}

bool ratio_quotient_law(const SubdegreeSequence& l, int d, int d2) {
    check_d(d);
    check_d(d2);
    int e = l.total() - l.length();
    Rational rhs = frac(power(d2, e), power(d, e));
    return ratio(l, d) / ratio(l, d2) == rhs;
}

Rational lambda_addr0(const SubdegreeSequence& l, int r0, int k0, int d) {
    check_d(d);
    if (r0 <= 1) throw std::invalid_argument("r0 must exceed 1");
    if (l.multiplicity(r0) == 0) throw std::invalid_argument(std::to_string(r0) + " does not occur in " + l.str());
    if (l.multiplicity(r0) != k0)
        throw std::invalid_argument("k0 must be the multiplicity of " + std::to_string(r0) + " in " + l.str());
    int v = l.total();
    Rational lambda = frac(factorial(v) * jc(r0) * (k0 + 1), factorial(v + r0) * power(d, r0 - 1));
    Rational direct = ratio(l + SubdegreeSequence({r0}), d) / ratio(l, d);
    if (lambda != direct) throw std::logic_error("lambda formula disagrees with the quotient of ratios");
    return lambda;
}

void for_each_sequence(int v, const PartitionFilter& filter, const std::function<void(const SubdegreeSequence&)>& fn) {
    if (v < 1) throw std::invalid_argument("total degree must be positive");
    std::vector<int> parts;
    int lo = filter.parts_above_one ? 2 : 1;
    auto rec = [&](auto&& self, int left, int maxp) -> void {
        if (left == 0) {
            if (filter.need_part_above_one && parts.front() < 2) return;
            fn(SubdegreeSequence(parts));
            return;
        }
        for (int p = std::min(left, maxp); p >= lo; --p) {
            // a part above one must appear first
            if (filter.need_part_above_one && parts.empty() && p < 2) return;
            parts.push_back(p);
            self(self, left - p, p);
            parts.pop_back();
        }
    };
    rec(rec, v, filter.max_part > 0 ? filter.max_part : v);
}

std::vector<SubdegreeSequence> enumerate_sequences(int v, const std::function<bool(const SubdegreeSequence&)>& pred,
                                                   const PartitionFilter& filter) {
    std::vector<SubdegreeSequence> out;
    for_each_sequence(v, filter, [&](const SubdegreeSequence& l) {
        if (!pred || pred(l)) out.push_back(l);
    });
    return out;
}

SearchReport classification_search(int n_lo, int n_hi, int d_lo, int d_hi) {
    if (n_lo < 1 || d_lo < 3 || n_hi < n_lo || d_hi < d_lo) throw std::invalid_argument("bad search ranges");
    SearchReport rep{n_lo, n_hi, d_lo, d_hi, 0, {}};
    PartitionFilter f;
    f.need_part_above_one = true;
    for (int n = n_lo; n <= n_hi; ++n) {
        std::vector<SubdegreeSequence> seqs = enumerate_sequences(n + 2, nullptr, f);
        for (int d = d_lo; d <= d_hi; ++d)
            for (const auto& l : seqs) {
                ++rep.scanned;
                Rational R = fast_ratio(l, d);
                if (R >= Rational(1)) rep.survivors.push_back({n, d, l, R});
            }
    }
    return rep;
}

std::string survivors_tsv(const SearchReport& r) {
    std::ostringstream os;
    os << "n\td\tsequence\tratio_num\tratio_den\n";
    for (const auto& s : r.survivors)
        os << s.n << '\t' << s.d << '\t' << s.l.str() << '\t' << s.ratio.num().get_str() << '\t'
           << s.ratio.den().get_str() << '\n';
    return os.str();
}

TailReport boundl1_tail_check(int v_lo, int v_hi, int d_lo, int d_hi) {
    TailReport rep;
    PartitionFilter f;
    f.parts_above_one = true;
    for (int v = v_lo; v <= v_hi; ++v) {
        std::vector<SubdegreeSequence> seqs = enumerate_sequences(v, nullptr, f);
        for (int d = d_lo; d <= d_hi; ++d)
            for (const auto& l : seqs) {
                bool each = true;
                for (auto [r, k] : l.exponential_type())
                    if (fast_ratio(SubdegreeSequence(std::vector<int>(k, r)), d) < Rational(1)) {
                        each = false;
                        break;
                    }
                if (!each) continue;
                ++rep.scanned;
                Rational R = fast_ratio(l, d);
                if (R >= Rational(1)) rep.violations.push_back({v - 2, d, l, R});
            }
    }
    return rep;
}

UniformCheck uniform_bounds_check(const SubdegreeSequence& l, int d) {
    UniformCheck c;
    c.ratio = fast_ratio(l, d);
    int ones = l.multiplicity(1);
    bool distinct = l.exponential_type().size() >= 2;
    c.below106 = c.ratio < Rational(106);
    c.below60 = !distinct || c.ratio < Rational(60);
    c.below3 = ones < 2 || c.ratio < Rational(3);
    c.below11 = ones < 1 || c.ratio < Rational(11);
    return c;
}

UniformBoundsReport uniform_bounds_scan(int v_max, int d_max) {
    UniformBoundsReport rep;
    rep.v_max = v_max;
    rep.d_max = d_max;
    std::set<int> avals;
    auto better = [](RatioRecord& rec, const SubdegreeSequence& l, int d, const Rational& R) {
        if (rec.l.parts().empty() || rec.ratio < R) rec = {l, d, R};
    };
    for (int v = 1; v <= v_max; ++v) {
        std::vector<SubdegreeSequence> seqs = enumerate_sequences(v);
        for (int d = 3; d <= d_max; ++d)
            for (const auto& l : seqs) {
                ++rep.scanned;
                UniformCheck c = uniform_bounds_check(l, d);
                rep.bound106 = rep.bound106 && c.below106;
                rep.bound60 = rep.bound60 && c.below60;
                rep.bound3 = rep.bound3 && c.below3;
                rep.bound11 = rep.bound11 && c.below11;
                better(rep.max_all, l, d, c.ratio);
                int ones = l.multiplicity(1);
                if (l.exponential_type().size() >= 2) better(rep.max_two_distinct, l, d, c.ratio);
                if (ones >= 2) better(rep.max_ones_two, l, d, c.ratio);
                if (ones >= 1) better(rep.max_ones_one, l, d, c.ratio);
                if (ones >= 1 && c.ratio >= Rational(1)) {
                    for (auto [r, k] : l.exponential_type())
                        if (r >= 2) avals.insert(r);
                    if (l.contains(3)) rep.with_three.push_back({l, d, c.ratio});
                    if (l.contains(6)) rep.with_six.push_back({l, d, c.ratio});
                }
            }
    }
    rep.a_values.assign(avals.begin(), avals.end());
    return rep;
}

}  // namespace hypaut
