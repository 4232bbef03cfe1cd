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


#ifndef HYPAUT_SEQUENCES_HPP
#define HYPAUT_SEQUENCES_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hypaut/rational.hpp"

namespace hypaut {

/// Weakly decreasing tuple of positive integers.
class SubdegreeSequence {
   public:
    SubdegreeSequence() = default;
    /// Sorts the parts; throws on an empty tuple or a part below 1.
    explicit SubdegreeSequence(std::vector<int> parts);
    /// Caret-exponent notation "8^1 6^2 1^3"; a bare token counts once, r^0 is allowed.
    static SubdegreeSequence parse(const std::string& text);

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int total() const;
    /// (r_i, k_i) with r_1 > r_2 > ...
    std::vector<std::pair<int, int>> exponential_type() const;
    std::vector<int> multiplicities() const;
    int multiplicity(int r) const;
    bool contains(int r) const { return multiplicity(r) > 0; }
    int max_part() const { return parts_.front(); }

    /// Exponents add part by part.
    SubdegreeSequence operator+(const SubdegreeSequence& o) const;
    /// Exponential type, e.g. "3^1 2^1 1^1".
    std::string str() const;
    friend bool operator==(const SubdegreeSequence& a, const SubdegreeSequence& b) { return a.parts_ == b.parts_; }

   private:
    std::vector<int> parts_;
};

std::ostream& operator<<(std::ostream& os, const SubdegreeSequence& l);

mpz_class factorial(int n);

/// Maximal order of a finite primitive subgroup of PGL(r).
mpz_class jc(int r);

/// d^s prod JC(r'_i) prod k_j! / (d^v v!)
Rational ratio(const SubdegreeSequence& l, int d);

/// (subdegree, group order) per constituent.
using ConstituentOrders = std::vector<std::pair<int, mpz_class>>;

/// ratio with |H_i| in place of JC; throws if some order exceeds JC of its subdegree.
Rational ratio_with_groups(const ConstituentOrders& H, int d);

/// d^s prod |H_i| prod k_j!, with H listed block by block following the intrinsic grouping k.
mpz_class canonical_bound(const ConstituentOrders& H, const std::vector<int>& intrinsic, int d);

/// R(l,d) / R(l,d') == (d'/d)^(v - s)
bool ratio_quotient_law(const SubdegreeSequence& l, int d, int d2);

/// R(l + (r0), d) / R(l, d), from the closed formula; throws unless it equals the direct quotient.
Rational lambda_addr0(const SubdegreeSequence& l, int r0, int k0, int d);

struct PartitionFilter {
    int max_part = 0;        // 0 for no limit
    bool need_part_above_one = false;
    bool parts_above_one = false;
};

/// Partitions of v, largest parts first, in decreasing lexicographic order.
void for_each_sequence(int v, const PartitionFilter& filter, const std::function<void(const SubdegreeSequence&)>& fn);
std::vector<SubdegreeSequence> enumerate_sequences(
    int v, const std::function<bool(const SubdegreeSequence&)>& pred = nullptr, const PartitionFilter& filter = {});

struct Survivor {
    int n;
    int d;
    SubdegreeSequence l;
    Rational ratio;
};

struct SearchReport {
    int n_lo, n_hi, d_lo, d_hi;
    std::uint64_t scanned = 0;  // (sequence, d) pairs evaluated
    std::vector<Survivor> survivors;
};

/// Partitions of n+2 with a part above 1 and R(l,d) >= 1, for n and d in the inclusive ranges.
SearchReport classification_search(int n_lo, int n_hi, int d_lo, int d_hi);
/// Header "n\td\tsequence\tratio_num\tratio_den" then one line per survivor.
std::string survivors_tsv(const SearchReport& r);

/// Every l with all parts above 1, each R(r_i^{k_i}, d) >= 1 and v in [v_lo, v_hi]; reports those with R >= 1.
struct TailReport {
    std::uint64_t scanned = 0;
    std::vector<Survivor> violations;
};
TailReport boundl1_tail_check(int v_lo, int v_hi, int d_lo, int d_hi);

struct RatioRecord {
    SubdegreeSequence l;
    int d;
    Rational ratio;
};

struct UniformBoundsReport {
    int v_max = 0;
    int d_max = 0;
    std::uint64_t scanned = 0;
    RatioRecord max_all;           // bound 106
    RatioRecord max_two_distinct;  // bound 60
    RatioRecord max_ones_two;      // at least two 1s, bound 3
    RatioRecord max_ones_one;      // at least one 1, bound 11
    bool bound106 = true, bound60 = true, bound3 = true, bound11 = true;
    /// every a >= 2 occurring in some l that contains 1 and has R >= 1
    std::vector<int> a_values;
    std::vector<RatioRecord> with_three;  // containing 1 and 3
    std::vector<RatioRecord> with_six;    // containing 1 and 6
    bool ok() const { return bound106 && bound60 && bound3 && bound11; }
};

/// Evaluates one sequence against the three uniform bounds.
struct UniformCheck {
    Rational ratio;
    bool below106, below60, below3, below11;  // vacuous parts are true
};
UniformCheck uniform_bounds_check(const SubdegreeSequence& l, int d);

/// Scan over v(l) <= v_max and 3 <= d <= d_max.
UniformBoundsReport uniform_bounds_scan(int v_max = 30, int d_max = 20);

}  // namespace hypaut

#endif
