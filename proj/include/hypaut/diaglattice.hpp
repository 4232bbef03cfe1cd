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


#ifndef HYPAUT_DIAGLATTICE_HPP
#define HYPAUT_DIAGLATTICE_HPP

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "hypaut/forms.hpp"
#include "hypaut/intmat.hpp"

namespace hypaut {

/*
 * Block-scalar stabilizer {diag(l_1 I_{r_1}, ..., l_m I_{r_m}) : A(F) = F}.
 * With l_k = exp(2 pi i t_k), every term of F imposes sum_k b_k t_k in Z,
 * where b_k is the degree of the term in block k. For the relation matrix B
 * with Smith form U B V = D the solutions are t = V s with d_i s_i in Z, so the
 * group is the sum of Z/d_i and is infinite when B has a kernel.
 */
struct DiagGroup {
    std::vector<int> block_sizes;
    IntMatrix relations;  // one row of block degrees per term
    std::vector<mpz_class> divisors;
    bool finite = false;
    mpz_class order = 0;  // 0 when infinite
    /// One diagonal matrix per elementary divisor greater than 1.
    std::vector<Matrix> generators;
};

DiagGroup block_scalar_group(const Form& F, const std::vector<int>& block_sizes);
/// order <= d^m, false when the group is infinite.
bool check_diag_bound(const Form& F, const std::vector<int>& block_sizes);

/// exp(2 pi i q) with q taken mod 1.
CycNum exp_2pi_i(const Rational& q);
/// q in [0,1) with c = exp(2 pi i q), if c is a root of unity.
std::optional<Rational> root_of_unity_angle(const CycNum& c);

/*
 * Semi-permutation matrices g with g(i, p(i)) = l_i preserving F. For each
 * coordinate permutation p compatible with the support of F the twisted
 * constraints l^e = c_{p(e)} / c_e are solved with the Smith form of the
 * exponent matrix; a solvable p contributes a full coset of the diagonal group.
 */
struct SemiPermGroup {
    DiagGroup diagonal;
    std::vector<std::vector<int>> permutations;  // the admissible p, identity first
    std::vector<Matrix> representatives;         // one semi-permutation per p
    std::uint64_t candidates = 0;                // permutations passing the profile filter
    bool finite = false;
    mpz_class order = 0;

    /// Diagonal generators followed by the coset representatives.
    std::vector<Matrix> generators() const;
};

SemiPermGroup semi_permutation_group(const Form& F, int max_vars = 12);

}  // namespace hypaut

#endif
