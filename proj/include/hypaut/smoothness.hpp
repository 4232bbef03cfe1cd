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

#ifndef HYPAUT_SMOOTHNESS_HPP
#define HYPAUT_SMOOTHNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypaut/forms.hpp"

namespace hypaut {

enum class Verdict { smooth, singular, undecided };
enum class SmoothMethod { groebner_char0, groebner_modp, split_variables };
enum class SmoothStrategy { automatic, char0, modp, split };

const char* to_string(Verdict v);
const char* to_string(SmoothMethod m);
SmoothStrategy parse_strategy(const std::string& s);

struct SmoothnessCertificate {
    Verdict verdict = Verdict::undecided;
    SmoothMethod method = SmoothMethod::groebner_char0;
    /// nonzero common zero of the partials, when one was found
    std::optional<std::vector<CycNum>> witness;
    /// per variable, the smallest k with x_i^k a leading term (-1: none)
    std::vector<int> pure_powers;
    /// variables with no pure power among leading terms up to degree_cap
    std::vector<int> missing;
    int degree_cap = 0;
    int degree_reached = 0;
    long long pairs = 0;
    // modular data: zeta_N maps to `root` in F_prime
    int conductor = 1;
    std::uint32_t prime = 0;
    std::uint32_t root = 0;
    std::vector<std::uint32_t> primes_tried;
    // split-variables data
    std::vector<std::vector<int>> blocks;
    std::vector<SmoothnessCertificate> parts;
    std::string note;
};

struct SmoothOptions {
    SmoothStrategy strategy = SmoothStrategy::automatic;
    std::optional<std::uint32_t> prime;
    int primes = 3;
    std::uint64_t seed = 20260101;
    long long budget = 20'000'000;  // S-pairs per Groebner run
    int max_degree = 0;              // 0: Macaulay bound r(d-2)+1
    bool search_witness = true;
};

/// Degree r(d-2)+1 beyond which the Jacobian ideal of a smooth form contains every monomial.
int macaulay_bound(int r, int d);

SmoothnessCertificate is_smooth(const Form& F, const SmoothOptions& opt = {});

/// Partition of the variables into classes that never share a monomial.
std::vector<std::vector<int>> variable_blocks(const Form& F);

/// The form in the listed variables obtained by dropping all terms that involve others.
Form restrict_to(const Form& F, const std::vector<int>& vars);

/// Nonzero point in {0,1,-1}^r (first nonzero coordinate 1) where all partials vanish.
std::optional<std::vector<CycNum>> find_singular_point(const Form& F, int max_vars = 10);

struct SmtosmResult {
    std::optional<Exps> monomial;
    bool contradiction = false;
};

/// Scans F for a term x_1^{d_1}...x_k^{d_k} x_{k+j}. Throws std::invalid_argument on
/// precondition failures; check_smooth also verifies the smoothness hypotheses.
SmtosmResult smtosm_witness(const Form& F, int k, int a, bool check_smooth = true);

}  // namespace hypaut

#endif
