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

#ifndef HYPAUT_MATGROUPS_HPP
#define HYPAUT_MATGROUPS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hypaut/forms.hpp"
#include "hypaut/modp.hpp"

namespace hypaut {

struct GroupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// 2^21 unless HYPAUT_CLOSURE_CAP is set.
std::uint64_t default_closure_cap();

/// Dense n x n matrices over F_p, used as faithful images of finite groups.
struct ModMat {
    int n = 0;
    std::uint32_t p = 0;
    std::vector<std::uint32_t> a;
    std::uint32_t operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

ModMat mod_mul(const ModMat& x, const ModMat& y);
ModMat reduce_matrix(const Matrix& m, const CycReduction& red);

/*
 * A finite subgroup of GL(r) over a cyclotomic field.
 *
 * Elements are enumerated through their reduction at a prime p = 1 mod N
 * with p >= 3. Since p is unramified in Q(zeta_N), the kernel of reduction
 * on matrices with p-integral entries is torsion free, so reduction is
 * injective on the group and every count below is exact. Exact matrices
 * are rebuilt from the breadth-first words on demand.
 */
class MatGroup {
   public:
    MatGroup() = default;

    int dim() const { return dim_; }
    int conductor() const { return N_; }
    const std::vector<Matrix>& generators() const { return gens_; }
    bool closed() const { return closed_; }
    /// Number of elements found; the group order when closed.
    std::uint64_t order() const { return count_; }
    std::uint32_t prime() const { return red_ ? red_->prime() : 0; }

    ModMat mod_element(std::uint64_t i) const;
    /// Exact matrix of the i-th element (product of generators along its word).
    Matrix element(std::uint64_t i) const;
    /// Generator indices w with element(i) = g_{w0} g_{w1} ...
    std::vector<int> word(std::uint64_t i) const;
    /// All elements in breadth-first order; throws if the group exceeds `limit`.
    const std::vector<Matrix>& elements(std::uint64_t limit = 200000) const;
    std::optional<std::uint64_t> find(const ModMat& m) const;
    std::optional<std::uint64_t> find(const Matrix& m) const;
    const CycReduction& reduction() const { return *red_; }

   private:
    friend MatGroup closure(const std::vector<Matrix>& gens, std::uint64_t cap);

    std::uint64_t hash_at(const std::uint32_t* x) const;
    std::optional<std::uint64_t> lookup(const std::uint32_t* x) const;
    void insert(std::uint64_t idx);

    int dim_ = 0;
    int N_ = 1;
    std::vector<Matrix> gens_;
    std::shared_ptr<CycReduction> red_;
    std::vector<ModMat> mod_gens_;
    bool closed_ = false;
    std::uint64_t count_ = 0;
    std::vector<std::uint32_t> data_;  // count_ * dim^2
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint8_t> via_;
    std::vector<std::uint32_t> table_;  // open addressing, index + 1
    mutable std::shared_ptr<std::vector<Matrix>> exact_;
};

/// Breadth-first closure; closed() is false when more than `cap` elements appear.
MatGroup closure(const std::vector<Matrix>& gens, std::uint64_t cap = default_closure_cap());

/// The scalar group generated by zeta_d I_r.
MatGroup scalar_group(int r, int d);

/// A(F) = F for every generator.
bool preserves(const std::vector<Matrix>& gens, const Form& F);
bool preserves(const MatGroup& G, const Form& F);

MatGroup center(const MatGroup& G);
std::uint64_t scalar_count(const MatGroup& G);
/// |G| / |G cap scalars|
std::uint64_t projective_order(const MatGroup& G);

/// Indices of the diagonal elements, checked exactly.
std::vector<std::uint64_t> diagonal_subgroup(const MatGroup& G);

/// Rank of the averaging projector on degree-e forms, computed over F_p.
std::uint64_t invariant_dimension_reynolds(const MatGroup& G, int e);
/// Degree-e coefficient of the Molien series, exact over the cyclotomic field.
Rational molien_coefficient(const MatGroup& G, int e);
std::uint64_t invariant_dimension_molien(const MatGroup& G, int e);

enum class InvMethod { reynolds, molien, both };
/// Throws GroupError if the two methods disagree.
std::uint64_t invariant_dimension(const MatGroup& G, int e, InvMethod method = InvMethod::both);

struct ProjectiveClosure {
    bool closed = false;
    std::uint64_t order = 0;
    std::uint32_t prime = 0;
};

/// Order of the image in PGL(r), enumerated over F_p with matrices normalised up to scalars.
/// p must be a prime with p = 1 mod N; p < 256 stores entries in one byte.
ProjectiveClosure projective_closure_modp(const std::vector<Matrix>& gens, std::uint32_t p,
                                          std::uint64_t cap = default_closure_cap());

}  // namespace hypaut

#endif
