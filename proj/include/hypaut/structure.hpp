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

#ifndef HYPAUT_STRUCTURE_HPP
#define HYPAUT_STRUCTURE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hypaut/forms.hpp"
#include "hypaut/json_io.hpp"
#include "hypaut/matgroups.hpp"
#include "hypaut/rational.hpp"
#include "hypaut/sequences.hpp"

namespace hypaut {

struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coordinate span W_ij of the given size; i and j are 1-based.
struct BlockSpec {
    int i = 1;
    int j = 1;
    int size = 1;
    friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

/*
 * Claimed decomposition C^r = V_1 + ... + V_m with V_i = W_i1 + ... + W_ik_i.
 * Blocks are listed in coordinate order of the new basis, whose vectors are
 * the columns of basis_change; group elements g become Q^-1 g Q.
 */
struct DecompositionCertificate {
    std::optional<Matrix> basis_change;
    std::vector<BlockSpec> blocks;
    std::vector<int> grouping;  // k_i

    int dim() const;
    int block_count() const { return static_cast<int>(blocks.size()); }
    std::vector<int> block_sizes() const;
    std::vector<int> offsets() const;
    /// Position in `blocks` of W_ij.
    int index_of(int i, int j) const;
    /// Throws StructureError on inconsistent data.
    void validate() const;
};

DecompositionCertificate decomposition_from_json(const json& j);
json decomposition_to_json(const DecompositionCertificate& c);

struct BlockReport {
    BlockSpec block;
    mpz_class constituent_order = 1;  // |H_ij|
    mpz_class stabilizer_order = 0;   // |Stab(W_ij)|, when enumerated
    std::uint64_t span_dim = 0;
    bool irreducible = false;
};

struct StructureReport {
    std::string mode;  // "closed" or "compositional"
    int dim = 0;
    std::vector<BlockReport> blocks;  // certificate order
    std::vector<int> grouping;
    mpz_class order = 0;      // |G|
    mpz_class psi_order = 0;  // |psi(G)|
    std::vector<std::uint64_t> k_orders;  // |K_i|
    std::vector<bool> k_transitive;
    mpz_class p_order = 0;    // |P|
    mpz_class n_order = 0;    // |N|
    mpz_class phi_order = 0;  // |phi(P)|
    mpz_class scalar_order = 0;  // |G cap scalars|
    std::uint64_t n_checked_exactly = 0;
    SubdegreeSequence subdegrees;
    std::vector<int> intrinsic;
    /// factor name -> "enumerated" or "derived"
    std::map<std::string, std::string> provenance;

    // filled when a form is supplied
    std::optional<int> degree;
    std::optional<mpz_class> canonical_bound;
    std::optional<Rational> ratio;  // |G| / (d^r r!)
    std::optional<mpz_class> kernel_lattice_order;

    /// (subdegree, |H_ij|) sorted by (i, j).
    ConstituentOrders constituents() const;
    bool first_sequence_exact() const { return order == p_order * psi_order; }
    bool second_sequence_exact() const { return p_order == n_order * phi_order; }
};

json structure_report_to_json(const StructureReport& r);

/// Verifies the certificate against a closed group by filtering its elements.
StructureReport verify_certificate(const MatGroup& G, const DecompositionCertificate& cert,
                                   const std::optional<Form>& F = std::nullopt);

/*
 * Verification from generators alone. Every generator must either act on a
 * single block and trivially elsewhere, or permute blocks with identity
 * sub-blocks. The group is then (prod_b B_b) x| Q with B_b the closure of the
 * block generators on W_b and Q the block permutation group, provided Q
 * normalizes the product, which is checked generator by generator.
 */
StructureReport verify_compositional(const std::vector<Matrix>& gens, const DecompositionCertificate& cert,
                                     const std::optional<Form>& F = std::nullopt,
                                     std::uint64_t cap = default_closure_cap());

/// Dimension of the span of the group elements restricted to the coordinates.
std::uint64_t span_dimension(const MatGroup& G, const std::vector<int>& coords);
/// Same, from generators: the span of a finite group is the algebra its generators generate.
std::uint64_t span_dimension(const std::vector<Matrix>& gens, const std::vector<int>& coords);
/// span_dimension == |coords|^2
bool irreducible_span(const MatGroup& G, const std::vector<int>& coords);
bool irreducible_span(const std::vector<Matrix>& gens, const std::vector<int>& coords);

enum class BoundKind { type2, classify, d1d2, type_ii };

struct BoundPattern {
    BoundKind kind = BoundKind::type2;
    int i = 1;  // V_i for type2, V_a for classify, W_ij otherwise
    int j = 1;
    int d1 = 0;                   // d1d2 only
    mpz_class normal_order = 1;   // d1d2 only: order of the normal subgroup of H_ij
};

struct RefinedBound {
    mpz_class canonical;
    Rational bound;          // upper bound for |G|
    Rational ratio;          // bound / (d^r r!)
    Exps witness;            // monomial establishing the pattern
    int count = 0;           // c for type_ii
    std::string rule;  // which bound applied
};

/// F in the certificate's coordinates; the report must carry a canonical bound for deg F.
RefinedBound refined_bound(const StructureReport& report, const Form& F, const BoundPattern& pattern);

struct RatioProd {
    Rational q;
    bool at_least_one = false;
};

/// q = prod q_i n_i! / (sum n_i)! with q_i = 5/2 for n_i >= 2 and 1 otherwise.
RatioProd ratioprod(const std::vector<int>& n);
bool ratioprod_check(const std::vector<int>& n);
/// Weakly decreasing tuples with m >= 2 and sum <= max_total where q >= 1.
std::vector<std::vector<int>> ratioprod_scan(int max_total);

}  // namespace hypaut

#endif
