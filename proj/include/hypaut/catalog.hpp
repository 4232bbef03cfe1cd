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

#ifndef HYPAUT_CATALOG_HPP
#define HYPAUT_CATALOG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hypaut/forms.hpp"
#include "hypaut/json_io.hpp"
#include "hypaut/matgroups.hpp"
#include "hypaut/rational.hpp"
#include "hypaut/structure.hpp"

namespace hypaut {

enum class Tier { full_closure, compositional, generators_only };

const char* to_string(Tier t);
Tier parse_tier(const std::string& s);

struct ConstituentInfo {
    int i = 1;
    int j = 1;
    std::string group;
    bool primitive = true;
};

struct CatalogEntry {
    std::string key;  // "n,d,label"
    int n = 0;
    int d = 0;
    std::string label;
    std::string group_name;
    Tier tier = Tier::full_closure;
    Form form;
    std::vector<Matrix> generators;
    DecompositionCertificate certificate;
    std::vector<ConstituentInfo> constituents;
    mpz_class aut_order;
    mpz_class lin_order;
    Rational ratio;
    bool smooth = true;
    /// also run the generator-level route on a full-closure entry
    bool compositional_check = false;
    /// projective order of the generated group over F_prime
    std::optional<std::uint32_t> projective_prime;
    std::uint64_t projective_cap = 0;
    std::string provenance;
    std::string path;

    int nvars() const { return n + 2; }
};

CatalogEntry entry_from_json(const json& j);
CatalogEntry load_entry(const std::string& path);
/// All entries of a catalog directory, sorted by (n, d, label).
std::vector<CatalogEntry> load_catalog(const std::string& dir = HYPAUT_CATALOG_DIR);

struct Check {
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
};

struct EntryReport {
    std::string key;
    Tier tier = Tier::full_closure;
    bool passed = false;
    std::vector<Check> checks;
    double seconds = 0;
    std::optional<mpz_class> aut_order;  // as computed
    std::optional<mpz_class> lin_order;
    std::optional<Rational> ratio;
    std::optional<mpz_class> canonical_bound;
    std::optional<StructureReport> structure;
    /// first failed check
    std::string failure;
};

struct VerifyOptions {
    std::uint64_t cap = default_closure_cap();
    int jobs = 1;
};

/*
 * Runs, in order: form shape, expected-order relation, preservation,
 * smoothness, closure for the tier, projective order, structure and
 * canonical bound, ratio checks against the sequence calculus.
 * A failed check fails the entry; later checks still run when possible.
 */
EntryReport verify_entry(const CatalogEntry& e, const VerifyOptions& opt = {});

struct CatalogFilter {
    std::optional<std::string> entry;  // key or label substring
    std::optional<Tier> tier;
    bool matches(const CatalogEntry& e) const;
};

struct CatalogSummary {
    std::vector<EntryReport> rows;
    bool all_passed() const;
};

CatalogSummary verify_all(const std::vector<CatalogEntry>& entries, const CatalogFilter& filter = {},
                          const VerifyOptions& opt = {});

json entry_report_to_json(const EntryReport& r);
json summary_to_json(const CatalogSummary& s);
/// key, tier, checks passed, wall time; one row per entry.
std::string summary_table(const CatalogSummary& s);

}  // namespace hypaut

#endif
