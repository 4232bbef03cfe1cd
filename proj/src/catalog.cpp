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

#include "hypaut/catalog.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <future>
#include <sstream>

#include "hypaut/diaglattice.hpp"
#include "hypaut/sequences.hpp"
#include "hypaut/smoothness.hpp"

namespace hypaut {

const char* to_string(Tier t) {
    switch (t) {
        case Tier::full_closure: return "full-closure";
        case Tier::compositional: return "compositional";
        case Tier::generators_only: return "generators-only";
    }
    return "?";
}

Tier parse_tier(const std::string& s) {
    if (s == "full-closure" || s == "full") return Tier::full_closure;
    if (s == "compositional") return Tier::compositional;
    if (s == "generators-only" || s == "generators") return Tier::generators_only;
    throw std::invalid_argument("unknown tier: " + s);
}

CatalogEntry entry_from_json(const json& j) {
    if (j.contains("schema_version") && j.at("schema_version").get<int>() != 1)
        throw std::runtime_error("unsupported catalog schema version");
    CatalogEntry e;
    e.n = j.at("n").get<int>();
    e.d = j.at("d").get<int>();
    e.label = j.at("label").get<std::string>();
    e.key = j.at("key").get<std::string>();
    if (e.key != std::to_string(e.n) + "," + std::to_string(e.d) + "," + e.label)
        throw std::runtime_error("catalog key does not match n, d and label: " + e.key);
    e.group_name = j.value("group_name", "");
    e.tier = parse_tier(j.at("tier").get<std::string>());
    e.form = form_from_json(j);
    if (e.form.nvars() != e.nvars()) throw std::runtime_error(e.key + ": form has the wrong number of variables");
    e.generators = generators_from_json(j);
    e.certificate = decomposition_from_json(j.at("certificate"));
    if (j.contains("constituents"))
        for (const auto& c : j.at("constituents"))
            e.constituents.push_back(
                {c.at("i").get<int>(), c.at("j").get<int>(), c.value("group", ""), c.value("primitive", true)});
    const json& x = j.at("expected");
    e.aut_order = mpz_class(x.at("aut_order").get<std::string>());
    e.lin_order = mpz_class(x.at("lin_order").get<std::string>());
    e.ratio = Rational(x.at("ratio").get<std::string>());
    e.smooth = x.value("smooth", true);
    e.compositional_check = j.value("compositional", false);
    if (j.contains("projective_check")) {
        e.projective_prime = j.at("projective_check").at("prime").get<std::uint32_t>();
        e.projective_cap = j.at("projective_check").value("cap", default_closure_cap());
    }
    e.provenance = j.value("provenance", "");
    return e;
}

CatalogEntry load_entry(const std::string& path) {
    CatalogEntry e = entry_from_json(read_json_file(path));
    e.path = path;
    return e;
}

std::vector<CatalogEntry> load_catalog(const std::string& dir) {
    std::vector<std::string> paths;
    for (const auto& p : std::filesystem::directory_iterator(dir))
        if (p.path().extension() == ".json") paths.push_back(p.path().string());
    std::vector<CatalogEntry> out;
    for (const auto& p : paths) out.push_back(load_entry(p));
    std::sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
        return std::tie(a.n, a.d, a.label) < std::tie(b.n, b.d, b.label);
    });
    return out;
}

namespace {

mpz_class fermat_count(int r, int d) {
    mpz_class f = factorial(r);
    for (int t = 0; t < r; ++t) f *= d;
    return f;
}

Rational frac(const mpz_class& a, const mpz_class& b) { return Rational(mpq_class(a, b)); }

class Runner {
   public:
    explicit Runner(EntryReport& rep) : rep_(rep) {}
    // fn returns the detail string and throws or returns through fail() on mismatch
    template <class Fn>
    bool run(const std::string& name, Fn fn) {
        Check c;
        c.name = name;
        try {
            c.detail = fn();
            c.passed = true;
        } catch (const std::exception& ex) {
            c.passed = false;
            c.detail = ex.what();
            if (rep_.failure.empty()) rep_.failure = name + ": " + c.detail;
        }
        rep_.checks.push_back(c);
        return c.passed;
    }
    void skip(const std::string& name, const std::string& why) {
        Check c;
        c.name = name;
        c.passed = true;
        c.skipped = true;
        c.detail = why;
        rep_.checks.push_back(c);
    }

   private:
    EntryReport& rep_;
};

struct Mismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class A, class B>
void expect_eq(const std::string& what, const A& got, const B& want) {
    if (!(got == want)) {
        std::ostringstream os;
        os << what << " is " << got << ", expected " << want;
        throw Mismatch(os.str());
    }
}

void expect(bool ok, const std::string& msg) {
    if (!ok) throw Mismatch(msg);
}

// Report for a single-block certificate when only the projective image is known.
StructureReport generator_level_report(const CatalogEntry& e, const mpz_class& lin) {
    const auto& cert = e.certificate;
    if (cert.block_count() != 1) throw Mismatch("generator-level structure needs a single-block certificate");
    std::vector<int> all(cert.dim());
    for (int k = 0; k < cert.dim(); ++k) all[k] = k;
    std::vector<Matrix> gens = e.generators;
    if (cert.basis_change) {
        Matrix Qi = cert.basis_change->inverse();
        for (auto& g : gens) g = (Qi * g * *cert.basis_change).reduced();
    }
    StructureReport r;
    r.mode = "generators";
    r.dim = cert.dim();
    r.grouping = cert.grouping;
    BlockReport b;
    b.block = cert.blocks[0];
    b.constituent_order = lin;
    b.span_dim = span_dimension(gens, all);
    b.irreducible = b.span_dim == all.size() * all.size();
    if (!b.irreducible) throw Mismatch("the generators act reducibly");
    r.blocks.push_back(b);
    r.order = lin * e.d;
    r.psi_order = 1;
    r.k_orders = {1};
    r.k_transitive = {true};
    r.p_order = r.order;
    r.n_order = e.d;
    r.scalar_order = e.d;
    r.phi_order = lin;
    r.subdegrees = SubdegreeSequence(cert.block_sizes());
    r.intrinsic = cert.grouping;
    r.degree = e.d;
    r.canonical_bound = canonical_bound(r.constituents(), r.intrinsic, e.d);
    r.ratio = frac(r.order, fermat_count(r.dim, e.d));
    r.provenance = {{"|H_ij|", "projective closure mod p"}, {"|N|", "derived: scalars of degree d"},
                    {"|G|", "derived: d |Lin|"}};
    return r;
}

}  // namespace

EntryReport verify_entry(const CatalogEntry& e, const VerifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    EntryReport rep;
    rep.key = e.key;
    rep.tier = e.tier;
    Runner run(rep);
    const int r = e.nvars();
    const int d = e.d;
    const Form& F = e.form;

    run.run("form", [&] {
        expect_eq("number of variables", F.nvars(), r);
        expect_eq("degree", F.degree(), d);
        expect_eq("certificate dimension", e.certificate.dim(), r);
        for (const auto& g : e.generators) expect_eq("generator dimension", g.dim(), r);
        return "r=" + std::to_string(r) + " d=" + std::to_string(d) + " terms=" + std::to_string(F.terms().size());
    });
    run.run("expected", [&] {
        expect_eq("aut order", e.aut_order, e.lin_order * d);
        expect_eq("expected ratio", e.ratio, frac(e.aut_order, fermat_count(r, d)));
        if (e.tier == Tier::full_closure)
            expect(e.aut_order <= static_cast<unsigned long>(opt.cap), "full-closure order exceeds the closure cap");
        return std::string("|Aut| = d |Lin|");
    });
    bool preserved = run.run("preserves", [&] {
        expect(preserves(e.generators, F), "a generator does not preserve the form");
        return std::to_string(e.generators.size()) + " generators";
    });
    run.run("smooth", [&] {
        SmoothnessCertificate c = is_smooth(F);
        expect_eq("smoothness verdict", std::string(to_string(c.verdict)),
                  std::string(e.smooth ? "smooth" : "singular"));
        std::string detail = to_string(c.method);
        if (c.prime) detail += " p=" + std::to_string(c.prime);
        return detail;
    });
    if (!preserved) {
        rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rep;
    }

    std::optional<MatGroup> G;
    std::optional<StructureReport> srep;
    switch (e.tier) {
        case Tier::full_closure:
            run.run("closure", [&] {
                G = closure(e.generators, opt.cap);
                expect(G->closed(), "closure exceeded the cap of " + std::to_string(opt.cap));
                rep.aut_order = static_cast<unsigned long>(G->order());
                expect_eq("group order", *rep.aut_order, e.aut_order);
                return "order " + rep.aut_order->get_str() + " enumerated";
            });
            if (e.compositional_check)
                run.run("compositional", [&] {
                    StructureReport c = verify_compositional(e.generators, e.certificate, F, opt.cap);
                    expect_eq("compositional order", c.order, e.aut_order);
                    return "order " + c.order.get_str() + " from block closures";
                });
            break;
        case Tier::compositional:
            run.run("closure", [&] {
                srep = verify_compositional(e.generators, e.certificate, F, opt.cap);
                rep.aut_order = srep->order;
                expect_eq("group order", srep->order, e.aut_order);
                return "order " + srep->order.get_str() + " = |P| |psi(G)| from block closures";
            });
            break;
        case Tier::generators_only:
            run.skip("closure", "generators-only tier");
            break;
    }

    if (e.label == "fermat")
        run.run("semiperm", [&] {
            SemiPermGroup sp = semi_permutation_group(F);
            expect(sp.finite, "semi-permutation group is infinite");
            expect_eq("semi-permutation order", sp.order, e.aut_order);
            expect_eq("semi-permutation order", sp.order, fermat_count(r, d));
            return "order " + sp.order.get_str() + " over " + std::to_string(sp.permutations.size()) + " permutations";
        });

    switch (e.tier) {
        case Tier::full_closure:
            if (G && G->closed())
                run.run("projective", [&] {
                    std::uint64_t z = scalar_count(*G);
                    expect_eq("scalar subgroup order", z, static_cast<std::uint64_t>(d));
                    rep.lin_order = static_cast<unsigned long>(projective_order(*G));
                    expect_eq("projective order", *rep.lin_order, e.lin_order);
                    return "Lin order " + rep.lin_order->get_str();
                });
            break;
        case Tier::compositional:
            if (srep)
                run.run("projective", [&] {
                    expect_eq("scalar subgroup order", srep->scalar_order, mpz_class(d));
                    rep.lin_order = srep->order / srep->scalar_order;
                    expect_eq("projective order", *rep.lin_order, e.lin_order);
                    return "Lin order " + rep.lin_order->get_str();
                });
            break;
        case Tier::generators_only:
            if (e.projective_prime)
                run.run("projective", [&] {
                    ProjectiveClosure pc = projective_closure_modp(e.generators, *e.projective_prime, e.projective_cap);
                    expect(pc.closed, "projective closure exceeded its cap");
                    rep.lin_order = static_cast<unsigned long>(pc.order);
                    expect_eq("projective order", *rep.lin_order, e.lin_order);
                    rep.aut_order = *rep.lin_order * d;
                    return "Lin order " + rep.lin_order->get_str() + " over F_" + std::to_string(pc.prime) +
                           "; |Aut| = d |Lin|";
                });
            else
                run.skip("projective", "no projective check configured");
            break;
    }

    bool have_structure = run.run("structure", [&] {
        if (e.tier == Tier::full_closure) {
            expect(G && G->closed(), "no closed group");
            srep = verify_certificate(*G, e.certificate, F);
        } else if (e.tier == Tier::generators_only) {
            expect(rep.lin_order.has_value(), "no verified projective order");
            srep = generator_level_report(e, *rep.lin_order);
        }
        expect(srep.has_value(), "no structure report");
        expect_eq("constituent count", e.constituents.size(), srep->blocks.size());
        for (const auto& c : e.constituents) {
            const auto& b = srep->blocks.at(e.certificate.index_of(c.i, c.j));
            if (c.primitive) expect(b.constituent_order <= jc(b.block.size), "constituent order exceeds JC");
        }
        return "l(G) = " + srep->subdegrees.str() + ", |P| = " + srep->p_order.get_str() +
               ", |N| = " + srep->n_order.get_str();
    });
    if (have_structure) {
        rep.structure = srep;
        rep.canonical_bound = srep->canonical_bound;
        run.run("bound", [&] {
            expect(srep->order <= *srep->canonical_bound, "order exceeds the canonical bound");
            return "|G| = " + srep->order.get_str() + " <= B = " + srep->canonical_bound->get_str();
        });
        run.run("ratio", [&] {
            mpz_class fc = fermat_count(r, d);
            Rational ratio = frac(srep->order, fc);
            rep.ratio = ratio;
            expect_eq("ratio", ratio, e.ratio);
            Rational b = frac(*srep->canonical_bound, fc);
            expect(ratio <= b, "ratio exceeds B/(d^r r!)");
            Rational rg = ratio_with_groups(srep->constituents(), d);
            expect(b <= rg, "B/(d^r r!) exceeds the ratio with constituent orders");
            Rational R = hypaut::ratio(srep->subdegrees, d);
            expect(rg <= R, "constituent ratio exceeds R(l(G), d)");
            if (srep->grouping.size() == 1 && ratio > Rational(1)) {
                bool special = ratio == Rational(5, 2);
                expect(special || ratio <= Rational(25, 12), "irreducible ratio above 25/12 and not 5/2");
                expect(special == (r == 2 && d == 12), "ratio 5/2 away from (r, d) = (2, 12)");
            }
            return "ratio " + ratio.str() + " <= " + b.str() + " <= " + rg.str() + " <= R = " + R.str();
        });
    }
    rep.passed = rep.failure.empty();
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

bool CatalogFilter::matches(const CatalogEntry& e) const {
    if (tier && *tier != e.tier) return false;
    if (entry && e.key.find(*entry) == std::string::npos) return false;
    return true;
}

bool CatalogSummary::all_passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const EntryReport& r) { return r.passed; });
}

CatalogSummary verify_all(const std::vector<CatalogEntry>& entries, const CatalogFilter& filter,
                          const VerifyOptions& opt) {
    std::vector<const CatalogEntry*> todo;
    for (const auto& e : entries)
        if (filter.matches(e)) todo.push_back(&e);
    CatalogSummary s;
    s.rows.resize(todo.size());
    std::size_t jobs = static_cast<std::size_t>(std::max(1, opt.jobs));
    for (std::size_t start = 0; start < todo.size(); start += jobs) {
        std::vector<std::future<EntryReport>> batch;
        for (std::size_t k = start; k < std::min(todo.size(), start + jobs); ++k)
            batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                       [&, k] { return verify_entry(*todo[k], opt); }));
        for (std::size_t k = 0; k < batch.size(); ++k) s.rows[start + k] = batch[k].get();
    }
    return s;
}

json entry_report_to_json(const EntryReport& r) {
    json j;
    j["key"] = r.key;
    j["tier"] = to_string(r.tier);
    j["passed"] = r.passed;
    if (!r.failure.empty()) j["failure"] = r.failure;
    if (r.aut_order) j["aut_order"] = r.aut_order->get_str();
    if (r.lin_order) j["lin_order"] = r.lin_order->get_str();
    if (r.ratio) j["ratio"] = r.ratio->str();
    if (r.canonical_bound) j["canonical_bound"] = r.canonical_bound->get_str();
    json checks = json::array();
    for (const auto& c : r.checks) {
        json x = {{"name", c.name}, {"passed", c.passed}};
        if (c.skipped) x["skipped"] = true;
        x["detail"] = c.detail;
        checks.push_back(x);
    }
    j["checks"] = checks;
    if (r.structure) j["structure"] = structure_report_to_json(*r.structure);
    return j;
}

json summary_to_json(const CatalogSummary& s) {
    json j;
    j["passed"] = s.all_passed();
    json rows = json::array();
    for (const auto& r : s.rows) rows.push_back(entry_report_to_json(r));
    j["entries"] = rows;
    return j;
}

std::string summary_table(const CatalogSummary& s) {
    std::ostringstream os;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-22s %-16s %-7s %8s  %s\n", "key", "tier", "checks", "seconds", "result");
    os << buf;
    for (const auto& r : s.rows) {
        int ok = 0;
        for (const auto& c : r.checks) ok += c.passed;
        std::string checks = std::to_string(ok) + "/" + std::to_string(r.checks.size());
        std::snprintf(buf, sizeof buf, "%-22s %-16s %-7s %8.2f  %s\n", r.key.c_str(), to_string(r.tier),
                      checks.c_str(), r.seconds, r.passed ? "PASS" : ("FAIL " + r.failure).c_str());
        os << buf;
    }
    return os.str();
}

}  // namespace hypaut
