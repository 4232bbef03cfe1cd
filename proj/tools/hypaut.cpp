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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hypaut/catalog.hpp"
#include "hypaut/diaglattice.hpp"
#include "hypaut/json_io.hpp"
#include "hypaut/matgroups.hpp"
#include "hypaut/sequences.hpp"
#include "hypaut/smoothness.hpp"
#include "hypaut/structure.hpp"

using namespace hypaut;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "a..b" or "a"
std::pair<int, int> parse_range(const std::string& s) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            int v = std::stoi(s);
            return {v, v};
        }
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw UsageError("bad range: " + s);
    }
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw UsageError("bad integer list: " + s);
        }
    }
    return out;
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

json closure_json(const MatGroup& G) {
    json j;
    j["closed"] = G.closed();
    j["order"] = G.order();
    j["dim"] = G.dim();
    j["conductor"] = G.conductor();
    j["prime"] = G.prime();
    if (G.closed()) {
        j["projective_order"] = projective_order(G);
        j["scalar_count"] = scalar_count(G);
        j["center_order"] = center(G).order();
    }
    return j;
}

json diag_json(const DiagGroup& g) {
    json j;
    j["block_sizes"] = g.block_sizes;
    j["finite"] = g.finite;
    j["order"] = g.order.get_str();
    json div = json::array();
    for (const auto& x : g.divisors) div.push_back(x.get_str());
    j["divisors"] = div;
    j["generators"] = generators_to_json(g.generators);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Automorphism groups of smooth hypersurfaces: exact ratios, groups and catalog checks"};
    app.require_subcommand(1);
    int status = kOk;
    std::function<int()> action;

    // ratio
    auto* ratio_cmd = app.add_subcommand("ratio", "Fermat-test ratio R(l, d)");
    std::string seq;
    int d_ratio = 0;
    ratio_cmd->add_option("--seq", seq, "subdegree sequence, e.g. \"8^1 6^2 1^3\"")->required();
    ratio_cmd->add_option("--d", d_ratio, "degree")->required();
    ratio_cmd->callback([&] {
        action = [&] {
            std::cout << ratio(SubdegreeSequence::parse(seq), d_ratio).str() << "\n";
            return kOk;
        };
    });

    auto* jc_cmd = app.add_subcommand("jc", "largest primitive subgroup order of PGL(r)");
    int r_jc = 0;
    jc_cmd->add_option("--r", r_jc, "dimension")->required()->check(CLI::PositiveNumber);
    jc_cmd->callback([&] {
        action = [&] {
            std::cout << jc(r_jc).get_str() << "\n";
            return kOk;
        };
    });

    auto* search_cmd = app.add_subcommand("search", "survivors with R(l, d) >= 1 over ranges of n and d");
    std::string n_range, d_range, search_out;
    search_cmd->add_option("--n", n_range, "n or lo..hi")->required();
    search_cmd->add_option("--d", d_range, "d or lo..hi")->required();
    search_cmd->add_option("--out", search_out, "TSV output file (default stdout)");
    search_cmd->callback([&] {
        action = [&] {
            auto [nl, nh] = parse_range(n_range);
            auto [dl, dh] = parse_range(d_range);
            if (nl < 1 || nl > nh || dl < 3 || dl > dh) throw UsageError("ranges need 1 <= n, 3 <= d, lo <= hi");
            std::string tsv = survivors_tsv(classification_search(nl, nh, dl, dh));
            if (search_out.empty()) std::cout << tsv;
            else write_text(search_out, tsv);
            return kOk;
        };
    });

    auto* bounds_cmd = app.add_subcommand("bounds-scan", "uniform ratio bounds over a finite domain");
    int bv = 30, bd = 20;
    bounds_cmd->add_option("--v", bv, "largest total degree")->capture_default_str();
    bounds_cmd->add_option("--d", bd, "largest degree")->capture_default_str();
    bounds_cmd->callback([&] {
        action = [&] {
            UniformBoundsReport u = uniform_bounds_scan(bv, bd);
            auto rec = [](const RatioRecord& x) {
                return json{{"sequence", x.l.str()}, {"d", x.d}, {"ratio", x.ratio.str()}};
            };
            json j;
            j["v_max"] = u.v_max;
            j["d_max"] = u.d_max;
            j["scanned"] = u.scanned;
            j["max_all"] = rec(u.max_all);
            j["max_two_distinct"] = rec(u.max_two_distinct);
            j["max_ones_two"] = rec(u.max_ones_two);
            j["max_ones_one"] = rec(u.max_ones_one);
            j["bound106"] = u.bound106;
            j["bound60"] = u.bound60;
            j["bound3"] = u.bound3;
            j["bound11"] = u.bound11;
            j["a_values"] = u.a_values;
            json w3 = json::array(), w6 = json::array();
            for (const auto& x : u.with_three) w3.push_back(rec(x));
            for (const auto& x : u.with_six) w6.push_back(rec(x));
            j["with_three"] = w3;
            j["with_six"] = w6;
            j["ok"] = u.ok();
            print_json(j);
            return u.ok() ? kOk : kFailed;
        };
    });

    auto* smooth_cmd = app.add_subcommand("smooth", "Jacobian smoothness certificate");
    std::string form_file, strategy = "auto";
    std::uint32_t prime = 0;
    long long budget = 0;
    std::uint64_t seed = SmoothOptions{}.seed;
    smooth_cmd->add_option("form", form_file, "form file (expression or JSON)")->required();
    smooth_cmd->add_option("--strategy", strategy, "auto|char0|modp|split")->capture_default_str();
    smooth_cmd->add_option("--prime", prime, "prime for the modular route");
    smooth_cmd->add_option("--budget", budget, "S-pair budget per Groebner run");
    smooth_cmd->add_option("--seed", seed, "seed for the prime choice")->capture_default_str();
    smooth_cmd->callback([&] {
        action = [&] {
            SmoothOptions opt;
            try {
                opt.strategy = parse_strategy(strategy);
            } catch (const std::exception& e) {
                throw UsageError(e.what());
            }
            if (prime) opt.prime = prime;
            if (budget > 0) opt.budget = budget;
            opt.seed = seed;
            SmoothnessCertificate c = is_smooth(load_form_file(form_file), opt);
            json j = certificate_to_json(c);
            j["seed"] = seed;
            print_json(j);
            return c.verdict == Verdict::smooth ? kOk : kFailed;
        };
    });

    auto* closure_cmd = app.add_subcommand("closure", "order of a finite matrix group");
    std::string gens_file;
    std::uint64_t cap = default_closure_cap();
    closure_cmd->add_option("gens", gens_file, "generators JSON")->required();
    closure_cmd->add_option("--cap", cap, "element cap")->capture_default_str();
    closure_cmd->callback([&] {
        action = [&] {
            MatGroup G = closure(generators_from_json(read_json_file(gens_file)), cap);
            print_json(closure_json(G));
            return G.closed() ? kOk : kFailed;
        };
    });

    auto* invdim_cmd = app.add_subcommand("invdim", "dimension of degree-e invariants");
    int degree = 0;
    std::string method = "both";
    invdim_cmd->add_option("gens", gens_file, "generators JSON")->required();
    invdim_cmd->add_option("--degree", degree, "degree e")->required()->check(CLI::NonNegativeNumber);
    invdim_cmd->add_option("--method", method, "reynolds|molien|both")->capture_default_str()
        ->check(CLI::IsMember({"reynolds", "molien", "both"}));
    invdim_cmd->add_option("--cap", cap, "element cap")->capture_default_str();
    invdim_cmd->callback([&] {
        action = [&] {
            MatGroup G = closure(generators_from_json(read_json_file(gens_file)), cap);
            if (!G.closed()) throw GroupError("closure exceeded the cap");
            InvMethod m = method == "reynolds" ? InvMethod::reynolds
                          : method == "molien" ? InvMethod::molien
                                               : InvMethod::both;
            json j;
            j["order"] = G.order();
            j["degree"] = degree;
            j["method"] = method;
            j["dimension"] = invariant_dimension(G, degree, m);
            print_json(j);
            return kOk;
        };
    });

    auto* diag_cmd = app.add_subcommand("diag-group", "block-scalar stabilizer of a form");
    std::string blocks;
    diag_cmd->add_option("form", form_file, "form file")->required();
    diag_cmd->add_option("--blocks", blocks, "block sizes, e.g. 1,1,2 (default all 1)");
    diag_cmd->callback([&] {
        action = [&] {
            Form F = load_form_file(form_file);
            std::vector<int> sizes = blocks.empty() ? std::vector<int>(F.nvars(), 1) : parse_int_list(blocks);
            DiagGroup g = block_scalar_group(F, sizes);
            json j = diag_json(g);
            j["bound"] = check_diag_bound(F, sizes);
            print_json(j);
            return kOk;
        };
    });

    auto* semi_cmd = app.add_subcommand("semiperm-group", "semi-permutation automorphisms of a form");
    semi_cmd->add_option("form", form_file, "form file")->required();
    semi_cmd->callback([&] {
        action = [&] {
            SemiPermGroup g = semi_permutation_group(load_form_file(form_file));
            json j;
            j["finite"] = g.finite;
            j["order"] = g.order.get_str();
            j["diagonal"] = diag_json(g.diagonal);
            j["permutations"] = g.permutations;
            j["candidates"] = g.candidates;
            j["generators"] = generators_to_json(g.generators());
            print_json(j);
            return kOk;
        };
    });

    auto* struct_cmd = app.add_subcommand("structure", "verify a decomposition certificate");
    std::string cert_file, struct_form;
    bool compositional = false;
    struct_cmd->add_option("gens", gens_file, "generators JSON")->required();
    struct_cmd->add_option("cert", cert_file, "certificate JSON")->required();
    struct_cmd->add_option("--form", struct_form, "form file");
    struct_cmd->add_option("--cap", cap, "element cap")->capture_default_str();
    struct_cmd->add_flag("--compositional", compositional, "verify from generators without a full closure");
    struct_cmd->callback([&] {
        action = [&] {
            auto gens = generators_from_json(read_json_file(gens_file));
            auto cert = decomposition_from_json(read_json_file(cert_file));
            std::optional<Form> F;
            if (!struct_form.empty()) F = load_form_file(struct_form);
            std::optional<StructureReport> rep;
            if (!compositional) {
                MatGroup G = closure(gens, cap);
                if (G.closed()) rep = verify_certificate(G, cert, F);
            }
            if (!rep) rep = verify_compositional(gens, cert, F, cap);
            print_json(structure_report_to_json(*rep));
            return kOk;
        };
    });

    auto* cat_cmd = app.add_subcommand("verify-catalog", "run the catalog verification pipeline");
    std::string entry, tier, out_file, dir = HYPAUT_CATALOG_DIR;
    int jobs = 1;
    cat_cmd->add_option("--entry", entry, "key substring, e.g. 4,6 or fermat");
    cat_cmd->add_option("--tier", tier, "full-closure|compositional|generators-only");
    cat_cmd->add_option("--cap", cap, "closure cap")->capture_default_str();
    cat_cmd->add_option("--jobs", jobs, "entries verified concurrently")->capture_default_str()->check(CLI::PositiveNumber);
    cat_cmd->add_option("--dir", dir, "catalog directory")->capture_default_str();
    cat_cmd->add_option("--out", out_file, "JSON report file (default stdout)");
    cat_cmd->callback([&] {
        action = [&] {
            CatalogFilter f;
            if (!entry.empty()) f.entry = entry;
            if (!tier.empty()) {
                try {
                    f.tier = parse_tier(tier);
                } catch (const std::exception& e) {
                    throw UsageError(e.what());
                }
            }
            VerifyOptions opt;
            opt.cap = cap;
            opt.jobs = jobs;
            CatalogSummary s = verify_all(load_catalog(dir), f, opt);
            if (s.rows.empty()) throw UsageError("no catalog entry matches the filter");
            // the table carries wall times, so it stays off stdout
            if (out_file.empty()) print_json(summary_to_json(s));
            else write_text(out_file, summary_to_json(s).dump(2) + "\n");
            std::cerr << summary_table(s);
            return s.all_passed() ? kOk : kFailed;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return kUsage;
    }
    try {
        status = action();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    } catch (const StructureError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return status;
}
