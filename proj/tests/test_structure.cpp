#include <doctest.h>

#include <map>

#include "hypaut/diaglattice.hpp"
#include "hypaut/structure.hpp"
#include "test_util.hpp"

using namespace hypaut;

namespace {

struct Entry {
    Form F;
    std::vector<Matrix> gens;
    DecompositionCertificate cert;
};

Entry load(const std::string& path) {
    json j = read_json_file(path);
    return {form_from_json(j), generators_from_json(j), decomposition_from_json(j)};
}

Entry catalog(const std::string& name) { return load(std::string(HYPAUT_CATALOG_DIR) + "/" + name + ".json"); }

DecompositionCertificate cert_of(std::vector<BlockSpec> blocks, std::vector<int> grouping) {
    DecompositionCertificate c;
    c.blocks = std::move(blocks);
    c.grouping = std::move(grouping);
    c.validate();
    return c;
}

std::vector<int> range(int lo, int n) {
    std::vector<int> v(n);
    for (int k = 0; k < n; ++k) v[k] = lo + k;
    return v;
}

// report with the given blocks and constituent orders, for the bound calculators
StructureReport synthetic(const DecompositionCertificate& c, const std::vector<long>& H, int d) {
    StructureReport r;
    r.mode = "synthetic";
    r.dim = c.dim();
    r.grouping = c.grouping;
    for (std::size_t b = 0; b < c.blocks.size(); ++b) {
        BlockReport br;
        br.block = c.blocks[b];
        br.constituent_order = H[b];
        r.blocks.push_back(br);
    }
    r.degree = d;
    r.canonical_bound = canonical_bound(r.constituents(), c.grouping, d);
    return r;
}

// rank of the matrices as vectors, by exact elimination
std::uint64_t exact_rank(const std::vector<Matrix>& ms) {
    std::vector<std::vector<CycNum>> rows;
    for (const auto& m : ms) rows.push_back(m.entries());
    std::uint64_t rank = 0;
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            if (rows[i][c].is_zero()) continue;
            CycNum f = rows[i][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) rows[i][k] = (rows[i][k] - f * rows[rank][k]).reduced();
        }
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_SUITE("structure") {
    TEST_CASE("certificate validation and round trip") {
        auto c = cert_of({{1, 1, 2}, {2, 1, 1}, {2, 2, 1}, {3, 1, 1}}, {1, 2, 1});
        CHECK(c.dim() == 5);
        CHECK(c.offsets() == std::vector<int>{0, 2, 3, 4});
        CHECK(c.index_of(2, 2) == 2);
        auto back = decomposition_from_json(decomposition_to_json(c));
        CHECK(back.blocks == c.blocks);
        CHECK(back.grouping == c.grouping);
        CHECK_THROWS_AS(cert_of({{1, 1, 2}, {1, 2, 1}}, {2}), StructureError);
        CHECK_THROWS_AS(cert_of({{1, 1, 2}, {1, 1, 2}}, {2}), StructureError);
        CHECK_THROWS_AS(cert_of({{1, 1, 2}}, {2}), StructureError);
        CHECK_THROWS_AS(cert_of({{2, 1, 2}}, {1}), StructureError);
        DecompositionCertificate sing = cert_of({{1, 1, 2}}, {1});
        sing.basis_change = Matrix(2);
        CHECK_THROWS_AS(sing.validate(), StructureError);
    }

    TEST_CASE("quintic_480: subdegrees, intrinsic multiplicities and canonical bound") {
        Entry e = load(testutil::data_path("data/quintic_480.json"));
        MatGroup G = closure(e.gens);
        StructureReport r = verify_certificate(G, e.cert, e.F);
        CHECK(r.order == 480);
        CHECK(r.subdegrees.parts() == std::vector<int>{2, 1, 1, 1});
        CHECK(r.intrinsic == std::vector<int>{1, 2, 1});
        CHECK(r.blocks[0].constituent_order == 24);
        for (int b = 1; b < 4; ++b) CHECK(r.blocks[b].constituent_order == 1);
        CHECK(*r.canonical_bound == 30000);
        CHECK(r.order <= *r.canonical_bound);
        CHECK(r.k_orders == std::vector<std::uint64_t>{1, 2, 1});
        CHECK(r.first_sequence_exact());
        CHECK(r.second_sequence_exact());
        CHECK(r.n_checked_exactly == r.n_order);
        // subdegree multiplicities (1,3) differ from the intrinsic ones
        CHECK(r.subdegrees.multiplicities() == std::vector<int>{1, 3});
    }

    TEST_CASE("pair of octahedral blocks: block swap and constituents of order 24") {
        Entry e = catalog("octahedral_2_6");
        MatGroup G = closure(e.gens);
        StructureReport r = verify_certificate(G, e.cert, e.F);
        CHECK(r.order == 41472);
        CHECK(r.k_orders == std::vector<std::uint64_t>{2});
        CHECK(r.psi_order == 2);
        CHECK(r.blocks[0].constituent_order == 24);
        CHECK(r.blocks[1].constituent_order == 24);
        CHECK(r.p_order * 2 == 41472);
        CHECK(r.n_order * r.phi_order == r.p_order);
        CHECK(r.order <= *r.canonical_bound);
        CHECK(*r.ratio == Rational(41472, 6 * 6 * 6 * 6 * 24));
    }

    TEST_CASE("Fermat cubic curve: trivial constituents, |N| = 27, K = S3") {
        Entry e = catalog("fermat_1_3");
        MatGroup G = closure(e.gens);
        StructureReport r = verify_certificate(G, e.cert, e.F);
        CHECK(r.order == 162);
        CHECK(r.n_order == 27);
        CHECK(r.k_orders == std::vector<std::uint64_t>{6});
        for (const auto& b : r.blocks) CHECK(b.constituent_order == 1);
        CHECK(*r.kernel_lattice_order == 27);
        CHECK(r.order == *r.canonical_bound);
    }

    TEST_CASE("exact sequences and block-scalar kernels on closed catalog groups") {
        for (const char* name : {"klein_1_4", "wiman_1_6", "segre216_1_6", "quartic_2_4", "fermat_1_5", "fermat_2_3",
                                 "fermat_3_3"}) {
            CAPTURE(name);
            Entry e = catalog(name);
            MatGroup G = closure(e.gens);
            StructureReport r = verify_certificate(G, e.cert, e.F);
            CHECK(r.order == static_cast<unsigned long>(G.order()));
            CHECK(r.order == r.p_order * r.psi_order);
            CHECK(r.p_order == r.n_order * r.phi_order);
            CHECK(r.n_checked_exactly == r.n_order);
            CHECK(r.order <= *r.canonical_bound);
            // G is all of Aut(F), so N is the whole block-scalar stabilizer
            CHECK(*r.kernel_lattice_order == r.n_order);
            CHECK(r.scalar_order == static_cast<unsigned long>(scalar_count(G)));
        }
    }

    TEST_CASE("binary icosahedral pair: closed and compositional routes agree") {
        Entry e = catalog("icosahedral_2_12");
        StructureReport comp = verify_compositional(e.gens, e.cert, e.F);
        CHECK(comp.order == 1036800);
        CHECK(comp.psi_order == 2);
        CHECK(comp.n_order == 144);
        CHECK(comp.blocks[0].constituent_order == 60);
        CHECK(*comp.ratio == Rational(25, 12));
        CHECK(comp.provenance.at("|G|") == "derived");
        MatGroup G = closure(e.gens);
        REQUIRE(G.closed());
        StructureReport full = verify_certificate(G, e.cert, e.F);
        CHECK(full.order == comp.order);
        CHECK(full.p_order == comp.p_order);
        CHECK(full.n_order == comp.n_order);
        CHECK(full.phi_order == comp.phi_order);
        CHECK(full.scalar_order == 12);
        CHECK(comp.scalar_order == 12);
        CHECK(full.blocks[1].constituent_order == comp.blocks[1].constituent_order);
        CHECK(*full.canonical_bound == *comp.canonical_bound);
    }

    TEST_CASE("three binary icosahedral blocks permuted by S3") {
        Entry e = catalog("icosahedral_4_12");
        StructureReport r = verify_compositional(e.gens, e.cert, e.F);
        CHECK(r.order == mpz_class("2239488000"));
        CHECK(r.psi_order == 6);
        CHECK(r.p_order == 720 * 720 * 720);
        CHECK(r.n_order == 1728);
        CHECK(r.phi_order == 60 * 60 * 60);
        CHECK(*r.kernel_lattice_order == 1728);
        CHECK(r.scalar_order == 12);
        CHECK(r.first_sequence_exact());
        CHECK(r.second_sequence_exact());
        CHECK(*r.ratio == Rational(25, 24));
    }

    TEST_CASE("compositional verification rejects mixed generators") {
        Entry e = catalog("icosahedral_2_12");
        std::vector<Matrix> gens = e.gens;
        gens.push_back(gens[0] * gens.back());  // block generator times swap
        CHECK_THROWS_AS(verify_compositional(gens, e.cert), StructureError);
        // a certificate splitting an irreducible block fails the span test
        auto bad = cert_of({{1, 1, 1}, {2, 1, 1}, {3, 1, 1}, {4, 1, 1}}, {1, 1, 1, 1});
        CHECK_THROWS_AS(verify_compositional(e.gens, bad), StructureError);
    }

    TEST_CASE("generators mapping blocks off the lattice are rejected") {
        Entry e = catalog("klein_1_4");
        MatGroup G = closure(e.gens);
        auto c = cert_of({{1, 1, 1}, {1, 2, 1}, {1, 3, 1}}, {3});
        CHECK_THROWS_AS(verify_certificate(G, c), StructureError);
    }

    TEST_CASE("basis change: conjugated decomposition recovers the same report") {
        Entry e = catalog("octahedral_2_6");
        // reorder coordinates as (x3, x1, x4, x2); blocks are the columns of Q
        Matrix Q = Matrix::permutation({1, 3, 0, 2});
        std::vector<Matrix> gens;
        Matrix Qi = Q.inverse();
        for (const auto& g : e.gens) gens.push_back(Q * g * Qi);
        Form F = act(e.F, Qi);
        MatGroup G = closure(gens);
        for (const auto& g : gens) CHECK(act(F, g) == F);
        DecompositionCertificate c = e.cert;
        c.basis_change = Q;
        StructureReport r = verify_certificate(G, c, F);
        CHECK(r.order == 41472);
        CHECK(r.blocks[0].constituent_order == 24);
        CHECK_THROWS_AS(verify_certificate(G, e.cert, F), StructureError);
    }

    TEST_CASE("irreducible_span examples") {
        MatGroup S = scalar_group(2, 3);
        CHECK(span_dimension(S, {0, 1}) == 1);
        CHECK_FALSE(irreducible_span(S, {0, 1}));
        Entry ico = catalog("icosahedral_2_12");
        std::vector<int> b = {0, 1};
        std::vector<Matrix> two = {ico.gens[0].block(b, b), ico.gens[1].block(b, b)};
        MatGroup B = closure(two);
        CHECK(span_dimension(B, b) == 4);
        CHECK(irreducible_span(B, b));
        CHECK(span_dimension(two, b) == 4);
        for (int r = 2; r <= 5; ++r) {
            std::vector<int> cyc(r);
            for (int k = 0; k < r; ++k) cyc[k] = (k + 1) % r;
            std::vector<int> sw = range(0, r);
            std::swap(sw[0], sw[1]);
            std::vector<Matrix> perms = {Matrix::permutation(cyc), Matrix::permutation(sw)};
            MatGroup Sym = closure(perms);
            CHECK_FALSE(irreducible_span(Sym, range(0, r)));
            CHECK_FALSE(irreducible_span(perms, range(0, r)));
            // the permutation module is the trivial line plus an irreducible piece
            CHECK(span_dimension(Sym, range(0, r)) == static_cast<std::uint64_t>(1 + (r - 1) * (r - 1)));
        }
        for (const char* name : {"klein_1_4", "wiman_1_6", "quartic_2_4"}) {
            Entry e = catalog(name);
            CHECK(irreducible_span(e.gens, range(0, e.F.nvars())));
        }
    }

    TEST_CASE("span from generators equals the span of all elements") {
        std::mt19937_64 rng(11);
        for (int t = 0; t < 12; ++t) {
            int r = 2 + t % 2;
            std::vector<int> p = range(0, r);
            std::shuffle(p.begin(), p.end(), rng);
            std::vector<CycNum> diag;
            for (int k = 0; k < r; ++k) diag.push_back(CycNum::root_of_unity(1 + static_cast<int>(rng() % 4), 1));
            std::vector<Matrix> gens = {Matrix::permutation(p), Matrix::diagonal(diag)};
            MatGroup G = closure(gens);
            CHECK(span_dimension(G, range(0, r)) == span_dimension(gens, range(0, r)));
            CHECK(span_dimension(gens, range(0, r)) == exact_rank(G.elements()));
        }
    }

    TEST_CASE("refined bound: d1d2 on the icosahedral pair with a cross term") {
        Entry e = catalog("icosahedral_2_12");
        StructureReport r = verify_compositional(e.gens, e.cert, e.F);
        CHECK(*r.canonical_bound == 1036800);
        Form cross = e.F + Form::parse("x1^6*x3^6", 4);
        RefinedBound rb = refined_bound(r, cross, {BoundKind::d1d2, 1, 1, 6, 1});
        CHECK(rb.bound == Rational(17280));
        CHECK(rb.ratio == Rational(5, 144));
        CHECK(rb.witness == Exps{6, 0, 6, 0});
        // a normal subgroup of order 12 keeps index 5
        CHECK(refined_bound(r, cross, {BoundKind::d1d2, 1, 1, 6, 12}).bound == Rational(12 * 17280));
        CHECK_THROWS_AS(refined_bound(r, e.F, {BoundKind::d1d2, 1, 1, 6, 1}), StructureError);
        CHECK_THROWS_AS(refined_bound(r, cross, {BoundKind::d1d2, 1, 1, 6, 7}), StructureError);
        CHECK_THROWS_AS(refined_bound(r, cross, {BoundKind::d1d2, 1, 1, 12, 1}), StructureError);
    }

    TEST_CASE("refined bound: classify cases for k = 2 and k = 3") {
        auto c2 = cert_of({{1, 1, 2}, {1, 2, 2}}, {2});
        StructureReport r2 = synthetic(c2, {60, 60}, 12);
        Form F = Form::parse("x1^11*x3 + x2^12 + x4^12", 4);
        RefinedBound b2 = refined_bound(r2, F, {BoundKind::classify, 1});
        CHECK(b2.bound == Rational(*r2.canonical_bound) / Rational(60));
        CHECK(b2.rule == "classify-pair");
        auto c3 = cert_of({{1, 1, 1}, {1, 2, 1}, {1, 3, 1}}, {3});
        StructureReport r3 = synthetic(c3, {1, 1, 1}, 3);
        Form G = Form::parse("x1^2*x2 + x2^3 + x3^3 + x1^3", 3);
        RefinedBound b3 = refined_bound(r3, G, {BoundKind::classify, 1});
        CHECK(b3.bound == Rational(27 * 6, 2));
        CHECK(b3.rule == "classify-many");
        auto c1 = cert_of({{1, 1, 2}, {2, 1, 1}}, {1, 1});
        CHECK_THROWS_AS(refined_bound(synthetic(c1, {6, 1}, 3), Form::parse("x1^2*x3+x2^3+x3^3", 3),
                                      {BoundKind::classify, 1}),
                        StructureError);
    }

    TEST_CASE("refined bound: type2 divides by |H_i1|^k_i") {
        auto c = cert_of({{1, 1, 2}, {2, 1, 1}, {2, 2, 1}}, {1, 2});
        StructureReport r = synthetic(c, {24, 1, 1}, 4);
        Form F = Form::parse("x1^3*x3 + x2^4 + x1^4 + x3^4 + x4^4", 4);
        RefinedBound b = refined_bound(r, F, {BoundKind::type2, 2});
        CHECK(b.bound == Rational(*r.canonical_bound));
        RefinedBound b1 = refined_bound(r, Form::parse("x3^3*x1 + x2^4 + x1^4 + x3^4 + x4^4", 4), {BoundKind::type2, 1});
        CHECK(b1.bound == Rational(*r.canonical_bound) / Rational(24));
        CHECK_THROWS_AS(refined_bound(r, Form::parse("x1^4+x2^4+x3^4+x4^4", 4), {BoundKind::type2, 2}),
                        StructureError);
        auto single = cert_of({{1, 1, 2}}, {1});
        CHECK_THROWS_AS(refined_bound(synthetic(single, {24}, 4), Form::parse("x1^4+x2^4", 2), {BoundKind::type2, 1}),
                        StructureError);
    }

    TEST_CASE("refined bound: typeII with c = 2 divides by d") {
        auto c = cert_of({{1, 1, 2}, {2, 1, 1}, {3, 1, 1}}, {1, 1, 1});
        StructureReport r = synthetic(c, {1, 1, 1}, 3);
        Form F = Form::parse("x1^2*x3 + x2^2*x4 + x3^3 + x4^3", 4);
        REQUIRE(is_smooth(F).verdict == Verdict::smooth);
        RefinedBound b = refined_bound(r, F, {BoundKind::type_ii, 1, 1});
        CHECK(b.count == 2);
        CHECK(b.bound * Rational(3) == Rational(*r.canonical_bound));
        // a smooth block component does not meet the hypothesis
        Form S = Form::parse("x1^3 + x2^3 + x1^2*x3 + x3^3 + x4^3", 4);
        CHECK_THROWS_AS(refined_bound(r, S, {BoundKind::type_ii, 1, 1}), StructureError);
    }

    TEST_CASE("JC exceeds 106 from dimension 3 on") {
        for (int r = 3; r <= 40; ++r) CHECK(jc(r) > 106);
        // so the bound 106 d^r r! / JC(r) stays below the Fermat count
        for (int r = 3; r <= 12; ++r) CHECK(Rational(106) / Rational(jc(r)) < Rational(1));
    }

    TEST_CASE("ratioprod values and exhaustive scan") {
        CHECK(ratioprod({2, 2}).q == Rational(25, 24));
        CHECK(ratioprod_check({2, 2}));
        CHECK(ratioprod({2, 1}).q == Rational(5, 6));
        CHECK_FALSE(ratioprod_check({2, 1}));
        CHECK_FALSE(ratioprod_check({3, 2}));
        CHECK_FALSE(ratioprod_check({1, 1}));
        CHECK_THROWS_AS(ratioprod({3}), std::invalid_argument);
        CHECK_THROWS_AS(ratioprod({2, 0}), std::invalid_argument);
        auto hits = ratioprod_scan(12);
        REQUIRE(hits.size() == 1);
        CHECK(hits[0] == std::vector<int>{2, 2});
        // order of the entries does not matter
        std::mt19937_64 rng(5);
        int cases = 0;
        for (int v = 2; v <= 12; ++v)
            for (const auto& l : enumerate_sequences(v)) {
                if (l.length() < 2) continue;
                auto p = l.parts();
                std::shuffle(p.begin(), p.end(), rng);
                CHECK(ratioprod(p).q == ratioprod(l.parts()).q);
                ++cases;
            }
        CHECK(cases >= 200);
    }
}
