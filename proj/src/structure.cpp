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

#include "hypaut/structure.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hypaut/diaglattice.hpp"
#include "hypaut/smoothness.hpp"

namespace hypaut {

int DecompositionCertificate::dim() const {
    int r = 0;
    for (const auto& b : blocks) r += b.size;
    return r;
}

std::vector<int> DecompositionCertificate::block_sizes() const {
    std::vector<int> out;
    for (const auto& b : blocks) out.push_back(b.size);
    return out;
}

std::vector<int> DecompositionCertificate::offsets() const {
    std::vector<int> out;
    int o = 0;
    for (const auto& b : blocks) {
        out.push_back(o);
        o += b.size;
    }
    return out;
}

int DecompositionCertificate::index_of(int i, int j) const {
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (blocks[b].i == i && blocks[b].j == j) return static_cast<int>(b);
    throw StructureError("certificate has no block W_" + std::to_string(i) + "," + std::to_string(j));
}

void DecompositionCertificate::validate() const {
    if (blocks.empty()) throw StructureError("certificate has no blocks");
    if (grouping.empty()) throw StructureError("certificate has an empty grouping");
    int m = static_cast<int>(grouping.size());
    std::set<std::pair<int, int>> seen;
    std::vector<int> size_of(m, 0);
    for (const auto& b : blocks) {
        if (b.size < 1) throw StructureError("block sizes must be positive");
        if (b.i < 1 || b.i > m) throw StructureError("block index i out of range");
        if (b.j < 1 || b.j > grouping[b.i - 1]) throw StructureError("block index j out of range");
        if (!seen.insert({b.i, b.j}).second) throw StructureError("block listed twice");
        if (size_of[b.i - 1] && size_of[b.i - 1] != b.size)
            throw StructureError("blocks of one V_i must share a size");
        size_of[b.i - 1] = b.size;
    }
    int total = std::accumulate(grouping.begin(), grouping.end(), 0);
    if (static_cast<int>(blocks.size()) != total) throw StructureError("grouping does not match the block list");
    if (basis_change) {
        if (basis_change->dim() != dim()) throw StructureError("basis change has the wrong dimension");
        if (basis_change->det().is_zero()) throw StructureError("basis change is singular");
    }
}

DecompositionCertificate decomposition_from_json(const json& j0) {
    const json& j = j0.contains("certificate") ? j0.at("certificate") : j0;
    DecompositionCertificate c;
    if (j.contains("basis_change") && !j.at("basis_change").is_null())
        c.basis_change = matrix_from_json(j.at("basis_change"));
    for (const auto& b : j.at("blocks")) c.blocks.push_back({b.at("i").get<int>(), b.at("j").get<int>(), b.at("size").get<int>()});
    c.grouping = j.at("grouping").get<std::vector<int>>();
    c.validate();
    return c;
}

json decomposition_to_json(const DecompositionCertificate& c) {
    json j;
    j["basis_change"] = c.basis_change ? matrix_to_json(*c.basis_change) : json(nullptr);
    json blocks = json::array();
    for (const auto& b : c.blocks) blocks.push_back({{"i", b.i}, {"j", b.j}, {"size", b.size}});
    j["blocks"] = blocks;
    j["grouping"] = c.grouping;
    return j;
}

ConstituentOrders StructureReport::constituents() const {
    std::vector<const BlockReport*> sorted;
    for (const auto& b : blocks) sorted.push_back(&b);
    std::sort(sorted.begin(), sorted.end(), [](const BlockReport* a, const BlockReport* b) {
        return std::pair(a->block.i, a->block.j) < std::pair(b->block.i, b->block.j);
    });
    ConstituentOrders out;
    for (const auto* b : sorted) out.push_back({b->block.size, b->constituent_order});
    return out;
}

json structure_report_to_json(const StructureReport& r) {
    json j;
    j["mode"] = r.mode;
    j["dim"] = r.dim;
    j["order"] = r.order.get_str();
    j["psi_order"] = r.psi_order.get_str();
    json ks = json::array();
    for (std::size_t i = 0; i < r.k_orders.size(); ++i)
        ks.push_back({{"i", i + 1}, {"k", r.grouping[i]}, {"order", r.k_orders[i]}, {"transitive", r.k_transitive[i]}});
    j["permutation_images"] = ks;
    j["p_order"] = r.p_order.get_str();
    j["n_order"] = r.n_order.get_str();
    j["phi_order"] = r.phi_order.get_str();
    j["scalar_order"] = r.scalar_order.get_str();
    j["n_checked_exactly"] = r.n_checked_exactly;
    json bl = json::array();
    for (const auto& b : r.blocks) {
        json x;
        x["i"] = b.block.i;
        x["j"] = b.block.j;
        x["size"] = b.block.size;
        x["constituent_order"] = b.constituent_order.get_str();
        if (b.stabilizer_order != 0) x["stabilizer_order"] = b.stabilizer_order.get_str();
        x["span_dim"] = b.span_dim;
        x["irreducible"] = b.irreducible;
        bl.push_back(x);
    }
    j["blocks"] = bl;
    j["subdegrees"] = r.subdegrees.parts();
    j["subdegree_type"] = r.subdegrees.str();
    j["intrinsic"] = r.intrinsic;
    j["first_sequence_exact"] = r.first_sequence_exact();
    j["second_sequence_exact"] = r.second_sequence_exact();
    json prov = json::object();
    for (const auto& [k, v] : r.provenance) prov[k] = v;
    j["provenance"] = prov;
    if (r.degree) j["degree"] = *r.degree;
    if (r.canonical_bound) j["canonical_bound"] = r.canonical_bound->get_str();
    if (r.ratio) j["ratio"] = r.ratio->str();
    if (r.kernel_lattice_order) j["kernel_lattice_order"] = r.kernel_lattice_order->get_str();
    return j;
}

namespace {

// Incremental row echelon basis over F_p.
class ModSpan {
   public:
    explicit ModSpan(std::uint32_t p) : p_(p) {}
    bool add(std::vector<std::uint32_t> v) {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            std::uint64_t c = v[piv_[k]];
            if (!c) continue;
            for (std::size_t t = 0; t < v.size(); ++t)
                v[t] = static_cast<std::uint32_t>((v[t] + (p_ - c) * rows_[k][t]) % p_);
        }
        std::size_t piv = 0;
        while (piv < v.size() && !v[piv]) ++piv;
        if (piv == v.size()) return false;
        std::uint64_t inv = invmod(v[piv], p_);
        for (auto& x : v) x = static_cast<std::uint32_t>(x * inv % p_);
        rows_.push_back(std::move(v));
        piv_.push_back(piv);
        return true;
    }
    std::uint64_t size() const { return rows_.size(); }

   private:
    std::uint64_t p_;
    std::vector<std::vector<std::uint32_t>> rows_;
    std::vector<std::size_t> piv_;
};

class ExactSpan {
   public:
    bool add(std::vector<CycNum> v) {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            CycNum c = v[piv_[k]];
            if (c.is_zero()) continue;
            for (std::size_t t = 0; t < v.size(); ++t)
                if (!rows_[k][t].is_zero()) v[t] = (v[t] - c * rows_[k][t]).reduced();
        }
        std::size_t piv = 0;
        while (piv < v.size() && v[piv].is_zero()) ++piv;
        if (piv == v.size()) return false;
        CycNum inv = v[piv].inv();
        for (auto& x : v) x = (x * inv).reduced();
        rows_.push_back(std::move(v));
        piv_.push_back(piv);
        return true;
    }
    std::uint64_t size() const { return rows_.size(); }

   private:
    std::vector<std::vector<CycNum>> rows_;
    std::vector<std::size_t> piv_;
};

std::vector<std::uint32_t> mod_block(const ModMat& x, const std::vector<int>& coords) {
    std::vector<std::uint32_t> v;
    v.reserve(coords.size() * coords.size());
    for (int r : coords)
        for (int c : coords) v.push_back(x(r, c));
    return v;
}

std::vector<CycNum> exact_block(const Matrix& x, const std::vector<int>& coords) {
    std::vector<CycNum> v;
    for (int r : coords)
        for (int c : coords) v.push_back(x(r, c));
    return v;
}

void normalize_mod(std::vector<std::uint32_t>& v, std::uint32_t p) {
    std::size_t k = 0;
    while (k < v.size() && !v[k]) ++k;
    if (k == v.size()) return;
    std::uint64_t inv = invmod(v[k], p);
    for (auto& x : v) x = static_cast<std::uint32_t>(x * inv % p);
}

bool is_scalar_block(const std::vector<std::uint32_t>& v, int s) {
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) {
            auto x = v[static_cast<std::size_t>(a) * s + b];
            if (a == b ? x != v[0] : x != 0) return false;
        }
    return true;
}

struct Layout {
    int r = 0;
    std::vector<int> offset, size, vgroup, local;  // per block
    std::vector<int> block_of;                     // per coordinate
    std::vector<std::vector<int>> members;         // V_i -> blocks ordered by j

    explicit Layout(const DecompositionCertificate& c) {
        offset = c.offsets();
        size = c.block_sizes();
        r = c.dim();
        members.assign(c.grouping.size(), {});
        for (std::size_t i = 0; i < c.grouping.size(); ++i) members[i].assign(c.grouping[i], -1);
        for (int b = 0; b < c.block_count(); ++b) {
            vgroup.push_back(c.blocks[b].i - 1);
            local.push_back(c.blocks[b].j - 1);
            members[c.blocks[b].i - 1][c.blocks[b].j - 1] = b;
            for (int t = 0; t < size[b]; ++t) block_of.push_back(b);
        }
    }
    int count() const { return static_cast<int>(size.size()); }
    std::vector<int> coords(int b) const {
        std::vector<int> out(size[b]);
        std::iota(out.begin(), out.end(), offset[b]);
        return out;
    }
};

// Target block of each column block, or nullopt when a column block spreads over several blocks.
template <class NonZero>
std::optional<std::vector<int>> block_permutation(const Layout& L, NonZero nz) {
    std::vector<int> sigma(L.count(), -1);
    std::vector<bool> hit(L.count(), false);
    for (int b = 0; b < L.count(); ++b) {
        for (int c = L.offset[b]; c < L.offset[b] + L.size[b]; ++c)
            for (int row = 0; row < L.r; ++row) {
                if (!nz(row, c)) continue;
                int t = L.block_of[row];
                if (sigma[b] < 0) sigma[b] = t;
                else if (sigma[b] != t) return std::nullopt;
            }
        if (sigma[b] < 0 || hit[sigma[b]] || L.size[sigma[b]] != L.size[b]) return std::nullopt;
        hit[sigma[b]] = true;
    }
    return sigma;
}

std::vector<int> exact_sigma(const Matrix& g, const Layout& L) {
    auto s = block_permutation(L, [&](int r, int c) { return !g(r, c).is_zero(); });
    if (!s) throw StructureError("a generator maps a block off the block lattice");
    for (int b = 0; b < L.count(); ++b)
        if (L.vgroup[(*s)[b]] != L.vgroup[b]) throw StructureError("a generator moves a block to another V_i");
    return *s;
}

std::vector<Matrix> conjugated(const std::vector<Matrix>& gens, const DecompositionCertificate& cert) {
    if (!cert.basis_change) return gens;
    const Matrix& Q = *cert.basis_change;
    Matrix Qi = Q.inverse();
    std::vector<Matrix> out;
    for (const auto& g : gens) out.push_back((Qi * g * Q).reduced());
    return out;
}

void check_dims(const std::vector<Matrix>& gens, const DecompositionCertificate& cert) {
    cert.validate();
    if (gens.empty()) throw StructureError("no generators");
    for (const auto& g : gens)
        if (g.dim() != cert.dim()) throw StructureError("generator dimension differs from the certificate");
}

std::vector<std::uint64_t> k_images(const std::set<std::vector<int>>& sigmas, const Layout& L,
                                    std::vector<bool>& transitive) {
    std::vector<std::uint64_t> out;
    transitive.clear();
    for (const auto& mem : L.members) {
        std::set<std::vector<int>> imgs;
        std::set<int> orbit0;
        for (const auto& s : sigmas) {
            std::vector<int> loc;
            for (int b : mem) loc.push_back(L.local[s[b]]);
            orbit0.insert(loc[0]);
            imgs.insert(std::move(loc));
        }
        out.push_back(imgs.size());
        transitive.push_back(orbit0.size() == mem.size());
    }
    return out;
}

void finish_report(StructureReport& rep, const DecompositionCertificate& cert, const std::vector<Matrix>& gens,
                   const std::optional<Form>& F0) {
    for (std::size_t i = 0; i < rep.k_transitive.size(); ++i)
        if (!rep.k_transitive[i])
            throw StructureError("blocks of V_" + std::to_string(i + 1) + " are not permuted transitively");
    for (const auto& b : rep.blocks)
        if (!b.irreducible)
            throw StructureError("stabilizer of W_" + std::to_string(b.block.i) + "," + std::to_string(b.block.j) +
                                 " is reducible on it");
    if (!rep.first_sequence_exact()) throw StructureError("|G| != |P| |psi(G)|");
    if (!rep.second_sequence_exact()) throw StructureError("|P| != |N| |phi(P)|");
    rep.subdegrees = SubdegreeSequence(cert.block_sizes());
    rep.intrinsic = cert.grouping;
    if (!F0) return;
    if (F0->nvars() != cert.dim()) throw StructureError("form and certificate dimensions differ");
    Form F = cert.basis_change ? act(*F0, *cert.basis_change) : *F0;
    if (!preserves(gens, F)) throw StructureError("the group does not preserve the form");
    int d = F.degree();
    rep.degree = d;
    rep.canonical_bound = canonical_bound(rep.constituents(), rep.intrinsic, d);
    if (rep.order > *rep.canonical_bound) throw StructureError("order exceeds the canonical bound");
    int r = cert.dim();
    mpz_class fermat = factorial(r);
    for (int t = 0; t < r; ++t) fermat *= d;
    rep.ratio = Rational(mpq_class(rep.order, fermat));
    DiagGroup lat = block_scalar_group(F, cert.block_sizes());
    if (lat.finite) {
        rep.kernel_lattice_order = lat.order;
        if (lat.order % rep.n_order != 0) throw StructureError("|N| does not divide the kernel lattice order");
    }
}

}  // namespace

std::uint64_t span_dimension(const MatGroup& G, const std::vector<int>& coords) {
    if (!G.closed()) throw GroupError("operation needs a closed group");
    const std::uint64_t full = coords.size() * coords.size();
    ModSpan ms(G.prime());
    for (std::uint64_t i = 0; i < G.order() && ms.size() < full; ++i) ms.add(mod_block(G.mod_element(i), coords));
    if (ms.size() == full) return full;
    // reduction can only lower the rank
    bool invariant = true;
    std::vector<bool> inside(G.dim(), false);
    for (int c : coords) inside.at(c) = true;
    for (const auto& g : G.generators())
        for (int c : coords)
            for (int r = 0; r < G.dim() && invariant; ++r)
                if (!inside[r] && !g(r, c).is_zero()) invariant = false;
    if (invariant) return span_dimension(G.generators(), coords);
    ExactSpan es;
    for (std::uint64_t i = 0; i < G.order() && es.size() < full; ++i) es.add(exact_block(G.element(i), coords));
    return es.size();
}

std::uint64_t span_dimension(const std::vector<Matrix>& gens, const std::vector<int>& coords) {
    if (gens.empty()) throw std::invalid_argument("no generators");
    int n = gens[0].dim();
    std::vector<bool> inside(n, false);
    for (int c : coords) inside.at(c) = true;
    std::vector<Matrix> restricted;
    for (const auto& g : gens) {
        for (int c : coords)
            for (int r = 0; r < n; ++r)
                if (!inside[r] && !g(r, c).is_zero())
                    throw std::invalid_argument("the coordinate span is not invariant");
        restricted.push_back(g.block(coords, coords));
    }
    const std::size_t full = coords.size() * coords.size();
    int s = static_cast<int>(coords.size());
    std::vector<int> all(s);
    std::iota(all.begin(), all.end(), 0);
    ExactSpan es;
    std::vector<Matrix> basis = {Matrix::identity(s)};
    es.add(exact_block(basis[0], all));
    for (std::size_t k = 0; k < basis.size() && es.size() < full; ++k)
        for (const auto& g : restricted) {
            Matrix x = (basis[k] * g).reduced();
            if (es.add(exact_block(x, all))) basis.push_back(x);
        }
    return es.size();
}

bool irreducible_span(const MatGroup& G, const std::vector<int>& coords) {
    return span_dimension(G, coords) == coords.size() * coords.size();
}

bool irreducible_span(const std::vector<Matrix>& gens, const std::vector<int>& coords) {
    return span_dimension(gens, coords) == coords.size() * coords.size();
}

StructureReport verify_certificate(const MatGroup& G0, const DecompositionCertificate& cert,
                                   const std::optional<Form>& F) {
    if (!G0.closed()) throw StructureError("closed-group verification needs a closed group");
    check_dims(G0.generators(), cert);
    MatGroup conj;
    const MatGroup* Gp = &G0;
    if (cert.basis_change) {
        conj = closure(conjugated(G0.generators(), cert), G0.order());
        if (!conj.closed() || conj.order() != G0.order()) throw StructureError("conjugated group has another order");
        Gp = &conj;
    }
    const MatGroup& G = *Gp;
    Layout L(cert);
    for (const auto& g : G.generators()) exact_sigma(g, L);

    const std::uint32_t p = G.prime();
    const int nb = L.count();
    std::vector<std::vector<int>> coords;
    for (int b = 0; b < nb; ++b) coords.push_back(L.coords(b));
    std::vector<int> identity(nb);
    std::iota(identity.begin(), identity.end(), 0);

    std::set<std::vector<int>> sigmas;
    std::vector<std::set<std::vector<std::uint32_t>>> H(nb);
    std::vector<std::uint64_t> stab(nb, 0);
    std::vector<ModSpan> spans(nb, ModSpan(p));
    std::set<std::vector<std::uint32_t>> phi;
    std::uint64_t P = 0, N = 0, Z = 0;
    std::vector<std::uint64_t> n_elems;
    std::vector<std::uint64_t> stab_rep(nb, 0);

    for (std::uint64_t idx = 0; idx < G.order(); ++idx) {
        ModMat x = G.mod_element(idx);
        auto s = block_permutation(L, [&](int r, int c) { return x(r, c) != 0; });
        if (!s) throw StructureError("an element maps a block off the block lattice");
        sigmas.insert(*s);
        bool in_p = *s == identity;
        std::vector<std::uint32_t> tuple;
        bool block_scalar = true;
        for (int b = 0; b < nb; ++b) {
            if ((*s)[b] != b) continue;
            auto v = mod_block(x, coords[b]);
            ++stab[b];
            if (spans[b].size() < v.size()) spans[b].add(v);
            if (in_p && !is_scalar_block(v, L.size[b])) block_scalar = false;
            normalize_mod(v, p);
            if (in_p) tuple.insert(tuple.end(), v.begin(), v.end());
            H[b].insert(std::move(v));
        }
        if (!in_p) continue;
        ++P;
        phi.insert(std::move(tuple));
        if (block_scalar) {
            ++N;
            if (n_elems.size() < 4096) n_elems.push_back(idx);
            bool scalar = true;
            for (int t = 1; t < L.r && scalar; ++t) scalar = x(t, t) == x(0, 0);
            Z += scalar;
        }
    }

    StructureReport rep;
    rep.mode = "closed";
    rep.dim = cert.dim();
    rep.grouping = cert.grouping;
    rep.order = static_cast<unsigned long>(G.order());
    rep.psi_order = static_cast<unsigned long>(sigmas.size());
    rep.k_orders = k_images(sigmas, L, rep.k_transitive);
    rep.p_order = static_cast<unsigned long>(P);
    rep.n_order = static_cast<unsigned long>(N);
    rep.phi_order = static_cast<unsigned long>(phi.size());
    rep.scalar_order = static_cast<unsigned long>(Z);
    for (std::uint64_t idx : n_elems) {
        Matrix e = G.element(idx);
        for (int b = 0; b < nb; ++b) {
            Matrix blk = e.block(coords[b], coords[b]);
            if (!blk.is_scalar()) throw StructureError("an element of N is not block-scalar");
            for (int t = 0; t < L.r; ++t)
                for (int c : coords[b])
                    if (L.block_of[t] != b && !e(t, c).is_zero())
                        throw StructureError("an element of N is not block-diagonal");
        }
        ++rep.n_checked_exactly;
    }
    for (int b = 0; b < nb; ++b) {
        BlockReport br;
        br.block = cert.blocks[b];
        br.constituent_order = static_cast<unsigned long>(H[b].size());
        br.stabilizer_order = static_cast<unsigned long>(stab[b]);
        std::uint64_t full = static_cast<std::uint64_t>(L.size[b]) * L.size[b];
        br.span_dim = spans[b].size();
        if (br.span_dim < full) {
            ExactSpan es;
            for (std::uint64_t idx = 0; idx < G.order() && es.size() < full; ++idx) {
                ModMat x = G.mod_element(idx);
                bool fixes = true;
                for (int c : coords[b])
                    for (int t = 0; t < L.r && fixes; ++t)
                        if (x(t, c) && L.block_of[t] != b) fixes = false;
                if (fixes) es.add(exact_block(G.element(idx), coords[b]));
            }
            br.span_dim = es.size();
        }
        br.irreducible = br.span_dim == full;
        rep.blocks.push_back(br);
    }
    for (const char* k : {"|G|", "|psi(G)|", "|P|", "|N|", "|phi(P)|", "|H_ij|", "|K_i|"}) rep.provenance[k] = "enumerated";
    finish_report(rep, cert, G.generators(), F);
    return rep;
}

StructureReport verify_compositional(const std::vector<Matrix>& gens0, const DecompositionCertificate& cert,
                                     const std::optional<Form>& F, std::uint64_t cap) {
    check_dims(gens0, cert);
    std::vector<Matrix> gens = conjugated(gens0, cert);
    Layout L(cert);
    const int nb = L.count();
    std::vector<std::vector<int>> coords;
    for (int b = 0; b < nb; ++b) coords.push_back(L.coords(b));

    // block generators (restricted) and block permutation generators
    std::vector<std::vector<Matrix>> block_gens(nb);
    std::vector<std::pair<Matrix, std::vector<int>>> perm_gens;
    std::vector<std::pair<int, Matrix>> supported;  // (block, full matrix)

    auto supported_on = [&](const Matrix& g) -> std::optional<int> {
        int found = -1;
        for (int b = 0; b < nb; ++b) {
            bool ident = true;
            for (int r : coords[b])
                for (int c = 0; c < L.r && ident; ++c) ident = g(r, c) == CycNum(r == c ? 1 : 0);
            if (ident) continue;
            if (found >= 0) return std::nullopt;
            found = b;
        }
        if (found < 0) return std::nullopt;
        for (int r : coords[found])
            for (int c = 0; c < L.r; ++c)
                if (L.block_of[c] != found && !g(r, c).is_zero()) return std::nullopt;
        return found;
    };

    for (const auto& g : gens) {
        if (g.is_identity()) continue;
        if (auto b = supported_on(g)) {
            block_gens[*b].push_back(g.block(coords[*b], coords[*b]));
            supported.push_back({*b, g});
            continue;
        }
        auto s = block_permutation(L, [&](int r, int c) { return !g(r, c).is_zero(); });
        bool pure = s.has_value();
        for (int b = 0; pure && b < nb; ++b) {
            int t = (*s)[b];
            if (L.vgroup[t] != L.vgroup[b]) throw StructureError("a generator moves a block to another V_i");
            for (int a = 0; a < L.size[b] && pure; ++a)
                for (int c = 0; c < L.size[b] && pure; ++c)
                    pure = g(L.offset[t] + a, L.offset[b] + c) == CycNum(a == c ? 1 : 0);
        }
        if (!pure) throw StructureError("a generator is neither supported on one block nor a pure block permutation");
        perm_gens.push_back({g, *s});
    }

    std::vector<MatGroup> B;
    for (int b = 0; b < nb; ++b) {
        std::vector<Matrix> gb = block_gens[b];
        if (gb.empty()) gb.push_back(Matrix::identity(L.size[b]));
        B.push_back(closure(gb, cap));
        if (!B.back().closed()) throw StructureError("block closure exceeded the cap");
    }

    std::set<std::vector<int>> Q;
    std::vector<int> identity(nb);
    std::iota(identity.begin(), identity.end(), 0);
    std::vector<std::vector<int>> frontier = {identity};
    Q.insert(identity);
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& s : frontier)
            for (const auto& [g, t] : perm_gens) {
                std::vector<int> u(nb);
                for (int b = 0; b < nb; ++b) u[b] = t[s[b]];
                if (Q.insert(u).second) next.push_back(u);
            }
        frontier = std::move(next);
    }

    for (const auto& [q, t] : perm_gens) {
        Matrix qi = q.inverse();
        for (const auto& [b, g] : supported) {
            Matrix c = (qi * g * q).reduced();
            auto cb = supported_on(c);
            if (!cb || !B[*cb].find(c.block(coords[*cb], coords[*cb])))
                throw StructureError("block permutations do not normalize the block groups");
        }
    }

    StructureReport rep;
    rep.mode = "compositional";
    rep.dim = cert.dim();
    rep.grouping = cert.grouping;
    rep.psi_order = static_cast<unsigned long>(Q.size());
    rep.k_orders = k_images(Q, L, rep.k_transitive);
    rep.p_order = 1;
    rep.n_order = 1;
    rep.phi_order = 1;
    std::set<std::string> common;  // lambda with lambda I in every block group
    for (int b = 0; b < nb; ++b) {
        const MatGroup& Bb = B[b];
        std::uint64_t sc = 0;
        std::set<std::string> here;
        for (std::uint64_t i = 0; i < Bb.order(); ++i) {
            Matrix e = Bb.element(i);
            bool mod_scalar = true;
            ModMat x = Bb.mod_element(i);
            for (int a = 0; a < L.size[b] && mod_scalar; ++a)
                for (int c = 0; c < L.size[b] && mod_scalar; ++c)
                    mod_scalar = a == c ? x(a, c) == x(0, 0) : x(a, c) == 0;
            if (mod_scalar != e.is_scalar()) throw StructureError("scalar test disagrees with its reduction");
            if (mod_scalar) {
                ++sc;
                here.insert(e(0, 0).reduced().canonical_key());
            }
        }
        if (b == 0) common = here;
        else {
            std::set<std::string> both;
            for (auto v : here)
                if (common.count(v)) both.insert(v);
            common = std::move(both);
        }
        rep.n_checked_exactly += sc;
        rep.p_order *= static_cast<unsigned long>(Bb.order());
        rep.n_order *= static_cast<unsigned long>(sc);
        rep.phi_order *= static_cast<unsigned long>(Bb.order() / sc);
        BlockReport br;
        br.block = cert.blocks[b];
        br.constituent_order = static_cast<unsigned long>(Bb.order() / sc);
        std::vector<int> all(L.size[b]);
        std::iota(all.begin(), all.end(), 0);
        br.span_dim = span_dimension(Bb, all);
        br.irreducible = br.span_dim == all.size() * all.size();
        rep.blocks.push_back(br);
    }
    for (int b = 0; b < nb; ++b) {
        std::uint64_t fix = 0;
        for (const auto& s : Q) fix += s[b] == b;
        rep.blocks[b].stabilizer_order = rep.p_order * static_cast<unsigned long>(fix);
    }
    rep.order = rep.p_order * rep.psi_order;
    rep.scalar_order = static_cast<unsigned long>(common.size());
    rep.provenance = {{"|B_b|", "enumerated"},  {"|psi(G)|", "enumerated"}, {"|K_i|", "enumerated"},
                      {"|N|", "enumerated per block"}, {"|H_ij|", "enumerated per block"},
                      {"|P|", "derived"},        {"|phi(P)|", "derived"},   {"|G|", "derived"}};
    finish_report(rep, cert, gens, F);
    return rep;
}

RefinedBound refined_bound(const StructureReport& rep, const Form& F, const BoundPattern& pat) {
    if (!rep.canonical_bound || !rep.degree) throw StructureError("report has no canonical bound");
    if (F.degree() != *rep.degree || F.nvars() != rep.dim) throw StructureError("form does not match the report");
    const int d = F.degree();
    const int r = rep.dim;
    const int m = static_cast<int>(rep.grouping.size());
    std::vector<int> sizes;
    for (const auto& b : rep.blocks) sizes.push_back(b.block.size);
    auto find_block = [&](int i, int j) -> int {
        for (std::size_t b = 0; b < rep.blocks.size(); ++b)
            if (rep.blocks[b].block.i == i && rep.blocks[b].block.j == j) return static_cast<int>(b);
        throw StructureError("no block W_" + std::to_string(i) + "," + std::to_string(j));
    };
    auto windows = [&](int lo, int hi) { return std::vector<DegreeRange>(sizes.size(), DegreeRange{lo, hi}); };

    RefinedBound out;
    out.canonical = *rep.canonical_bound;
    Rational B(out.canonical);
    switch (pat.kind) {
        case BoundKind::type2: {
            if (m < 2) throw StructureError("type2 bound needs at least two isotypic parts");
            if (pat.i < 1 || pat.i > m) throw StructureError("V index out of range");
            for (const auto& t : F.terms()) {
                auto bd = block_degrees(t.exps, sizes);
                int in_v = 0;
                for (std::size_t b = 0; b < bd.size(); ++b)
                    if (rep.blocks[b].block.i == pat.i) in_v += bd[b];
                if (in_v == 1) {
                    out.witness = t.exps;
                    break;
                }
            }
            if (out.witness.empty()) throw StructureError("pattern not established");
            mpz_class h = rep.blocks[find_block(pat.i, 1)].constituent_order, hk = 1;
            for (int t = 0; t < rep.grouping[pat.i - 1]; ++t) hk *= h;
            out.bound = B / Rational(hk);
            out.rule = "type2";
            break;
        }
        case BoundKind::classify: {
            if (pat.i < 1 || pat.i > m) throw StructureError("V index out of range");
            int k = rep.grouping[pat.i - 1];
            if (k < 2) throw StructureError("classify bound needs k_a >= 2");
            auto w = windows(0, 0);
            int b1 = find_block(pat.i, 1), b2 = find_block(pat.i, 2);
            w[b1] = {d - 1, d - 1};
            w[b2] = {1, 1};
            auto e = has_monomial_pattern(F, sizes, w);
            if (!e) throw StructureError("pattern not established");
            out.witness = *e;
            Rational h(rep.blocks[b1].constituent_order);
            out.bound = k == 2 ? B / h : B / (Rational(2) * h);
            out.rule = k == 2 ? "classify-pair" : "classify-many";
            break;
        }
        case BoundKind::d1d2: {
            if (pat.d1 <= 0 || pat.d1 >= d) throw StructureError("d1 must lie strictly between 0 and d");
            int b1 = find_block(pat.i, pat.j);
            const mpz_class& h = rep.blocks[b1].constituent_order;
            if (pat.normal_order <= 0 || h % pat.normal_order != 0)
                throw StructureError("normal subgroup order must divide |H_ij|");
            auto w = windows(0, d);
            w[b1] = {pat.d1, pat.d1};
            auto e = has_monomial_pattern(F, sizes, w);
            if (!e) throw StructureError("pattern not established");
            out.witness = *e;
            out.bound = B * Rational(pat.normal_order) / Rational(h);
            out.rule = "d1d2";
            break;
        }
        case BoundKind::type_ii: {
            int b1 = find_block(pat.i, pat.j);
            if (sizes[b1] < 2) throw StructureError("typeII bound needs a block of size at least 2");
            std::vector<int> vars(sizes[b1]);
            int off = 0;
            for (int b = 0; b < b1; ++b) off += sizes[b];
            std::iota(vars.begin(), vars.end(), off);
            Form Fb = restrict_to(F, vars);
            if (!Fb.is_zero()) {
                auto cert = is_smooth(Fb);
                if (cert.verdict == Verdict::smooth) throw StructureError("block component is smooth");
                if (cert.verdict == Verdict::undecided) throw StructureError("block component smoothness undecided");
            }
            for (int b2 = 0; b2 < static_cast<int>(sizes.size()); ++b2) {
                if (b2 == b1) continue;
                auto w = windows(0, 0);
                w[b1] = {d - 1, d - 1};
                w[b2] = {1, 1};
                if (auto e = has_monomial_pattern(F, sizes, w)) {
                    if (out.witness.empty()) out.witness = *e;
                    ++out.count;
                }
            }
            if (out.count == 0) throw StructureError("no monomial of the required shape; the form is singular");
            mpz_class dc = 1;
            for (int t = 1; t < out.count; ++t) dc *= d;
            out.bound = B / Rational(dc);
            out.rule = "type-ii";
            break;
        }
    }
    mpz_class fermat = factorial(r);
    for (int t = 0; t < r; ++t) fermat *= d;
    out.ratio = out.bound / Rational(fermat);
    return out;
}

RatioProd ratioprod(const std::vector<int>& n) {
    if (n.size() < 2) throw std::invalid_argument("ratioprod needs at least two entries");
    Rational q(1);
    int total = 0;
    for (int x : n) {
        if (x < 1) throw std::invalid_argument("entries must be positive");
        q *= Rational(factorial(x));
        if (x >= 2) q *= Rational(5, 2);
        total += x;
    }
    q /= Rational(factorial(total));
    return {q, q >= Rational(1)};
}

bool ratioprod_check(const std::vector<int>& n) { return ratioprod(n).at_least_one; }

std::vector<std::vector<int>> ratioprod_scan(int max_total) {
    std::vector<std::vector<int>> hits;
    for (int v = 2; v <= max_total; ++v)
        for (const auto& l : enumerate_sequences(v, [](const SubdegreeSequence& l) {
                 return l.length() >= 2 && ratioprod_check(l.parts());
             }))
            hits.push_back(l.parts());
    return hits;
}

}  // namespace hypaut
