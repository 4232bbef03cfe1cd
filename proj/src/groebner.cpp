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

#include "hypaut/groebner.hpp"

#include <numeric>

namespace hypaut {

const char* to_string(GBStatus s) {
    switch (s) {
        case GBStatus::complete:
            return "complete";
        case GBStatus::zero_dim:
            return "zero_dim";
        case GBStatus::degree_cap:
            return "degree_cap";
        case GBStatus::budget:
            return "budget";
    }
    return "?";
}

namespace {

int common_nvars(const std::vector<Form>& polys) {
    int r = 0;
    for (const auto& f : polys) r = std::max(r, f.nvars());
    return r;
}

Exps padded(const Exps& e, int r) {
    Exps out(e);
    out.resize(r, 0);
    return out;
}

}  // namespace

GBResult<CycNum> groebner_basis(const std::vector<Form>& polys, const GBOptions& opt) {
    int r = common_nvars(polys);
    int N = 1;
    for (const auto& f : polys) N = static_cast<int>(lcm_conductor(N, f.conductor()));
    HomogeneousGB<CycField> gb(r, CycField{N}, opt);
    for (const auto& f : polys) {
        std::vector<std::pair<Exps, CycNum>> t;
        for (const auto& term : f.terms()) t.emplace_back(padded(term.exps, r), term.coeff.lift(N));
        gb.add_input(t);
    }
    auto res = gb.run();
    for (auto& g : res.basis)
        for (auto& [e, c] : g) c = c.reduced();
    return res;
}

GBResult<std::uint32_t> groebner_basis_modp(const std::vector<Form>& polys, const CycReduction& red,
                                            const GBOptions& opt) {
    int r = common_nvars(polys);
    HomogeneousGB<FpField> gb(r, FpField{red.prime()}, opt);
    for (const auto& f : polys) {
        std::vector<std::pair<Exps, std::uint32_t>> t;
        for (const auto& term : f.terms()) {
            auto v = red(term.coeff);
            if (!v) throw DivisionByZero();
            t.emplace_back(padded(term.exps, r), *v);
        }
        gb.add_input(t);
    }
    return gb.run();
}

}  // namespace hypaut
