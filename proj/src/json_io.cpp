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

#include "hypaut/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hypaut {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json_file(const std::string& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

Matrix matrix_from_json(const json& j) {
    const json& rows = j.is_object() ? j.at("entries") : j;
    if (!rows.is_array()) throw std::runtime_error("matrix entries must be an array of rows");
    std::vector<std::vector<std::string>> s;
    for (const auto& row : rows) {
        std::vector<std::string> r;
        for (const auto& x : row) r.push_back(x.is_string() ? x.get<std::string>() : x.dump());
        s.push_back(std::move(r));
    }
    Matrix m = Matrix::parse(s);
    if (j.is_object() && j.contains("dim") && j.at("dim").get<int>() != m.dim())
        throw std::runtime_error("matrix dim does not match its entries");
    return m;
}

json matrix_to_json(const Matrix& m) {
    json j;
    j["dim"] = m.dim();
    j["entries"] = m.reduced().to_strings();
    return j;
}

std::vector<Matrix> generators_from_json(const json& j) {
    const json& arr = j.is_object() ? j.at("generators") : j;
    std::vector<Matrix> out;
    for (const auto& m : arr) out.push_back(matrix_from_json(m));
    return out;
}

json generators_to_json(const std::vector<Matrix>& gens) {
    json arr = json::array();
    for (const auto& g : gens) arr.push_back(matrix_to_json(g));
    return arr;
}

Form form_from_json(const json& j) {
    if (j.is_string()) return Form::parse(j.get<std::string>());
    int nvars = j.value("nvars", 0);
    return Form::parse(j.at("form").get<std::string>(), nvars);
}

Form load_form_file(const std::string& path) {
    std::string text = read_text_file(path);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return form_from_json(json::parse(text));
    return Form::parse(text);
}

json scalar_vector_to_json(const std::vector<CycNum>& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(x.reduced().str());
    return arr;
}

json certificate_to_json(const SmoothnessCertificate& c) {
    json j;
    j["verdict"] = to_string(c.verdict);
    j["method"] = to_string(c.method);
    if (c.witness) j["witness"] = scalar_vector_to_json(*c.witness);
    if (!c.pure_powers.empty()) j["pure_powers"] = c.pure_powers;
    if (!c.missing.empty()) j["missing_pure_powers"] = c.missing;
    if (c.degree_cap) j["degree_cap"] = c.degree_cap;
    if (c.degree_reached) j["degree_reached"] = c.degree_reached;
    if (c.pairs) j["pairs"] = c.pairs;
    j["conductor"] = c.conductor;
    if (c.prime) {
        j["prime"] = c.prime;
        j["reduction"] = "z" + std::to_string(c.conductor) + " -> " + std::to_string(c.root) + " mod " +
                         std::to_string(c.prime);
    }
    if (!c.primes_tried.empty()) j["primes_tried"] = c.primes_tried;
    if (!c.blocks.empty()) {
        json parts = json::array();
        for (std::size_t i = 0; i < c.parts.size(); ++i) {
            json p = certificate_to_json(c.parts[i]);
            json vars = json::array();
            for (int v : c.blocks[i]) vars.push_back(v + 1);
            p["variables"] = vars;
            parts.push_back(p);
        }
        j["parts"] = parts;
    }
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

}  // namespace hypaut
