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

#ifndef HYPAUT_JSON_IO_HPP
#define HYPAUT_JSON_IO_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "hypaut/forms.hpp"
#include "hypaut/smoothness.hpp"

namespace hypaut {

using json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path);
json read_json_file(const std::string& path);

/// {"dim": n, "entries": [[...]]} or a bare array of rows.
Matrix matrix_from_json(const json& j);
json matrix_to_json(const Matrix& m);

/// {"generators": [...]} or a bare array of matrices.
std::vector<Matrix> generators_from_json(const json& j);
json generators_to_json(const std::vector<Matrix>& gens);

/// {"form": "...", "nvars": n} or a plain expression string.
Form form_from_json(const json& j);
/// A JSON form object or a text file holding one expression.
Form load_form_file(const std::string& path);

json certificate_to_json(const SmoothnessCertificate& c);
json scalar_vector_to_json(const std::vector<CycNum>& v);

}  // namespace hypaut

#endif
