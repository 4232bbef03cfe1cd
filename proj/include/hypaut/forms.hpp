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

#ifndef HYPAUT_FORMS_HPP
#define HYPAUT_FORMS_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hypaut/cyclotomic.hpp"

namespace hypaut {

struct FormError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Exps = std::vector<int>;

struct Term {
    Exps exps;
    CycNum coeff;
};

/// Homogeneous polynomial in x1..xr. Terms are kept in descending lex order,
/// which is graded-lex since every term has the same degree.
class Form {
   public:
    Form() = default;
    Form(int nvars, int degree) : r_(nvars), d_(degree) {}
    /// Sums duplicate exponent vectors, drops zeros, checks length and degree.
    Form(int nvars, int degree, const std::vector<Term>& terms);

    static Form fermat(int r, int d);
    static Form monomial(const Exps& e, const CycNum& c = CycNum(1));
    /// Parses the text syntax; nvars defaults to the largest variable index.
    static Form parse(const std::string& text, int nvars = 0);

    int nvars() const { return r_; }
    int degree() const { return d_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int conductor() const;
    std::optional<CycNum> coeff(const Exps& e) const;

    std::string str() const;
    CycNum eval(const std::vector<CycNum>& x) const;

    Form operator-() const;
    Form scaled(const CycNum& c) const;
    friend Form operator+(const Form& a, const Form& b);
    friend Form operator-(const Form& a, const Form& b);
    friend Form operator*(const Form& a, const Form& b);
    friend bool operator==(const Form& a, const Form& b);
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

   private:
    int r_ = 0;
    int d_ = 0;
    std::vector<Term> terms_;
};

std::string monomial_str(const Exps& e);

/// Square matrix over cyclotomic fields, row-major.
class Matrix {
   public:
    Matrix() = default;
    explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, CycNum(0)) {}
    Matrix(int n, std::vector<CycNum> entries);

    static Matrix identity(int n);
    static Matrix scalar(int n, const CycNum& c);
    static Matrix diagonal(const std::vector<CycNum>& d);
    /// Permutation matrix sending e_j to e_{perm[j]}.
    static Matrix permutation(const std::vector<int>& perm);
    static Matrix parse(const std::vector<std::vector<std::string>>& rows);

    int dim() const { return n_; }
    const CycNum& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    CycNum& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<CycNum>& entries() const { return a_; }

    int conductor() const;
    Matrix lift(int N) const;
    Matrix reduced() const;

    bool is_identity() const;
    bool is_scalar() const;
    bool is_diagonal() const;
    CycNum det() const;
    Matrix inverse() const;
    Matrix transpose() const;
    /// Submatrix on the given rows and columns.
    Matrix block(const std::vector<int>& rows, const std::vector<int>& cols) const;

    std::vector<std::vector<std::string>> to_strings() const;
    std::size_t hash() const;
    std::string canonical_key() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

   private:
    int n_ = 0;
    std::vector<CycNum> a_;
};

/// A(F): substitutes x_i -> sum_j a_ij x_j, so (A1 A2)(F) = A2(A1(F)).
Form act(const Form& F, const Matrix& A);

/// Terms whose degree in the i-th variable block equals exps[i].
Form component(const Form& F, const std::vector<int>& block_sizes, const std::vector<int>& exps);

std::vector<Form> partials(const Form& F);

/// Per-block degree window, inclusive.
struct DegreeRange {
    int lo;
    int hi;
};

/// First term (in canonical order) whose block degrees fall in the windows.
std::optional<Exps> has_monomial_pattern(const Form& F, const std::vector<int>& block_sizes,
                                         const std::vector<DegreeRange>& pattern);

std::vector<int> block_degrees(const Exps& e, const std::vector<int>& block_sizes);

}  // namespace hypaut

#endif
