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

#ifndef HYPAUT_INTMAT_HPP
#define HYPAUT_INTMAT_HPP

#include <string>
#include <vector>

#include <gmpxx.h>

namespace hypaut {

/// Dense integer matrix, row-major.
class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows, int cols = -1);

    int rows() const { return r_; }
    int cols() const { return c_; }
    mpz_class& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const mpz_class& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    /// row_i += k * row_j
    void add_row(int i, int j, const mpz_class& k);
    void add_col(int i, int j, const mpz_class& k);
    void negate_row(int i);

    std::string str() const;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b);

   private:
    int r_ = 0;
    int c_ = 0;
    std::vector<mpz_class> a_;
};

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_rank.
struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    std::vector<mpz_class> divisors;  // the nonzero diagonal entries, all positive
    int rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& A);

}  // namespace hypaut

#endif
