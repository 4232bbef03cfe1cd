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


#include "hypaut/intmat.hpp"

#include <sstream>
#include <stdexcept>

namespace hypaut {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows, int cols) {
    if (cols < 0) cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    IntMatrix m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(rows[i].size()) != cols) throw std::invalid_argument("ragged integer matrix");
        for (int j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rows[i][j]);
    }
    return m;
}

void IntMatrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row(int i, int j, const mpz_class& k) {
    for (int c = 0; c < c_; ++c) (*this)(i, c) += k * (*this)(j, c);
}

void IntMatrix::add_col(int i, int j, const mpz_class& k) {
    for (int r = 0; r < r_; ++r) (*this)(r, i) += k * (*this)(r, j);
}

void IntMatrix::negate_row(int i) {
    for (int c = 0; c < c_; ++c) (*this)(i, c) = -(*this)(i, c);
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < r_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("integer matrix shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
}

SmithForm smith_normal_form(const IntMatrix& A) {
    SmithForm s;
    s.D = A;
    s.U = IntMatrix::identity(A.rows());
    s.V = IntMatrix::identity(A.cols());
    IntMatrix& D = s.D;
    int n = std::min(A.rows(), A.cols());
    int t = 0;
    for (; t < n; ++t) {
        for (;;) {
            // pivot of least absolute value in the trailing block
            int pi = -1, pj = -1;
            for (int i = t; i < D.rows(); ++i)
                for (int j = t; j < D.cols(); ++j)
                    if (D(i, j) != 0 && (pi < 0 || abs(D(i, j)) < abs(D(pi, pj)))) pi = i, pj = j;
            if (pi < 0) goto done;
            D.swap_rows(t, pi);
            s.U.swap_rows(t, pi);
            D.swap_cols(t, pj);
            s.V.swap_cols(t, pj);

            bool clean = true;
            for (int i = t + 1; i < D.rows(); ++i) {
                if (D(i, t) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                D.add_row(i, t, -q);
                s.U.add_row(i, t, -q);
                if (D(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < D.cols(); ++j) {
                if (D(t, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                D.add_col(j, t, -q);
                s.V.add_col(j, t, -q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            int bad = -1;
            for (int i = t + 1; i < D.rows() && bad < 0; ++i)
                for (int j = t + 1; j < D.cols(); ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            D.add_row(t, bad, 1);
            s.U.add_row(t, bad, 1);
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            s.U.negate_row(t);
        }
        s.divisors.push_back(D(t, t));
    }
done:
    s.rank = t;
    return s;
}

}  // namespace hypaut
