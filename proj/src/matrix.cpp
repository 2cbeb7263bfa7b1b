/*
   Copyright 2026 The dpdecomp Authors

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

#include "dpdecomp/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace dpdecomp {

MatrixFp::MatrixFp(PrimeField field, std::size_t rows, std::size_t cols,
                   const std::vector<std::int64_t>& row_major)
    : field_(field), rows_(rows), cols_(cols), e_(rows * cols, 0) {
    if (row_major.size() != rows * cols)
        throw ShapeError("matrix literal has " + std::to_string(row_major.size()) +
                         " entries, expected " + std::to_string(rows * cols));
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] = field_.reduce(row_major[k]);
}

MatrixFp MatrixFp::from_rows(PrimeField field,
                             std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::vector<std::vector<std::int64_t>> v;
    for (const auto& r : rows) v.emplace_back(r);
    return from_rows(field, v.empty() ? 0 : v.front().size(), v);
}

MatrixFp MatrixFp::from_rows(PrimeField field, std::size_t cols,
                             const std::vector<std::vector<std::int64_t>>& rows) {
    std::vector<std::int64_t> flat;
    flat.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) throw ShapeError("ragged matrix literal");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return MatrixFp(field, rows.size(), cols, flat);
}

MatrixFp MatrixFp::from_columns(PrimeField field, std::size_t rows, const std::vector<VecFp>& cols) {
    MatrixFp m(field, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw ShapeError("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i] % field.modulus();
    }
    return m;
}

MatrixFp MatrixFp::identity(PrimeField field, std::size_t n) {
    MatrixFp m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

VecFp MatrixFp::column(std::size_t j) const {
    VecFp v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

VecFp MatrixFp::row(std::size_t i) const {
    return VecFp(e_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 e_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

MatrixFp MatrixFp::transpose() const {
    MatrixFp t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

MatrixFp MatrixFp::column_block(std::size_t first, std::size_t count) const {
    if (first + count > cols_) throw ShapeError("column block out of range");
    MatrixFp b(field_, rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) b(i, j) = (*this)(i, first + j);
    return b;
}

MatrixFp MatrixFp::row_block(std::size_t first, std::size_t count) const {
    if (first + count > rows_) throw ShapeError("row block out of range");
    MatrixFp b(field_, count, cols_);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < cols_; ++j) b(i, j) = (*this)(first + i, j);
    return b;
}

VecFp MatrixFp::apply(std::span<const std::uint32_t> x) const {
    if (x.size() != cols_)
        throw ShapeError("vector of length " + std::to_string(x.size()) + " applied to " +
                         std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
    VecFp y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) acc += std::uint64_t{(*this)(i, j)} * x[j] % field_.modulus();
        y[i] = static_cast<std::uint32_t>(acc % field_.modulus());
    }
    return y;
}

bool MatrixFp::is_zero() const noexcept {
    return std::all_of(e_.begin(), e_.end(), [](auto v) { return v == 0; });
}

MatrixFp operator*(const MatrixFp& a, const MatrixFp& b) {
    if (!(a.field_ == b.field_)) throw InvalidInput("GF(p) modulus mismatch");
    if (a.cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
    MatrixFp c(a.field_, a.rows_, b.cols_);
    const auto& f = a.field_;
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const auto aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
        }
    return c;
}

MatrixFp operator+(const MatrixFp& a, const MatrixFp& b) {
    if (!(a.field_ == b.field_)) throw InvalidInput("GF(p) modulus mismatch");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix sum shape mismatch");
    MatrixFp c = a;
    for (std::size_t k = 0; k < c.e_.size(); ++k) c.e_[k] = a.field_.add(a.e_[k], b.e_[k]);
    return c;
}

MatrixFp operator-(const MatrixFp& a, const MatrixFp& b) {
    if (!(a.field_ == b.field_)) throw InvalidInput("GF(p) modulus mismatch");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix difference shape mismatch");
    MatrixFp c = a;
    for (std::size_t k = 0; k < c.e_.size(); ++k) c.e_[k] = a.field_.sub(a.e_[k], b.e_[k]);
    return c;
}

MatrixFp MatrixFp::scaled(std::uint32_t s) const {
    MatrixFp c = *this;
    for (auto& v : c.e_) v = field_.mul(v, s);
    return c;
}

std::string MatrixFp::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

MatrixFp hstack(const MatrixFp& a, const MatrixFp& b) {
    if (a.rows() != b.rows()) throw ShapeError("hstack row mismatch");
    MatrixFp c(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

RrefResult rref(const MatrixFp& m) {
    MatrixFp r = m;
    const auto& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t sel = row;
        while (sel < r.rows() && r(sel, col) == 0) ++sel;
        if (sel == r.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(sel, j), r(row, j));
        const auto inv = f.inv(r(row, col));
        for (std::size_t j = col; j < r.cols(); ++j) r(row, j) = f.mul(r(row, j), inv);
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == row || r(i, col) == 0) continue;
            const auto factor = r(i, col);
            for (std::size_t j = col; j < r.cols(); ++j) r(i, j) = f.sub(r(i, j), f.mul(factor, r(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(r), pivots.size(), std::move(pivots)};
}

std::size_t rank(const MatrixFp& m) { return rref(m).rank; }

std::optional<MatrixFp> inverse(const MatrixFp& m) {
    if (!m.is_square()) throw ShapeError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    auto res = rref(hstack(m, MatrixFp::identity(m.field(), n)));
    if (res.rank < n || (n > 0 && res.pivot_cols[n - 1] != n - 1)) return std::nullopt;
    return res.reduced.column_block(n, n);
}

MatrixFp poly_eval_matrix(const PolyFp& f, const MatrixFp& a) {
    if (!a.is_square()) throw ShapeError("poly_eval_matrix needs a square matrix");
    if (!(f.field() == a.field())) throw InvalidInput("GF(p) modulus mismatch");
    const std::size_t n = a.rows();
    MatrixFp acc(a.field(), n, n);
    const auto& c = f.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * a;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) = a.field().add(acc(i, i), *it);
    }
    return acc;
}

VecFp vec_add(const PrimeField& f, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    if (a.size() != b.size()) throw ShapeError("vector length mismatch");
    VecFp c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = f.add(a[i], b[i]);
    return c;
}

bool vec_is_zero(std::span<const std::uint32_t> v) noexcept {
    return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

}  // namespace dpdecomp
