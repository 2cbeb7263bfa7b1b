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

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpdecomp/field.hpp"

namespace dpdecomp {

/// Column vector over GF(p); the modulus is implied by the owning context.
using VecFp = std::vector<std::uint32_t>;

/// Dense row-major matrix over GF(p). Zero rows or columns are allowed: an
/// n x 0 input matrix describes a system with no inputs.
class MatrixFp {
   public:
    MatrixFp(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), e_(rows * cols, 0) {}
    MatrixFp(PrimeField field, std::size_t rows, std::size_t cols,
             const std::vector<std::int64_t>& row_major);

    static MatrixFp from_rows(PrimeField field,
                              std::initializer_list<std::initializer_list<std::int64_t>> rows);
    static MatrixFp from_rows(PrimeField field, std::size_t cols,
                              const std::vector<std::vector<std::int64_t>>& rows);
    static MatrixFp from_columns(PrimeField field, std::size_t rows, const std::vector<VecFp>& cols);
    static MatrixFp identity(PrimeField field, std::size_t n);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    std::uint32_t operator()(std::size_t i, std::size_t j) const noexcept { return e_[i * cols_ + j]; }
    std::uint32_t& operator()(std::size_t i, std::size_t j) noexcept { return e_[i * cols_ + j]; }
    Fp at(std::size_t i, std::size_t j) const { return Fp(e_.at(i * cols_ + j), field_); }

    VecFp column(std::size_t j) const;
    VecFp row(std::size_t i) const;
    std::span<const std::uint32_t> data() const noexcept { return e_; }

    MatrixFp transpose() const;
    /// Columns [first, first + count).
    MatrixFp column_block(std::size_t first, std::size_t count) const;
    MatrixFp row_block(std::size_t first, std::size_t count) const;

    VecFp apply(std::span<const std::uint32_t> x) const;
    bool is_zero() const noexcept;

    friend MatrixFp operator*(const MatrixFp& a, const MatrixFp& b);
    friend MatrixFp operator+(const MatrixFp& a, const MatrixFp& b);
    friend MatrixFp operator-(const MatrixFp& a, const MatrixFp& b);
    MatrixFp scaled(std::uint32_t s) const;

    bool operator==(const MatrixFp& other) const = default;

    std::string to_string() const;

   private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint32_t> e_;
};

MatrixFp hstack(const MatrixFp& a, const MatrixFp& b);

struct RrefResult {
    MatrixFp reduced;
    std::size_t rank;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form by Gauss-Jordan elimination.
RrefResult rref(const MatrixFp& m);
std::size_t rank(const MatrixFp& m);
/// Inverse of a square matrix, or nullopt when singular. Throws ShapeError
/// for non-square input.
std::optional<MatrixFp> inverse(const MatrixFp& m);

/// Horner evaluation f(A). Throws ShapeError for non-square A.
MatrixFp poly_eval_matrix(const PolyFp& f, const MatrixFp& a);

VecFp vec_add(const PrimeField& f, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);
bool vec_is_zero(std::span<const std::uint32_t> v) noexcept;

}  // namespace dpdecomp
