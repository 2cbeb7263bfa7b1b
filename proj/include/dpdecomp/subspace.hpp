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
#include <span>
#include <vector>

#include "dpdecomp/matrix.hpp"

namespace dpdecomp {

/// Subspace of GF(p)^n held by its unique reduced-column-echelon basis, so
/// two Subspace values are equal exactly when they span the same set.
class Subspace {
   public:
    static Subspace zero(PrimeField field, std::size_t ambient);
    static Subspace full(PrimeField field, std::size_t ambient);
    static Subspace span(PrimeField field, std::size_t ambient, const std::vector<VecFp>& generators);
    static Subspace column_space(const MatrixFp& m);

    const PrimeField& field() const noexcept { return basis_.field(); }
    std::size_t ambient_dim() const noexcept { return basis_.rows(); }
    std::size_t dim() const noexcept { return basis_.cols(); }
    bool is_zero() const noexcept { return dim() == 0; }

    /// n x dim, columns in reduced column echelon form.
    const MatrixFp& basis() const noexcept { return basis_; }
    VecFp basis_vector(std::size_t k) const { return basis_.column(k); }

    bool contains(std::span<const std::uint32_t> v) const;
    bool contains(const Subspace& other) const;

    bool operator==(const Subspace& other) const = default;

   private:
    explicit Subspace(MatrixFp basis, std::vector<std::size_t> pivots)
        : basis_(std::move(basis)), pivots_(std::move(pivots)) {}
    // Rows of `gens` are generators; RREF rows become the basis columns.
    static Subspace from_generator_rows(const MatrixFp& gens);

    MatrixFp basis_;
    // pivots_[k] is the coordinate where basis column k has its leading 1.
    std::vector<std::size_t> pivots_;
};

Subspace null_space(const MatrixFp& m);
Subspace subspace_sum(const Subspace& s, const Subspace& t);
Subspace subspace_sum(const std::vector<Subspace>& parts, PrimeField field, std::size_t ambient);
Subspace subspace_intersect(const Subspace& s, const Subspace& t);
/// {u : M u in S}.
Subspace preimage(const MatrixFp& m, const Subspace& s);
/// M(S) = {M v : v in S}.
Subspace image(const MatrixFp& m, const Subspace& s);

/// True iff the parts are linearly independent (their sum is direct), without
/// requiring them to fill the ambient space.
bool are_independent(const std::vector<Subspace>& parts);
/// True iff the parts are independent and their dimensions add up to the
/// ambient dimension.
bool is_direct_sum(const std::vector<Subspace>& parts);
/// A S subset of S.
bool is_invariant(const MatrixFp& a, const Subspace& s);

/// X = X_1 + ... + X_r (direct, r > 1) with the change-of-basis data needed
/// to split vectors into their unique components.
class DirectSumDecomposition {
   public:
    /// Throws NotDirectSum, or InvalidInput when fewer than two parts or a part
    /// is zero.
    explicit DirectSumDecomposition(std::vector<Subspace> parts);

    const PrimeField& field() const noexcept { return parts_.front().field(); }
    std::size_t ambient_dim() const noexcept { return change_.rows(); }
    std::size_t size() const noexcept { return parts_.size(); }
    const std::vector<Subspace>& parts() const noexcept { return parts_; }
    const Subspace& part(std::size_t i) const { return parts_.at(i); }
    std::size_t part_offset(std::size_t i) const { return offsets_.at(i); }
    std::size_t part_dim(std::size_t i) const { return parts_.at(i).dim(); }

    /// Columns are the concatenated part bases.
    const MatrixFp& change_of_basis() const noexcept { return change_; }
    const MatrixFp& inverse_change_of_basis() const noexcept { return inverse_; }

    /// Coordinates of rho_i(x) with respect to part i's basis.
    VecFp part_coordinates(std::size_t i, std::span<const std::uint32_t> x) const;
    /// Basis-coordinate vector of part i mapped back into the ambient space.
    VecFp embed(std::size_t i, std::span<const std::uint32_t> coords) const;
    /// rho_i(x).
    VecFp component(std::size_t i, std::span<const std::uint32_t> x) const;
    /// Basis of part i as an n x d_i matrix (the embedding map).
    MatrixFp embedding(std::size_t i) const { return change_.column_block(offsets_[i], parts_[i].dim()); }
    /// Rows of the inverse change of basis belonging to part i (d_i x n).
    MatrixFp coordinate_map(std::size_t i) const { return inverse_.row_block(offsets_[i], parts_[i].dim()); }

   private:
    std::vector<Subspace> parts_;
    std::vector<std::size_t> offsets_;
    MatrixFp change_;
    MatrixFp inverse_;
};

/// Components x_i in X_i with sum x, one per part.
std::vector<VecFp> decompose_vector(const DirectSumDecomposition& d, std::span<const std::uint32_t> x);

/// Extends the basis of s greedily by the unit vectors e_k, visiting k in
/// `order` (default 0..n-1), to a complement V with s + V = everything.
Subspace greedy_complement(const Subspace& s, const std::vector<std::size_t>& order = {});

}  // namespace dpdecomp
