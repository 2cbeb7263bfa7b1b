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

#include "dpdecomp/subspace.hpp"

#include <numeric>

namespace dpdecomp {

Subspace Subspace::zero(PrimeField field, std::size_t ambient) {
    return Subspace(MatrixFp(field, ambient, 0), {});
}

Subspace Subspace::full(PrimeField field, std::size_t ambient) {
    std::vector<std::size_t> piv(ambient);
    std::iota(piv.begin(), piv.end(), std::size_t{0});
    return Subspace(MatrixFp::identity(field, ambient), std::move(piv));
}

Subspace Subspace::span(PrimeField field, std::size_t ambient, const std::vector<VecFp>& generators) {
    MatrixFp rows(field, generators.size(), ambient);
    for (std::size_t k = 0; k < generators.size(); ++k) {
        if (generators[k].size() != ambient) throw ShapeError("generator length differs from ambient dimension");
        for (std::size_t j = 0; j < ambient; ++j) rows(k, j) = generators[k][j] % field.modulus();
    }
    return from_generator_rows(rows);
}

Subspace Subspace::column_space(const MatrixFp& m) { return from_generator_rows(m.transpose()); }

Subspace Subspace::from_generator_rows(const MatrixFp& gens) {
    auto r = rref(gens);
    MatrixFp basis(gens.field(), gens.cols(), r.rank);
    for (std::size_t k = 0; k < r.rank; ++k)
        for (std::size_t j = 0; j < gens.cols(); ++j) basis(j, k) = r.reduced(k, j);
    return Subspace(std::move(basis), std::move(r.pivot_cols));
}

bool Subspace::contains(std::span<const std::uint32_t> v) const {
    if (v.size() != ambient_dim()) throw ShapeError("vector length differs from ambient dimension");
    const auto& f = field();
    VecFp w(v.begin(), v.end());
    for (std::size_t k = 0; k < dim(); ++k) {
        const auto c = w[pivots_[k]];
        if (c == 0) continue;
        for (std::size_t j = 0; j < w.size(); ++j) w[j] = f.sub(w[j], f.mul(c, basis_(j, k)));
    }
    return vec_is_zero(w);
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_dim() != ambient_dim()) throw ShapeError("ambient dimension mismatch");
    for (std::size_t k = 0; k < other.dim(); ++k)
        if (!contains(other.basis_vector(k))) return false;
    return true;
}

Subspace null_space(const MatrixFp& m) {
    const auto& f = m.field();
    auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : r.pivot_cols) is_pivot[c] = true;
    std::vector<VecFp> gens;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        VecFp v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < r.rank; ++i) v[r.pivot_cols[i]] = f.neg(r.reduced(i, free));
        gens.push_back(std::move(v));
    }
    return Subspace::span(f, m.cols(), gens);
}

Subspace subspace_sum(const Subspace& s, const Subspace& t) {
    if (s.ambient_dim() != t.ambient_dim()) throw ShapeError("subspace_sum: ambient dimension mismatch");
    return Subspace::column_space(hstack(s.basis(), t.basis()));
}

Subspace subspace_sum(const std::vector<Subspace>& parts, PrimeField field, std::size_t ambient) {
    Subspace acc = Subspace::zero(field, ambient);
    for (const auto& p : parts) acc = subspace_sum(acc, p);
    return acc;
}

Subspace subspace_intersect(const Subspace& s, const Subspace& t) {
    if (s.ambient_dim() != t.ambient_dim()) throw ShapeError("subspace_intersect: ambient dimension mismatch");
    const auto& f = s.field();
    // [S | -T] y = 0  =>  S y_s is in both.
    MatrixFp stacked = hstack(s.basis(), t.basis().scaled(f.neg(1)));
    auto ker = null_space(stacked);
    std::vector<VecFp> gens;
    for (std::size_t k = 0; k < ker.dim(); ++k) {
        VecFp y = ker.basis_vector(k);
        VecFp ys(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(s.dim()));
        gens.push_back(s.basis().apply(ys));
    }
    return Subspace::span(f, s.ambient_dim(), gens);
}

Subspace preimage(const MatrixFp& m, const Subspace& s) {
    if (m.rows() != s.ambient_dim()) throw ShapeError("preimage: matrix rows differ from subspace ambient dimension");
    const auto& f = m.field();
    // [M | -S] (u, y) = 0
    MatrixFp stacked = hstack(m, s.basis().scaled(f.neg(1)));
    auto ker = null_space(stacked);
    std::vector<VecFp> gens;
    for (std::size_t k = 0; k < ker.dim(); ++k) {
        VecFp z = ker.basis_vector(k);
        gens.emplace_back(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(m.cols()));
    }
    return Subspace::span(f, m.cols(), gens);
}

Subspace image(const MatrixFp& m, const Subspace& s) {
    if (m.cols() != s.ambient_dim()) throw ShapeError("image: matrix columns differ from subspace ambient dimension");
    return Subspace::column_space(m * s.basis());
}

bool are_independent(const std::vector<Subspace>& parts) {
    if (parts.empty()) return true;
    const auto n = parts.front().ambient_dim();
    std::size_t total = 0;
    MatrixFp cat(parts.front().field(), n, 0);
    for (const auto& p : parts) {
        if (p.ambient_dim() != n) throw ShapeError("parts live in different ambient spaces");
        total += p.dim();
        cat = hstack(cat, p.basis());
    }
    return rank(cat) == total;
}

bool is_direct_sum(const std::vector<Subspace>& parts) {
    if (parts.empty()) return false;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.dim();
    return total == parts.front().ambient_dim() && are_independent(parts);
}

bool is_invariant(const MatrixFp& a, const Subspace& s) {
    if (!a.is_square() || a.rows() != s.ambient_dim()) throw ShapeError("is_invariant: shape mismatch");
    for (std::size_t k = 0; k < s.dim(); ++k)
        if (!s.contains(a.apply(s.basis_vector(k)))) return false;
    return true;
}

DirectSumDecomposition::DirectSumDecomposition(std::vector<Subspace> parts)
    : parts_(std::move(parts)),
      change_(parts_.empty() ? MatrixFp(PrimeField(2), 0, 0) : MatrixFp(parts_.front().field(), parts_.front().ambient_dim(), 0)),
      inverse_(change_) {
    if (parts_.size() < 2) throw InvalidInput("a decomposition needs at least two parts (r > 1)");
    for (std::size_t i = 0; i < parts_.size(); ++i)
        if (parts_[i].is_zero()) throw InvalidInput("part " + std::to_string(i) + " is the zero subspace");
    if (!is_direct_sum(parts_)) throw NotDirectSum("parts do not form a direct sum of the state space");
    std::size_t off = 0;
    for (const auto& p : parts_) {
        offsets_.push_back(off);
        off += p.dim();
        change_ = hstack(change_, p.basis());
    }
    inverse_ = *inverse(change_);
}

VecFp DirectSumDecomposition::part_coordinates(std::size_t i, std::span<const std::uint32_t> x) const {
    const VecFp all = inverse_.apply(x);
    return VecFp(all.begin() + static_cast<std::ptrdiff_t>(offsets_.at(i)),
                 all.begin() + static_cast<std::ptrdiff_t>(offsets_.at(i) + parts_.at(i).dim()));
}

VecFp DirectSumDecomposition::embed(std::size_t i, std::span<const std::uint32_t> coords) const {
    return parts_.at(i).basis().apply(coords);
}

VecFp DirectSumDecomposition::component(std::size_t i, std::span<const std::uint32_t> x) const {
    return embed(i, part_coordinates(i, x));
}

std::vector<VecFp> decompose_vector(const DirectSumDecomposition& d, std::span<const std::uint32_t> x) {
    std::vector<VecFp> out;
    out.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out.push_back(d.component(i, x));
    return out;
}

Subspace greedy_complement(const Subspace& s, const std::vector<std::size_t>& order) {
    const auto n = s.ambient_dim();
    const auto& f = s.field();
    std::vector<std::size_t> visit = order;
    if (visit.empty()) {
        visit.resize(n);
        std::iota(visit.begin(), visit.end(), std::size_t{0});
    }
    Subspace acc = s;
    std::vector<VecFp> chosen;
    for (auto k : visit) {
        if (acc.dim() == n) break;
        VecFp e(n, 0);
        e.at(k) = 1;
        if (acc.contains(e)) continue;
        acc = subspace_sum(acc, Subspace::span(f, n, {e}));
        chosen.push_back(std::move(e));
    }
    if (acc.dim() != n) throw InvalidInput("extension order does not cover the ambient space");
    return Subspace::span(f, n, chosen);
}

}  // namespace dpdecomp
