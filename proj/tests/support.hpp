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

// Shared fixtures and hand-rolled generators for the unit tests.

#include <cstdint>
#include <random>
#include <vector>

#include "dpdecomp/field.hpp"
#include "dpdecomp/matrix.hpp"
#include "dpdecomp/subspace.hpp"

namespace testing_support {

using namespace dpdecomp;

class Rng {
   public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint32_t below(std::uint32_t bound) { return std::uniform_int_distribution<std::uint32_t>(0, bound - 1)(eng_); }
    std::size_t range(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(eng_); }
    bool coin() { return below(2) == 1; }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[below(static_cast<std::uint32_t>(v.size()))]; }
    std::mt19937_64& engine() { return eng_; }

   private:
    std::mt19937_64 eng_;
};

inline MatrixFp random_matrix(Rng& rng, PrimeField f, std::size_t r, std::size_t c) {
    MatrixFp m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.below(f.modulus());
    return m;
}

inline VecFp random_vec(Rng& rng, PrimeField f, std::size_t n) {
    VecFp v(n);
    for (auto& e : v) e = rng.below(f.modulus());
    return v;
}

inline Subspace random_subspace(Rng& rng, PrimeField f, std::size_t n) {
    const std::size_t k = rng.range(0, n);
    std::vector<VecFp> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(random_vec(rng, f, n));
    return Subspace::span(f, n, gens);
}

inline MatrixFp random_invertible(Rng& rng, PrimeField f, std::size_t n) {
    for (;;) {
        MatrixFp m = random_matrix(rng, f, n, n);
        if (rank(m) == n) return m;
    }
}

/// Every vector of GF(p)^n, in base-p little-endian index order.
inline std::vector<VecFp> all_vectors(PrimeField f, std::size_t n) {
    std::vector<VecFp> out;
    VecFp v(n, 0);
    for (;;) {
        out.push_back(v);
        std::size_t k = 0;
        while (k < n && ++v[k] == f.modulus()) v[k++] = 0;
        if (k == n) break;
    }
    return out;
}

inline VecFp vec(std::initializer_list<std::uint32_t> xs) { return VecFp(xs); }

// The GF(3) system of the second worked example.
inline PrimeField gf3() { return PrimeField(3); }
inline MatrixFp ex2_A() { return MatrixFp::from_rows(gf3(), {{1, 1, 0}, {0, 2, 0}, {0, 0, 1}}); }
inline MatrixFp ex2_B() { return MatrixFp::from_rows(gf3(), {{1, 0}, {1, 1}, {0, 1}}); }
inline std::vector<Subspace> ex2_parts() {
    return {Subspace::span(gf3(), 3, {vec({1, 0, 0})}), Subspace::span(gf3(), 3, {vec({1, 1, 0})}),
            Subspace::span(gf3(), 3, {vec({0, 0, 1})})};
}

// The third worked example, transplanted to GF(3).
inline MatrixFp ex3_A() { return MatrixFp::from_rows(gf3(), {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}); }
inline MatrixFp ex3_B() { return MatrixFp::from_rows(gf3(), {{1, 1}, {0, 1}, {0, 1}}); }
inline std::vector<Subspace> ex3_parts() {
    return {Subspace::span(gf3(), 3, {vec({1, 0, 0})}), Subspace::span(gf3(), 3, {vec({0, 1, 0})}),
            Subspace::span(gf3(), 3, {vec({0, 0, 1})})};
}

}  // namespace testing_support
