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

#include "dpdecomp/random_instances.hpp"

#include <algorithm>
#include <random>

namespace dpdecomp {

std::string to_string(Suite s) {
    switch (s) {
        case Suite::range_condition:
            return "range_condition";
        case Suite::invertible_A:
            return "invertible_A";
        case Suite::unconstrained:
            return "unconstrained";
    }
    return "unconstrained";
}

namespace {

class Draw {
   public:
    explicit Draw(std::uint64_t seed) : eng_(seed) {}
    std::uint32_t below(std::uint32_t bound) { return static_cast<std::uint32_t>(eng_() % bound); }
    std::uint32_t between(std::uint32_t lo, std::uint32_t hi) { return lo + below(hi - lo + 1); }

    MatrixFp matrix(PrimeField f, std::size_t r, std::size_t c) {
        MatrixFp m(f, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = below(f.modulus());
        return m;
    }
    MatrixFp invertible(PrimeField f, std::size_t n) {
        for (;;) {
            MatrixFp m = matrix(f, n, n);
            if (rank(m) == n) return m;
        }
    }

   private:
    std::mt19937_64 eng_;
};

// Random split of n into at least two positive block sizes.
std::vector<std::size_t> block_sizes(Draw& d, std::size_t n) {
    for (;;) {
        std::vector<std::size_t> sizes;
        std::size_t left = n;
        while (left > 0) {
            const std::size_t s = d.between(1, static_cast<std::uint32_t>(left));
            sizes.push_back(s);
            left -= s;
        }
        if (sizes.size() >= 2) return sizes;
    }
}

}  // namespace

GeneratedInstance random_instance(Suite suite, std::uint64_t seed, const Horizon& h, const RandomInstanceOptions& opts) {
    if (opts.max_n < 2) throw InvalidInput("random instances need n >= 2");
    if (opts.max_m < 1) throw InvalidInput("random instances need m >= 1");
    Draw d(seed);
    const PrimeField f(d.below(2) == 0 ? 2 : 3);
    const std::size_t n = d.between(2, opts.max_n);
    const std::size_t m = d.between(1, std::min<std::uint32_t>(opts.max_m, static_cast<std::uint32_t>(n)));
    const auto sizes = block_sizes(d, n);

    MatrixFp blocks(f, n, n);
    std::size_t off = 0;
    for (auto s : sizes) {
        const MatrixFp blk = suite == Suite::invertible_A ? d.invertible(f, s) : d.matrix(f, s, s);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) blocks(off + i, off + j) = blk(i, j);
        off += s;
    }
    const MatrixFp P = d.invertible(f, n);
    const MatrixFp A = P * blocks * *inverse(P);

    std::vector<Subspace> parts;
    off = 0;
    for (auto s : sizes) {
        parts.push_back(Subspace::column_space(P.column_block(off, s)));
        off += s;
    }
    DirectSumDecomposition dec(parts);

    MatrixFp B(f, n, m);
    do {
        if (suite == Suite::range_condition) {
            for (std::size_t j = 0; j < m; ++j) {
                const std::size_t k = d.below(static_cast<std::uint32_t>(sizes.size()));
                const VecFp col = P.column_block(dec.part_offset(k), sizes[k]).apply(d.matrix(f, sizes[k], 1).column(0));
                for (std::size_t i = 0; i < n; ++i) B(i, j) = col[i];
            }
        } else {
            B = d.matrix(f, n, m);
        }
    } while (rank(B) != m);

    std::vector<std::vector<Rational>> tables;
    for (std::size_t k = 0; k < dec.size(); ++k) {
        const StateSpace ps(f, dec.part_dim(k));
        std::vector<Rational> t(ps.size(), Rational(0));
        for (std::size_t y = 1; y < t.size(); ++y) t[y] = d.between(1, 4);
        tables.push_back(std::move(t));
    }
    CostFunction g = CostFunction::separable(dec, std::move(tables));
    return {DPInstance(A, B, std::move(g), h), std::move(dec)};
}

}  // namespace dpdecomp
