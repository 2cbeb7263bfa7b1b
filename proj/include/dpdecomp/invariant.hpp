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

#include <utility>
#include <vector>

#include "dpdecomp/subspace.hpp"

namespace dpdecomp {

struct PolyFactor {
    PolyFp factor;  // monic irreducible
    unsigned multiplicity;
};

struct CharPolyFactorization {
    PolyFp char_poly;
    std::vector<PolyFactor> factors;
};

/// det(xI - A) by the division-free Samuelson-Berkowitz recurrence, which is
/// valid in every characteristic. Throws ShapeError for non-square A.
PolyFp char_poly(const MatrixFp& a);

/// Square-free decomposition followed by Berlekamp splitting. Factors are
/// monic irreducible, pairwise distinct, sorted by poly_less. Throws
/// InvalidInput for non-monic or constant input.
std::vector<PolyFactor> factor_poly(const PolyFp& f);

/// Irreducibility test via the dimension of the Berlekamp subalgebra of the
/// square-free part; exposed for tests and diagnostics.
bool is_irreducible(const PolyFp& f);

CharPolyFactorization factor_char_poly(const MatrixFp& a);

struct PrimaryDecomposition {
    CharPolyFactorization factorization;
    DirectSumDecomposition decomposition;  // part i = ker f_i(A)^{m_i}
};

/// X = (+)_i ker f_i(A)^{m_i}, parts in factor order. Throws NotDecomposable
/// when the characteristic polynomial is a power of a single irreducible.
PrimaryDecomposition primary_decomposition(const MatrixFp& a);

/// Validates a user-supplied decomposition of X over A (direct sum and
/// A-invariance of every part). Decompositions finer than the primary one are
/// accepted. Throws NotDirectSum or NotInvariant naming the first bad part.
DirectSumDecomposition verify_decomposition(const MatrixFp& a, const std::vector<Subspace>& parts);

}  // namespace dpdecomp
