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
#include <vector>

#include <Eigen/Dense>

namespace dpdecomp {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

struct RiccatiOptions {
    double cond_limit = 1e12;  // largest accepted condition number of B^T K B
};

/// K[t] for t = 0..T with K[T] = P. gains[t] is the gain as displayed for
/// the real-field example, -(B^T K_t B)^{-1} B^T K_t A; gains_next[t] uses
/// K_{t+1}, the minimizer of x^T P x + (Ax + Bu)^T K_{t+1} (Ax + Bu).
/// Both are stored as G with u = G x, for t = 0..T-1.
struct RiccatiSolution {
    std::vector<RealMatrix> K;
    std::vector<RealMatrix> gains;
    std::vector<RealMatrix> gains_next;
};

/// Backward recursion K_t = P + A^T K A - A^T K B (B^T K B)^{-1} B^T K A with
/// K = K_{t+1}. Requires finite entries, P symmetric positive definite, B of
/// full column rank (zero columns allowed) and T >= 1; throws InvalidInput,
/// ShapeError or PreconditionFailed otherwise, and IllConditioned when
/// B^T K B is too close to singular.
RiccatiSolution riccati_backward(const RealMatrix& A, const RealMatrix& B, const RealMatrix& P, std::size_t T,
                                 const RiccatiOptions& opts = {});

/// Smallest eigenvalue of the symmetric part is at least -tol.
bool is_psd(const RealMatrix& K, double tol = 1e-10);

/// sum_{t=0..T} x_t^T P x_t along x_{t+1} = (A + B G_t) x_t.
double trajectory_cost(const RealMatrix& A, const RealMatrix& B, const RealMatrix& P,
                       const std::vector<RealMatrix>& gains, const RealVector& x0);

struct GainIndexCheck {
    double predicted = 0;     // x0^T K_0 x0
    double cost_current = 0;  // trajectory cost under the K_t gains
    double cost_next = 0;     // trajectory cost under the K_{t+1} gains
    bool current_matches = false;
    bool next_matches = false;
};

/// Which gain index reproduces x0^T K_0 x0 to the relative tolerance.
GainIndexCheck gain_index_check(const RealMatrix& A, const RealMatrix& B, const RealMatrix& P,
                                const RiccatiSolution& sol, const RealVector& x0, double rel_tol = 1e-8);

struct BlockDiagonalReport {
    bool holds = false;
    bool P_block_compatible = false;  // off-diagonal blocks of S^T P S within tol
    double max_offdiag_K = 0;         // over all K_t in the adapted basis
    double max_offdiag_gain = 0;      // over both gain variants
    double max_block_mismatch = 0;    // per-block recursions against the diagonal blocks
    std::vector<std::size_t> state_dims;
    std::vector<std::size_t> input_dims;  // dim of R(B) cap X_i
};

/// `parts` are bases (n x d_i) of real subspaces with X = (+) X_i. In the
/// adapted basis S = [parts] and an input basis W with B W block diagonal,
/// measures the off-diagonal blocks of S^T K_t S and W^{-1} G_t S and runs an
/// independent recursion per block. Throws PreconditionFailed when the parts
/// do not form a direct sum, a part is not A-invariant, or
/// R(B) != (+)_i [R(B) cap X_i]. A P that is not block compatible is reported
/// through P_block_compatible and holds = false, not thrown.
BlockDiagonalReport block_diagonal_check(const RealMatrix& A, const RealMatrix& B, const RealMatrix& P,
                                         const std::vector<RealMatrix>& parts, std::size_t T, double tol = 1e-9,
                                         const RiccatiOptions& opts = {});

}  // namespace dpdecomp
