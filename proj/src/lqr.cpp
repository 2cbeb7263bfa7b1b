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

#include "dpdecomp/lqr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpdecomp/error.hpp"

namespace dpdecomp {

namespace {

void require_finite(const RealMatrix& m, const char* name) {
    if (!m.allFinite()) throw InvalidInput(std::string(name) + " has a NaN or infinite entry");
}

double max_abs(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// -(B^T K B)^{-1} B^T K A, with the condition guard.
RealMatrix gain(const RealMatrix& A, const RealMatrix& B, const RealMatrix& K, double cond_limit) {
    if (B.cols() == 0) return RealMatrix::Zero(0, A.cols());
    const RealMatrix M = B.transpose() * K * B;
    const Eigen::JacobiSVD<RealMatrix> svd(M);
    const auto& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    if (!(smin > 0) || s(0) / smin > cond_limit)
        throw IllConditioned("B^T K B has condition number above " + std::to_string(cond_limit));
    return -M.fullPivLu().solve(B.transpose() * K * A);
}

// Singular values above 1e-10 * scale; scale defaults to the largest one.
std::size_t numeric_rank(const RealMatrix& m, double scale = 0) {
    if (m.size() == 0) return 0;
    const Eigen::JacobiSVD<RealMatrix> svd(m);
    const auto& s = svd.singularValues();
    const double cut = 1e-10 * (scale > 0 ? scale : s(0));
    std::size_t r = 0;
    for (Eigen::Index k = 0; k < s.size(); ++k) r += s(k) > cut;
    return r;
}

}  // namespace

RiccatiSolution riccati_backward(const RealMatrix& A, const RealMatrix& B, const RealMatrix& P, std::size_t T,
                                 const RiccatiOptions& opts) {
    const auto n = A.rows();
    if (A.cols() != n || P.rows() != n || P.cols() != n || B.rows() != n)
        throw ShapeError("A and P must be n x n and B must have n rows");
    require_finite(A, "A");
    require_finite(B, "B");
    require_finite(P, "P");
    if (T < 1) throw InvalidInput("horizon must be at least 1");
    if (max_abs(P - P.transpose()) > 1e-12 * std::max(1.0, max_abs(P))) throw PreconditionFailed("P is not symmetric");
    if (n > 0 && P.llt().info() != Eigen::Success) throw PreconditionFailed("P is not positive definite");
    if (numeric_rank(B) != static_cast<std::size_t>(B.cols())) throw PreconditionFailed("B does not have full column rank");

    RiccatiSolution sol;
    sol.K.assign(T + 1, RealMatrix());
    sol.gains.assign(T, RealMatrix());
    sol.gains_next.assign(T, RealMatrix());
    sol.K[T] = P;
    for (std::size_t t = T; t-- > 0;) {
        const RealMatrix& Kn = sol.K[t + 1];
        const RealMatrix Gn = gain(A, B, Kn, opts.cond_limit);
        // A^T K B (B^T K B)^{-1} B^T K A = -A^T K B G
        RealMatrix K = P + A.transpose() * Kn * A + A.transpose() * Kn * B * Gn;
        sol.K[t] = (K + K.transpose()) / 2;
        sol.gains_next[t] = Gn;
    }
    for (std::size_t t = 0; t < T; ++t) sol.gains[t] = gain(A, B, sol.K[t], opts.cond_limit);
    return sol;
}

bool is_psd(const RealMatrix& K, double tol) {
    if (K.size() == 0) return true;
    const RealMatrix S = (K + K.transpose()) / 2;
    return Eigen::SelfAdjointEigenSolver<RealMatrix>(S, Eigen::EigenvaluesOnly).eigenvalues().minCoeff() >= -tol;
}

double trajectory_cost(const RealMatrix& A, const RealMatrix& B, const RealMatrix& P,
                       const std::vector<RealMatrix>& gains, const RealVector& x0) {
    RealVector x = x0;
    double cost = 0;
    for (const auto& G : gains) {
        cost += x.dot(P * x);
        x = A * x + B * (G * x);
    }
    return cost + x.dot(P * x);
}

GainIndexCheck gain_index_check(const RealMatrix& A, const RealMatrix& B, const RealMatrix& P,
                                const RiccatiSolution& sol, const RealVector& x0, double rel_tol) {
    GainIndexCheck c;
    c.predicted = x0.dot(sol.K.front() * x0);
    c.cost_current = trajectory_cost(A, B, P, sol.gains, x0);
    c.cost_next = trajectory_cost(A, B, P, sol.gains_next, x0);
    const double scale = std::max(std::abs(c.predicted), 1e-300);
    c.current_matches = std::abs(c.cost_current - c.predicted) <= rel_tol * scale;
    c.next_matches = std::abs(c.cost_next - c.predicted) <= rel_tol * scale;
    return c;
}

BlockDiagonalReport block_diagonal_check(const RealMatrix& A, const RealMatrix& B, const RealMatrix& P,
                                         const std::vector<RealMatrix>& parts, std::size_t T, double tol,
                                         const RiccatiOptions& opts) {
    const auto n = A.rows();
    BlockDiagonalReport rep;
    std::vector<Eigen::Index> off;
    Eigen::Index total = 0;
    for (const auto& p : parts) {
        if (p.rows() != n) throw ShapeError("part basis has the wrong number of rows");
        require_finite(p, "part basis");
        off.push_back(total);
        total += p.cols();
        rep.state_dims.push_back(static_cast<std::size_t>(p.cols()));
    }
    if (parts.size() < 2 || total != n) throw PreconditionFailed("parts do not form a direct sum of the state space");
    RealMatrix S(n, n);
    for (std::size_t i = 0; i < parts.size(); ++i) S.middleCols(off[i], parts[i].cols()) = parts[i];
    const Eigen::FullPivLU<RealMatrix> lu(S);
    if (!lu.isInvertible()) throw PreconditionFailed("parts do not form a direct sum of the state space");

    for (std::size_t i = 0; i < parts.size(); ++i) {
        const RealMatrix& Si = parts[i];
        const RealMatrix ASi = A * Si;
        const RealMatrix coef = Si.colPivHouseholderQr().solve(ASi);
        if (max_abs(ASi - Si * coef) > tol * std::max(1.0, max_abs(ASi)))
            throw PreconditionFailed("part " + std::to_string(i) + " is not A-invariant");
    }

    const RealMatrix Sinv = lu.inverse();
    const RealMatrix Aa = Sinv * A * S;
    const RealMatrix Ba = Sinv * B;
    const RealMatrix Pa = S.transpose() * P * S;

    // In adapted coordinates R(B) splits iff the row-block ranks add up.
    const auto m = B.cols();
    RealMatrix Bt = RealMatrix::Zero(n, m);
    const double b_scale = m > 0 ? Eigen::JacobiSVD<RealMatrix>(Ba).singularValues()(0) : 1.0;
    std::vector<Eigen::Index> in_off;
    Eigen::Index in_total = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const RealMatrix rows = Ba.middleRows(off[i], parts[i].cols());
        const auto r = static_cast<Eigen::Index>(numeric_rank(rows, b_scale));
        rep.input_dims.push_back(static_cast<std::size_t>(r));
        in_off.push_back(in_total);
        if (in_total + r > m)
            throw PreconditionFailed("range condition fails: R(B) is not the direct sum of its intersections with the parts");
        if (r > 0) {
            const Eigen::JacobiSVD<RealMatrix> svd(rows, Eigen::ComputeThinU);
            Bt.block(off[i], in_total, parts[i].cols(), r) = svd.matrixU().leftCols(r);
        }
        in_total += r;
    }
    if (in_total != m || numeric_rank(Ba) != static_cast<std::size_t>(m))
        throw PreconditionFailed("range condition fails: R(B) is not the direct sum of its intersections with the parts");
    const RealMatrix W = Ba.colPivHouseholderQr().solve(Bt);
    if (max_abs(Ba * W - Bt) > 1e-8) throw PreconditionFailed("range condition fails: adapted input basis not reachable");
    const RealMatrix Winv = W.fullPivLu().inverse();

    auto offdiag = [&](const RealMatrix& M, const std::vector<Eigen::Index>& roff, const std::vector<std::size_t>& rdim) {
        double worst = 0;
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = 0; j < parts.size(); ++j)
                if (i != j && rdim[i] > 0 && parts[j].cols() > 0)
                    worst = std::max(worst, max_abs(M.block(roff[i], off[j], static_cast<Eigen::Index>(rdim[i]), parts[j].cols())));
        return worst;
    };

    rep.P_block_compatible = offdiag(Pa, off, rep.state_dims) <= tol;

    const auto full = riccati_backward(A, B, P, T, opts);
    std::vector<RiccatiSolution> blocks;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto d = parts[i].cols();
        const auto r = static_cast<Eigen::Index>(rep.input_dims[i]);
        const RealMatrix Ai = Aa.block(off[i], off[i], d, d);
        const RealMatrix Bi = Bt.block(off[i], in_off[i], d, r);
        RealMatrix Pi = Pa.block(off[i], off[i], d, d);
        Pi = (Pi + Pi.transpose()) / 2;
        blocks.push_back(riccati_backward(Ai, Bi, Pi, T, opts));
    }

    for (std::size_t t = 0; t <= T; ++t) {
        const RealMatrix Ka = S.transpose() * full.K[t] * S;
        rep.max_offdiag_K = std::max(rep.max_offdiag_K, offdiag(Ka, off, rep.state_dims));
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const auto d = parts[i].cols();
            rep.max_block_mismatch = std::max(rep.max_block_mismatch, max_abs(Ka.block(off[i], off[i], d, d) - blocks[i].K[t]));
        }
        if (t == T) break;
        for (int variant = 0; variant < 2; ++variant) {
            const RealMatrix& G = variant == 0 ? full.gains[t] : full.gains_next[t];
            const RealMatrix Ga = Winv * G * S;
            rep.max_offdiag_gain = std::max(rep.max_offdiag_gain, offdiag(Ga, in_off, rep.input_dims));
            for (std::size_t i = 0; i < parts.size(); ++i) {
                const auto d = parts[i].cols();
                const auto r = static_cast<Eigen::Index>(rep.input_dims[i]);
                if (r == 0) continue;
                const RealMatrix& Gi = variant == 0 ? blocks[i].gains[t] : blocks[i].gains_next[t];
                rep.max_block_mismatch = std::max(rep.max_block_mismatch, max_abs(Ga.block(in_off[i], off[i], r, d) - Gi));
            }
        }
    }
    rep.holds = rep.P_block_compatible && rep.max_offdiag_K <= tol && rep.max_offdiag_gain <= tol &&
                rep.max_block_mismatch <= tol;
    return rep;
}

}  // namespace dpdecomp
