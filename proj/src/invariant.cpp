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

#include "dpdecomp/invariant.hpp"

#include <algorithm>

namespace dpdecomp {

PolyFp char_poly(const MatrixFp& a) {
    if (!a.is_square()) throw ShapeError("char_poly needs a square matrix");
    const auto& f = a.field();
    const std::size_t n = a.rows();
    if (n == 0) return PolyFp::constant(f, 1);

    // Coefficients highest degree first. Start from the trailing 1x1 block
    // and grow the principal submatrix one row/column at a time.
    std::vector<std::uint32_t> p = {1, f.neg(a(n - 1, n - 1))};
    for (std::size_t k = n - 1; k-- > 0;) {
        const std::size_t s = n - 1 - k;  // size of the trailing block A1
        // Toeplitz column: 1, -a, -R C, -R A1 C, ..., -R A1^{s-1} C
        std::vector<std::uint32_t> col(s + 2, 0);
        col[0] = 1;
        col[1] = f.neg(a(k, k));
        VecFp v(s);
        for (std::size_t i = 0; i < s; ++i) v[i] = a(k + 1 + i, k);  // C
        for (std::size_t j = 0; j < s; ++j) {
            std::uint32_t rv = 0;
            for (std::size_t i = 0; i < s; ++i) rv = f.add(rv, f.mul(a(k, k + 1 + i), v[i]));
            col[j + 2] = f.neg(rv);
            VecFp next(s, 0);
            for (std::size_t r = 0; r < s; ++r)
                for (std::size_t c = 0; c < s; ++c)
                    next[r] = f.add(next[r], f.mul(a(k + 1 + r, k + 1 + c), v[c]));
            v = std::move(next);
        }
        // (s+2) x (s+1) lower-triangular Toeplitz product with p (length s+1)
        std::vector<std::uint32_t> q(s + 2, 0);
        for (std::size_t r = 0; r < s + 2; ++r)
            for (std::size_t c = 0; c <= std::min(r, s); ++c) q[r] = f.add(q[r], f.mul(col[r - c], p[c]));
        p = std::move(q);
    }
    std::vector<std::int64_t> low_first(p.rbegin(), p.rend());
    return PolyFp(f, low_first);
}

namespace {

// x^{ip} mod g for i = 0..d-1, minus the identity: its kernel is the
// Berlekamp subalgebra {v : v^p = v mod g}.
Subspace berlekamp_kernel(const PolyFp& g) {
    const auto& f = g.field();
    const auto d = static_cast<std::size_t>(g.degree());
    MatrixFp q(f, d, d);
    const PolyFp xp = poly_pow_mod(PolyFp::x(f), f.modulus(), g);
    PolyFp cur = PolyFp::constant(f, 1);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t r = 0; r < d; ++r) q(r, i) = cur.coeff(r);
        q(i, i) = f.sub(q(i, i), 1);
        cur = (cur * xp) % g;
    }
    return null_space(q);
}

PolyFp poly_from_vec(const PrimeField& f, const VecFp& v) {
    return PolyFp(f, std::vector<std::int64_t>(v.begin(), v.end()));
}

// Splits a monic square-free polynomial into its irreducible factors.
std::vector<PolyFp> berlekamp(const PolyFp& g) {
    if (g.degree() <= 1) return {g};
    const auto& f = g.field();
    const Subspace ker = berlekamp_kernel(g);
    const std::size_t k = ker.dim();
    std::vector<PolyFp> parts = {g};
    for (std::size_t b = 0; b < ker.dim() && parts.size() < k; ++b) {
        const PolyFp v = poly_from_vec(f, ker.basis_vector(b));
        if (v.degree() < 1) continue;
        std::vector<PolyFp> next;
        for (const auto& h : parts) {
            if (h.degree() <= 1) {
                next.push_back(h);
                continue;
            }
            for (std::uint32_t s = 0; s < f.modulus(); ++s) {
                PolyFp c = poly_gcd(h, v - PolyFp::constant(f, s));
                if (c.degree() >= 1) next.push_back(std::move(c));
            }
        }
        parts = std::move(next);
    }
    return parts;
}

// Pairs (square-free part, multiplicity) with pairwise coprime parts.
std::vector<std::pair<PolyFp, unsigned>> square_free(const PolyFp& poly) {
    const auto& f = poly.field();
    std::vector<std::pair<PolyFp, unsigned>> out;
    const PolyFp d = poly.derivative();
    if (d.is_zero()) {
        // poly = r(x)^p with r obtained by taking every p-th coefficient
        const auto p = f.modulus();
        std::vector<std::int64_t> root;
        for (std::size_t i = 0; i <= static_cast<std::size_t>(poly.degree()); i += p) root.push_back(poly.coeff(i));
        for (auto& [h, m] : square_free(PolyFp(f, root))) out.emplace_back(h, m * p);
        return out;
    }
    PolyFp c = poly_gcd(poly, d);
    PolyFp w = poly / c;
    unsigned i = 1;
    while (!w.is_one()) {
        PolyFp y = poly_gcd(w, c);
        PolyFp fac = w / y;
        if (fac.degree() >= 1) out.emplace_back(fac.monic(), i);
        w = std::move(y);
        c = c / w;
        ++i;
    }
    if (c.degree() >= 1) {
        const auto p = f.modulus();
        std::vector<std::int64_t> root;
        for (std::size_t j = 0; j <= static_cast<std::size_t>(c.degree()); j += p) root.push_back(c.coeff(j));
        for (auto& [h, m] : square_free(PolyFp(f, root).monic())) out.emplace_back(h, m * p);
    }
    return out;
}

}  // namespace

std::vector<PolyFactor> factor_poly(const PolyFp& f) {
    if (f.degree() < 1) throw InvalidInput("factor_poly needs degree >= 1");
    if (!f.is_monic()) throw InvalidInput("factor_poly needs a monic polynomial, got " + f.to_string());
    std::vector<PolyFactor> out;
    for (const auto& [part, mult] : square_free(f)) {
        for (auto& irr : berlekamp(part)) {
            auto it = std::find_if(out.begin(), out.end(), [&](const PolyFactor& pf) { return pf.factor == irr; });
            if (it != out.end())
                it->multiplicity += mult;
            else
                out.push_back({irr.monic(), mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
        if (!(a.factor == b.factor)) return poly_less(a.factor, b.factor);
        return a.multiplicity < b.multiplicity;
    });
    return out;
}

bool is_irreducible(const PolyFp& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    const PolyFp g = f.monic();
    if (!poly_gcd(g, g.derivative()).is_one()) return false;
    return berlekamp_kernel(g).dim() == 1;
}

CharPolyFactorization factor_char_poly(const MatrixFp& a) {
    PolyFp cp = char_poly(a);
    auto factors = cp.degree() >= 1 ? factor_poly(cp) : std::vector<PolyFactor>{};
    return {std::move(cp), std::move(factors)};
}

PrimaryDecomposition primary_decomposition(const MatrixFp& a) {
    auto fact = factor_char_poly(a);
    if (fact.factors.size() < 2) {
        const std::string single = fact.factors.empty() ? fact.char_poly.to_string() : fact.factors.front().factor.to_string();
        throw NotDecomposable(single, "characteristic polynomial " + fact.char_poly.to_string() +
                                          " has a single irreducible factor (" + single + "), so r = 1");
    }
    std::vector<Subspace> parts;
    for (const auto& pf : fact.factors)
        parts.push_back(null_space(poly_eval_matrix(poly_pow(pf.factor, pf.multiplicity), a)));
    auto dec = verify_decomposition(a, parts);
    return {std::move(fact), std::move(dec)};
}

DirectSumDecomposition verify_decomposition(const MatrixFp& a, const std::vector<Subspace>& parts) {
    if (!a.is_square()) throw ShapeError("A must be square");
    for (const auto& p : parts)
        if (p.ambient_dim() != a.rows()) throw ShapeError("part ambient dimension differs from A");
    DirectSumDecomposition d(parts);
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (!is_invariant(a, parts[i]))
            throw NotInvariant(i, "part " + std::to_string(i) + " is not A-invariant");
    return d;
}

}  // namespace dpdecomp
