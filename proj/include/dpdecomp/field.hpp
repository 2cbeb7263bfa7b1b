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

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpdecomp/error.hpp"

namespace dpdecomp {

/// A validated prime modulus. Every GF(p) value in the library carries one,
/// so "p is prime" is established once, here, by trial division.
class PrimeField {
   public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t modulus() const noexcept { return p_; }

    std::uint32_t reduce(std::int64_t v) const noexcept {
        const auto p = static_cast<std::int64_t>(p_);
        std::int64_t r = v % p;
        return static_cast<std::uint32_t>(r < 0 ? r + p : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        const std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
        return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p_ - b);
    }
    std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
    // Throws DivisionByZero for a == 0.
    std::uint32_t inv(std::uint32_t a) const;

    bool operator==(const PrimeField&) const = default;

   private:
    std::uint32_t p_;
};

bool is_prime(std::uint32_t p) noexcept;

/// One element of GF(p).
class Fp {
   public:
    Fp(std::int64_t value, PrimeField field) : field_(field), value_(field.reduce(value)) {}

    std::uint32_t value() const noexcept { return value_; }
    const PrimeField& field() const noexcept { return field_; }
    bool is_zero() const noexcept { return value_ == 0; }

    friend Fp operator+(const Fp& a, const Fp& b);
    friend Fp operator-(const Fp& a, const Fp& b);
    friend Fp operator*(const Fp& a, const Fp& b);
    friend Fp operator/(const Fp& a, const Fp& b);
    Fp operator-() const { return Fp(field_.neg(value_), field_); }

    bool operator==(const Fp& other) const = default;

   private:
    PrimeField field_;
    std::uint32_t value_;
};

/// Multiplicative inverse; throws DivisionByZero on zero.
Fp fp_inv(const Fp& a);

/// Exact rational; GMP keeps it canonical (lowest terms, positive denominator).
using Rational = mpq_class;

/// Accepts "n", "n/d", with optional sign and surrounding spaces.
Rational parse_rational(std::string_view text);
/// Always "num/den", e.g. "3/1", "-1/2".
std::string to_string(const Rational& q);

/// Univariate polynomial over GF(p), coefficients lowest degree first, with
/// no trailing zeros. The zero polynomial has degree -1.
class PolyFp {
   public:
    explicit PolyFp(PrimeField field) : field_(field) {}
    PolyFp(PrimeField field, const std::vector<std::int64_t>& coeffs_low_first);

    static PolyFp constant(PrimeField field, std::int64_t c);
    static PolyFp monomial(PrimeField field, std::int64_t c, std::size_t degree);
    static PolyFp x(PrimeField field) { return monomial(field, 1, 1); }

    const PrimeField& field() const noexcept { return field_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
    std::uint32_t coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    std::uint32_t leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
    const std::vector<std::uint32_t>& coefficients() const noexcept { return c_; }

    PolyFp monic() const;
    PolyFp derivative() const;
    std::uint32_t eval(std::uint32_t at) const noexcept;

    friend PolyFp operator+(const PolyFp& a, const PolyFp& b);
    friend PolyFp operator-(const PolyFp& a, const PolyFp& b);
    friend PolyFp operator*(const PolyFp& a, const PolyFp& b);
    friend PolyFp operator/(const PolyFp& a, const PolyFp& b);
    friend PolyFp operator%(const PolyFp& a, const PolyFp& b);
    PolyFp scaled(std::uint32_t s) const;

    bool operator==(const PolyFp& other) const = default;

    /// Human-readable form, e.g. "x^2 + 2x + 1".
    std::string to_string() const;

   private:
    void trim() noexcept;

    PrimeField field_;
    std::vector<std::uint32_t> c_;
};

/// Quotient and remainder; throws DivisionByZero for a zero divisor.
std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b);

/// Monic gcd. Throws InvalidInput when both arguments are zero.
PolyFp poly_gcd(const PolyFp& f, const PolyFp& g);

PolyFp poly_pow(const PolyFp& base, std::uint64_t e);
PolyFp poly_pow_mod(const PolyFp& base, std::uint64_t e, const PolyFp& mod);

/// Total order used for deterministic factor lists: by degree, then by
/// coefficient vector lowest degree first.
bool poly_less(const PolyFp& a, const PolyFp& b) noexcept;

}  // namespace dpdecomp
