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

#include "dpdecomp/field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dpdecomp {

bool is_prime(std::uint32_t p) noexcept {
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p > (1u << 31) || !is_prime(p))
        throw InvalidInput("modulus " + std::to_string(p) + " is not a prime in [2, 2^31]");
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const noexcept {
    std::uint32_t r = 1 % p_;
    std::uint32_t b = a % p_;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    a %= p_;
    if (a == 0) throw DivisionByZero();
    // extended Euclid on signed 64-bit
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a;
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return reduce(t);
}

namespace {
void require_same_field(const PrimeField& a, const PrimeField& b) {
    if (!(a == b)) throw InvalidInput("GF(p) modulus mismatch");
}
}  // namespace

Fp operator+(const Fp& a, const Fp& b) {
    require_same_field(a.field_, b.field_);
    return Fp(a.field_.add(a.value_, b.value_), a.field_);
}
Fp operator-(const Fp& a, const Fp& b) {
    require_same_field(a.field_, b.field_);
    return Fp(a.field_.sub(a.value_, b.value_), a.field_);
}
Fp operator*(const Fp& a, const Fp& b) {
    require_same_field(a.field_, b.field_);
    return Fp(a.field_.mul(a.value_, b.value_), a.field_);
}
Fp operator/(const Fp& a, const Fp& b) { return a * fp_inv(b); }

Fp fp_inv(const Fp& a) { return Fp(a.field().inv(a.value()), a.field()); }

Rational parse_rational(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw InvalidInput("empty rational literal");
    const auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw InvalidInput("malformed rational literal '" + std::string(text) + "'");
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// ---------------------------------------------------------------- PolyFp

PolyFp::PolyFp(PrimeField field, const std::vector<std::int64_t>& coeffs) : field_(field) {
    c_.reserve(coeffs.size());
    for (auto v : coeffs) c_.push_back(field_.reduce(v));
    trim();
}

PolyFp PolyFp::constant(PrimeField field, std::int64_t c) { return PolyFp(field, {c}); }

PolyFp PolyFp::monomial(PrimeField field, std::int64_t c, std::size_t degree) {
    std::vector<std::int64_t> v(degree + 1, 0);
    v[degree] = c;
    return PolyFp(field, v);
}

void PolyFp::trim() noexcept {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyFp PolyFp::scaled(std::uint32_t s) const {
    PolyFp r(field_);
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_.mul(c_[i], s);
    r.trim();
    return r;
}

PolyFp PolyFp::monic() const {
    if (is_zero()) return *this;
    return scaled(field_.inv(leading()));
}

PolyFp PolyFp::derivative() const {
    PolyFp r(field_);
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.c_[i - 1] = field_.mul(c_[i], field_.reduce(static_cast<std::int64_t>(i)));
    r.trim();
    return r;
}

std::uint32_t PolyFp::eval(std::uint32_t at) const noexcept {
    std::uint32_t acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_.add(field_.mul(acc, at), *it);
    return acc;
}

PolyFp operator+(const PolyFp& a, const PolyFp& b) {
    require_same_field(a.field_, b.field_);
    PolyFp r(a.field_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.field_.add(a.coeff(i), b.coeff(i));
    r.trim();
    return r;
}

PolyFp operator-(const PolyFp& a, const PolyFp& b) {
    require_same_field(a.field_, b.field_);
    PolyFp r(a.field_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.field_.sub(a.coeff(i), b.coeff(i));
    r.trim();
    return r;
}

PolyFp operator*(const PolyFp& a, const PolyFp& b) {
    require_same_field(a.field_, b.field_);
    PolyFp r(a.field_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    const auto& f = a.field_;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] = f.add(r.c_[i + j], f.mul(a.c_[i], b.c_[j]));
    r.trim();
    return r;
}

PolyFp operator/(const PolyFp& a, const PolyFp& b) { return divmod(a, b).first; }
PolyFp operator%(const PolyFp& a, const PolyFp& b) { return divmod(a, b).second; }

std::pair<PolyFp, PolyFp> divmod(const PolyFp& a, const PolyFp& b) {
    require_same_field(a.field(), b.field());
    if (b.is_zero()) throw DivisionByZero();
    const auto& f = a.field();
    const std::uint32_t lead_inv = f.inv(b.leading());
    std::vector<std::uint32_t> rem = a.coefficients();
    const auto& bc = b.coefficients();
    const int db = b.degree();
    std::vector<std::int64_t> quot(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0, 0);
    for (int k = a.degree(); k >= db; --k) {
        const std::uint32_t lead = rem[static_cast<std::size_t>(k)];
        if (lead == 0) continue;
        const std::uint32_t q = f.mul(lead, lead_inv);
        quot[static_cast<std::size_t>(k - db)] = q;
        for (int j = 0; j <= db; ++j) {
            auto& slot = rem[static_cast<std::size_t>(k - db + j)];
            slot = f.sub(slot, f.mul(q, bc[static_cast<std::size_t>(j)]));
        }
    }
    std::vector<std::int64_t> r(rem.begin(), rem.end());
    return {PolyFp(f, quot), PolyFp(f, r)};
}

PolyFp poly_gcd(const PolyFp& f, const PolyFp& g) {
    if (f.is_zero() && g.is_zero()) throw InvalidInput("poly_gcd of two zero polynomials");
    PolyFp a = f, b = g;
    while (!b.is_zero()) {
        PolyFp r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

PolyFp poly_pow(const PolyFp& base, std::uint64_t e) {
    PolyFp r = PolyFp::constant(base.field(), 1);
    PolyFp b = base;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

PolyFp poly_pow_mod(const PolyFp& base, std::uint64_t e, const PolyFp& mod) {
    PolyFp r = PolyFp::constant(base.field(), 1) % mod;
    PolyFp b = base % mod;
    while (e) {
        if (e & 1) r = (r * b) % mod;
        e >>= 1;
        if (e) b = (b * b) % mod;
    }
    return r;
}

bool poly_less(const PolyFp& a, const PolyFp& b) noexcept {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.coefficients() < b.coefficients();
}

std::string PolyFp::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const auto c = c_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (k == 0) {
            os << c;
        } else {
            if (c != 1) os << c;
            os << "x";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

}  // namespace dpdecomp
