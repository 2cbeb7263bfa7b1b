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

#include <algorithm>

#include "dpdecomp/dp.hpp"

namespace dpdecomp {

namespace {

// p^dim, or nullopt when it exceeds `cap`.
std::optional<std::size_t> bounded_power(std::uint32_t p, std::size_t dim, std::size_t cap) {
    std::size_t v = 1;
    for (std::size_t k = 0; k < dim; ++k) {
        if (v > cap / p) return std::nullopt;
        v *= p;
    }
    return v;
}

std::size_t checked_size(std::uint32_t p, std::size_t dim) {
    constexpr std::size_t hard_cap = std::size_t{1} << 32;
    auto v = bounded_power(p, dim, hard_cap);
    if (!v) throw InvalidInput("state space GF(" + std::to_string(p) + ")^" + std::to_string(dim) + " is too large");
    return *v;
}

}  // namespace

StateSpace::StateSpace(PrimeField field, std::size_t dim) : field_(field), dim_(dim), size_(checked_size(field.modulus(), dim)) {}

std::size_t StateSpace::index(std::span<const std::uint32_t> x) const {
    if (x.size() != dim_) throw InvalidInput("vector has length " + std::to_string(x.size()) + ", expected " + std::to_string(dim_));
    std::size_t idx = 0;
    for (std::size_t k = dim_; k-- > 0;) {
        if (x[k] >= field_.modulus()) throw InvalidInput("component out of range [0, p)");
        idx = idx * field_.modulus() + x[k];
    }
    return idx;
}

VecFp StateSpace::vector(std::size_t idx) const {
    if (idx >= size_) throw InvalidInput("state index " + std::to_string(idx) + " out of range");
    VecFp x(dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
        x[k] = static_cast<std::uint32_t>(idx % field_.modulus());
        idx /= field_.modulus();
    }
    return x;
}

Horizon Horizon::finite(std::size_t T) {
    if (T < 1) throw InvalidInput("finite horizon needs T >= 1");
    return Horizon(FiniteHorizon{T});
}

Horizon Horizon::discounted(const Rational& a) {
    Rational alpha = a;
    alpha.canonicalize();
    if (alpha <= 0 || alpha >= 1) throw InvalidInput("discount factor must lie in (0, 1), got " + to_string(alpha));
    return Horizon(DiscountedHorizon{alpha});
}

std::size_t Horizon::T() const {
    if (!is_finite()) throw PreconditionFailed("discounted horizon has no T");
    return std::get<FiniteHorizon>(h_).T;
}

Rational Horizon::alpha() const {
    if (is_finite()) return Rational(1);
    return std::get<DiscountedHorizon>(h_).alpha;
}

void CostFunction::validate(CostCheck check) {
    const StateSpace s(field_, n_);
    if (table_.size() != s.size())
        throw InvalidInput("cost table has " + std::to_string(table_.size()) + " entries, expected p^n = " + std::to_string(s.size()));
    for (auto& v : table_) v.canonicalize();
    if (table_[0] != 0) throw InvalidInput("cost must vanish at the origin: g(0) = " + to_string(table_[0]) + ", need g(x) = 0 <=> x = 0");
    bool pd = true;
    for (std::size_t x = 1; x < table_.size(); ++x) {
        if (table_[x] < 0) throw InvalidInput("cost must be nonnegative, g at state " + std::to_string(x) + " is " + to_string(table_[x]));
        if (table_[x] == 0) pd = false;
    }
    if (check == CostCheck::positive_definite && !pd) {
        for (std::size_t x = 1; x < table_.size(); ++x)
            if (table_[x] == 0)
                throw InvalidInput("cost vanishes at nonzero state " + std::to_string(x) + ", need g(x) = 0 <=> x = 0");
    }
    positive_definite_ = pd;
}

CostFunction CostFunction::from_table(PrimeField field, std::size_t n, std::vector<Rational> table, CostCheck check) {
    CostFunction g(field, n);
    g.table_ = std::move(table);
    g.validate(check);
    return g;
}

CostFunction CostFunction::separable(const DirectSumDecomposition& d, std::vector<std::vector<Rational>> part_tables,
                                     CostCheck check) {
    if (part_tables.size() != d.size())
        throw InvalidInput("separable cost has " + std::to_string(part_tables.size()) + " part tables for " + std::to_string(d.size()) + " parts");
    const auto& f = d.field();
    for (auto& t : part_tables)
        for (auto& v : t) v.canonicalize();
    for (std::size_t i = 0; i < d.size(); ++i) {
        const StateSpace ps(f, d.part_dim(i));
        if (part_tables[i].size() != ps.size())
            throw InvalidInput("part " + std::to_string(i) + " cost table has " + std::to_string(part_tables[i].size()) +
                               " entries, expected " + std::to_string(ps.size()));
        if (part_tables[i][0] != 0) throw InvalidInput("part " + std::to_string(i) + " cost must vanish at 0");
    }
    const StateSpace s(f, d.ambient_dim());
    std::vector<Rational> table(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) {
        const VecFp v = s.vector(x);
        Rational acc = 0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            const StateSpace ps(f, d.part_dim(i));
            acc += part_tables[i][ps.index(d.part_coordinates(i, v))];
        }
        table[x] = acc;
    }
    CostFunction g(f, d.ambient_dim());
    g.table_ = std::move(table);
    g.parts_ = std::move(part_tables);
    g.validate(check);
    return g;
}

CostFunction CostFunction::indicator(const DirectSumDecomposition& d, const std::vector<Rational>& weights, CostCheck check) {
    if (weights.size() != d.size())
        throw InvalidInput("indicator cost has " + std::to_string(weights.size()) + " weights for " + std::to_string(d.size()) + " parts");
    std::vector<std::vector<Rational>> parts;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const StateSpace ps(d.field(), d.part_dim(i));
        std::vector<Rational> t(ps.size(), weights[i]);
        t[0] = 0;
        parts.push_back(std::move(t));
    }
    return separable(d, std::move(parts), check);
}

DPInstance::DPInstance(MatrixFp a, MatrixFp b, CostFunction g, Horizon h, InstanceOptions opts)
    : a_(std::move(a)),
      b_(std::move(b)),
      g_(std::move(g)),
      h_(std::move(h)),
      opts_(opts),
      states_(a_.field(), a_.rows()),
      inputs_(a_.field(), b_.cols()) {
    if (!a_.is_square()) throw ShapeError("A must be square");
    if (a_.rows() == 0) throw ShapeError("state dimension must be positive");
    if (b_.rows() != a_.rows()) throw ShapeError("B has " + std::to_string(b_.rows()) + " rows, expected n = " + std::to_string(a_.rows()));
    if (!(b_.field() == a_.field()) || !(g_.field() == a_.field())) throw InvalidInput("A, B and g must share one prime field");
    if (g_.dim() != a_.rows()) throw ShapeError("cost is defined on a space of a different dimension");
    const auto p = a_.field().modulus();
    if (!bounded_power(p, a_.rows(), opts_.limits.max_states))
        throw InvalidInput("p^n exceeds the state-count guard of " + std::to_string(opts_.limits.max_states));
    if (!bounded_power(p, b_.cols(), opts_.limits.max_inputs))
        throw InvalidInput("p^m exceeds the input-count guard of " + std::to_string(opts_.limits.max_inputs));
    if (opts_.require_injective_input && rank(b_) != b_.cols())
        throw InvalidInput("B must be injective (rank " + std::to_string(rank(b_)) + " < m = " + std::to_string(b_.cols()) + ")");

    auto tr = std::make_shared<Transitions>();
    tr->num_states = states_.size();
    tr->num_inputs = inputs_.size();
    std::vector<std::uint32_t> ax(tr->num_states);
    for (std::size_t x = 0; x < tr->num_states; ++x)
        ax[x] = static_cast<std::uint32_t>(states_.index(a_.apply(states_.vector(x))));
    tr->input_image.resize(tr->num_inputs);
    std::vector<VecFp> bu(tr->num_inputs);
    for (std::size_t u = 0; u < tr->num_inputs; ++u) {
        bu[u] = b_.apply(inputs_.vector(u));
        tr->input_image[u] = static_cast<std::uint32_t>(states_.index(bu[u]));
    }
    tr->next.resize(tr->num_states * tr->num_inputs);
    const auto& f = a_.field();
    for (std::size_t x = 0; x < tr->num_states; ++x) {
        const VecFp axv = states_.vector(ax[x]);
        for (std::size_t u = 0; u < tr->num_inputs; ++u)
            tr->next[x * tr->num_inputs + u] = static_cast<std::uint32_t>(states_.index(vec_add(f, axv, bu[u])));
    }
    trans_ = std::move(tr);
}

DPInstance DPInstance::with_horizon(Horizon h) const {
    DPInstance copy = *this;
    copy.h_ = std::move(h);
    return copy;
}

bool is_in_Gs(const CostFunction& g, const DirectSumDecomposition& d) {
    if (g.dim() != d.ambient_dim() || !(g.field() == d.field())) throw ShapeError("cost and decomposition live on different spaces");
    const StateSpace s(g.field(), g.dim());
    for (std::size_t x = 0; x < s.size(); ++x) {
        const VecFp v = s.vector(x);
        Rational acc = 0;
        for (std::size_t i = 0; i < d.size(); ++i) acc += g(s.index(d.component(i, v)));
        if (acc != g(x)) return false;
    }
    return true;
}

}  // namespace dpdecomp
