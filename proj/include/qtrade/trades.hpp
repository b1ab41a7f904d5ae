#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qtrade/bigint.hpp"
#include "qtrade/grassmann.hpp"

namespace qtrade {

struct TradeParams {
    FieldPtr field;
    int t = 0;
    int k = 0;
    int v = 0;

    unsigned q() const { return field->q(); }
    // Admissible parameter triples satisfy 0 <= t < k < v - t.
    static TradeParams make(FieldPtr field, int t, int k, int v);
};

// Sum of monomials x_a·x_b over the index pairs, plus a list of coordinates
// every vector must vanish on. pairs use 0-based coordinates.
struct QuadraticForm {
    int ambient_v = 0;
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> zero_coords;

    Fe evaluate(const FieldPtr& f, std::span<const Fe> x) const;
    // Polar form B(u,w) = Q(u+w) - Q(u) - Q(w), expanded directly.
    Fe polar(const FieldPtr& f, std::span<const Fe> u, std::span<const Fe> w) const;
    bool zero_coords_hold(std::span<const Fe> x) const;
};

// x_0·x_{t+1} + x_1·x_{t+2} + ... + x_t·x_{2t+1}, with coordinates
// k+t+1 .. v-1 forced to zero.
QuadraticForm hyperbolic_form(const TradeParams& params);

// Every vector of y satisfies the form and the zero-coordinate constraints.
// Tested on basis vectors plus pairwise polar values, which is exact.
bool is_totally_singular(const CanonicalSubspace& y, const QuadraticForm& qf);

// Minimum cardinality of a bitrade with these parameters: the product
// form prod_{i=0}^{t} (1 + q^i), cross-checked internally against the
// equivalent sum form.
BigInt min_cardinality(unsigned q, int t);

struct Bitrade {
    TradeParams params;
    std::vector<CanonicalSubspace> t0;  // sorted in enumeration order
    std::vector<CanonicalSubspace> t1;

    std::size_t cardinality() const { return t0.size() + t1.size(); }
};

// Splits the full singular family into the two independent halves: y goes
// to the first family iff (t+1) - dim(y' ∩ z') is even, where y' is the
// section of y by the first 2t+2 coordinates and z' spans the first t+1.
std::pair<std::vector<CanonicalSubspace>, std::vector<CanonicalSubspace>> split_families(
    const std::vector<CanonicalSubspace>& total, const TradeParams& params);

// Builds the minimum bitrade. basis_choice optionally permutes coordinates
// (entry i = image of coordinate i) to place the construction in general
// position; members are re-canonicalized and re-sorted afterwards.
Bitrade construct_minimum(const TradeParams& params,
                          const std::optional<std::vector<int>>& basis_choice = std::nullopt);

struct Violation {
    CanonicalSubspace x;
    long long count0 = 0;
    long long count1 = 0;
};

struct VerifyReport {
    int s = 0;
    bool balanced = false;
    std::vector<Violation> violations;  // enumeration order of Gr(s)
};

// Checks that every s-subspace is covered equally often by the two parts.
// Structural defects (wrong dimensions, mixed fields, overlapping or empty
// parts, s outside [0, t]) throw ParamsMismatch; imbalance is reported.
VerifyReport verify_bitrade(const Bitrade& b, int s, int threads = 1);

}  // namespace qtrade
