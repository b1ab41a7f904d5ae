#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qtrade/bigint.hpp"
#include "qtrade/grassmann.hpp"
#include "qtrade/trades.hpp"

namespace qtrade {

// Integer-valued function on Gr(k) stored by its support. A bitrade's
// signed characteristic function takes +1 on the first part, -1 on the
// second.
struct SignedFunction {
    FieldPtr field;
    int v = 0;
    int k = 0;
    std::map<CanonicalSubspace, int> support;

    static SignedFunction from_bitrade(const Bitrade& b);
    long long total() const;
};

// Distance shells of a vertex set: shell_of[i] is the distance from vertex
// i to the set, shells groups vertex indices by that distance.
struct ShellPartition {
    std::vector<int> shell_of;
    std::vector<std::vector<int>> shells;

    int r() const { return static_cast<int>(shells.size()) - 1; }
};

// BFS from the seed set when adjacency is available, else pairwise minimum
// distance per vertex. Throws EmptyReferenceSet on an empty seed set.
ShellPartition shell_partition(const GrassmannGraph& g, const std::vector<CanonicalSubspace>& s,
                               int threads = 1);

struct WeightDistribution {
    int reference_set_dim = 0;
    std::vector<long long> values;  // W^0 .. W^r

    int r() const { return static_cast<int>(values.size()) - 1; }
};

// W^j = sum of phi over vertices at distance exactly j from s.
WeightDistribution weight_distribution(const SignedFunction& phi,
                                       const std::vector<CanonicalSubspace>& s, GrassmannGraph& g,
                                       int threads = 1);

struct IntersectionRow {
    long long down = 0;  // neighbors one shell closer
    long long same = 0;
    long long up = 0;
};

// rows populated only when regular; shell_sizes always.
struct IntersectionNumbers {
    bool regular = false;
    std::vector<IntersectionRow> rows;
    std::vector<long long> shell_sizes;
};

IntersectionNumbers intersection_numbers(GrassmannGraph& g, const std::vector<CanonicalSubspace>& s,
                                         int threads = 1);

// Shell values w^0..w^r of an eigenfunction with eigenvalue theta on a set
// with the given intersection numbers, normalized to w^0 = 1:
//   w^{i+1} = (theta·w^i − s_{i,i}·w^i − s_{i−1,i}·w^{i−1}) / s_{i+1,i}.
// Exact rational arithmetic throughout.
std::vector<BigRat> predicted_distribution(const BigInt& theta, const IntersectionNumbers& nums,
                                           int r);

// The signed tuple ((−1)^j q^{j(j−1)/2} [t+1 over j]_q) for j = 0..t+1;
// first entry fixed to +1.
std::vector<BigInt> expected_min_distribution(unsigned q, int t);

// For each X in Gr(j) (enumeration order), the sum of phi over k-subspaces
// containing X. All zeros at levels 0..t is equivalent to bitrade balance
// at those levels.
std::vector<std::pair<CanonicalSubspace, long long>> hat_inner_products(const SignedFunction& phi,
                                                                        int j, int threads = 1);

// Distinct eigenvalues of the dense adjacency matrix, descending; numeric
// oracle for the closed-form spectrum. Values closer than tol merge.
std::vector<double> adjacency_eigenvalues(GrassmannGraph& g, double tol = 1e-6, int threads = 1);

}  // namespace qtrade
