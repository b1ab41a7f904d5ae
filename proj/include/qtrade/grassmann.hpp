#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "qtrade/bigint.hpp"
#include "qtrade/linalg.hpp"

namespace qtrade {

// Desk-scale guard: materializing Gr(i) refuses counts above max_vertices
// unless overridden. QTRADE_MAX_VERTICES in the environment changes the
// default; an override lifts the cap entirely.
struct ScaleGuard {
    std::uint64_t max_vertices = 10'000'000;
    bool override_enabled = false;

    static ScaleGuard from_env(bool override_enabled = false);
    void check(const BigInt& count, const char* what) const;
};

// Gaussian binomial [n over j]_q, the number of j-dimensional subspaces of
// an n-dimensional space over GF(q). Exact; throws OutOfRange for j < 0 or
// j > n rather than returning 0.
BigInt gaussian_binomial(int n, int j, unsigned q);

// A subspace of F_q^v as its unique reduced-row-echelon basis. Canonical:
// two values are equal iff they are the same subspace.
class CanonicalSubspace {
public:
    // Canonicalizes an arbitrary spanning set.
    static CanonicalSubspace from_spanning(const MatrixGF& m);
    // Trusts the input to already be an RREF basis with the given pivots.
    static CanonicalSubspace from_rref_unchecked(MatrixGF m, std::vector<int> pivots);

    int dim() const { return basis_.rows(); }
    int ambient() const { return basis_.cols(); }
    const FieldPtr& field() const { return basis_.field(); }
    const MatrixGF& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }

    bool operator==(const CanonicalSubspace& other) const {
        return basis_ == other.basis_;
    }
    // Enumeration order: dimension, then pivot set (lexicographic), then
    // free entries row-major. enumerate_subspaces emits in exactly this order.
    bool operator<(const CanonicalSubspace& other) const;

private:
    explicit CanonicalSubspace(MatrixGF basis, std::vector<int> pivots)
        : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    MatrixGF basis_;
    std::vector<int> pivots_;
};

// The zero subspace is a 0×v matrix, not an absent value.
CanonicalSubspace zero_subspace(int v, FieldPtr field);
// Span of the standard basis vectors with the given indices.
CanonicalSubspace coordinate_subspace(int v, FieldPtr field, const std::vector<int>& coords);

// Streams every i-dimensional subspace of F_q^v exactly once, ordered by
// pivot-column set then free entries. Single consumer.
class SubspaceEnumerator {
public:
    SubspaceEnumerator(int v, int i, FieldPtr field);
    std::optional<CanonicalSubspace> next();

private:
    bool advance_free_entries();
    bool advance_pivots();
    void reset_free_layout();

    int v_;
    int i_;
    FieldPtr field_;
    bool done_ = false;
    std::vector<int> pivots_;
    std::vector<std::pair<int, int>> free_cells_;  // (row, col), row-major
    std::vector<Fe> free_digits_;
};

std::vector<CanonicalSubspace> enumerate_subspaces(int v, int i, FieldPtr field,
                                                   const ScaleGuard& guard = {});

// Path metric of the Grassmann graph: dim X − dim(X ∩ Y).
int grassmann_distance(const CanonicalSubspace& x, const CanonicalSubspace& y);

// True iff x ⊆ y. Requires a common ambient and dim(x) <= dim(y).
bool covers(const CanonicalSubspace& x, const CanonicalSubspace& y);

struct GrassmannParams {
    unsigned q = 2;
    int v = 0;
    int k = 0;

    int kbar() const { return std::min(k, v - k); }  // graph diameter
    static GrassmannParams make(unsigned q, int v, int k);
};

// theta_j = q^{j+1}·[k−j]_q·[v−k−j]_q − [j]_q, strictly decreasing in j.
BigInt grassmann_eigenvalue(int j, const GrassmannParams& params);

// All k-subspaces containing x, in enumeration order.
std::vector<CanonicalSubspace> hat_set(const CanonicalSubspace& x, int k,
                                       const ScaleGuard& guard = {});

// Materialized vertex set of the Grassmann graph on Gr(k), with adjacency
// built on demand. Shared read-only across worker threads once built.
class GrassmannGraph {
public:
    GrassmannGraph(FieldPtr field, int v, int k, const ScaleGuard& guard = {});

    const FieldPtr& field() const { return field_; }
    int ambient() const { return v_; }
    int k() const { return k_; }
    int size() const { return static_cast<int>(vertices_.size()); }
    const std::vector<CanonicalSubspace>& vertices() const { return vertices_; }

    // Vertices are stored in enumeration order, which is sorted order for
    // operator<, so lookups binary-search the vertex list itself.
    int index_of(const CanonicalSubspace& s) const;  // OutOfRange if absent
    bool has_adjacency() const { return adjacency_built_; }
    void build_adjacency(int threads = 1);
    const std::vector<std::vector<int>>& adjacency() const;
    long long degree() const;

private:
    FieldPtr field_;
    int v_;
    int k_;
    std::vector<CanonicalSubspace> vertices_;
    bool adjacency_built_ = false;
    std::vector<std::vector<int>> adjacency_;
};

}  // namespace qtrade
