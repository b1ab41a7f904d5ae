#include "qtrade/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>

#include "qtrade/errors.hpp"
#include "qtrade/parallel.hpp"

namespace qtrade {

ScaleGuard ScaleGuard::from_env(bool override_enabled) {
    ScaleGuard guard;
    guard.override_enabled = override_enabled;
    if (const char* raw = std::getenv("QTRADE_MAX_VERTICES")) {
        char* end = nullptr;
        unsigned long long parsed = std::strtoull(raw, &end, 10);
        if (end && *end == '\0' && parsed > 0) guard.max_vertices = parsed;
    }
    return guard;
}

void ScaleGuard::check(const BigInt& count, const char* what) const {
    if (override_enabled) return;
    if (count > BigInt(max_vertices)) {
        throw ScaleGuardExceeded(std::string(what) + " would materialize " + count.str() +
                                 " subspaces (cap " + std::to_string(max_vertices) +
                                 "); raise the cap or pass the scale override");
    }
}

BigInt gaussian_binomial(int n, int j, unsigned q) {
    if (j < 0 || j > n) throw OutOfRange("gaussian binomial needs 0 <= j <= n");
    if (q < 2) throw OutOfRange("q must be at least 2");
    BigInt result = 1;
    BigInt bq = q;
    // Multiply/divide in this order keeps every partial product integral:
    // after step i the value is the (i+1)-th column count.
    for (int i = 0; i < j; ++i) {
        result *= boost::multiprecision::pow(bq, static_cast<unsigned>(n - i)) - 1;
        result /= boost::multiprecision::pow(bq, static_cast<unsigned>(i + 1)) - 1;
    }
    return result;
}

CanonicalSubspace CanonicalSubspace::from_spanning(const MatrixGF& m) {
    RrefResult r = rref(m);
    return CanonicalSubspace(std::move(r.reduced), std::move(r.pivots));
}

CanonicalSubspace CanonicalSubspace::from_rref_unchecked(MatrixGF m, std::vector<int> pivots) {
    return CanonicalSubspace(std::move(m), std::move(pivots));
}

bool CanonicalSubspace::operator<(const CanonicalSubspace& other) const {
    require_same_ambient(basis_, other.basis_);
    if (dim() != other.dim()) return dim() < other.dim();
    if (pivots_ != other.pivots_) return pivots_ < other.pivots_;
    return basis_.entries() < other.basis_.entries();
}

CanonicalSubspace zero_subspace(int v, FieldPtr field) {
    return CanonicalSubspace::from_rref_unchecked(MatrixGF(0, v, std::move(field)), {});
}

CanonicalSubspace coordinate_subspace(int v, FieldPtr field, const std::vector<int>& coords) {
    std::vector<int> sorted = coords;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= v))
        throw OutOfRange("coordinate index outside ambient space");
    MatrixGF m(static_cast<int>(sorted.size()), v, std::move(field));
    for (std::size_t r = 0; r < sorted.size(); ++r) m.at(static_cast<int>(r), sorted[r]) = 1;
    return CanonicalSubspace::from_rref_unchecked(std::move(m), std::move(sorted));
}

SubspaceEnumerator::SubspaceEnumerator(int v, int i, FieldPtr field)
    : v_(v), i_(i), field_(std::move(field)) {
    if (v < 1) throw OutOfRange("ambient dimension must be positive");
    if (i < 0 || i > v) throw OutOfRange("subspace dimension must lie in [0, v]");
    pivots_.resize(i_);
    for (int r = 0; r < i_; ++r) pivots_[r] = r;
    reset_free_layout();
}

void SubspaceEnumerator::reset_free_layout() {
    free_cells_.clear();
    for (int r = 0; r < i_; ++r) {
        for (int c = pivots_[r] + 1; c < v_; ++c) {
            if (!std::binary_search(pivots_.begin(), pivots_.end(), c))
                free_cells_.emplace_back(r, c);
        }
    }
    free_digits_.assign(free_cells_.size(), 0);
}

bool SubspaceEnumerator::advance_free_entries() {
    const Fe top = static_cast<Fe>(field_->q() - 1);
    for (std::size_t idx = free_digits_.size(); idx-- > 0;) {
        if (free_digits_[idx] < top) {
            ++free_digits_[idx];
            std::fill(free_digits_.begin() + static_cast<std::ptrdiff_t>(idx) + 1,
                      free_digits_.end(), Fe{0});
            return true;
        }
    }
    return false;
}

bool SubspaceEnumerator::advance_pivots() {
    int t = i_ - 1;
    while (t >= 0 && pivots_[t] == v_ - i_ + t) --t;
    if (t < 0) return false;
    ++pivots_[t];
    for (int s = t + 1; s < i_; ++s) pivots_[s] = pivots_[t] + (s - t);
    reset_free_layout();
    return true;
}

std::optional<CanonicalSubspace> SubspaceEnumerator::next() {
    if (done_) return std::nullopt;
    MatrixGF m(i_, v_, field_);
    for (int r = 0; r < i_; ++r) m.at(r, pivots_[r]) = 1;
    for (std::size_t idx = 0; idx < free_cells_.size(); ++idx)
        m.at(free_cells_[idx].first, free_cells_[idx].second) = free_digits_[idx];
    CanonicalSubspace out = CanonicalSubspace::from_rref_unchecked(std::move(m), pivots_);
    if (i_ == 0 || !advance_free_entries()) {
        if (i_ == 0 || !advance_pivots()) done_ = true;
    }
    return out;
}

std::vector<CanonicalSubspace> enumerate_subspaces(int v, int i, FieldPtr field,
                                                   const ScaleGuard& guard) {
    if (v < 1) throw OutOfRange("ambient dimension must be positive");
    if (i < 0 || i > v) throw OutOfRange("subspace dimension must lie in [0, v]");
    guard.check(gaussian_binomial(v, i, field->q()), "enumerating subspaces");
    std::vector<CanonicalSubspace> out;
    SubspaceEnumerator en(v, i, std::move(field));
    while (auto s = en.next()) out.push_back(std::move(*s));
    return out;
}

int grassmann_distance(const CanonicalSubspace& x, const CanonicalSubspace& y) {
    require_same_ambient(x.basis(), y.basis());
    if (x.dim() != y.dim())
        throw DimensionMismatch("distance is defined between equal-dimensional subspaces");
    if (x.dim() == 0) return 0;
    int meet = x.dim() + y.dim() - rank_of(stack_rows(x.basis(), y.basis()));
    return x.dim() - meet;
}

bool covers(const CanonicalSubspace& x, const CanonicalSubspace& y) {
    require_same_ambient(x.basis(), y.basis());
    if (x.dim() > y.dim())
        throw DimensionMismatch("containment test needs dim(x) <= dim(y)");
    for (int r = 0; r < x.dim(); ++r) {
        auto row = x.basis().row(r);
        if (!in_rowspace(y.basis(), y.pivots(), std::vector<Fe>(row.begin(), row.end())))
            return false;
    }
    return true;
}

GrassmannParams GrassmannParams::make(unsigned q, int v, int k) {
    if (k <= 0 || k >= v)
        throw InadmissibleParams("Grassmann graph needs 0 < k < v");
    GrassmannParams p;
    p.q = q;
    p.v = v;
    p.k = k;
    return p;
}

namespace {

BigInt q_number(int n, unsigned q) {
    // [n]_q = 1 + q + ... + q^{n-1}
    BigInt acc = 0;
    BigInt pw = 1;
    for (int i = 0; i < n; ++i) {
        acc += pw;
        pw *= q;
    }
    return acc;
}

}  // namespace

BigInt grassmann_eigenvalue(int j, const GrassmannParams& params) {
    if (j < 0 || j > params.kbar())
        throw OutOfRange("eigenvalue index must lie in [0, min(k, v-k)]");
    BigInt qpow = boost::multiprecision::pow(BigInt(params.q), static_cast<unsigned>(j + 1));
    return qpow * q_number(params.k - j, params.q) * q_number(params.v - params.k - j, params.q) -
           q_number(j, params.q);
}

std::vector<CanonicalSubspace> hat_set(const CanonicalSubspace& x, int k, const ScaleGuard& guard) {
    const int v = x.ambient();
    const int t = x.dim();
    if (k < t || k > v) throw DimensionMismatch("hat set needs dim(x) <= k <= v");
    guard.check(gaussian_binomial(v - t, k - t, x.field()->q()), "building a hat set");

    // Supplements of x correspond to (k-t)-subspaces of a fixed complement;
    // the non-pivot columns of x span one.
    std::vector<int> non_pivots;
    for (int c = 0, pi = 0; c < v; ++c) {
        if (pi < t && x.pivots()[pi] == c) {
            ++pi;
        } else {
            non_pivots.push_back(c);
        }
    }

    std::vector<CanonicalSubspace> out;
    if (v - t == 0) {
        out.push_back(x);
        return out;
    }
    SubspaceEnumerator en(v - t, k - t, x.field());
    while (auto w = en.next()) {
        MatrixGF lifted(k, v, x.field());
        for (int r = 0; r < t; ++r)
            for (int c = 0; c < v; ++c) lifted.at(r, c) = x.basis().at(r, c);
        for (int r = 0; r < k - t; ++r)
            for (int c = 0; c < v - t; ++c)
                lifted.at(t + r, non_pivots[c]) = w->basis().at(r, c);
        out.push_back(CanonicalSubspace::from_spanning(lifted));
    }
    std::sort(out.begin(), out.end());
    return out;
}

GrassmannGraph::GrassmannGraph(FieldPtr field, int v, int k, const ScaleGuard& guard)
    : field_(std::move(field)), v_(v), k_(k) {
    GrassmannParams::make(field_->q(), v, k);  // validates
    vertices_ = enumerate_subspaces(v, k, field_, guard);
}

int GrassmannGraph::index_of(const CanonicalSubspace& s) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), s);
    if (it == vertices_.end() || !(*it == s))
        throw OutOfRange("subspace is not a vertex of this graph");
    return static_cast<int>(it - vertices_.begin());
}

namespace {

// Packed GF(2) rank of the 2k stacked basis rows of two vertices, via an
// XOR basis keyed on lowest set bit.
int packed_stack_rank(const std::uint64_t* a, const std::uint64_t* b, int k) {
    std::uint64_t basis[64] = {};
    int rank = 0;
    auto insert = [&](std::uint64_t w) {
        while (w) {
            int bit = std::countr_zero(w);
            if (!basis[bit]) {
                basis[bit] = w;
                ++rank;
                return;
            }
            w ^= basis[bit];
        }
    };
    for (int r = 0; r < k; ++r) insert(a[r]);
    for (int r = 0; r < k; ++r) insert(b[r]);
    return rank;
}

}  // namespace

void GrassmannGraph::build_adjacency(int threads) {
    if (adjacency_built_) return;
    const int n = size();
    adjacency_.assign(n, {});
    const bool packed = field_->q() == 2 && v_ <= 64 && k_ <= 64;

    std::vector<std::uint64_t> packs;
    if (packed) {
        packs.resize(static_cast<std::size_t>(n) * k_);
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < k_; ++r) {
                std::uint64_t w = 0;
                for (int c = 0; c < v_; ++c)
                    if (vertices_[i].basis().at(r, c)) w |= std::uint64_t{1} << c;
                packs[static_cast<std::size_t>(i) * k_ + r] = w;
            }
    }

    // Each worker owns a contiguous block of rows and fills the full
    // neighbor list for each, so writes never cross threads.
    parallel_chunks(static_cast<std::size_t>(n), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            for (int j = 0; j < n; ++j) {
                if (static_cast<std::size_t>(j) == i) continue;
                int stack_rank;
                if (packed) {
                    stack_rank = packed_stack_rank(packs.data() + i * k_,
                                                   packs.data() + static_cast<std::size_t>(j) * k_,
                                                   k_);
                } else {
                    stack_rank = rank_of(stack_rows(vertices_[i].basis(), vertices_[j].basis()));
                }
                if (stack_rank == k_ + 1) adjacency_[i].push_back(j);
            }
        }
    });
    adjacency_built_ = true;
}

const std::vector<std::vector<int>>& GrassmannGraph::adjacency() const {
    if (!adjacency_built_) throw Error("adjacency has not been built for this graph");
    return adjacency_;
}

long long GrassmannGraph::degree() const {
    BigInt d = grassmann_eigenvalue(0, GrassmannParams::make(field_->q(), v_, k_));
    return static_cast<long long>(d);
}

}  // namespace qtrade
