#include "qtrade/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <deque>

#include "qtrade/errors.hpp"
#include "qtrade/parallel.hpp"

namespace qtrade {

SignedFunction SignedFunction::from_bitrade(const Bitrade& b) {
    SignedFunction phi;
    phi.field = b.params.field;
    phi.v = b.params.v;
    phi.k = b.params.k;
    for (const CanonicalSubspace& y : b.t0) phi.support.emplace(y, 1);
    for (const CanonicalSubspace& y : b.t1) phi.support.emplace(y, -1);
    return phi;
}

long long SignedFunction::total() const {
    long long acc = 0;
    for (const auto& [y, val] : support) acc += val;
    return acc;
}

ShellPartition shell_partition(const GrassmannGraph& g, const std::vector<CanonicalSubspace>& s,
                               int threads) {
    if (s.empty()) throw EmptyReferenceSet("reference set must be nonempty");
    const int n = g.size();
    ShellPartition part;
    part.shell_of.assign(n, -1);

    if (g.has_adjacency()) {
        std::deque<int> queue;
        for (const CanonicalSubspace& seed : s) {
            int idx = g.index_of(seed);
            if (part.shell_of[idx] != 0) {
                part.shell_of[idx] = 0;
                queue.push_back(idx);
            }
        }
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int w : g.adjacency()[u]) {
                if (part.shell_of[w] < 0) {
                    part.shell_of[w] = part.shell_of[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        for (int d : part.shell_of)
            if (d < 0) throw Error("graph is disconnected");
    } else {
        parallel_chunks(static_cast<std::size_t>(n), threads, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                int best = -1;
                for (const CanonicalSubspace& seed : s) {
                    int d = grassmann_distance(g.vertices()[i], seed);
                    if (best < 0 || d < best) best = d;
                    if (best == 0) break;
                }
                part.shell_of[i] = best;
            }
        });
    }

    int r = *std::max_element(part.shell_of.begin(), part.shell_of.end());
    part.shells.assign(static_cast<std::size_t>(r) + 1, {});
    for (int i = 0; i < n; ++i) part.shells[part.shell_of[i]].push_back(i);
    return part;
}

WeightDistribution weight_distribution(const SignedFunction& phi,
                                       const std::vector<CanonicalSubspace>& s, GrassmannGraph& g,
                                       int threads) {
    if (phi.v != g.ambient() || phi.k != g.k() || !phi.field->same_field(*g.field()))
        throw ParamsMismatch("function parameters do not match the graph");
    ShellPartition part = shell_partition(g, s, threads);
    WeightDistribution wd;
    wd.reference_set_dim = s.front().dim();
    wd.values.assign(part.shells.size(), 0);
    for (const auto& [y, val] : phi.support) wd.values[part.shell_of[g.index_of(y)]] += val;
    return wd;
}

IntersectionNumbers intersection_numbers(GrassmannGraph& g, const std::vector<CanonicalSubspace>& s,
                                         int threads) {
    g.build_adjacency(threads);
    ShellPartition part = shell_partition(g, s, threads);
    const int r = part.r();

    IntersectionNumbers out;
    out.shell_sizes.reserve(part.shells.size());
    for (const auto& shell : part.shells)
        out.shell_sizes.push_back(static_cast<long long>(shell.size()));

    std::vector<IntersectionRow> rows(static_cast<std::size_t>(r) + 1);
    bool regular = true;
    for (int i = 0; i <= r && regular; ++i) {
        bool first = true;
        for (int u : part.shells[i]) {
            IntersectionRow row;
            for (int w : g.adjacency()[u]) {
                int d = part.shell_of[w] - i;
                if (d == -1) {
                    ++row.down;
                } else if (d == 0) {
                    ++row.same;
                } else if (d == 1) {
                    ++row.up;
                } else {
                    throw Error("neighbor skips a shell; metric inconsistency");
                }
            }
            if (first) {
                rows[i] = row;
                first = false;
            } else if (row.down != rows[i].down || row.same != rows[i].same ||
                       row.up != rows[i].up) {
                regular = false;
                break;
            }
        }
    }

    out.regular = regular;
    if (regular) out.rows = std::move(rows);
    return out;
}

std::vector<BigRat> predicted_distribution(const BigInt& theta, const IntersectionNumbers& nums,
                                           int r) {
    if (r < 0) throw OutOfRange("distribution length must be nonnegative");
    if (static_cast<int>(nums.rows.size()) < r + 1)
        throw DegenerateShellStructure("intersection numbers do not cover all shells");
    std::vector<BigRat> w(static_cast<std::size_t>(r) + 1);
    w[0] = 1;
    for (int i = 0; i + 1 <= r; ++i) {
        BigInt denom = nums.rows[i + 1].down;
        if (denom == 0)
            throw DegenerateShellStructure("zero downward intersection number");
        BigRat acc = BigRat(theta) * w[i] - BigRat(nums.rows[i].same) * w[i];
        if (i > 0) acc -= BigRat(nums.rows[i - 1].up) * w[i - 1];
        w[i + 1] = acc / BigRat(denom);
    }
    return w;
}

std::vector<BigInt> expected_min_distribution(unsigned q, int t) {
    if (t < 0) throw OutOfRange("t must be nonnegative");
    std::vector<BigInt> out;
    out.reserve(static_cast<std::size_t>(t) + 2);
    for (int j = 0; j <= t + 1; ++j) {
        BigInt term = boost::multiprecision::pow(BigInt(q),
                                                 static_cast<unsigned>(j * (j - 1) / 2)) *
                      gaussian_binomial(t + 1, j, q);
        out.push_back(j % 2 == 0 ? term : -term);
    }
    return out;
}

std::vector<std::pair<CanonicalSubspace, long long>> hat_inner_products(const SignedFunction& phi,
                                                                        int j, int threads) {
    if (j < 0 || j > phi.k) throw OutOfRange("level must lie in [0, k]");
    const std::vector<CanonicalSubspace> level =
        enumerate_subspaces(phi.v, j, phi.field, ScaleGuard::from_env());

    // The support map is iterated per level element; copy to a flat list
    // so the parallel loop shares plain data.
    std::vector<std::pair<const CanonicalSubspace*, int>> entries;
    entries.reserve(phi.support.size());
    for (const auto& [y, val] : phi.support) entries.emplace_back(&y, val);

    std::vector<long long> sums(level.size(), 0);
    parallel_chunks(level.size(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            for (const auto& [y, val] : entries)
                if (covers(level[i], *y)) sums[i] += val;
    });

    std::vector<std::pair<CanonicalSubspace, long long>> out;
    out.reserve(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) out.emplace_back(level[i], sums[i]);
    return out;
}

std::vector<double> adjacency_eigenvalues(GrassmannGraph& g, double tol, int threads) {
    g.build_adjacency(threads);
    const int n = g.size();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j : g.adjacency()[i]) a(i, j) = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("eigendecomposition failed to converge");

    std::vector<double> distinct;
    const auto& vals = solver.eigenvalues();  // ascending
    for (int i = n - 1; i >= 0; --i) {
        if (distinct.empty() || std::abs(vals(i) - distinct.back()) > tol)
            distinct.push_back(vals(i));
    }
    return distinct;
}

}  // namespace qtrade
