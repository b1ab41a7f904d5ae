#include "qtrade/search.hpp"

#include <algorithm>
#include <chrono>

#include "qtrade/errors.hpp"

namespace qtrade {

IncidenceSystem build_incidence(const TradeParams& params, const ScaleGuard& guard) {
    BigInt rows = gaussian_binomial(params.v, params.t, params.q());
    BigInt cols = gaussian_binomial(params.v, params.k, params.q());
    guard.check(rows * cols, "building the incidence system");

    IncidenceSystem sys;
    sys.params = params;
    sys.t_subspaces = enumerate_subspaces(params.v, params.t, params.field, guard);
    sys.k_subspaces = enumerate_subspaces(params.v, params.k, params.field, guard);
    sys.column_rows.resize(sys.k_subspaces.size());
    for (std::size_t c = 0; c < sys.k_subspaces.size(); ++c)
        for (std::size_t r = 0; r < sys.t_subspaces.size(); ++r)
            if (covers(sys.t_subspaces[r], sys.k_subspaces[c]))
                sys.column_rows[c].push_back(static_cast<int>(r));
    return sys;
}

namespace {

struct Dfs {
    const IncidenceSystem& sys;
    const SearchOptions& opts;
    int n_cols;
    int max_size;    // largest allowed support size (bound - 1, clamped)
    int half_limit;  // per-sign cap: floor(max_size / 2)

    std::vector<int> row_sum;
    std::vector<int> suffix;  // columns at index >= current containing the row
    std::vector<std::int8_t> sign;
    int nz = 0;
    int npos = 0;
    int nneg = 0;

    std::uint64_t nodes = 0;
    bool capped = false;
    std::optional<Bitrade> found;
    std::chrono::steady_clock::time_point deadline{};
    bool has_deadline = false;

    bool over_budget() {
        if (opts.node_cap && nodes >= opts.node_cap) return true;
        if (has_deadline && (nodes & 0xfff) == 0 &&
            std::chrono::steady_clock::now() > deadline)
            return true;
        return false;
    }

    void apply(int col, int delta) {
        for (int r : sys.column_rows[col]) {
            if (row_sum[r] == 0) ++nz;
            row_sum[r] += delta;
            if (row_sum[r] == 0) --nz;
        }
    }

    bool rows_fixable(int col) const {
        for (int r : sys.column_rows[col])
            if (std::abs(row_sum[r]) > suffix[r]) return false;
        return true;
    }

    void record_solution() {
        Bitrade b;
        b.params = sys.params;
        for (int c = 0; c < n_cols; ++c) {
            if (sign[c] == 1) b.t0.push_back(sys.k_subspaces[c]);
            if (sign[c] == -1) b.t1.push_back(sys.k_subspaces[c]);
        }
        found = std::move(b);
    }

    void run(int idx) {
        ++nodes;
        if (over_budget()) {
            capped = true;
            return;
        }
        if (npos == nneg && npos > 0 && nz == 0) {
            record_solution();
            return;
        }
        if (idx == n_cols) return;
        const int size = npos + nneg;
        const int slack = max_size - size;
        const int imbalance = std::abs(npos - nneg);
        if (slack == 0 || imbalance > slack || imbalance > n_cols - idx) return;

        for (int r : sys.column_rows[idx]) --suffix[r];

        if (npos < half_limit) {
            apply(idx, 1);
            ++npos;
            if (rows_fixable(idx)) {
                sign[idx] = 1;
                run(idx + 1);
                sign[idx] = 0;
            }
            --npos;
            apply(idx, -1);
            if (found || capped) goto restore;
        }
        if (size > 0 && nneg < half_limit) {  // first support element is +1
            apply(idx, -1);
            ++nneg;
            if (rows_fixable(idx)) {
                sign[idx] = -1;
                run(idx + 1);
                sign[idx] = 0;
            }
            --nneg;
            apply(idx, 1);
            if (found || capped) goto restore;
        }
        if (rows_fixable(idx)) run(idx + 1);

    restore:
        for (int r : sys.column_rows[idx]) ++suffix[r];
    }
};

}  // namespace

SearchVerdict search_below(const TradeParams& params, const BigInt& bound,
                           const SearchOptions& options, const ScaleGuard& guard) {
    if (bound < 2) throw OutOfRange("bound must be at least 2");
    const auto start = std::chrono::steady_clock::now();
    IncidenceSystem sys = build_incidence(params, guard);
    const int n_cols = static_cast<int>(sys.k_subspaces.size());

    Dfs dfs{sys, options};
    dfs.n_cols = n_cols;
    BigInt cap = bound - 1;
    dfs.max_size = cap > n_cols ? n_cols : static_cast<int>(cap);
    dfs.half_limit = dfs.max_size / 2;
    dfs.row_sum.assign(sys.t_subspaces.size(), 0);
    dfs.suffix.assign(sys.t_subspaces.size(), 0);
    dfs.sign.assign(n_cols, 0);
    for (const auto& rows : sys.column_rows)
        for (int r : rows) ++dfs.suffix[r];
    if (options.time_budget_ms) {
        dfs.deadline = start + std::chrono::milliseconds(options.time_budget_ms);
        dfs.has_deadline = true;
    }

    dfs.run(0);

    SearchVerdict verdict;
    verdict.found = std::move(dfs.found);
    verdict.exhausted = !verdict.found && !dfs.capped;
    verdict.nodes_visited = dfs.nodes;
    verdict.wall_time_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              start)
            .count());
    return verdict;
}

}  // namespace qtrade
