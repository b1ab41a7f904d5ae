#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qtrade/bigint.hpp"
#include "qtrade/trades.hpp"

namespace qtrade {

// Containment incidence between Gr(t) (rows) and Gr(k) (columns), both in
// enumeration order. Stored column-major: each column lists its row indices.
struct IncidenceSystem {
    TradeParams params;
    std::vector<CanonicalSubspace> t_subspaces;
    std::vector<CanonicalSubspace> k_subspaces;
    std::vector<std::vector<int>> column_rows;
};

IncidenceSystem build_incidence(const TradeParams& params, const ScaleGuard& guard = {});

struct SearchOptions {
    std::uint64_t node_cap = 0;     // 0 = unlimited
    std::uint64_t time_budget_ms = 0;  // 0 = unlimited
};

struct SearchVerdict {
    std::optional<Bitrade> found;
    bool exhausted = false;  // full tree explored without finding one
    std::uint64_t nodes_visited = 0;
    std::uint64_t wall_time_ms = 0;

    bool inconclusive() const { return !found && !exhausted; }
};

// Looks for a bitrade of cardinality strictly below bound by DFS over
// signed supports in enumeration order. The first support element always
// carries +1 (global sign symmetry), supports are kept balanced, and a
// column is pruned as soon as some row can no longer return to zero.
// Deterministic: fixed branch order, node count reproducible when no time
// budget is set.
SearchVerdict search_below(const TradeParams& params, const BigInt& bound,
                           const SearchOptions& options = {}, const ScaleGuard& guard = {});

}  // namespace qtrade
