#include "toeprank/oracle.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "toeprank/errors.hpp"

namespace toeprank {

namespace {

bool kuhn_try(Index r, const std::vector<std::vector<Index>>& adj,
              std::vector<char>& visited, std::vector<Index>& owner) {
    for (Index c : adj[r]) {
        if (visited[c]) continue;
        visited[c] = 1;
        if (owner[c] == -1 || kuhn_try(owner[c], adj, visited, owner)) {
            owner[c] = r;
            return true;
        }
    }
    return false;
}

// Enumerate every matching once, keeping the best weight per cardinality.
void enumerate_matchings(const std::vector<WeightedEdge>& edges, std::size_t at,
                         std::vector<char>& row_used, std::vector<char>& col_used,
                         Index count, long long weight, std::vector<long long>& best) {
    if (count >= static_cast<Index>(best.size())) {
        best.resize(count + 1, LLONG_MIN);
    }
    best[count] = std::max(best[count], weight);
    for (std::size_t i = at; i < edges.size(); ++i) {
        const auto& e = edges[i];
        if (row_used[e.row] || col_used[e.col]) continue;
        row_used[e.row] = 1;
        col_used[e.col] = 1;
        enumerate_matchings(edges, i + 1, row_used, col_used, count + 1,
                            weight + e.weight, best);
        row_used[e.row] = 0;
        col_used[e.col] = 0;
    }
}

} // namespace

Index term_rank_direct(const ToeplitzPattern& t) {
    const Index n_rows = t.num_rows();
    const Index n_cols = t.num_cols();
    std::vector<std::vector<Index>> adj(n_rows);
    for (const auto& e : t.nonzeros()) {
        adj[t.flat_row(e.row_level, e.row)].push_back(t.flat_col(e.col_level, e.col));
    }
    std::vector<Index> owner(n_cols, -1);
    Index size = 0;
    for (Index r = 0; r < n_rows; ++r) {
        std::vector<char> visited(n_cols, 0);
        if (kuhn_try(r, adj, visited, owner)) ++size;
    }
    return size;
}

BruteAssignment assignment_brute(const WeightedBipartiteGraph& g, Index mu) {
    if (g.edges().size() > 20) {
        std::ostringstream msg;
        msg << "matching enumeration limited to 20 edges, got " << g.edges().size();
        throw GuardError(msg.str());
    }
    if (mu < 0) {
        throw ValidationError("mu must be nonnegative");
    }
    std::vector<char> row_used(g.num_rows(), 0), col_used(g.num_cols(), 0);
    std::vector<long long> best = {0};
    enumerate_matchings(g.edges(), 0, row_used, col_used, 0, 0, best);

    BruteAssignment out;
    if (mu < static_cast<Index>(best.size()) && best[mu] != LLONG_MIN) {
        out.feasible = true;
        out.value = best[mu];
    }
    return out;
}

Index max_rank_exhaustive_gf2(const LaurentPattern& h, int k) {
    if (k < 1) {
        throw ValidationError("expansion level k must be at least 1");
    }
    // Own parameter walk and block placement: one parameter per nonzero of
    // the coefficients 0..k-1, replicated along its block diagonal.
    struct Placement {
        std::vector<std::pair<Index, Index>> cells; // (flat row, flat col)
    };
    std::vector<Placement> params;
    const Index n = h.num_rows(), m = h.num_cols();
    for (const Coefficient& coeff : h.coefficients()) {
        if (coeff.index >= k) continue;
        for (const Entry& e : coeff.support.nonzeros()) {
            Placement pl;
            for (int j = 1; j + coeff.index <= k; ++j) {
                const int i = j + coeff.index;
                pl.cells.push_back({static_cast<Index>(i - 1) * n + e.row,
                                    static_cast<Index>(j - 1) * m + e.col});
            }
            params.push_back(std::move(pl));
        }
    }
    if (params.size() > 16) {
        std::ostringstream msg;
        msg << "GF(2) sweep limited to 16 parameters, got " << params.size();
        throw GuardError(msg.str());
    }

    const Index rows = static_cast<Index>(k) * n;
    const Index cols = static_cast<Index>(k) * m;
    const Index words = (cols + 63) / 64;
    const Index bound = std::min(rows, cols);

    Index best = 0;
    std::vector<std::vector<std::uint64_t>> bits(rows);
    for (std::uint32_t mask = 0; mask < (1u << params.size()); ++mask) {
        for (Index r = 0; r < rows; ++r) bits[r].assign(words, 0);
        for (std::size_t t = 0; t < params.size(); ++t) {
            if (!(mask >> t & 1u)) continue;
            for (const auto& [fr, fc] : params[t].cells) {
                bits[fr][fc / 64] ^= 1ull << (fc % 64);
            }
        }
        Index rank = 0;
        Index pivot_row = 0;
        for (Index c = 0; c < cols && pivot_row < rows; ++c) {
            const Index w = c / 64;
            const std::uint64_t bit = 1ull << (c % 64);
            Index found = -1;
            for (Index r = pivot_row; r < rows; ++r) {
                if (bits[r][w] & bit) {
                    found = r;
                    break;
                }
            }
            if (found == -1) continue;
            std::swap(bits[pivot_row], bits[found]);
            for (Index r = pivot_row + 1; r < rows; ++r) {
                if (bits[r][w] & bit) {
                    for (Index j = w; j < words; ++j) bits[r][j] ^= bits[pivot_row][j];
                }
            }
            ++pivot_row;
            ++rank;
        }
        best = std::max(best, rank);
        if (best == bound) break;
    }
    return best;
}

} // namespace toeprank
