#include "toeprank/matching.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "toeprank/errors.hpp"

namespace toeprank {

namespace {

constexpr long long kInf = LLONG_MAX / 4;

void check_label_list(const std::vector<std::string>& labels, const char* side) {
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) {
            throw ValidationError("duplicate " + std::string(side) + " label '" + l + "'");
        }
    }
}

std::string edge_name(const WeightedBipartiteGraph& g, Index r, Index c) {
    return "(" + g.row_labels()[r] + ", " + g.col_labels()[c] + ")";
}

// ---- Hopcroft-Karp on a plain edge list (cardinality only) ----

struct HkState {
    Index n_rows, n_cols;
    std::vector<std::vector<Index>> adj; // per row, sorted cols
    std::vector<Index> match_row, match_col;
    std::vector<Index> dist;

    HkState(Index nr, Index nc, const std::vector<MatchedEdge>& edges)
        : n_rows(nr), n_cols(nc), adj(nr), match_row(nr, -1), match_col(nc, -1),
          dist(nr) {
        for (const auto& e : edges) adj[e.row].push_back(e.col);
    }

    bool bfs() {
        std::queue<Index> q;
        bool reachable = false;
        for (Index r = 0; r < n_rows; ++r) {
            if (match_row[r] == -1) {
                dist[r] = 0;
                q.push(r);
            } else {
                dist[r] = -1;
            }
        }
        while (!q.empty()) {
            Index r = q.front();
            q.pop();
            for (Index c : adj[r]) {
                Index r2 = match_col[c];
                if (r2 == -1) {
                    reachable = true;
                } else if (dist[r2] == -1) {
                    dist[r2] = dist[r] + 1;
                    q.push(r2);
                }
            }
        }
        return reachable;
    }

    bool dfs(Index r) {
        for (Index c : adj[r]) {
            Index r2 = match_col[c];
            if (r2 == -1 || (dist[r2] == dist[r] + 1 && dfs(r2))) {
                match_row[r] = c;
                match_col[c] = r;
                return true;
            }
        }
        dist[r] = -1;
        return false;
    }

    Index run() {
        Index size = 0;
        while (bfs()) {
            for (Index r = 0; r < n_rows; ++r) {
                if (match_row[r] == -1 && dfs(r)) ++size;
            }
        }
        return size;
    }
};

Index hk_size(Index n_rows, Index n_cols, const std::vector<MatchedEdge>& edges) {
    HkState st(n_rows, n_cols, edges);
    return st.run();
}

// ---- Successive shortest paths: delta(mu) for mu = 0..mu_hat ----
// Costs are -weight >= 0. Potentials keep reduced costs nonnegative, so each
// phase is one multi-source Dijkstra from the exposed rows; each augmentation
// extends the optimal matching by one cardinality.

std::vector<long long> ssp_delta(Index n_rows, Index n_cols,
                                 const std::vector<WeightedEdge>& edges,
                                 Index max_card = -1) {
    std::vector<std::vector<std::pair<Index, long long>>> adj(n_rows); // (col, cost)
    for (const auto& e : edges) adj[e.row].push_back({e.col, -e.weight});

    std::vector<Index> match_row(n_rows, -1), match_col(n_cols, -1);
    std::vector<long long> u(n_rows, 0), v(n_cols, 0);
    std::vector<long long> delta = {0};
    long long matched_cost = 0;

    while (max_card < 0 || static_cast<Index>(delta.size()) <= max_card) {
        std::vector<long long> dist(n_cols, kInf);
        std::vector<Index> parent(n_cols, -1);
        std::vector<char> settled(n_cols, 0);
        std::vector<long long> dist_row(n_rows, kInf);

        for (Index r = 0; r < n_rows; ++r) {
            if (match_row[r] != -1) continue;
            dist_row[r] = 0; // exposed rows are the sources; u[r] == 0 for them
            for (const auto& [c, cost] : adj[r]) {
                long long rc = cost + u[r] - v[c];
                if (rc < dist[c]) {
                    dist[c] = rc;
                    parent[c] = r;
                }
            }
        }

        Index target = -1;
        long long target_dist = kInf;
        while (true) {
            Index best = -1;
            for (Index c = 0; c < n_cols; ++c) {
                if (!settled[c] && dist[c] < kInf &&
                    (best == -1 || dist[c] < dist[best])) {
                    best = c;
                }
            }
            if (best == -1) break;
            settled[best] = 1;
            if (match_col[best] == -1) {
                target = best;
                target_dist = dist[best];
                break;
            }
            Index r = match_col[best];
            dist_row[r] = dist[best]; // matched arc has reduced cost zero
            for (const auto& [c, cost] : adj[r]) {
                if (settled[c]) continue;
                long long nd = dist[best] + cost + u[r] - v[c];
                if (nd < dist[c]) {
                    dist[c] = nd;
                    parent[c] = r;
                }
            }
        }
        if (target == -1) break; // no augmenting path left

        for (Index r = 0; r < n_rows; ++r) {
            u[r] += std::min(dist_row[r], target_dist);
        }
        for (Index c = 0; c < n_cols; ++c) {
            v[c] += std::min(dist[c], target_dist);
        }

        Index c = target;
        while (c != -1) {
            Index r = parent[c];
            Index next = match_row[r];
            match_row[r] = c;
            match_col[c] = r;
            c = next;
        }

        matched_cost = 0;
        for (Index r = 0; r < n_rows; ++r) {
            if (match_row[r] == -1) continue;
            for (const auto& [cc, cost] : adj[r]) {
                if (cc == match_row[r]) {
                    matched_cost += cost;
                    break;
                }
            }
        }
        delta.push_back(-matched_cost);
    }
    return delta;
}

// Lexicographically smallest optimal matching of cardinality mu: walk the
// sorted edge list and keep an edge whenever some optimal matching extends
// the kept set through it. A rejected edge stays rejected (supersets of an
// extension-free set are extension-free), so one pass suffices.
Matching lexmin_optimal_matching(const WeightedBipartiteGraph& g, Index mu,
                                 long long delta_mu) {
    Matching out;
    if (mu == 0) return out;
    std::vector<char> used_row(g.num_rows(), 0), used_col(g.num_cols(), 0);
    long long forced_weight = 0;

    for (const auto& e : g.edges()) {
        if (out.size() == mu) break;
        if (used_row[e.row] || used_col[e.col]) continue;

        std::vector<WeightedEdge> rest;
        for (const auto& f : g.edges()) {
            if (used_row[f.row] || used_col[f.col]) continue;
            if (f.row == e.row || f.col == e.col) continue;
            rest.push_back(f);
        }
        Index need = mu - out.size() - 1;
        auto sub = ssp_delta(g.num_rows(), g.num_cols(), rest, need);
        if (static_cast<Index>(sub.size()) > need &&
            forced_weight + e.weight + sub[need] == delta_mu) {
            out.edges.push_back({e.row, e.col});
            used_row[e.row] = 1;
            used_col[e.col] = 1;
            forced_weight += e.weight;
        }
    }
    if (out.size() != mu) {
        throw CertificateError("matching canonicalization lost cardinality");
    }
    return out;
}

// ---- Egervary-style maximum-weight matching, nonnegative weights ----
// Grows one alternating tree per root row over tight edges. When stuck,
// lowers tree-row potentials and raises tree-col potentials by the largest
// step that keeps feasibility AND nonnegativity of y; if some tree row's y
// reaches zero first, an even-length alternating rotation exposes that row
// instead of augmenting. Final state satisfies: feasibility, matched edges
// tight, exposed rows y = 0, exposed cols z = 0, hence the matching is
// optimal and (y, z) is an optimal cover with sum y + sum z = value.

struct EgervaryResult {
    std::vector<Index> match_row, match_col;
    std::vector<long long> y, z;
    long long value = 0;
};

EgervaryResult egervary(Index n_rows, Index n_cols,
                        const std::vector<MatchedEdge>& edges,
                        const std::vector<long long>& weights) {
    std::vector<std::vector<std::pair<Index, long long>>> adj(n_rows);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        adj[edges[i].row].push_back({edges[i].col, weights[i]});
    }

    EgervaryResult res;
    res.match_row.assign(n_rows, -1);
    res.match_col.assign(n_cols, -1);
    res.y.assign(n_rows, 0);
    res.z.assign(n_cols, 0);
    auto& y = res.y;
    auto& z = res.z;
    auto& match_row = res.match_row;
    auto& match_col = res.match_col;

    for (Index r = 0; r < n_rows; ++r) {
        for (const auto& [c, w] : adj[r]) y[r] = std::max(y[r], w);
    }

    for (Index root = 0; root < n_rows; ++root) {
        if (y[root] == 0) continue; // stays exposed, complementary slackness holds

        std::vector<char> in_s(n_rows, 0), in_t(n_cols, 0);
        std::vector<long long> slack(n_cols, kInf);
        std::vector<Index> slack_src(n_cols, -1), prev_col(n_cols, -1);
        std::vector<Index> tree_rows = {root};
        in_s[root] = 1;
        for (const auto& [c, w] : adj[root]) {
            long long s = y[root] + z[c] - w;
            if (s < slack[c]) {
                slack[c] = s;
                slack_src[c] = root;
            }
        }

        bool done = false;
        while (!done) {
            Index tight = -1;
            for (Index c = 0; c < n_cols; ++c) {
                if (!in_t[c] && slack[c] == 0) {
                    tight = c;
                    break;
                }
            }

            if (tight != -1) {
                Index c = tight;
                in_t[c] = 1;
                prev_col[c] = slack_src[c];
                if (match_col[c] == -1) {
                    // augment: flip the tree path ending at c
                    while (c != -1) {
                        Index r = prev_col[c];
                        Index next = match_row[r];
                        match_row[r] = c;
                        match_col[c] = r;
                        c = next;
                    }
                    done = true;
                } else {
                    Index r = match_col[c];
                    in_s[r] = 1;
                    tree_rows.push_back(r);
                    for (const auto& [c2, w] : adj[r]) {
                        if (in_t[c2]) continue;
                        long long s = y[r] + z[c2] - w;
                        if (s < slack[c2]) {
                            slack[c2] = s;
                            slack_src[c2] = r;
                        }
                    }
                }
                continue;
            }

            long long d1 = kInf;
            for (Index c = 0; c < n_cols; ++c) {
                if (!in_t[c]) d1 = std::min(d1, slack[c]);
            }
            long long d2 = kInf;
            for (Index r : tree_rows) d2 = std::min(d2, y[r]);
            long long step = std::min(d1, d2);

            for (Index r : tree_rows) y[r] -= step;
            for (Index c = 0; c < n_cols; ++c) {
                if (in_t[c]) z[c] += step;
                else if (slack[c] < kInf) slack[c] -= step;
            }

            if (d2 <= d1) {
                // rotate: expose the first tree row whose y reached zero
                Index r0 = -1;
                for (Index r : tree_rows) {
                    if (y[r] == 0) {
                        r0 = r;
                        break;
                    }
                }
                Index c = match_row[r0];
                match_row[r0] = -1;
                while (c != -1) {
                    Index r = prev_col[c];
                    Index next = match_row[r];
                    match_row[r] = c;
                    match_col[c] = r;
                    c = next;
                }
                done = true;
            }
        }
    }

    for (Index r = 0; r < n_rows; ++r) {
        if (match_row[r] == -1) continue;
        for (const auto& [c, w] : adj[r]) {
            if (c == match_row[r]) {
                res.value += w;
                break;
            }
        }
    }
    return res;
}

} // namespace

WeightedBipartiteGraph::WeightedBipartiteGraph(std::vector<std::string> row_labels,
                                               std::vector<std::string> col_labels,
                                               std::vector<WeightedEdge> edges)
    : row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      edges_(std::move(edges)) {
    check_label_list(row_labels_, "row");
    check_label_list(col_labels_, "column");
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        if (e.row < 0 || e.row >= num_rows() || e.col < 0 || e.col >= num_cols()) {
            std::ostringstream msg;
            msg << "edge (" << e.row << ", " << e.col << ") out of range";
            throw ValidationError(msg.str());
        }
        if (e.weight > 0) {
            throw ValidationError("edge " + edge_name(*this, e.row, e.col) +
                                  " has positive weight");
        }
        if (i > 0 && edges_[i - 1].row == e.row && edges_[i - 1].col == e.col) {
            throw ValidationError("duplicate edge " + edge_name(*this, e.row, e.col));
        }
    }
}

std::optional<long long> WeightedBipartiteGraph::weight_of(Index r, Index c) const {
    WeightedEdge probe{r, c, -kInf};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), probe,
                               [](const WeightedEdge& a, const WeightedEdge& b) {
                                   return std::pair(a.row, a.col) < std::pair(b.row, b.col);
                               });
    if (it == edges_.end() || it->row != r || it->col != c) return std::nullopt;
    return it->weight;
}

WeightedBipartiteGraph build_graph(const LaurentPattern& h) {
    // weight = -(first coefficient index where the entry is nonzero)
    std::map<std::pair<Index, Index>, long long> weight;
    for (const Coefficient& coeff : h.coefficients()) {
        for (const Entry& e : coeff.support.nonzeros()) {
            auto key = std::make_pair(e.row, e.col);
            auto it = weight.find(key);
            if (it == weight.end()) weight.emplace(key, -static_cast<long long>(coeff.index));
        }
    }
    std::vector<WeightedEdge> edges;
    edges.reserve(weight.size());
    for (const auto& [key, w] : weight) edges.push_back({key.first, key.second, w});
    return WeightedBipartiteGraph(h.row_labels(), h.col_labels(), std::move(edges));
}

long long matching_weight(const WeightedBipartiteGraph& g, const Matching& x) {
    long long total = 0;
    for (const auto& e : x.edges) {
        auto w = g.weight_of(e.row, e.col);
        if (!w) {
            throw ValidationError("matching uses non-edge (" + std::to_string(e.row) +
                                  ", " + std::to_string(e.col) + ")");
        }
        total += *w;
    }
    return total;
}

MatchingWithCover max_matching(const WeightedBipartiteGraph& g) {
    std::vector<MatchedEdge> plain;
    plain.reserve(g.edges().size());
    for (const auto& e : g.edges()) plain.push_back({e.row, e.col});
    const Index nu = hk_size(g.num_rows(), g.num_cols(), plain);

    MatchingWithCover out;
    std::vector<char> used_row(g.num_rows(), 0), used_col(g.num_cols(), 0);
    for (const auto& e : plain) {
        if (out.matching.size() == nu) break;
        if (used_row[e.row] || used_col[e.col]) continue;
        std::vector<MatchedEdge> rest;
        for (const auto& f : plain) {
            if (used_row[f.row] || used_col[f.col]) continue;
            if (f.row == e.row || f.col == e.col) continue;
            rest.push_back(f);
        }
        if (out.matching.size() + 1 + hk_size(g.num_rows(), g.num_cols(), rest) == nu) {
            out.matching.edges.push_back(e);
            used_row[e.row] = 1;
            used_col[e.col] = 1;
        }
    }
    if (out.matching.size() != nu) {
        throw CertificateError("matching canonicalization lost cardinality");
    }

    // Konig: alternate from the exposed rows; cover = unreached rows plus
    // reached columns.
    std::vector<Index> match_row(g.num_rows(), -1), match_col(g.num_cols(), -1);
    for (const auto& e : out.matching.edges) {
        match_row[e.row] = e.col;
        match_col[e.col] = e.row;
    }
    std::vector<char> seen_row(g.num_rows(), 0), seen_col(g.num_cols(), 0);
    std::queue<Index> q;
    for (Index r = 0; r < g.num_rows(); ++r) {
        if (match_row[r] == -1) {
            seen_row[r] = 1;
            q.push(r);
        }
    }
    while (!q.empty()) {
        Index r = q.front();
        q.pop();
        for (const auto& e : plain) {
            if (e.row != r || e.col == match_row[r] || seen_col[e.col]) continue;
            seen_col[e.col] = 1;
            Index r2 = match_col[e.col];
            if (r2 != -1 && !seen_row[r2]) {
                seen_row[r2] = 1;
                q.push(r2);
            }
        }
    }
    out.cover.y.assign(g.num_rows(), 0);
    out.cover.z.assign(g.num_cols(), 0);
    long long cover_size = 0;
    for (Index r = 0; r < g.num_rows(); ++r) {
        if (!seen_row[r]) {
            out.cover.y[r] = 1;
            ++cover_size;
        }
    }
    for (Index c = 0; c < g.num_cols(); ++c) {
        if (seen_col[c]) {
            out.cover.z[c] = 1;
            ++cover_size;
        }
    }
    for (const auto& e : plain) {
        if (out.cover.y[e.row] + out.cover.z[e.col] < 1) {
            throw CertificateError("cover misses edge " + edge_name(g, e.row, e.col));
        }
    }
    if (cover_size != nu) {
        throw CertificateError("cover size differs from matching size");
    }
    return out;
}

DeltaCurve delta_curve(const WeightedBipartiteGraph& g) {
    DeltaCurve curve;
    curve.delta = ssp_delta(g.num_rows(), g.num_cols(), g.edges());
    curve.mu_hat = static_cast<Index>(curve.delta.size()) - 1;
    for (Index mu = 0; mu <= curve.mu_hat; ++mu) {
        curve.matchings.push_back(lexmin_optimal_matching(g, mu, curve.delta[mu]));
    }
    for (Index mu = 0; mu <= curve.mu_hat; ++mu) {
        long long lambda;
        if (mu == 0) {
            lambda = curve.mu_hat >= 1 ? curve.delta[1] - curve.delta[0] : 0;
        } else {
            lambda = curve.delta[mu] - curve.delta[mu - 1];
        }
        curve.duals.push_back(dual_for_fixed_lambda(g, mu, lambda, curve.matchings[mu]));
    }
    return curve;
}

MuSelection select_mu_for_lambda(const DeltaCurve& curve, int k) {
    if (k < 1) {
        throw ValidationError("expansion level k must be at least 1");
    }
    Index mu = 0;
    while (mu + 1 <= curve.mu_hat &&
           curve.delta[mu + 1] - curve.delta[mu] >= -static_cast<long long>(k)) {
        ++mu;
    }
    return {mu, -static_cast<long long>(k)};
}

MaxWeightResult max_weight_matching(const WeightedBipartiteGraph& g,
                                    const std::vector<long long>& weights) {
    if (weights.size() != g.edges().size()) {
        throw ValidationError("weight list does not match edge list");
    }
    for (long long w : weights) {
        if (w < 0) throw ValidationError("max_weight_matching needs weights >= 0");
    }
    std::vector<MatchedEdge> plain;
    plain.reserve(g.edges().size());
    for (const auto& e : g.edges()) plain.push_back({e.row, e.col});
    auto eg = egervary(g.num_rows(), g.num_cols(), plain, weights);

    MaxWeightResult out;
    out.y = eg.y;
    out.z = eg.z;
    out.value = eg.value;
    for (Index r = 0; r < g.num_rows(); ++r) {
        if (eg.match_row[r] != -1) out.matching.edges.push_back({r, eg.match_row[r]});
    }
    long long potential_total = 0;
    for (long long v : eg.y) potential_total += v;
    for (long long v : eg.z) potential_total += v;
    for (std::size_t i = 0; i < plain.size(); ++i) {
        if (eg.y[plain[i].row] + eg.z[plain[i].col] < weights[i]) {
            throw CertificateError("potentials violate edge " +
                                   edge_name(g, plain[i].row, plain[i].col));
        }
    }
    if (potential_total != eg.value) {
        throw CertificateError("potential total differs from matching weight");
    }
    return out;
}

AssignmentDual dual_for_fixed_lambda(const WeightedBipartiteGraph& g, Index mu,
                                     long long lambda, const Matching& x) {
    if (x.size() != mu) {
        throw ValidationError("matching cardinality differs from mu");
    }
    std::vector<char> used_row(g.num_rows(), 0), used_col(g.num_cols(), 0);
    for (const auto& e : x.edges) {
        if (e.row < 0 || e.row >= g.num_rows() || e.col < 0 || e.col >= g.num_cols() ||
            used_row[e.row] || used_col[e.col]) {
            throw ValidationError("x is not a matching");
        }
        used_row[e.row] = 1;
        used_col[e.col] = 1;
    }
    const long long primal = matching_weight(g, x);

    std::vector<long long> shifted;
    shifted.reserve(g.edges().size());
    for (const auto& e : g.edges()) shifted.push_back(std::max(e.weight - lambda, 0LL));
    auto mw = max_weight_matching(g, shifted);

    AssignmentDual dual{mw.y, mw.z, lambda};
    for (const auto& e : g.edges()) {
        if (dual.y[e.row] + dual.z[e.col] + lambda < e.weight) {
            throw CertificateError("dual infeasible on edge " +
                                   edge_name(g, e.row, e.col));
        }
    }
    long long objective = lambda * static_cast<long long>(mu);
    for (long long v : dual.y) objective += v;
    for (long long v : dual.z) objective += v;
    if (objective != primal) {
        std::ostringstream msg;
        msg << "dual objective " << objective << " differs from primal value "
            << primal << " at mu = " << mu << ", lambda = " << lambda;
        throw CertificateError(msg.str());
    }
    return dual;
}

} // namespace toeprank
