#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toeprank/pattern.hpp"

namespace toeprank {

/// Edge of the bipartite graph associated with a Laurent pattern, with the
/// nonpositive weight w_{r,c} = -(smallest coefficient index where (r,c) is
/// nonzero).
struct WeightedEdge {
    Index row = 0;
    Index col = 0;
    long long weight = 0;
    friend auto operator<=>(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Bipartite graph on disjoint row/column vertex sets with nonpositive
/// integer edge weights. Edges are kept sorted by (row, col).
class WeightedBipartiteGraph {
public:
    WeightedBipartiteGraph() = default;
    WeightedBipartiteGraph(std::vector<std::string> row_labels,
                           std::vector<std::string> col_labels,
                           std::vector<WeightedEdge> edges);

    Index num_rows() const { return static_cast<Index>(row_labels_.size()); }
    Index num_cols() const { return static_cast<Index>(col_labels_.size()); }

    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }

    /// Sorted by (row, col); weights all <= 0.
    const std::vector<WeightedEdge>& edges() const { return edges_; }

    /// nullopt when {r, c} is not an edge.
    std::optional<long long> weight_of(Index r, Index c) const;

    friend bool operator==(const WeightedBipartiteGraph&,
                           const WeightedBipartiteGraph&) = default;

private:
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    std::vector<WeightedEdge> edges_;
};

struct MatchedEdge {
    Index row = 0;
    Index col = 0;
    friend auto operator<=>(const MatchedEdge&, const MatchedEdge&) = default;
};

/// A set of edges no two of which share a vertex. Producers in this module
/// keep the edge list sorted and canonical (lexicographically smallest among
/// the optimal matchings).
struct Matching {
    std::vector<MatchedEdge> edges;
    Index size() const { return static_cast<Index>(edges.size()); }
    friend bool operator==(const Matching&, const Matching&) = default;
};

/// Integral vertex cover: y over rows, z over columns, all entries >= 0,
/// and y_r + z_c >= 1 for every edge.
struct Cover {
    std::vector<long long> y;
    std::vector<long long> z;
};

/// Dual solution of the cardinality-constrained assignment problem:
/// y_r + z_c + lambda >= w_{r,c} on every edge, y and z nonnegative.
struct AssignmentDual {
    std::vector<long long> y;
    std::vector<long long> z;
    long long lambda = 0;
};

struct MatchingWithCover {
    Matching matching;
    Cover cover;
};

/// delta[mu] is the maximum total weight of a cardinality-mu matching, for
/// mu = 0..mu_hat; matchings[mu] and duals[mu] are optimal primal/dual
/// certificates for that cardinality.
struct DeltaCurve {
    Index mu_hat = 0;
    std::vector<long long> delta;
    std::vector<Matching> matchings;
    std::vector<AssignmentDual> duals;
};

struct MuSelection {
    Index mu = 0;
    long long lambda_used = 0;
};

/// Edge {r,c} present iff (r,c) is nonzero in some supplied coefficient;
/// weight = -(smallest such coefficient index).
WeightedBipartiteGraph build_graph(const LaurentPattern& h);

/// Maximum-cardinality matching plus a minimum vertex cover of equal size.
MatchingWithCover max_matching(const WeightedBipartiteGraph& g);

/// Full delta curve with per-cardinality optimal matchings and feasible
/// duals whose objectives attain delta[mu] exactly.
DeltaCurve delta_curve(const WeightedBipartiteGraph& g);

/// Largest mu whose left slope delta[mu]-delta[mu-1] is >= -k (mu = 0 is
/// always admissible); lambda_used is -k.
MuSelection select_mu_for_lambda(const DeltaCurve& curve, int k);

/// Constructs a dual certificate for the given lambda: potentials of a
/// maximum-weight matching under the shifted weights max(w - lambda, 0).
/// Feasibility and the objective identity lambda*mu + sum y + sum z =
/// weight(x) are verified; a violation raises CertificateError. Requires x
/// optimal for cardinality mu and lambda admissible for that cardinality.
AssignmentDual dual_for_fixed_lambda(const WeightedBipartiteGraph& g, Index mu,
                                     long long lambda, const Matching& x);

/// Total weight of a matching; unknown edge raises ValidationError.
long long matching_weight(const WeightedBipartiteGraph& g, const Matching& x);

/// Maximum total weight of a matching under caller-supplied nonnegative
/// weights aligned with g.edges(), plus optimal nonnegative integral
/// potentials satisfying y_r + z_c >= weight on every edge with equality on
/// matched edges. Used for dual construction; exposed for cross-checks.
struct MaxWeightResult {
    Matching matching;
    std::vector<long long> y;
    std::vector<long long> z;
    long long value = 0;
};
MaxWeightResult max_weight_matching(const WeightedBipartiteGraph& g,
                                    const std::vector<long long>& weights);

} // namespace toeprank
