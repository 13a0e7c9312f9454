#pragma once

#include <string>
#include <vector>

#include "toeprank/matching.hpp"
#include "toeprank/pattern.hpp"

namespace toeprank {

/// Level-tagged vertex of the expanded graph: (level, base row) on the row
/// side, (level, base column) on the column side.
struct LiftedVertex {
    int level = 1;
    Index vertex = 0;
    friend auto operator<=>(const LiftedVertex&, const LiftedVertex&) = default;
};

struct LiftedEdge {
    int row_level = 1;
    Index row = 0;
    int col_level = 1;
    Index col = 0;
    friend auto operator<=>(const LiftedEdge&, const LiftedEdge&) = default;
};

/// Matching/cover pair on the expanded graph, lifted from a matching and an
/// assignment dual on the base graph. Carries a copy of the base graph so
/// every check can be replayed from the certificate alone.
///   lifted matching: ((i,r),(j,c)) present iff (r,c) matched and w = j-i
///   lifted rows:     (i,r) present iff i >= 1 - y_r - lambda
///   lifted cols:     (j,c) present iff z_c >= j
struct LiftCertificate {
    int k = 1;
    WeightedBipartiteGraph graph;
    Matching x;
    AssignmentDual dual;
    Index mu = 0;
    std::vector<LiftedEdge> lifted_matching;
    std::vector<LiftedVertex> lifted_rows;
    std::vector<LiftedVertex> lifted_cols;
    std::vector<long long> xi; // xi[i] = matched edges of weight -i, i = 0..k
    long long term_rank = 0;   // = lifted matching size
};

/// Outcome of replaying every certificate check. `sizes_match` and
/// `cover_identity` are meaningful when the side condition holds; they are
/// reported as passing otherwise.
struct Prop1Report {
    bool source_ok = false;           // x is a matching of size mu, dual feasible
    bool matching_admissible = false; // lifted edges follow the membership rule,
                                      // no shared vertices
    bool cover_feasible = false;      // every candidate expanded edge covered
    bool side_condition = false;      // (mu=0 or lambda>=-k) and (mu=|R| or lambda=-k)
    bool sizes_match = false;         // lifted size == cover size
    bool cover_identity = false;      // cover size == w(x) + |R|(k+lambda) - lambda*mu
    long long lifted_size = 0;
    long long cover_size = 0;
    long long matched_weight = 0;
    long long identity_value = 0;
    std::string violation; // names the first failing vertex or edge

    bool ok() const {
        return source_ok && matching_admissible && cover_feasible && sizes_match &&
               cover_identity;
    }
};

/// Pure construction of the lifted certificate; no checks beyond input
/// shape validation.
LiftCertificate apply_lift(const WeightedBipartiteGraph& g, int k, const Matching& x,
                           const AssignmentDual& dual, Index mu);

/// apply_lift plus admissibility checks of the lifted matching and cover;
/// a violation raises CertificateError naming the offending vertex or edge.
LiftCertificate lift(const WeightedBipartiteGraph& g, int k, const Matching& x,
                     const AssignmentDual& dual, Index mu);

Prop1Report check_proposition1(const LiftCertificate& cert);

struct TermRankResult {
    long long value = 0;
    DeltaCurve curve;
    MuSelection selection;
    LiftCertificate certificate;
};

/// Term rank of the k-level expansion: delta(mu*) + k * mu* for the selected
/// mu*, certified by a lifted matching and cover of that exact size. The
/// returned certificate has passed every check in check_proposition1.
TermRankResult term_rank(const LaurentPattern& h, int k);

struct WitnessResult {
    ParameterIndex params;
    std::vector<ParamTriple> ones; // parameters assigned 1, sorted
    long long rank = 0;            // verified over GF(2)
    TermRankResult base;
};

/// 0/1 parameter assignment whose evaluated matrix is exactly the lifted
/// matching's indicator: parameter (-w_{r,c}, r, c) is 1 for each matched
/// edge with w > -k, everything else 0. The evaluated support and the rank
/// over GF(2) are verified against the certificate before returning.
WitnessResult witness(const LaurentPattern& h, int k);

} // namespace toeprank
