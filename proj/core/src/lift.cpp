#include "toeprank/lift.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "toeprank/errors.hpp"
#include "toeprank/field_matrix.hpp"

namespace toeprank {

namespace {

std::string base_edge_name(const WeightedBipartiteGraph& g, Index r, Index c) {
    return "(" + g.row_labels()[r] + ", " + g.col_labels()[c] + ")";
}

std::string lifted_edge_name(const WeightedBipartiteGraph& g, const LiftedEdge& e) {
    std::ostringstream out;
    out << "((" << e.row_level << ", " << g.row_labels()[e.row] << "), ("
        << e.col_level << ", " << g.col_labels()[e.col] << "))";
    return out.str();
}

void validate_shapes(const WeightedBipartiteGraph& g, int k, const Matching& x,
                     const AssignmentDual& dual, Index mu) {
    if (k < 1) {
        throw ValidationError("expansion level k must be at least 1");
    }
    if (static_cast<Index>(dual.y.size()) != g.num_rows() ||
        static_cast<Index>(dual.z.size()) != g.num_cols()) {
        throw ValidationError("dual potential vectors misshaped");
    }
    if (x.size() != mu) {
        throw ValidationError("matching cardinality differs from mu");
    }
    std::set<Index> rows_used, cols_used;
    for (const auto& e : x.edges) {
        if (!g.weight_of(e.row, e.col)) {
            throw ValidationError("matching uses non-edge (" + std::to_string(e.row) +
                                  ", " + std::to_string(e.col) + ")");
        }
        if (!rows_used.insert(e.row).second || !cols_used.insert(e.col).second) {
            throw ValidationError("matching edges share a vertex");
        }
    }
}

} // namespace

LiftCertificate apply_lift(const WeightedBipartiteGraph& g, int k, const Matching& x,
                           const AssignmentDual& dual, Index mu) {
    validate_shapes(g, k, x, dual, mu);

    LiftCertificate cert;
    cert.k = k;
    cert.graph = g;
    cert.x = x;
    cert.dual = dual;
    cert.mu = mu;
    cert.xi.assign(static_cast<std::size_t>(k) + 1, 0);

    for (const auto& e : x.edges) {
        const long long w = *g.weight_of(e.row, e.col);
        if (-w <= k) ++cert.xi[static_cast<std::size_t>(-w)];
        for (int i = 1; i <= k; ++i) {
            const long long j = i + w;
            if (j >= 1) {
                cert.lifted_matching.push_back({i, e.row, static_cast<int>(j), e.col});
            }
        }
    }
    std::sort(cert.lifted_matching.begin(), cert.lifted_matching.end());

    for (Index r = 0; r < g.num_rows(); ++r) {
        // i >= 1 - y_r - lambda, clamped to 1..k
        const long long lo = std::max(1LL, 1 - dual.y[r] - dual.lambda);
        for (long long i = lo; i <= k; ++i) {
            cert.lifted_rows.push_back({static_cast<int>(i), r});
        }
    }
    for (Index c = 0; c < g.num_cols(); ++c) {
        const long long hi = std::min<long long>(dual.z[c], k);
        for (long long j = 1; j <= hi; ++j) {
            cert.lifted_cols.push_back({static_cast<int>(j), c});
        }
    }
    std::sort(cert.lifted_rows.begin(), cert.lifted_rows.end());
    std::sort(cert.lifted_cols.begin(), cert.lifted_cols.end());
    cert.term_rank = static_cast<long long>(cert.lifted_matching.size());
    return cert;
}

Prop1Report check_proposition1(const LiftCertificate& cert) {
    const WeightedBipartiteGraph& g = cert.graph;
    const int k = cert.k;
    Prop1Report rep;
    rep.lifted_size = static_cast<long long>(cert.lifted_matching.size());
    rep.cover_size = static_cast<long long>(cert.lifted_rows.size()) +
                     static_cast<long long>(cert.lifted_cols.size());

    auto fail = [&rep](const std::string& why) {
        if (rep.violation.empty()) rep.violation = why;
    };

    // Source: x is a matching on edges of g, of cardinality mu, and the dual
    // is feasible with nonnegative potentials.
    rep.source_ok = true;
    if (static_cast<Index>(cert.dual.y.size()) != g.num_rows() ||
        static_cast<Index>(cert.dual.z.size()) != g.num_cols()) {
        rep.source_ok = false;
        fail("dual potential vectors misshaped");
        return rep;
    }
    if (cert.x.size() != cert.mu) {
        rep.source_ok = false;
        fail("matching cardinality differs from mu");
    }
    std::set<Index> rows_used, cols_used;
    rep.matched_weight = 0;
    for (const auto& e : cert.x.edges) {
        auto w = g.weight_of(e.row, e.col);
        if (!w || !rows_used.insert(e.row).second || !cols_used.insert(e.col).second) {
            rep.source_ok = false;
            fail("x is not a matching of the base graph");
            break;
        }
        rep.matched_weight += *w;
    }
    for (long long v : cert.dual.y) {
        if (v < 0) {
            rep.source_ok = false;
            fail("negative row potential");
        }
    }
    for (long long v : cert.dual.z) {
        if (v < 0) {
            rep.source_ok = false;
            fail("negative column potential");
        }
    }
    if (rep.source_ok) {
        for (const auto& e : g.edges()) {
            if (cert.dual.y[e.row] + cert.dual.z[e.col] + cert.dual.lambda < e.weight) {
                rep.source_ok = false;
                fail("dual infeasible on edge " + base_edge_name(g, e.row, e.col));
                break;
            }
        }
    }

    // Lifted matching: exactly the membership rule, no shared vertices.
    rep.matching_admissible = rep.source_ok;
    if (rep.source_ok) {
        LiftCertificate expect = apply_lift(g, k, cert.x, cert.dual, cert.mu);
        if (expect.lifted_matching != cert.lifted_matching) {
            rep.matching_admissible = false;
            fail("lifted matching differs from the membership rule");
        }
    }
    std::set<std::pair<int, Index>> lifted_rows_used, lifted_cols_used;
    for (const auto& e : cert.lifted_matching) {
        if (!lifted_rows_used.insert({e.row_level, e.row}).second ||
            !lifted_cols_used.insert({e.col_level, e.col}).second) {
            rep.matching_admissible = false;
            fail("lifted edges share a vertex at " + lifted_edge_name(g, e));
            break;
        }
    }

    // Cover feasibility against every POSSIBLE expanded edge: level pair
    // (i, j) with j - i <= w_{r,c} may carry a nonzero block entry, so it
    // must be covered. This is a superset of the true expanded support.
    std::vector<std::vector<char>> row_on(static_cast<std::size_t>(k) + 1,
                                          std::vector<char>(g.num_rows(), 0));
    std::vector<std::vector<char>> col_on(static_cast<std::size_t>(k) + 1,
                                          std::vector<char>(g.num_cols(), 0));
    bool vertices_in_range = true;
    for (const auto& v : cert.lifted_rows) {
        if (v.level < 1 || v.level > k || v.vertex < 0 || v.vertex >= g.num_rows()) {
            vertices_in_range = false;
            break;
        }
        row_on[v.level][v.vertex] = 1;
    }
    for (const auto& v : cert.lifted_cols) {
        if (v.level < 1 || v.level > k || v.vertex < 0 || v.vertex >= g.num_cols()) {
            vertices_in_range = false;
            break;
        }
        col_on[v.level][v.vertex] = 1;
    }
    rep.cover_feasible = vertices_in_range;
    if (!vertices_in_range) fail("cover vertex outside the expanded graph");
    for (const auto& e : g.edges()) {
        if (!rep.cover_feasible) break;
        for (int i = 1; i <= k && rep.cover_feasible; ++i) {
            const long long jmax = std::min<long long>(i + e.weight, k);
            for (long long j = 1; j <= jmax; ++j) {
                if (!row_on[i][e.row] && !col_on[j][e.col]) {
                    rep.cover_feasible = false;
                    fail("uncovered expanded edge " +
                         lifted_edge_name(g, {i, e.row, static_cast<int>(j), e.col}) +
                         " from base edge " + base_edge_name(g, e.row, e.col));
                    break;
                }
            }
        }
    }

    rep.side_condition =
        (cert.mu == 0 || cert.dual.lambda >= -static_cast<long long>(k)) &&
        (cert.mu == g.num_rows() || cert.dual.lambda == -static_cast<long long>(k));

    rep.identity_value = rep.matched_weight +
                         g.num_rows() * (k + cert.dual.lambda) -
                         cert.dual.lambda * static_cast<long long>(cert.mu);
    if (rep.side_condition) {
        rep.sizes_match = rep.lifted_size == rep.cover_size;
        if (!rep.sizes_match) {
            fail("lifted matching and cover sizes differ");
        }
        rep.cover_identity = rep.cover_size == rep.identity_value;
        if (!rep.cover_identity) {
            fail("cover size differs from its closed form");
        }
    } else {
        rep.sizes_match = true;
        rep.cover_identity = true;
    }
    return rep;
}

LiftCertificate lift(const WeightedBipartiteGraph& g, int k, const Matching& x,
                     const AssignmentDual& dual, Index mu) {
    LiftCertificate cert = apply_lift(g, k, x, dual, mu);
    Prop1Report rep = check_proposition1(cert);
    if (!rep.source_ok || !rep.matching_admissible || !rep.cover_feasible) {
        throw CertificateError("lifted certificate inadmissible: " + rep.violation);
    }
    return cert;
}

TermRankResult term_rank(const LaurentPattern& h, int k) {
    if (k < 1) {
        throw ValidationError("expansion level k must be at least 1");
    }
    TermRankResult out;
    const WeightedBipartiteGraph g = build_graph(h);
    out.curve = delta_curve(g);
    out.selection = select_mu_for_lambda(out.curve, k);
    const Matching& x = out.curve.matchings[out.selection.mu];
    const AssignmentDual dual =
        dual_for_fixed_lambda(g, out.selection.mu, out.selection.lambda_used, x);
    out.certificate = lift(g, k, x, dual, out.selection.mu);
    out.value = out.curve.delta[out.selection.mu] +
                static_cast<long long>(k) * out.selection.mu;

    Prop1Report rep = check_proposition1(out.certificate);
    if (!rep.ok() || !rep.side_condition) {
        throw CertificateError("certificate failed verification: " + rep.violation);
    }
    if (out.certificate.term_rank != out.value) {
        std::ostringstream msg;
        msg << "lifted matching size " << out.certificate.term_rank
            << " differs from delta(mu) + k*mu = " << out.value;
        throw CertificateError(msg.str());
    }
    return out;
}

WitnessResult witness(const LaurentPattern& h, int k) {
    WitnessResult out;
    out.base = term_rank(h, k);
    out.params = index_parameters(h, k);

    const LiftCertificate& cert = out.base.certificate;
    for (const auto& e : cert.x.edges) {
        const long long w = *cert.graph.weight_of(e.row, e.col);
        if (-w > k - 1) continue; // no block carries this coefficient
        const ParamTriple t{static_cast<int>(-w), e.row, e.col};
        if (out.params.position(t) < 0) {
            throw CertificateError("witness parameter not indexed");
        }
        out.ones.push_back(t);
    }
    std::sort(out.ones.begin(), out.ones.end());

    std::map<ParamTriple, Rational> values;
    for (const ParamTriple& t : out.params.triples()) values.emplace(t, Rational(0));
    for (const ParamTriple& t : out.ones) values.at(t) = Rational(1);

    const FieldMatrix m = evaluate(h, k, values, FieldSpec::gf2());
    std::vector<Entry> expected;
    for (const auto& e : cert.lifted_matching) {
        expected.push_back({static_cast<Index>(e.row_level - 1) * h.num_rows() + e.row,
                            static_cast<Index>(e.col_level - 1) * h.num_cols() + e.col});
    }
    std::sort(expected.begin(), expected.end());
    if (m.support() != expected) {
        throw CertificateError("witness support differs from the lifted matching");
    }
    out.rank = rank(m);
    if (out.rank != out.base.value ||
        static_cast<long long>(m.nonzero_count()) != out.base.value) {
        std::ostringstream msg;
        msg << "witness rank " << out.rank << " with " << m.nonzero_count()
            << " nonzeros differs from term rank " << out.base.value;
        throw CertificateError(msg.str());
    }
    return out;
}

} // namespace toeprank
