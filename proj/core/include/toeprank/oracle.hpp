#pragma once

#include "toeprank/matching.hpp"
#include "toeprank/pattern.hpp"

namespace toeprank {

/// Brute-force ground truth, deliberately sharing no solver code with the
/// certified path. Guards are hard errors (GuardError), never silent
/// truncation.

/// Maximum matching cardinality of the expanded pattern, by plain
/// augmenting-path search.
Index term_rank_direct(const ToeplitzPattern& t);

struct BruteAssignment {
    bool feasible = false; // a cardinality-mu matching exists
    long long value = 0;   // max total weight over those matchings
};

/// Exact optimum of the cardinality-mu assignment problem by enumerating
/// every matching. Guard: at most 20 edges.
BruteAssignment assignment_brute(const WeightedBipartiteGraph& g, Index mu);

/// Max rank of the evaluated expansion over ALL p in GF(2)^q, by exhaustive
/// sweep; over GF(2) this is the true maximum rank. Guard: q <= 16.
Index max_rank_exhaustive_gf2(const LaurentPattern& h, int k);

} // namespace toeprank
