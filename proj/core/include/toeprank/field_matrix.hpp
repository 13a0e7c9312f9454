#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "toeprank/field.hpp"
#include "toeprank/pattern.hpp"

namespace toeprank {

/// Exact sparse matrix over GF(2), GF(p), or the rationals. Stored scalars
/// are nonzero and canonical (reduced mod p, lowest terms); positions are
/// dense 0-based indices.
class FieldMatrix {
public:
    FieldMatrix(Index rows, Index cols, FieldSpec field);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    /// Reduces the value into the field and stores it; exact zeros are not
    /// stored. Rational values over GF(p) require a denominator coprime to
    /// p. Setting the same position twice raises ValidationError.
    void set(Index r, Index c, const Rational& value);

    std::size_t nonzero_count() const;

    /// Sorted positions of the stored entries.
    std::vector<Entry> support() const;

    /// Canonical residue in [0, p); 0 when the entry is absent. GF(2) and
    /// GF(p) matrices only.
    std::uint32_t residue_at(Index r, Index c) const;

    /// Exact value; 0 when the entry is absent. Rational matrices only.
    Rational rational_at(Index r, Index c) const;

private:
    friend long long rank(const FieldMatrix& m);

    FieldSpec field_;
    Index rows_ = 0;
    Index cols_ = 0;
    std::map<std::pair<Index, Index>, std::uint32_t> mod_entries_;
    std::map<std::pair<Index, Index>, Rational> rat_entries_;
};

/// Exact rank by elimination: bit rows over GF(2), modular-inverse pivoting
/// over GF(p), fraction-free (Bareiss) elimination over the rationals after
/// clearing row denominators.
long long rank(const FieldMatrix& m);

/// Materializes T_k(H)(p) over the given field. p must assign a value to
/// every parameter indexed by index_parameters(h, k) and to nothing else;
/// one parameter value is replicated into every Toeplitz block where its
/// coefficient appears.
FieldMatrix evaluate(const LaurentPattern& h, int k,
                     const std::map<ParamTriple, Rational>& p, FieldSpec field);

/// Maximum of rank(evaluate(h, k, p)) over `trials` uniformly random
/// parameter assignments drawn from a finite field; a lower bound on the
/// maximum rank over all assignments. Deterministic for a fixed seed.
long long max_rank_random(const LaurentPattern& h, int k, FieldSpec field,
                          int trials, std::uint64_t seed);

} // namespace toeprank
