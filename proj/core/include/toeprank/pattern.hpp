#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "toeprank/errors.hpp"

namespace toeprank {

/// Dense vertex index. Rows and columns live in separate index spaces, so
/// the row set and the column set are disjoint by construction even when
/// the user supplies identical labels for both sides.
using Index = std::int32_t;

/// Position of one structural nonzero inside a coefficient, as (row, col)
/// indices into the owning pattern's label tables.
struct Entry {
    Index row = 0;
    Index col = 0;
    friend auto operator<=>(const Entry&, const Entry&) = default;
};

/// Support of a single matrix: which entries are structurally nonzero.
class SupportMatrix {
public:
    SupportMatrix() = default;

    /// Entries are sorted; out-of-range or duplicate entries raise
    /// ValidationError.
    SupportMatrix(Index rows, Index cols, std::vector<Entry> nonzeros);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }

    /// Sorted by (row, col).
    const std::vector<Entry>& nonzeros() const { return nonzeros_; }

    bool contains(Entry e) const;

    friend bool operator==(const SupportMatrix&, const SupportMatrix&) = default;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Entry> nonzeros_;
};

/// One coefficient of a series pattern: the support of the matrix at the
/// given index.
struct Coefficient {
    int index = 0;
    SupportMatrix support;
};

/// Support structure of a matrix Laurent series: a finite list of
/// coefficient supports over shared row/column label tables. Coefficient
/// indices that are absent stand for all-zero coefficients.
class LaurentPattern {
public:
    LaurentPattern();

    /// Validates that labels are duplicate-free, indices are distinct and
    /// nonnegative, and that every support has the shared shape.
    /// Coefficients are stored sorted by index.
    LaurentPattern(std::vector<std::string> row_labels,
                   std::vector<std::string> col_labels,
                   std::vector<Coefficient> coefficients);

    Index num_rows() const { return static_cast<Index>(row_labels_.size()); }
    Index num_cols() const { return static_cast<Index>(col_labels_.size()); }

    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }

    /// Ascending coefficient index; explicitly supplied empty supports are
    /// retained as given.
    const std::vector<Coefficient>& coefficients() const { return coefficients_; }

    /// nullptr when the coefficient at index i is zero.
    const SupportMatrix* coefficient(int i) const;

    /// Largest supplied coefficient index, -1 when there are none.
    int max_index() const;

    /// Coefficient indices >= k. They never reach the k-level expansion but
    /// do shape the associated graph and weights; callers may want to warn.
    std::vector<int> indices_at_or_above(int k) const;

    Index row_index(const std::string& label) const;
    Index col_index(const std::string& label) const;

private:
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    std::vector<Coefficient> coefficients_;
};

/// Identifies one structural parameter: the nonzero of coefficient `coeff`
/// at position (row, col).
struct ParamTriple {
    int coeff = 0;
    Index row = 0;
    Index col = 0;
    friend auto operator<=>(const ParamTriple&, const ParamTriple&) = default;
};

/// Canonical numbering of the structural parameters of a k-level expansion:
/// one parameter per nonzero of the coefficients 0..k-1, ordered by
/// (coefficient index, row, col) so downstream certificates are stable.
class ParameterIndex {
public:
    ParameterIndex() = default;
    explicit ParameterIndex(std::vector<ParamTriple> triples);

    std::size_t size() const { return triples_.size(); }
    const std::vector<ParamTriple>& triples() const { return triples_; }

    /// Position of the triple in the canonical order, -1 when absent.
    std::ptrdiff_t position(const ParamTriple& t) const;

private:
    std::vector<ParamTriple> triples_;
};

/// Support of the k-level block lower triangular expansion of a pattern.
/// Row (i, r) / column (j, c) pairs use 1-based block levels; the entry at
/// ((i, r), (j, c)) is structurally nonzero exactly when i >= j and (r, c)
/// is a nonzero of the coefficient at index i - j.
class ToeplitzPattern {
public:
    struct BlockEntry {
        int row_level = 1;
        Index row = 0;
        int col_level = 1;
        Index col = 0;
        friend auto operator<=>(const BlockEntry&, const BlockEntry&) = default;
    };

    ToeplitzPattern() = default;
    ToeplitzPattern(int k, std::vector<std::string> row_labels,
                    std::vector<std::string> col_labels,
                    std::vector<BlockEntry> nonzeros);

    int k() const { return k_; }
    Index base_rows() const { return static_cast<Index>(row_labels_.size()); }
    Index base_cols() const { return static_cast<Index>(col_labels_.size()); }
    Index num_rows() const { return static_cast<Index>(k_) * base_rows(); }
    Index num_cols() const { return static_cast<Index>(k_) * base_cols(); }

    /// Sorted by (row_level, row, col_level, col).
    const std::vector<BlockEntry>& nonzeros() const { return nonzeros_; }

    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }

    /// Row-major flattening: level-1 rows first.
    Index flat_row(int level, Index r) const {
        return static_cast<Index>(level - 1) * base_rows() + r;
    }
    Index flat_col(int level, Index c) const {
        return static_cast<Index>(level - 1) * base_cols() + c;
    }

    bool contains(const BlockEntry& e) const;

private:
    int k_ = 1;
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    std::vector<BlockEntry> nonzeros_;
};

/// Support of the k-level expansion. Only coefficients 0..k-1 contribute;
/// higher indices are ignored here. k < 1 raises ValidationError.
ToeplitzPattern expand_toeplitz(const LaurentPattern& h, int k);

/// One parameter per structural nonzero of coefficients 0..k-1.
ParameterIndex index_parameters(const LaurentPattern& h, int k);

} // namespace toeprank
