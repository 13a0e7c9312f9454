#include "toeprank/pattern.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace toeprank {

namespace {

void check_labels(const std::vector<std::string>& labels, const char* side) {
    if (labels.empty()) {
        throw ValidationError(std::string(side) + " label list is empty");
    }
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty()) {
            throw ValidationError(std::string(side) + " label is empty");
        }
        if (!seen.insert(l).second) {
            throw ValidationError("duplicate " + std::string(side) + " label '" + l + "'");
        }
    }
}

} // namespace

SupportMatrix::SupportMatrix(Index rows, Index cols, std::vector<Entry> nonzeros)
    : rows_(rows), cols_(cols), nonzeros_(std::move(nonzeros)) {
    if (rows_ < 0 || cols_ < 0) {
        throw ValidationError("support matrix shape must be nonnegative");
    }
    std::sort(nonzeros_.begin(), nonzeros_.end());
    for (std::size_t i = 0; i < nonzeros_.size(); ++i) {
        const Entry& e = nonzeros_[i];
        if (e.row < 0 || e.row >= rows_ || e.col < 0 || e.col >= cols_) {
            std::ostringstream msg;
            msg << "support entry (" << e.row << ", " << e.col
                << ") outside a " << rows_ << " x " << cols_ << " matrix";
            throw ValidationError(msg.str());
        }
        if (i > 0 && nonzeros_[i - 1] == e) {
            std::ostringstream msg;
            msg << "duplicate support entry (" << e.row << ", " << e.col << ")";
            throw ValidationError(msg.str());
        }
    }
}

bool SupportMatrix::contains(Entry e) const {
    return std::binary_search(nonzeros_.begin(), nonzeros_.end(), e);
}

LaurentPattern::LaurentPattern()
    : LaurentPattern({"r1"}, {"c1"}, {}) {}

LaurentPattern::LaurentPattern(std::vector<std::string> row_labels,
                               std::vector<std::string> col_labels,
                               std::vector<Coefficient> coefficients)
    : row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      coefficients_(std::move(coefficients)) {
    check_labels(row_labels_, "row");
    check_labels(col_labels_, "column");
    std::sort(coefficients_.begin(), coefficients_.end(),
              [](const Coefficient& a, const Coefficient& b) { return a.index < b.index; });
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        const Coefficient& c = coefficients_[i];
        if (c.index < 0) {
            std::ostringstream msg;
            msg << "coefficient index " << c.index << " is negative";
            throw ValidationError(msg.str());
        }
        if (i > 0 && coefficients_[i - 1].index == c.index) {
            std::ostringstream msg;
            msg << "coefficient index " << c.index << " appears twice";
            throw ValidationError(msg.str());
        }
        if (c.support.rows() != num_rows() || c.support.cols() != num_cols()) {
            std::ostringstream msg;
            msg << "coefficient " << c.index << " has shape " << c.support.rows()
                << " x " << c.support.cols() << ", expected " << num_rows()
                << " x " << num_cols();
            throw ValidationError(msg.str());
        }
    }
}

const SupportMatrix* LaurentPattern::coefficient(int i) const {
    auto it = std::lower_bound(
        coefficients_.begin(), coefficients_.end(), i,
        [](const Coefficient& c, int idx) { return c.index < idx; });
    if (it == coefficients_.end() || it->index != i) return nullptr;
    return &it->support;
}

int LaurentPattern::max_index() const {
    return coefficients_.empty() ? -1 : coefficients_.back().index;
}

std::vector<int> LaurentPattern::indices_at_or_above(int k) const {
    std::vector<int> out;
    for (const auto& c : coefficients_) {
        if (c.index >= k && !c.support.nonzeros().empty()) out.push_back(c.index);
    }
    return out;
}

Index LaurentPattern::row_index(const std::string& label) const {
    auto it = std::find(row_labels_.begin(), row_labels_.end(), label);
    if (it == row_labels_.end()) {
        throw ValidationError("unknown row label '" + label + "'");
    }
    return static_cast<Index>(it - row_labels_.begin());
}

Index LaurentPattern::col_index(const std::string& label) const {
    auto it = std::find(col_labels_.begin(), col_labels_.end(), label);
    if (it == col_labels_.end()) {
        throw ValidationError("unknown column label '" + label + "'");
    }
    return static_cast<Index>(it - col_labels_.begin());
}

ParameterIndex::ParameterIndex(std::vector<ParamTriple> triples)
    : triples_(std::move(triples)) {
    std::sort(triples_.begin(), triples_.end());
    for (std::size_t i = 1; i < triples_.size(); ++i) {
        if (triples_[i - 1] == triples_[i]) {
            throw ValidationError("duplicate parameter triple");
        }
    }
}

std::ptrdiff_t ParameterIndex::position(const ParamTriple& t) const {
    auto it = std::lower_bound(triples_.begin(), triples_.end(), t);
    if (it == triples_.end() || *it != t) return -1;
    return it - triples_.begin();
}

ToeplitzPattern::ToeplitzPattern(int k, std::vector<std::string> row_labels,
                                 std::vector<std::string> col_labels,
                                 std::vector<BlockEntry> nonzeros)
    : k_(k),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      nonzeros_(std::move(nonzeros)) {
    if (k_ < 1) {
        throw ValidationError("expansion level k must be at least 1");
    }
    check_labels(row_labels_, "row");
    check_labels(col_labels_, "column");
    std::sort(nonzeros_.begin(), nonzeros_.end());
    for (std::size_t i = 0; i < nonzeros_.size(); ++i) {
        const BlockEntry& e = nonzeros_[i];
        bool ok = e.row_level >= 1 && e.row_level <= k_ && e.col_level >= 1 &&
                  e.col_level <= k_ && e.row >= 0 && e.row < base_rows() &&
                  e.col >= 0 && e.col < base_cols() &&
                  e.row_level >= e.col_level &&
                  (i == 0 || !(nonzeros_[i - 1] == e));
        if (!ok) {
            std::ostringstream msg;
            msg << "block entry ((" << e.row_level << ", " << e.row << "), ("
                << e.col_level << ", " << e.col << ")) invalid for k = " << k_;
            throw ValidationError(msg.str());
        }
    }
}

bool ToeplitzPattern::contains(const BlockEntry& e) const {
    return std::binary_search(nonzeros_.begin(), nonzeros_.end(), e);
}

ToeplitzPattern expand_toeplitz(const LaurentPattern& h, int k) {
    if (k < 1) {
        throw ValidationError("expansion level k must be at least 1");
    }
    std::vector<ToeplitzPattern::BlockEntry> entries;
    // Block (i, j) for 1 <= j <= i <= k carries the support of coefficient
    // i - j, which ranges over 0..k-1 only.
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= i; ++j) {
            const SupportMatrix* s = h.coefficient(i - j);
            if (s == nullptr) continue;
            for (const Entry& e : s->nonzeros()) {
                entries.push_back({i, e.row, j, e.col});
            }
        }
    }
    return ToeplitzPattern(k, h.row_labels(), h.col_labels(), std::move(entries));
}

ParameterIndex index_parameters(const LaurentPattern& h, int k) {
    if (k < 1) {
        throw ValidationError("expansion level k must be at least 1");
    }
    std::vector<ParamTriple> triples;
    for (const Coefficient& c : h.coefficients()) {
        if (c.index >= k) break;
        for (const Entry& e : c.support.nonzeros()) {
            triples.push_back({c.index, e.row, e.col});
        }
    }
    return ParameterIndex(std::move(triples));
}

} // namespace toeprank
