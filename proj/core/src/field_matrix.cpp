#include "toeprank/field_matrix.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace toeprank {

namespace {

std::uint32_t reduce_rational(const Rational& value, const PrimeField& f) {
    const BigInt p = f.modulus();
    BigInt num = numerator(value) % p;
    if (num < 0) num += p;
    BigInt den = denominator(value) % p;
    if (den < 0) den += p;
    if (den == 0) {
        throw ValidationError("denominator not invertible mod " +
                              std::to_string(f.modulus()));
    }
    return f.mul(num.convert_to<std::uint32_t>(),
                 f.inv(den.convert_to<std::uint32_t>()));
}

std::string triple_name(const ParamTriple& t) {
    std::ostringstream out;
    out << "(" << t.coeff << ", " << t.row << ", " << t.col << ")";
    return out.str();
}

long long rank_gf2(Index rows, Index cols,
                   const std::map<std::pair<Index, Index>, std::uint32_t>& entries) {
    const Index words = (cols + 63) / 64;
    std::vector<std::vector<std::uint64_t>> bits(rows,
                                                 std::vector<std::uint64_t>(words, 0));
    for (const auto& [pos, v] : entries) {
        if (v & 1u) bits[pos.first][pos.second / 64] |= 1ull << (pos.second % 64);
    }
    long long rank = 0;
    Index pivot_row = 0;
    for (Index c = 0; c < cols && pivot_row < rows; ++c) {
        const Index w = c / 64;
        const std::uint64_t mask = 1ull << (c % 64);
        Index found = -1;
        for (Index r = pivot_row; r < rows; ++r) {
            if (bits[r][w] & mask) {
                found = r;
                break;
            }
        }
        if (found == -1) continue;
        std::swap(bits[pivot_row], bits[found]);
        for (Index r = pivot_row + 1; r < rows; ++r) {
            if (bits[r][w] & mask) {
                for (Index j = w; j < words; ++j) bits[r][j] ^= bits[pivot_row][j];
            }
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

long long rank_prime(Index rows, Index cols, const PrimeField& f,
                     const std::map<std::pair<Index, Index>, std::uint32_t>& entries) {
    std::vector<std::vector<std::uint32_t>> a(rows, std::vector<std::uint32_t>(cols, 0));
    for (const auto& [pos, v] : entries) a[pos.first][pos.second] = v;
    long long rank = 0;
    Index pivot_row = 0;
    for (Index c = 0; c < cols && pivot_row < rows; ++c) {
        Index found = -1;
        for (Index r = pivot_row; r < rows; ++r) {
            if (a[r][c] != 0) {
                found = r;
                break;
            }
        }
        if (found == -1) continue;
        std::swap(a[pivot_row], a[found]);
        const std::uint32_t inv_pivot = f.inv(a[pivot_row][c]);
        for (Index r = pivot_row + 1; r < rows; ++r) {
            if (a[r][c] == 0) continue;
            const std::uint32_t factor = f.mul(a[r][c], inv_pivot);
            for (Index j = c; j < cols; ++j) {
                a[r][j] = f.sub(a[r][j], f.mul(factor, a[pivot_row][j]));
            }
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

long long rank_rational(Index rows, Index cols,
                        const std::map<std::pair<Index, Index>, Rational>& entries) {
    // Clear denominators per row (rank-preserving), then run fraction-free
    // elimination; every working entry is a minor of the scaled matrix, so
    // the division by the previous pivot is exact.
    std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols, 0));
    for (Index r = 0; r < rows; ++r) {
        BigInt scale = 1;
        for (Index c = 0; c < cols; ++c) {
            auto it = entries.find({r, c});
            if (it != entries.end()) scale = lcm(scale, denominator(it->second));
        }
        for (Index c = 0; c < cols; ++c) {
            auto it = entries.find({r, c});
            if (it == entries.end()) continue;
            a[r][c] = numerator(it->second) * (scale / denominator(it->second));
        }
    }
    long long rank = 0;
    Index pivot_row = 0;
    BigInt prev_pivot = 1;
    for (Index c = 0; c < cols && pivot_row < rows; ++c) {
        Index found = -1;
        for (Index r = pivot_row; r < rows; ++r) {
            if (a[r][c] != 0) {
                found = r;
                break;
            }
        }
        if (found == -1) continue;
        std::swap(a[pivot_row], a[found]);
        for (Index r = pivot_row + 1; r < rows; ++r) {
            for (Index j = c + 1; j < cols; ++j) {
                a[r][j] = (a[r][j] * a[pivot_row][c] - a[r][c] * a[pivot_row][j]) /
                          prev_pivot;
            }
            a[r][c] = 0;
        }
        prev_pivot = a[pivot_row][c];
        ++pivot_row;
        ++rank;
    }
    return rank;
}

} // namespace

FieldMatrix::FieldMatrix(Index rows, Index cols, FieldSpec field)
    : field_(field), rows_(rows), cols_(cols) {
    if (rows_ < 0 || cols_ < 0) {
        throw ValidationError("matrix shape must be nonnegative");
    }
}

void FieldMatrix::set(Index r, Index c, const Rational& value) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
        throw ValidationError("entry position out of range");
    }
    if (field_.kind() == FieldSpec::Kind::Rationals) {
        if (value == 0) return;
        if (!rat_entries_.emplace(std::make_pair(r, c), value).second) {
            throw ValidationError("entry set twice");
        }
        return;
    }
    const PrimeField f(field_.modulus());
    const std::uint32_t reduced = reduce_rational(value, f);
    if (reduced == 0) return;
    if (!mod_entries_.emplace(std::make_pair(r, c), reduced).second) {
        throw ValidationError("entry set twice");
    }
}

std::size_t FieldMatrix::nonzero_count() const {
    return field_.kind() == FieldSpec::Kind::Rationals ? rat_entries_.size()
                                                       : mod_entries_.size();
}

std::vector<Entry> FieldMatrix::support() const {
    std::vector<Entry> out;
    if (field_.kind() == FieldSpec::Kind::Rationals) {
        for (const auto& [pos, v] : rat_entries_) out.push_back({pos.first, pos.second});
    } else {
        for (const auto& [pos, v] : mod_entries_) out.push_back({pos.first, pos.second});
    }
    return out;
}

std::uint32_t FieldMatrix::residue_at(Index r, Index c) const {
    if (field_.kind() == FieldSpec::Kind::Rationals) {
        throw ValidationError("residue_at needs a finite field matrix");
    }
    auto it = mod_entries_.find({r, c});
    return it == mod_entries_.end() ? 0 : it->second;
}

Rational FieldMatrix::rational_at(Index r, Index c) const {
    if (field_.kind() != FieldSpec::Kind::Rationals) {
        throw ValidationError("rational_at needs a rational matrix");
    }
    auto it = rat_entries_.find({r, c});
    return it == rat_entries_.end() ? Rational(0) : it->second;
}

long long rank(const FieldMatrix& m) {
    switch (m.field_.kind()) {
        case FieldSpec::Kind::GF2:
            return rank_gf2(m.rows_, m.cols_, m.mod_entries_);
        case FieldSpec::Kind::Prime:
            return rank_prime(m.rows_, m.cols_, PrimeField(m.field_.modulus()),
                              m.mod_entries_);
        case FieldSpec::Kind::Rationals:
            return rank_rational(m.rows_, m.cols_, m.rat_entries_);
    }
    return 0;
}

FieldMatrix evaluate(const LaurentPattern& h, int k,
                     const std::map<ParamTriple, Rational>& p, FieldSpec field) {
    const ParameterIndex params = index_parameters(h, k);

    std::vector<ParamTriple> missing, extra;
    auto it = p.begin();
    for (const ParamTriple& t : params.triples()) {
        while (it != p.end() && it->first < t) {
            extra.push_back(it->first);
            ++it;
        }
        if (it != p.end() && it->first == t) {
            ++it;
        } else {
            missing.push_back(t);
        }
    }
    for (; it != p.end(); ++it) extra.push_back(it->first);
    if (!missing.empty() || !extra.empty()) {
        std::ostringstream msg;
        msg << "parameter assignment does not match the index:";
        std::size_t shown = 0;
        for (const auto& t : missing) {
            if (shown++ == 8) break;
            msg << " missing " << triple_name(t);
        }
        for (const auto& t : extra) {
            if (shown++ == 8) break;
            msg << " unindexed " << triple_name(t);
        }
        if (shown > 8) msg << " ...";
        throw ValidationError(msg.str());
    }

    const Index n = h.num_rows(), m = h.num_cols();
    FieldMatrix out(static_cast<Index>(k) * n, static_cast<Index>(k) * m, field);
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= i; ++j) {
            const SupportMatrix* s = h.coefficient(i - j);
            if (s == nullptr) continue;
            for (const Entry& e : s->nonzeros()) {
                const Rational& value = p.at({i - j, e.row, e.col});
                out.set(static_cast<Index>(i - 1) * n + e.row,
                        static_cast<Index>(j - 1) * m + e.col, value);
            }
        }
    }
    return out;
}

long long max_rank_random(const LaurentPattern& h, int k, FieldSpec field,
                          int trials, std::uint64_t seed) {
    if (trials < 1) {
        throw ValidationError("trials must be positive");
    }
    if (field.kind() == FieldSpec::Kind::Rationals) {
        throw ValidationError("random rank probing needs a finite field");
    }
    const std::uint64_t p = field.modulus();
    const ParameterIndex params = index_parameters(h, k);

    std::mt19937_64 rng(seed);
    long long best = 0;
    for (int t = 0; t < trials; ++t) {
        std::map<ParamTriple, Rational> values;
        for (const ParamTriple& triple : params.triples()) {
            values.emplace(triple, Rational(rng() % p));
        }
        best = std::max(best, rank(evaluate(h, k, values, field)));
    }
    return best;
}

} // namespace toeprank
