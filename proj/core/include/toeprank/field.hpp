#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "toeprank/errors.hpp"

namespace toeprank {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Arithmetic in Z/pZ for a prime modulus p < 2^31. Elements are stored as
/// canonical representatives in [0, p).
class PrimeField {
public:
    /// Rejects non-prime moduli (trial division; fine for p < 2^31).
    explicit PrimeField(std::uint32_t p);

    std::uint32_t modulus() const { return p_; }

    std::uint32_t reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint64_t s = static_cast<std::uint64_t>(a) + b;
        if (s >= p_) s -= p_;
        return static_cast<std::uint32_t>(s);
    }

    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : static_cast<std::uint32_t>(a + p_ - b);
    }

    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(a) * b % p_);
    }

    /// Extended Euclid. a == 0 raises ValidationError.
    std::uint32_t inv(std::uint32_t a) const;

    std::uint32_t div(std::uint32_t a, std::uint32_t b) const {
        return mul(a, inv(b));
    }

private:
    std::uint32_t p_;
};

bool is_prime_u32(std::uint32_t n);

/// Which exact field to evaluate a parameterized matrix over.
class FieldSpec {
public:
    enum class Kind { GF2, Prime, Rationals };

    static FieldSpec gf2() { return FieldSpec(Kind::GF2, 2); }
    static FieldSpec prime(std::uint32_t p) { return FieldSpec(Kind::Prime, p); }
    static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }

    /// Accepts "gf2", "gfP:<q>" with q a prime below 2^31, or "rational".
    static FieldSpec parse(const std::string& text);

    Kind kind() const { return kind_; }
    std::uint32_t modulus() const { return modulus_; }

    std::string describe() const;

private:
    FieldSpec(Kind kind, std::uint32_t modulus);

    Kind kind_;
    std::uint32_t modulus_;
};

} // namespace toeprank
