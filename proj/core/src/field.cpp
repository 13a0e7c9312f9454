#include "toeprank/field.hpp"

#include <sstream>

namespace toeprank {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p > 0x7fffffffu || !is_prime_u32(p)) {
        std::ostringstream msg;
        msg << "modulus " << p << " is not a prime below 2^31";
        throw ValidationError(msg.str());
    }
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a == 0) {
        throw ValidationError("division by zero in prime field");
    }
    // Invariant: old_r = old_s * a (mod p) at every step.
    std::int64_t old_r = a, r = p_;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    return reduce(old_s);
}

FieldSpec::FieldSpec(Kind kind, std::uint32_t modulus)
    : kind_(kind), modulus_(modulus) {
    if (kind_ == Kind::Prime) {
        PrimeField check(modulus_); // validates primality and range
        (void)check;
    }
}

FieldSpec FieldSpec::parse(const std::string& text) {
    if (text == "gf2") return gf2();
    if (text == "rational") return rationals();
    const std::string prefix = "gfP:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string digits = text.substr(prefix.size());
        if (digits.empty() ||
            digits.find_first_not_of("0123456789") != std::string::npos) {
            throw ValidationError("bad field '" + text +
                                  "': expected gfP:<prime>");
        }
        unsigned long long q = 0;
        try {
            q = std::stoull(digits);
        } catch (const std::exception&) {
            throw ValidationError("bad field '" + text + "': modulus out of range");
        }
        if (q > 0x7fffffffull) {
            throw ValidationError("bad field '" + text +
                                  "': modulus must be below 2^31");
        }
        return prime(static_cast<std::uint32_t>(q));
    }
    throw ValidationError("bad field '" + text +
                          "': expected gf2, gfP:<q>, or rational");
}

std::string FieldSpec::describe() const {
    switch (kind_) {
        case Kind::GF2:
            return "gf2";
        case Kind::Prime: {
            std::ostringstream out;
            out << "gfP:" << modulus_;
            return out.str();
        }
        case Kind::Rationals:
            return "rational";
    }
    return "?";
}

} // namespace toeprank
