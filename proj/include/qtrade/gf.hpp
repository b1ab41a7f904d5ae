#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qtrade/errors.hpp"

namespace qtrade {

// A field element is its integer index in [0, q); the base-p digits of the
// index are the polynomial coefficients, constant term least significant.
using Fe = std::uint32_t;

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

// GF(p^m) with exact table-driven arithmetic for small orders and direct
// polynomial arithmetic beyond the table limit. Immutable after
// construction; every operation is a pure function, safe from any thread.
class FieldSpec {
public:
    // q = p^m is capped at max_order (default 16, raiseable per call).
    static constexpr unsigned kDefaultMaxOrder = 16;

    static FieldPtr make(unsigned p, unsigned m,
                         std::vector<unsigned> modulus = {},
                         unsigned max_order = kDefaultMaxOrder);
    // Factors q as p^m and uses the default modulus for that (p, m).
    static FieldPtr from_order(unsigned q,
                               unsigned max_order = kDefaultMaxOrder);

    // Smallest monic irreducible of degree m over GF(p), ordered by the
    // base-p value of the non-leading coefficients. x^2+x+1 for GF(4),
    // x^3+x+1 for GF(8), x^2+1 for GF(9), x^4+x+1 for GF(16).
    static std::vector<unsigned> default_modulus(unsigned p, unsigned m);

    unsigned p() const { return p_; }
    unsigned m() const { return m_; }
    unsigned q() const { return q_; }
    // Monic, degree m, coefficients low degree first (length m+1).
    const std::vector<unsigned>& modulus() const { return modulus_; }

    Fe add(Fe a, Fe b) const;
    Fe sub(Fe a, Fe b) const;
    Fe neg(Fe a) const;
    Fe mul(Fe a, Fe b) const;
    Fe inv(Fe a) const;  // throws ZeroInversion on a == 0
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
    Fe pow(Fe a, unsigned long long e) const;

    bool same_field(const FieldSpec& other) const {
        return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
    }

    void check_element(Fe a) const;
    std::string describe() const;  // "GF(4), modulus x^2+x+1"

private:
    FieldSpec(unsigned p, unsigned m, std::vector<unsigned> modulus);

    Fe add_direct(Fe a, Fe b) const;
    Fe mul_direct(Fe a, Fe b) const;

    unsigned p_ = 0;
    unsigned m_ = 0;
    unsigned q_ = 0;
    std::vector<unsigned> modulus_;
    // q*q lookup tables, built when q <= kTableLimit.
    static constexpr unsigned kTableLimit = 256;
    std::vector<Fe> add_tab_;
    std::vector<Fe> mul_tab_;
    std::vector<Fe> inv_tab_;
    std::vector<Fe> neg_tab_;
};

bool is_prime(unsigned n);

// True when n = p^m for a prime p and m >= 1.
bool is_prime_power(unsigned n);

// Irreducibility over GF(p) by trial division against all monic divisors of
// degree <= deg/2. Coefficients low degree first.
bool is_irreducible(const std::vector<unsigned>& poly, unsigned p);

}  // namespace qtrade
