#pragma once

/**
 * @file cyclotomic.hpp
 * @brief Exact arithmetic in cyclotomic fields Q(zeta_n).
 *
 * An element is stored in the power basis 1, z, ..., z^{phi(n)-1} reduced
 * modulo the n-th cyclotomic polynomial, with arbitrary-precision rational
 * coefficients. The representation is canonical, so equality is a coefficient
 * comparison and the zero test is exact.
 *
 * Textual token: `n:[c0,c1,...]`, one rational `p/q` (lowest terms) per basis
 * element. Integers are written without a denominator.
 */

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rtinv {

using Rational = mpq_class;
using BigInt = mpz_class;

struct OrderMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Precomputed reduction data for Q(zeta_n); shared and immutable once built.
struct CyclotomicField {
    int order = 1;
    int degree = 1;                                   // phi(n)
    std::vector<int64_t> poly;                        // Phi_n, low degree first, monic
    std::vector<std::vector<int64_t>> zeta_power;     // z^k reduced, k in [0, 2*phi-1) and [0, n)

    static const CyclotomicField& get(int n);
};

class CycNum {
public:
    CycNum() : CycNum(1) {}
    explicit CycNum(int order);

    static CycNum zero(int n) { return CycNum(n); }
    static CycNum one(int n) { return rational(n, 1); }
    static CycNum rational(int n, const Rational& q);
    static CycNum integer(int n, long v) { return rational(n, Rational(v)); }
    /// z_n^k for any integer k.
    static CycNum zeta(int n, int64_t k);
    /// Coefficients must have length phi(n).
    static CycNum from_coeffs(int n, std::vector<Rational> coeffs);

    int order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    /// All power-basis coefficients are integers (the element is in Z[z_n]).
    bool is_integral() const;
    std::optional<Rational> to_rational() const;

    CycNum& operator+=(const CycNum& o);
    CycNum& operator-=(const CycNum& o);
    CycNum& operator*=(const CycNum& o);
    CycNum& operator/=(const CycNum& o) { return *this *= o.inverse(); }
    CycNum& operator*=(const Rational& q);

    friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
    friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
    friend CycNum operator*(const CycNum& a, const CycNum& b);
    friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inverse(); }
    friend CycNum operator*(CycNum a, const Rational& q) { return a *= q; }
    friend CycNum operator*(const Rational& q, CycNum a) { return a *= q; }
    CycNum operator-() const;

    /// Values of different order are compared after embedding into Q(zeta_lcm).
    friend bool operator==(const CycNum& a, const CycNum& b);

    CycNum inverse() const;
    CycNum pow(int64_t e) const;
    /// Image in Q(zeta_m); m must be a multiple of order().
    CycNum embed(int m) const;
    /// Galois automorphism z -> z^k, gcd(k, n) = 1.
    CycNum galois(int64_t k) const;
    CycNum conj() const { return galois(-1); }

    std::complex<double> approx() const;
    std::string token() const;
    static CycNum parse(std::string_view text);
    /// Human-readable exact rendering, e.g. `1 - z8^2`.
    std::string pretty() const;

private:
    int order_;
    std::vector<Rational> c_;
};

CycNum cyc_mul(const CycNum& a, const CycNum& b);
CycNum cyc_inv(const CycNum& a);
/// Minimal m with a^m = 1, or nullopt when a is not a root of unity.
std::optional<int64_t> cyc_root_of_unity_order(const CycNum& a);

/// Bring two values into a common field Q(zeta_lcm).
int common_order(int a, int b);

std::string rational_token(const Rational& q);
Rational parse_rational(std::string_view s);

}  // namespace rtinv
