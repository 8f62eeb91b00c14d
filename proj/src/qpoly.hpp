#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "poset.hpp"

namespace minuscule {

using BigInt = mpz_class;
using Rational = mpq_class;

// Integer polynomial in q, dense ascending coefficients, no trailing zeros.
class QPolynomial {
public:
    QPolynomial() = default;
    explicit QPolynomial(std::vector<BigInt> coefficients);

    static QPolynomial constant(const BigInt &c) { return QPolynomial(std::vector<BigInt>{c}); }
    static QPolynomial monomial(const BigInt &c, std::size_t exponent);
    // 1 - q^a
    static QPolynomial one_minus_q_pow(std::size_t a);
    // [a]_q = 1 + q + ... + q^{a-1}
    static QPolynomial q_integer(std::size_t a);

    bool is_zero() const { return coeffs_.empty(); }
    // -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<BigInt> &coefficients() const { return coeffs_; }
    BigInt coefficient(std::size_t e) const { return e < coeffs_.size() ? coeffs_[e] : BigInt(0); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    BigInt evaluate(const BigInt &q) const;
    BigInt at_one() const;

    QPolynomial &operator+=(const QPolynomial &o);
    QPolynomial &operator-=(const QPolynomial &o);
    QPolynomial &operator*=(const QPolynomial &o);
    // Multiplies by (1 - q^a) in place.
    void multiply_one_minus_q_pow(std::size_t a);

    friend QPolynomial operator+(QPolynomial a, const QPolynomial &b) { return a += b; }
    friend QPolynomial operator-(QPolynomial a, const QPolynomial &b) { return a -= b; }
    friend QPolynomial operator*(const QPolynomial &a, const QPolynomial &b);
    friend bool operator==(const QPolynomial &, const QPolynomial &) = default;

    // "1 + q + 2q^2"
    std::string to_string() const;

private:
    void normalize();
    std::vector<BigInt> coeffs_;
};

struct PolynomialDivision {
    QPolynomial quotient;
    QPolynomial remainder;
};

// Long division over Z; the divisor's leading coefficient must be +1 or -1.
PolynomialDivision divide(const QPolynomial &numerator, const QPolynomial &divisor);

// Phi_n, computed as (q^n - 1) divided by Phi_d for every proper divisor d; memoized.
QPolynomial cyclotomic(std::uint64_t n);

// Product over x of (1 - q^{h_x + k}) / (1 - q^{h_x}) with h_x = rk(x) + 1,
// for the built-in families only. Throws InvariantError on a nonzero remainder.
QPolynomial gaussian_f(const Poset &poset, std::size_t k);

QPolynomial q_factorial(std::size_t n);
// [i]! / ([j]! [i-j]!) for i >= j, zero otherwise.
QPolynomial q_binomial(std::size_t i, std::size_t j);

// Value of f at zeta^d for zeta a primitive n-th root of unity, kept as the
// residue of f modulo Phi_{n'} with n' = n / gcd(n, d).
struct RootOfUnityValue {
    std::uint64_t order = 1;
    std::uint64_t exponent = 0;
    std::uint64_t reduced_order = 1;
    QPolynomial residue;

    bool is_integer() const { return residue.is_constant(); }
    std::optional<BigInt> integer() const;
    std::string to_string() const;
};

RootOfUnityValue eval_at_root(const QPolynomial &f, std::uint64_t n, std::uint64_t d);

// f(zeta^d) == value, tested as divisibility of (f mod q^{n'} - 1) - value by Phi_{n'}.
bool equals_at_root(const QPolynomial &f, std::uint64_t n, std::uint64_t d, const BigInt &value);

// f_{i,j}(zeta^{i/d}) for zeta a primitive i-th root: C(i/d, j/d) when d | j, else 0.
BigInt q_binomial_at_root(std::uint64_t i, std::uint64_t j, std::uint64_t d);

// Limit of [n1]_q / [n2]_q as q tends to a primitive d-th root of unity (d | n).
Rational q_ratio_limit(std::uint64_t n1, std::uint64_t n2, std::uint64_t n, std::uint64_t d);

// True iff Phi_n divides f.
bool is_zero_at_primitive_root(const QPolynomial &f, std::uint64_t n);

BigInt binomial(std::uint64_t n, std::uint64_t k);

} // namespace minuscule
