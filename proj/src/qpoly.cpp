#include "qpoly.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>

#include "errors.hpp"

namespace minuscule {

QPolynomial::QPolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) { normalize(); }

void QPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

QPolynomial QPolynomial::monomial(const BigInt &c, std::size_t exponent) {
    std::vector<BigInt> v(exponent + 1, 0);
    v[exponent] = c;
    return QPolynomial(std::move(v));
}

QPolynomial QPolynomial::one_minus_q_pow(std::size_t a) {
    if (a == 0) return QPolynomial();
    std::vector<BigInt> v(a + 1, 0);
    v[0] = 1;
    v[a] = -1;
    return QPolynomial(std::move(v));
}

QPolynomial QPolynomial::q_integer(std::size_t a) { return QPolynomial(std::vector<BigInt>(a, 1)); }

BigInt QPolynomial::evaluate(const BigInt &q) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + *it;
    return acc;
}

BigInt QPolynomial::at_one() const {
    BigInt acc = 0;
    for (const auto &c : coeffs_) acc += c;
    return acc;
}

QPolynomial &QPolynomial::operator+=(const QPolynomial &o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
}

QPolynomial &QPolynomial::operator-=(const QPolynomial &o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
}

QPolynomial operator*(const QPolynomial &a, const QPolynomial &b) {
    if (a.is_zero() || b.is_zero()) return QPolynomial();
    std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return QPolynomial(std::move(out));
}

QPolynomial &QPolynomial::operator*=(const QPolynomial &o) { return *this = *this * o; }

void QPolynomial::multiply_one_minus_q_pow(std::size_t a) {
    if (a == 0) {
        coeffs_.clear();
        return;
    }
    if (coeffs_.empty()) return;
    coeffs_.resize(coeffs_.size() + a, 0);
    for (std::size_t i = coeffs_.size(); i-- > a;) coeffs_[i] -= coeffs_[i - a];
    normalize();
}

std::string QPolynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t e = 0; e < coeffs_.size(); ++e) {
        BigInt c = coeffs_[e];
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        BigInt a = abs(c);
        if (e == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str();
        os << "q";
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

PolynomialDivision divide(const QPolynomial &numerator, const QPolynomial &divisor) {
    if (divisor.is_zero()) throw ParameterError("polynomial division by zero");
    const BigInt lead = divisor.coefficients().back();
    if (lead != 1 && lead != -1) throw ParameterError("divisor must have leading coefficient +-1");
    std::vector<BigInt> rem = numerator.coefficients();
    const auto &dv = divisor.coefficients();
    const std::size_t dd = dv.size() - 1;
    if (rem.size() < dv.size()) return {QPolynomial(), numerator};
    std::vector<BigInt> quot(rem.size() - dd, 0);
    for (std::size_t i = rem.size(); i-- > dd;) {
        if (rem[i] == 0) continue;
        BigInt c = rem[i] * lead;  // lead is its own inverse
        quot[i - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= c * dv[j];
    }
    rem.resize(dd);
    return {QPolynomial(std::move(quot)), QPolynomial(std::move(rem))};
}

QPolynomial cyclotomic(std::uint64_t n) {
    if (n == 0) throw ParameterError("cyclotomic polynomial of order 0");
    static std::shared_mutex mu;
    static std::map<std::uint64_t, QPolynomial> cache;
    {
        std::shared_lock lock(mu);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    QPolynomial acc = QPolynomial::monomial(1, n) - QPolynomial::constant(1);
    for (std::uint64_t d = 1; d < n; ++d) {
        if (n % d) continue;
        auto [q, r] = divide(acc, cyclotomic(d));
        if (!r.is_zero()) throw InvariantError("cyclotomic division left a remainder");
        acc = std::move(q);
    }
    std::unique_lock lock(mu);
    return cache.emplace(n, std::move(acc)).first->second;
}

QPolynomial gaussian_f(const Poset &poset, std::size_t k) {
    if (!poset.family().is_minuscule())
        throw UnsupportedError("hook-product generating function is only defined here for built-in minuscule posets");
    QPolynomial num = QPolynomial::constant(1), den = QPolynomial::constant(1);
    for (Element x = 0; x < poset.size(); ++x) {
        const auto h = static_cast<std::size_t>(poset.rank(x) + 1);
        num.multiply_one_minus_q_pow(h + k);
        den.multiply_one_minus_q_pow(h);
    }
    auto [q, r] = divide(num, den);
    if (!r.is_zero()) throw InvariantError("hook product is not a polynomial for " + poset.family().name());
    return q;
}

QPolynomial q_factorial(std::size_t n) {
    QPolynomial acc = QPolynomial::constant(1);
    for (std::size_t a = 2; a <= n; ++a) acc *= QPolynomial::q_integer(a);
    return acc;
}

QPolynomial q_binomial(std::size_t i, std::size_t j) {
    if (i < j) return QPolynomial();
    QPolynomial num = QPolynomial::constant(1), den = QPolynomial::constant(1);
    // [i]!/([j]![i-j]!) = prod_{a=1}^{j} (1 - q^{i-j+a}) / (1 - q^a)
    for (std::size_t a = 1; a <= j; ++a) {
        num.multiply_one_minus_q_pow(i - j + a);
        den.multiply_one_minus_q_pow(a);
    }
    auto [q, r] = divide(num, den);
    if (!r.is_zero()) throw InvariantError("q-binomial division left a remainder");
    return q;
}

std::optional<BigInt> RootOfUnityValue::integer() const {
    if (!is_integer()) return std::nullopt;
    return residue.coefficient(0);
}

std::string RootOfUnityValue::to_string() const {
    if (auto v = integer()) return v->get_str();
    return residue.to_string() + " mod Phi_" + std::to_string(reduced_order);
}

namespace {

// f(q) mod (q^n - 1)
QPolynomial fold(const QPolynomial &f, std::uint64_t n) {
    std::vector<BigInt> r(n, 0);
    const auto &c = f.coefficients();
    for (std::size_t e = 0; e < c.size(); ++e) r[e % n] += c[e];
    return QPolynomial(std::move(r));
}

} // namespace

RootOfUnityValue eval_at_root(const QPolynomial &f, std::uint64_t n, std::uint64_t d) {
    if (n == 0) throw ParameterError("root of unity order must be >= 1");
    RootOfUnityValue v;
    v.order = n;
    v.exponent = d;
    // zeta^d is a primitive n'-th root of unity.
    v.reduced_order = n / std::gcd(n, d);
    v.residue = divide(fold(f, v.reduced_order), cyclotomic(v.reduced_order)).remainder;
    return v;
}

bool equals_at_root(const QPolynomial &f, std::uint64_t n, std::uint64_t d, const BigInt &value) {
    if (n == 0) throw ParameterError("root of unity order must be >= 1");
    const std::uint64_t reduced = n / std::gcd(n, d);
    QPolynomial diff = fold(f, reduced) - QPolynomial::constant(value);
    return divide(diff, cyclotomic(reduced)).remainder.is_zero();
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInt q_binomial_at_root(std::uint64_t i, std::uint64_t j, std::uint64_t d) {
    if (d == 0 || i % d != 0)
        throw ParameterError("q_binomial_at_root needs d | i (i=" + std::to_string(i) + ", d=" + std::to_string(d) + ")");
    if (j % d != 0) return 0;
    return binomial(i / d, j / d);
}

Rational q_ratio_limit(std::uint64_t n1, std::uint64_t n2, std::uint64_t n, std::uint64_t d) {
    if (d == 0 || n % d != 0) throw ParameterError("q_ratio_limit needs d | n");
    if (n1 == 0 || n2 == 0) throw ParameterError("q_ratio_limit needs positive arguments");
    if (n1 % d != n2 % d) throw ParameterError("q_ratio_limit needs n1 = n2 mod d");
    if (n1 % d == 0) {
        Rational r(BigInt(static_cast<unsigned long>(n1)), BigInt(static_cast<unsigned long>(n2)));
        r.canonicalize();
        return r;
    }
    return Rational(1);
}

bool is_zero_at_primitive_root(const QPolynomial &f, std::uint64_t n) {
    if (n == 0) throw ParameterError("root of unity order must be >= 1");
    return divide(f, cyclotomic(n)).remainder.is_zero();
}

} // namespace minuscule
