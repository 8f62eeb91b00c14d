#include <doctest.h>

#include <cmath>
#include <complex>

#include "errors.hpp"
#include "ideal_dynamics.hpp"
#include "oracles.hpp"
#include "qpoly.hpp"

using namespace minuscule;

namespace {

QPolynomial poly(std::initializer_list<long> c) {
    std::vector<BigInt> v;
    for (long x : c) v.emplace_back(x);
    return QPolynomial(std::move(v));
}

// [i choose j]_q by summing q^{sum of chosen positions - j(j-1)/2} over j-subsets of {0..i-1}.
QPolynomial brute_q_binomial(unsigned i, unsigned j) {
    std::vector<BigInt> c(i * j + 1, 0);
    for (std::uint32_t mask = 0; mask < (1u << i); ++mask) {
        if (static_cast<unsigned>(__builtin_popcount(mask)) != j) continue;
        unsigned s = 0;
        for (unsigned b = 0; b < i; ++b)
            if (mask >> b & 1) s += b;
        c[s - j * (j - 1) / 2] += 1;
    }
    return QPolynomial(std::move(c));
}

QPolynomial propeller_closed_form(std::size_t p, std::size_t k) {
    const std::size_t m = k + 2 * p - 1;
    const QPolynomial num = q_factorial(m) * QPolynomial::q_integer(m - p + 1);
    const QPolynomial den = q_factorial(2 * p - 1) * q_factorial(m - 2 * p + 1) * QPolynomial::q_integer(p);
    const auto [quot, rem] = divide(num, den);
    REQUIRE(rem.is_zero());
    return quot;
}

} // namespace

TEST_CASE("polynomial arithmetic and printing") {
    const auto a = poly({1, 1});
    CHECK(a * a == poly({1, 2, 1}));
    CHECK((a - a).is_zero());
    CHECK((a - a).degree() == -1);
    CHECK(poly({0, 0}).is_zero());
    CHECK(poly({1, 1, 2}).to_string() == "1 + q + 2q^2");
    CHECK(poly({3, 2, 1}).evaluate(2) == 11);
    CHECK(poly({3, 2, 1}).at_one() == 6);
    CHECK(QPolynomial::one_minus_q_pow(3) == poly({1, 0, 0, -1}));
    auto b = poly({1, 1});
    b.multiply_one_minus_q_pow(2);
    CHECK(b == poly({1, 1, -1, -1}));
    const auto [q, r] = divide(poly({-1, 0, 0, 1}), poly({-1, 1}));
    CHECK(q == poly({1, 1, 1}));
    CHECK(r.is_zero());
    CHECK_THROWS_AS(divide(a, QPolynomial()), ParameterError);
    CHECK_THROWS_AS(divide(a, poly({1, 2})), ParameterError);
}

TEST_CASE("q-binomials match subset enumeration") {
    CHECK(q_binomial(4, 2) == poly({1, 1, 2, 1, 1}));
    CHECK(q_binomial(5, 0) == poly({1}));
    CHECK(q_binomial(2, 3).is_zero());
    for (unsigned i = 0; i <= 10; ++i)
        for (unsigned j = 0; j <= i; ++j) {
            const auto f = q_binomial(i, j);
            CHECK(f == brute_q_binomial(i, j));
            CHECK(f.at_one() == oracle::binomial(i, j));
        }
}

TEST_CASE("cyclotomic polynomials multiply to q^n - 1") {
    CHECK(cyclotomic(1) == poly({-1, 1}));
    CHECK(cyclotomic(6) == poly({1, -1, 1}));
    CHECK(cyclotomic(12) == poly({1, 0, -1, 0, 1}));
    for (std::uint64_t n = 1; n <= 40; ++n) {
        QPolynomial prod = poly({1});
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) prod *= cyclotomic(d);
        CHECK(prod == QPolynomial::monomial(1, n) - poly({1}));
    }
    CHECK_THROWS_AS(cyclotomic(0), ParameterError);
}

TEST_CASE("hook products agree with brute-force ideal counting") {
    struct Case {
        PosetFamily fam;
        std::size_t max_k;
    };
    for (const auto &[fam, max_k] : {Case{PosetFamily::propeller(3), 3}, Case{PosetFamily::rectangle(2, 3), 3},
                                     Case{PosetFamily::shifted_staircase(3), 3}, Case{PosetFamily::cayley_moufang(), 1}}) {
        const Poset p = build_minuscule_poset(fam);
        for (std::size_t k = 0; k <= max_k; ++k) {
            const auto f = gaussian_f(p, k);
            if (k == 0) {
                CHECK(f == poly({1}));
                continue;
            }
            CHECK(f == oracle::ideal_generating_function(chain_product(p, k)));
        }
    }
    const Poset fr = build_minuscule_poset(PosetFamily::freudenthal());
    std::vector<BigInt> by_size(28, 0);
    for (const auto &i : enumerate_ideals(fr)) by_size[i.size()] += 1;
    CHECK(gaussian_f(fr, 1) == QPolynomial(by_size));
    CHECK(gaussian_f(fr, 1).at_one() == 56);
    CHECK(gaussian_f(build_minuscule_poset(PosetFamily::cayley_moufang()), 1).at_one() == 27);
    CHECK_THROWS_AS(gaussian_f(chain_poset(3), 2), UnsupportedError);
}

TEST_CASE("propeller generating function has a product form") {
    for (std::size_t p = 3; p <= 5; ++p) {
        const Poset prop = build_minuscule_poset(PosetFamily::propeller(static_cast<int>(p)));
        for (std::size_t k = 1; k <= 6; ++k) CHECK(gaussian_f(prop, k) == propeller_closed_form(p, k));
    }
}

TEST_CASE("property: generating functions are palindromic and nonnegative") {
    for (const auto &fam : {PosetFamily::propeller(4), PosetFamily::cayley_moufang(), PosetFamily::freudenthal(),
                            PosetFamily::rectangle(3, 3)}) {
        const Poset p = build_minuscule_poset(fam);
        for (std::size_t k = 1; k <= 5; ++k) {
            const auto f = gaussian_f(p, k);
            REQUIRE(f.degree() == static_cast<long>(k * p.size()));
            const auto &c = f.coefficients();
            for (std::size_t e = 0; e < c.size(); ++e) {
                CHECK(c[e] >= 1);
                CHECK(c[e] == c[c.size() - 1 - e]);
            }
        }
    }
}

TEST_CASE("evaluation at roots of unity") {
    // [4 choose 2] at i: 1 + i - 2 - i + 1 = 0.
    CHECK(eval_at_root(q_binomial(4, 2), 4, 1).integer() == BigInt(0));
    // At -1: 1 - 1 + 2 - 1 + 1 = 2.
    CHECK(eval_at_root(q_binomial(4, 2), 4, 2).integer() == BigInt(2));
    CHECK(eval_at_root(q_binomial(4, 2), 4, 4).integer() == BigInt(6));
    // 1 + q at a primitive cube root is -q^2, not an integer.
    const auto v = eval_at_root(poly({1, 1}), 3, 1);
    CHECK_FALSE(v.is_integer());
    CHECK(v.reduced_order == 3);
    CHECK_FALSE(equals_at_root(poly({1, 1}), 3, 1, 0));
    CHECK(equals_at_root(poly({1, 1}), 2, 1, 0));
    CHECK(equals_at_root(poly({1, 1}), 6, 3, 0));
    CHECK_THROWS_AS(eval_at_root(poly({1}), 0, 1), ParameterError);
}

TEST_CASE("q-binomials at roots of unity") {
    CHECK(q_binomial_at_root(16, 8, 8) == 2);
    CHECK(q_binomial_at_root(12, 8, 3) == 0);
    CHECK_THROWS_AS(q_binomial_at_root(12, 8, 5), ParameterError);
    for (std::uint64_t i = 1; i <= 16; ++i)
        for (std::uint64_t j = 0; j <= i; ++j)
            for (std::uint64_t d = 1; d <= i; ++d) {
                if (i % d != 0) continue;
                CHECK(equals_at_root(q_binomial(i, j), i, i / d, q_binomial_at_root(i, j, d)));
            }
}

TEST_CASE("ratio limits of q-integers") {
    CHECK(q_ratio_limit(10, 5, 20, 5) == 2);
    CHECK(q_ratio_limit(7, 3, 8, 4) == 1);
    CHECK(q_ratio_limit(6, 3, 6, 3) == 2);
    CHECK(q_ratio_limit(5, 5, 1, 1) == 1);
    CHECK_THROWS_AS(q_ratio_limit(7, 3, 6, 4), ParameterError);
    CHECK_THROWS_AS(q_ratio_limit(7, 4, 8, 4), ParameterError);
}

TEST_CASE("vanishing at primitive roots") {
    const auto f = q_binomial(6, 3);
    CHECK(is_zero_at_primitive_root(f, 6));
    CHECK(is_zero_at_primitive_root(f, 5));
    CHECK(is_zero_at_primitive_root(f, 4));
    CHECK(is_zero_at_primitive_root(f, 2));
    CHECK_FALSE(is_zero_at_primitive_root(f, 3));
    CHECK_FALSE(is_zero_at_primitive_root(f, 1));
    CHECK_FALSE(is_zero_at_primitive_root(f, 7));
}

TEST_CASE("property: root evaluations agree with floating point") {
    oracle::Gen gen(0xc0ffee);
    const double tau = 8 * std::atan(1.0);
    auto at = [](const QPolynomial &f, std::complex<double> z) {
        std::complex<double> acc = 0;
        const auto &c = f.coefficients();
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + it->get_d();
        return acc;
    };
    for (int trial = 0; trial < 60; ++trial) {
        const std::uint64_t n = 1 + gen.below(12);
        std::vector<BigInt> c(1 + gen.below(30));
        for (auto &x : c) x = static_cast<long>(gen.below(11)) - 5;
        const QPolynomial f(c);
        std::complex<double> sum = 0;
        for (std::uint64_t d = 0; d < n; ++d) {
            const auto z = std::polar(1.0, tau * static_cast<double>(d) / static_cast<double>(n));
            const auto direct = at(f, z);
            const auto v = eval_at_root(f, n, d);
            // The residue is a polynomial in the same root.
            CHECK(std::abs(at(v.residue, z) - direct) < 1e-6);
            if (auto i = v.integer()) CHECK(std::abs(direct - i->get_d()) < 1e-6);
            sum += direct;
        }
        // Averaging over all n-th roots keeps the coefficients at multiples of n.
        double want = 0;
        for (std::size_t e = 0; e < c.size(); e += n) want += c[e].get_d();
        CHECK(std::abs(sum / static_cast<double>(n) - want) < 1e-6);
        CHECK(eval_at_root(f, n, 0).integer() == f.at_one());
    }
}
