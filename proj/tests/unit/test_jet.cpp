#include <doctest.h>

#include <random>

#include "sep/hermite.hpp"
#include "sep/jet.hpp"
#include "sep/scalar.hpp"
#include "test_util.hpp"

using sep::DensePolynomial;
using sep::Jet;
using sep::Scalar;
using septest::close_rel;
using septest::pow2;
using septest::Rational;

namespace {

template <class F>
DensePolynomial<F> random_poly(std::mt19937_64& rng, int deg) {
    DensePolynomial<F> p;
    for (int i = 0; i <= deg; ++i) p.coeffs.push_back(F(septest::random_rational(rng)));
    return p;
}

}  // namespace

TEST_CASE("jet products match polynomial products exactly in rational mode") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const auto p = random_poly<Rational>(rng, 6);
        const auto q = random_poly<Rational>(rng, 6);
        const Rational x0 = septest::random_rational(rng);
        const int order = 6;
        const auto jp = eval_jet(p, x0, order);
        const auto jq = eval_jet(q, x0, order);
        const auto jprod = eval_jet(multiply(p, q), x0, order);
        const auto prod = jp * jq;
        for (int j = 0; j <= order; ++j) CHECK(prod.coeff(j) == jprod.coeff(j));
    }
}

TEST_CASE("jet reciprocal inverts the product") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        auto p = random_poly<Rational>(rng, 5);
        p.coeffs[0] += Rational(20);  // keep the constant term away from zero
        const auto jp = eval_jet(p, septest::random_rational(rng), 5);
        const auto prod = jp * reciprocal(jp);
        CHECK(prod.coeff(0) == Rational(1));
        for (int j = 1; j <= 5; ++j) CHECK(prod.coeff(j) == Rational(0));
    }
    CHECK_THROWS_AS(reciprocal(Jet<Rational>(Rational(0), 3)), std::domain_error);
}

TEST_CASE("jet derivatives carry the factorial normalization") {
    // f(t) = t^3 at t=2: f''(2) = 12, c_2 = 6
    DensePolynomial<Rational> cube;
    cube.coeffs = {Rational(0), Rational(0), Rational(0), Rational(1)};
    const auto j = eval_jet(cube, Rational(2), 3);
    CHECK(j.coeff(2) == Rational(6));
    CHECK(j.derivative(2) == Rational(12));
    CHECK(j.derivative(3) == Rational(6));
}

TEST_CASE("exp jet matches the analytic derivatives of exp(t^2)") {
    // (e^{t^2})' = 2t e^{t^2}; (e^{t^2})'' = (2 + 4t^2) e^{t^2}
    const Scalar x0("0.5");
    Jet<Scalar> w(x0, 2);
    w.coeff(0) = x0 * x0;
    w.coeff(1) = Scalar(2) * x0;
    w.coeff(2) = Scalar(1);
    const auto h = exp_jet(w);
    const Scalar e = exp(x0 * x0);
    CHECK(close_rel(h.derivative(0), e, pow2(-240)));
    CHECK(close_rel(h.derivative(1), Scalar(2) * x0 * e, pow2(-240)));
    CHECK(close_rel(h.derivative(2), (Scalar(2) + Scalar(4) * x0 * x0) * e, pow2(-240)));
}

TEST_CASE("sin cos jets satisfy the Pythagorean identity per coefficient") {
    const Scalar x0("0.7");
    auto w = Jet<Scalar>::variable(x0, 5);
    auto [s, c] = sin_cos_jet(w);
    const auto one = s * s + c * c;
    CHECK(close_rel(one.coeff(0), Scalar(1), pow2(-240)));
    for (int j = 1; j <= 5; ++j) CHECK(abs(one.coeff(j)) <= pow2(-240));
}

TEST_CASE("jet base point and order mismatches are rejected") {
    Jet<Scalar> a(Scalar(0), 2), b(Scalar(1), 2), c(Scalar(0), 3);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(a * c, std::invalid_argument);
}
