#include <doctest.h>

#include <algorithm>
#include <random>

#include "sep/hermite.hpp"
#include "sep/scalar.hpp"
#include "test_util.hpp"

using sep::divided_differences;
using sep::HermiteData;
using sep::hermite_interpolant;
using sep::make_hermite_data;
using sep::NewtonPolynomial;
using sep::Scalar;
using septest::close_rel;
using septest::pow2;
using septest::Rational;

namespace {

// Dense linear-system oracle: solve the confluent Vandermonde system for the
// monomial coefficients, exactly over the rationals.
std::vector<Rational> interpolation_oracle(const HermiteData<Rational>& data) {
    const size_t n = static_cast<size_t>(data.total_count());
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> b(n, Rational(0));
    size_t row = 0;
    for (size_t i = 0; i < data.nodes.size(); ++i) {
        for (size_t j = 0; j < data.derivatives[i].size(); ++j, ++row) {
            // d^j/dx^j x^c = c!/(c-j)! x^(c-j)
            for (size_t c = j; c < n; ++c) {
                Rational f(1);
                for (size_t t = 0; t < j; ++t) f *= Rational(static_cast<int>(c - t));
                Rational p(1);
                for (size_t t = 0; t < c - j; ++t) p *= data.nodes[i];
                a[row][c] = f * p;
            }
            b[row] = data.derivatives[i][j];
        }
    }
    // Gaussian elimination, exact
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        REQUIRE(piv < n);
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

}  // namespace

TEST_CASE("divided differences: constants, leading coefficients, confluent entries") {
    // f == 1 on arbitrary nodes
    HermiteData<Rational> ones{{Rational(-2), Rational(0), Rational(3)},
                               {{Rational(1)}, {Rational(1)}, {Rational(1)}}};
    auto t1 = divided_differences(ones);
    CHECK(t1.top_[0] == Rational(1));
    CHECK(t1.top_[1] == Rational(0));
    CHECK(t1.top_[2] == Rational(0));

    // f(x) = x^3 on 4 distinct nodes: the third difference is the leading coefficient
    HermiteData<Rational> cube{{Rational(-1), Rational(0), Rational(2), Rational(5)},
                               {{Rational(-1)}, {Rational(0)}, {Rational(8)}, {Rational(125)}}};
    CHECK(divided_differences(cube).top_[3] == Rational(1));

    // f(x) = x^2 with triple node at 0 and jets (0, 0, 2): f[0,0,0] = f''(0)/2
    HermiteData<Rational> confluent{{Rational(0)}, {{Rational(0), Rational(0), Rational(2)}}};
    CHECK(divided_differences(confluent).top_[2] == Rational(1));
}

TEST_CASE("divided differences of e^x against the hand-rolled recursion") {
    const Scalar x0(0), x1 = Scalar(1) / Scalar(2), x2(1);
    const Scalar f0 = exp(x0), f1 = exp(x1), f2 = exp(x2);
    HermiteData<Scalar> data{{x0, x1, x2}, {{f0}, {f1}, {f2}}};
    const auto table = divided_differences(data);

    const Scalar d01 = (f0 - f1) / (x0 - x1);
    const Scalar d12 = (f1 - f2) / (x1 - x2);
    const Scalar d012 = (d01 - d12) / (x0 - x2);
    CHECK(close_rel(table.top_[2], d012, pow2(-200)));
}

TEST_CASE("hermite interpolant: single node, projector property") {
    HermiteData<Rational> single{{Rational(4)}, {{Rational(7)}}};
    auto p = hermite_interpolant(single);
    CHECK(p(Rational(100)) == Rational(7));

    // data sampled from a polynomial of degree <= N-1 reproduces it exactly
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        sep::DensePolynomial<Rational> poly;
        for (int i = 0; i < 5; ++i) poly.coeffs.push_back(septest::random_rational(rng));
        std::vector<Rational> nodes = {Rational(-2), Rational(-1, 2), Rational(0), Rational(1), Rational(3)};
        HermiteData<Rational> data;
        data.nodes = nodes;
        for (const auto& x : nodes) data.derivatives.push_back({poly(x)});
        const auto mono = to_monomial(hermite_interpolant(data));
        for (size_t i = 0; i < poly.coeffs.size(); ++i) CHECK(mono[i] == poly.coeffs[i]);
    }
}

TEST_CASE("hermite interpolant with derivative data matches the linear-system oracle") {
    // nodes (0,0,1), f(0)=0, f'(0)=0, f(1)=1: the interpolant is x^2
    HermiteData<Rational> data{{Rational(0), Rational(1)},
                               {{Rational(0), Rational(0)}, {Rational(1)}}};
    const auto p = hermite_interpolant(data);
    const auto mono = to_monomial(p);
    const auto oracle = interpolation_oracle(data);
    REQUIRE(mono.size() == oracle.size());
    for (size_t i = 0; i < mono.size(); ++i) CHECK(mono[i] == oracle[i]);
    CHECK(p(Rational(1)) == Rational(1));
    const auto jet0 = eval_jet(p, Rational(0), 1);
    CHECK(jet0.derivative(1) == Rational(0));
}

TEST_CASE("newton evaluation: prescribed jets, zero padding, monomial oracle") {
    std::mt19937_64 rng(22);
    // random degree-5 polynomial: jet evaluation equals monomial-basis evaluation
    sep::DensePolynomial<Rational> poly;
    for (int i = 0; i <= 5; ++i) poly.coeffs.push_back(septest::random_rational(rng));
    std::vector<Rational> nodes = {Rational(-1), Rational(0), Rational(1), Rational(2), Rational(3), Rational(5)};
    HermiteData<Rational> data;
    data.nodes = nodes;
    for (const auto& x : nodes) data.derivatives.push_back({poly(x)});
    const auto p = hermite_interpolant(data);
    const Rational at(7, 3);
    const auto direct = eval_jet(poly, at, 8);
    const auto nf = eval_jet(p, at, 8);
    for (int j = 0; j <= 8; ++j) CHECK(nf.coeff(j) == direct.coeff(j));
    // order above the degree leaves zero coefficients
    for (int j = 6; j <= 8; ++j) CHECK(nf.coeff(j) == Rational(0));

    // a confluent node reproduces its prescribed jet entries
    HermiteData<Rational> herm{{Rational(0), Rational(2)},
                               {{Rational(3), Rational(-1), Rational(4)}, {Rational(0)}}};
    const auto hp = hermite_interpolant(herm);
    const auto j0 = eval_jet(hp, Rational(0), 2);
    CHECK(j0.derivative(0) == Rational(3));
    CHECK(j0.derivative(1) == Rational(-1));
    CHECK(j0.derivative(2) == Rational(4));
}

TEST_CASE("divided differences are symmetric under node permutations") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> nodes;
        while (nodes.size() < 5) {
            Rational c = septest::random_rational(rng);
            if (std::find(nodes.begin(), nodes.end(), c) == nodes.end()) nodes.push_back(c);
        }
        std::vector<Rational> values;
        for (size_t i = 0; i < nodes.size(); ++i) values.push_back(septest::random_rational(rng));

        auto top = [&](const std::vector<size_t>& perm) {
            std::vector<Rational> xs, vs;
            for (size_t i : perm) {
                xs.push_back(nodes[i]);
                vs.push_back(values[i]);
            }
            // direct recursion on the permuted (not sorted) vector
            for (size_t s = 1; s < xs.size(); ++s)
                for (size_t i = 0; i + s < xs.size(); ++i)
                    vs[i] = (vs[i] - vs[i + 1]) / (xs[i] - xs[i + s]);
            return vs[0];
        };

        std::vector<size_t> perm = {0, 1, 2, 3, 4};
        const Rational reference = top(perm);
        for (int shuffle = 0; shuffle < 5; ++shuffle) {
            std::shuffle(perm.begin(), perm.end(), rng);
            CHECK(top(perm) == reference);
        }
    }
}

TEST_CASE("mean value bound for divided differences of polynomials") {
    // |f[x_0..x_s]| <= sup |f^(s)| / s! on the node hull; f(x) = x^4 on [0,2]
    HermiteData<Rational> data{{Rational(0), Rational(1, 2), Rational(1), Rational(2)},
                               {{Rational(0)}, {Rational(1, 16)}, {Rational(1)}, {Rational(16)}}};
    const auto t = divided_differences(data);
    // s = 3: f'''(x) = 24x, sup over [0,2] = 48, bound 48/6 = 8
    CHECK(abs(t.top_[3]) <= Rational(8));
    // s = 2: f''(x) = 12x^2, sup = 48, bound 24
    CHECK(abs(t.top_[2]) <= Rational(24));
}

TEST_CASE("insufficient jet order is reported") {
    CHECK_THROWS_WITH_AS(
        make_hermite_data<Rational>({Rational(0)}, {3}, {{Rational(1), Rational(2)}}),
        doctest::Contains("insufficient jet order"), std::runtime_error);
}
