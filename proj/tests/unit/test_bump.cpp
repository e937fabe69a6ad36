#include <doctest.h>

#include <random>

#include "sep/bump.hpp"
#include "test_util.hpp"

using sep::bump_jet;
using sep::Jet;
using sep::Scalar;
using sep::scaled_patch_jet;
using septest::close_rel;
using septest::pow2;

namespace {

Scalar phi_value(const Scalar& x) { return bump_jet(x, 0).value(); }

// Independent oracle: psi evaluated directly from the formula, normalized.
Scalar phi_direct(const Scalar& x) {
    auto psi = [](const Scalar& t) {
        if (abs(t) >= Scalar(1)) return Scalar(0);
        return exp(Scalar(-1) / (Scalar(1) - t * t));
    };
    const Scalar num = psi(x);
    if (num.is_zero()) return Scalar(0);
    return num / (psi(x) + psi(x - Scalar(1)) + psi(x + Scalar(1)));
}

}  // namespace

TEST_CASE("bump value at grid centers and outside support") {
    CHECK(phi_value(Scalar(0)) == Scalar(1));  // psi(+-1) vanish, so phi(0) = psi(0)/psi(0)
    CHECK(close_rel(phi_value(Scalar(0)) + phi_value(Scalar(-1)) + phi_value(Scalar(1)), Scalar(1), pow2(-240)));
    CHECK(bump_jet(Scalar("1.5"), 3).is_zero());
    CHECK(bump_jet(Scalar(1), 2).is_zero());
    CHECK(bump_jet(Scalar(-1), 2).is_zero());
}

TEST_CASE("bump derivatives against a central finite-difference oracle") {
    const Scalar x("0.3");
    const int order = 2;
    const auto jet = bump_jet(x, order);

    const Scalar h("1e-30");
    const Scalar d1 = (phi_direct(x + h) - phi_direct(x - h)) / (Scalar(2) * h);
    const Scalar d2 = (phi_direct(x + h) - Scalar(2) * phi_direct(x) + phi_direct(x - h)) / (h * h);

    CHECK(close_rel(jet.derivative(0), phi_direct(x), pow2(-240)));
    // the difference quotient loses ~2^-257/h of relative accuracy to cancellation
    CHECK(close_rel(jet.derivative(1), d1, Scalar("1e-40")));
    CHECK(close_rel(jet.derivative(2), d2, Scalar("1e-12")));
}

TEST_CASE("integer shifts of the bump form a partition of unity") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const Scalar x(u(rng));
        Scalar sum(0);
        for (int ell = -4; ell <= 4; ++ell) sum += phi_value(x - Scalar(ell));
        CHECK(abs(sum - Scalar(1)) <= pow2(-200));
    }
}

TEST_CASE("bump stays in [0,1] and vanishes to all orders near the edge") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-0.999, 0.999);
    for (int trial = 0; trial < 50; ++trial) {
        const Scalar v = phi_value(Scalar(u(rng)));
        CHECK(v.sign() >= 0);
        CHECK(v <= Scalar(1));
    }
    // ultra-close to the boundary the value underflows the exponent range and
    // the jet collapses to zero rather than failing
    const Scalar near_edge = Scalar(1) - pow2(-80);
    CHECK(bump_jet(near_edge, 3).is_zero());
}

TEST_CASE("scaled patch weight: center value, support, chain-rule scaling") {
    const Scalar eps = pow2(-10);
    CHECK(scaled_patch_jet(Scalar(3) * eps, eps, 3, 0).value() == Scalar(1));
    CHECK(scaled_patch_jet(Scalar(4) * eps, eps, 3, 5).is_zero());  // boundary (l+1)eps
    CHECK(scaled_patch_jet(Scalar(5) * eps, eps, 3, 5).is_zero());  // outside

    const Scalar x = Scalar(3) * eps + eps / Scalar(7);
    const auto patch = scaled_patch_jet(x, eps, 3, 4);
    const auto inner = bump_jet(x / eps - Scalar(3), 4);
    Scalar scale(1);
    for (int j = 0; j <= 4; ++j) {
        CHECK(patch.coeff(j) == inner.coeff(j) * scale);
        scale /= eps;
    }
}

TEST_CASE("patch derivative sups scale exactly like eps^-j") {
    // sup over a fixed relative grid of |patch^(j)| * eps^j is the same number
    // for every eps, because the patch is the bump in the scaled variable.
    const int j = 3;
    const int grid = 10000;
    std::vector<Scalar> sups;
    for (long e = 2; e <= 20; e += 6) {
        const Scalar eps = pow2(-e);
        Scalar sup(0);
        for (int i = 1; i < grid; i += 37) {  // sparse pass over the same relative grid
            const Scalar t = (Scalar(-1) + Scalar(2) * Scalar(i) / Scalar(grid)) * eps;
            const auto jet = scaled_patch_jet(t, eps, 0, j);
            const Scalar v = abs(jet.derivative(j)) * pow(eps, long(j));
            if (sup < v) sup = v;
        }
        sups.push_back(sup);
    }
    for (size_t i = 1; i < sups.size(); ++i)
        CHECK(close_rel(sups[i], sups[0], Scalar("1e-6")));
}
