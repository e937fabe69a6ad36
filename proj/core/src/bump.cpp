#include "sep/bump.hpp"

namespace sep {

namespace {

// Below this base-2 exponent of 1/(1-t^2) the value exp(-1/(1-t^2)) is not
// representable (its exponent would leave the 64-bit range), and the jet is
// zero to working precision anyway.
constexpr std::int64_t kUnderflowExp = 61;

}  // namespace

Jet<Scalar> psi_jet(const Scalar& x, int order) {
    const Scalar one(1);
    Jet<Scalar> zero(x, order);
    if (abs(x) >= one) return zero;
    // u = 1 - t^2 expanded at x
    Jet<Scalar> u(x, order);
    u.coeff(0) = one - x * x;
    if (order >= 1) u.coeff(1) = Scalar(-2) * x;
    if (order >= 2) u.coeff(2) = Scalar(-1);
    if (u.value().sign() <= 0) return zero;
    const Scalar inv = one / u.value();
    if (inv.exponent2() >= kUnderflowExp) return zero;
    return exp_jet(-reciprocal(u));
}

Jet<Scalar> bump_jet(const Scalar& x, int order) {
    const Scalar one(1);
    if (abs(x) >= one) return Jet<Scalar>(x, order);
    Jet<Scalar> num = psi_jet(x, order);
    // Shifts do not change derivatives, so the jets of psi(.-1) and psi(.+1)
    // at x are the psi jets at x-1 and x+1 with the base point relabeled.
    Jet<Scalar> den = num;
    for (int d : {-1, +1}) {
        Jet<Scalar> shifted = psi_jet(x + Scalar(d), order);
        for (int j = 0; j <= order; ++j) den.coeff(j) = den.coeff(j) + shifted.coeff(j);
    }
    return num * reciprocal(den);
}

Jet<Scalar> scaled_patch_jet(const Scalar& x, const Scalar& eps, std::int64_t ell, int order) {
    if (eps.sign() <= 0) throw std::invalid_argument("scaled_patch_jet: eps must be positive");
    const Scalar u = x / eps - Scalar(static_cast<long long>(ell));
    Jet<Scalar> inner = bump_jet(u, order);
    Jet<Scalar> r(x, order);
    Scalar scale(1);
    for (int j = 0; j <= order; ++j) {
        r.coeff(j) = inner.coeff(j) * scale;
        scale = scale / eps;
    }
    return r;
}

}  // namespace sep
