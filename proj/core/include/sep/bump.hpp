#pragma once

#include <cstdint>

#include "sep/jet.hpp"
#include "sep/scalar.hpp"

namespace sep {

/// Jet of psi(t) = exp(-1/(1-t^2)) for |t| < 1, 0 otherwise.
Jet<Scalar> psi_jet(const Scalar& x, int order);

/// Jet of the normalized bump phi(t) = psi(t)/(psi(t)+psi(t-1)+psi(t+1)).
/// phi is smooth, phi in [0,1], supp phi = [-1,1], and the integer shifts of
/// phi form a partition of unity on the line.
Jet<Scalar> bump_jet(const Scalar& x, int order);

/// Jet of the scaled patch weight t -> phi(t/eps - ell). The j-th coefficient
/// equals the bump coefficient at (x/eps - ell) times eps^-j, and the support
/// is ((ell-1) eps, (ell+1) eps).
Jet<Scalar> scaled_patch_jet(const Scalar& x, const Scalar& eps, std::int64_t ell, int order);

}  // namespace sep
