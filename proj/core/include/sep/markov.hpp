#pragma once

#include <vector>

#include "sep/log_signed.hpp"
#include "sep/point_set.hpp"
#include "sep/scalar.hpp"

namespace sep {

/// Extremal problem: M = sup { |P^(deriv)(y)| : deg P <= degree, |P(t)| <= 1 on S }.
struct MarkovQuery {
    PointSet points;  // multiplicities must all be 1
    Scalar y;
    int degree = 1;
    int deriv = 0;
};

/// Equioscillation-style optimality certificate for the finite LP.
struct MarkovCertificate {
    Scalar lo, hi;                    // enclosing interval of S and y
    std::vector<Scalar> cheb_coeffs;  // extremal polynomial in the Chebyshev basis of [lo, hi]
    std::vector<size_t> active;       // indices into S where |P| sits at the bound
    Scalar max_active_deviation{0};   // max | |P(t_i)| - 1 | over the active set
    Scalar max_constraint_excess{0};  // max(0, sup_S |P| - 1)
    Scalar objective_check{0};        // |P^(deriv)(y)| recomputed from the coefficients
    bool complete = false;            // true when degree+1 active points were recovered
};

/// Exact extremal value of the finite linear program in the Chebyshev basis
/// of the smallest interval containing S and y. The maximization of
/// P^(deriv)(y) equals the sup of the absolute value by the P -> -P symmetry.
/// Throws "unbounded: fewer than degree+1 constraint points" when |S| <= degree.
Scalar markov_factor_lp(const MarkovQuery& q, MarkovCertificate* cert = nullptr);

/// Interpolatory case |S| = degree+1: the extremal value is
/// sum_nu |L_nu^(deriv)(y)| over the Lagrange basis of the nodes.
Scalar markov_factor_lagrange(const std::vector<Scalar>& nodes, const Scalar& y, int deriv);

/// Regularly distributed tuple y_0..y_k with the gap quotient
/// sup |y_i-y_nu|^(k-m) / inf |y_i-y_nu|^k kept in log space.
struct RegularTuple {
    std::vector<Scalar> nodes;  // ascending, pairwise distinct
    int m = 0;
    LogSigned quotient_log;

    int k() const { return static_cast<int>(nodes.size()) - 1; }
};

/// Builds the tuple and computes the quotient. Throws on duplicate nodes.
RegularTuple make_regular_tuple(std::vector<Scalar> nodes, int m);

LogSigned lagrange_quotient(const RegularTuple& t);

}  // namespace sep
