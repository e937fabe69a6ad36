#include "sep/markov.hpp"

#include <algorithm>
#include <stdexcept>

#include "sep/jet.hpp"

namespace sep {

namespace {

// ---------------------------------------------------------------------------
// Dense two-phase simplex with Bland's rule, Scalar arithmetic.
//
// Solves  min sum(lambda)  s.t.  A lambda = b, lambda >= 0  (the dual of the
// Markov extremal program). Sizes here are tiny in rows (degree+2) and wide
// in columns (two per constraint point), so the tableau stays cheap.
// ---------------------------------------------------------------------------
class Simplex {
public:
    Simplex(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b)
        : m_(a.size()), n_(a.empty() ? 0 : a[0].size()), a_(std::move(a)), b_(std::move(b)) {
        for (size_t r = 0; r < m_; ++r)
            if (b_[r].sign() < 0) {
                b_[r] = -b_[r];
                for (auto& v : a_[r]) v = -v;
            }
        art_.assign(m_, std::vector<Scalar>(m_, Scalar(0)));
        for (size_t r = 0; r < m_; ++r) art_[r][r] = Scalar(1);
    }

    // Returns the optimal objective; basis_ and b_ then describe the solution.
    Scalar solve() {
        // Phase 1: artificial basis, drive sum of artificials to zero.
        basis_.resize(m_);
        for (size_t r = 0; r < m_; ++r) basis_[r] = n_ + r;
        init_costs(/*phase1=*/true);
        iterate(/*allow_artificial_entering=*/false);
        if (objective_value().sign() > 0 && !is_negligible(objective_value()))
            throw std::runtime_error("markov LP: infeasible dual (should not happen)");
        // Pivot any artificial still in the basis out if possible.
        for (size_t r = 0; r < m_; ++r) {
            if (basis_[r] < n_) continue;
            size_t enter = n_;
            for (size_t j = 0; j < n_; ++j)
                if (!is_negligible(a_[r][j])) { enter = j; break; }
            if (enter < n_) pivot(r, enter);
        }
        init_costs(/*phase1=*/false);
        iterate(false);
        return objective_value();
    }

    const std::vector<size_t>& basis() const { return basis_; }
    const std::vector<Scalar>& rhs() const { return b_; }
    size_t real_columns() const { return n_; }

private:
    void init_costs(bool phase1) {
        // cost row: reduced costs for all columns + objective in last slot
        cost_.assign(n_ + m_ + 1, Scalar(0));
        std::vector<Scalar> c(n_ + m_, Scalar(0));
        if (phase1) {
            for (size_t j = n_; j < n_ + m_; ++j) c[j] = Scalar(1);
        } else {
            for (size_t j = 0; j < n_; ++j) c[j] = Scalar(1);
        }
        // reduced costs: c_j - c_B^T B^{-1} A_j; tableau rows are already B^{-1}A
        for (size_t j = 0; j < n_ + m_; ++j) {
            Scalar acc = c[j];
            for (size_t r = 0; r < m_; ++r) {
                const Scalar& col = column(r, j);
                if (!col.is_zero()) acc -= c[basis_[r]] * col;
            }
            cost_[j] = acc;
        }
        Scalar obj(0);
        for (size_t r = 0; r < m_; ++r) obj += c[basis_[r]] * b_[r];
        cost_[n_ + m_] = obj;
    }

    const Scalar& column(size_t r, size_t j) const {
        if (j < n_) return a_[r][j];
        return art_[r][j - n_];
    }
    Scalar& column_mut(size_t r, size_t j) {
        if (j < n_) return a_[r][j];
        return art_[r][j - n_];
    }

    Scalar objective_value() const { return cost_[n_ + m_]; }

    bool is_negligible(const Scalar& v) const {
        if (v.is_zero()) return true;
        return v.exponent2() < -(static_cast<std::int64_t>(scalar_precision()) - 96);
    }

    void iterate(bool allow_artificial_entering) {
        const size_t total = allow_artificial_entering ? n_ + m_ : n_;
        for (long iter = 0;; ++iter) {
            if (iter > 20000) throw std::runtime_error("markov LP: iteration limit exceeded");
            // Bland: first column with negative reduced cost.
            size_t enter = total;
            for (size_t j = 0; j < total; ++j) {
                const Scalar& rc = cost_[j];
                if (rc.sign() < 0 && !is_negligible(rc)) { enter = j; break; }
            }
            if (enter == total) return;  // optimal
            // ratio test; Bland tie-break on smallest basis variable index
            size_t leave = m_;
            Scalar best_ratio(0);
            for (size_t r = 0; r < m_; ++r) {
                const Scalar& piv = column(r, enter);
                if (piv.sign() <= 0 || is_negligible(piv)) continue;
                const Scalar ratio = b_[r] / piv;
                if (leave == m_ || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[r] < basis_[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave == m_) throw std::runtime_error("markov LP: dual unbounded (should not happen)");
            pivot(leave, enter);
        }
    }

    void pivot(size_t r, size_t j) {
        const Scalar piv = column(r, j);
        for (size_t c = 0; c < n_ + m_; ++c) column_mut(r, c) = column(r, c) / piv;
        b_[r] = b_[r] / piv;
        column_mut(r, j) = Scalar(1);
        for (size_t rr = 0; rr < m_; ++rr) {
            if (rr == r) continue;
            const Scalar f = column(rr, j);
            if (f.is_zero()) continue;
            for (size_t c = 0; c < n_ + m_; ++c) column_mut(rr, c) -= f * column(r, c);
            column_mut(rr, j) = Scalar(0);
            b_[rr] -= f * b_[r];
        }
        const Scalar fc = cost_[j];
        if (!fc.is_zero()) {
            for (size_t c = 0; c < n_ + m_; ++c) cost_[c] -= fc * column(r, c);
            cost_[j] = Scalar(0);
            cost_[n_ + m_] += fc * b_[r];  // objective stored with + sign
        }
        basis_[r] = j;
    }

    size_t m_, n_;
    std::vector<std::vector<Scalar>> a_;
    std::vector<std::vector<Scalar>> art_;
    std::vector<Scalar> b_;
    std::vector<Scalar> cost_;
    std::vector<size_t> basis_;
};

std::vector<Scalar> chebyshev_values(const Scalar& u, int k) {
    std::vector<Scalar> t;
    t.reserve(static_cast<size_t>(k) + 1);
    t.push_back(Scalar(1));
    if (k >= 1) t.push_back(u);
    const Scalar two(2);
    for (int i = 2; i <= k; ++i) t.push_back(two * u * t[i - 1] - t[i - 2]);
    return t;
}

std::vector<Jet<Scalar>> chebyshev_jets(const Scalar& u, int k, int order) {
    std::vector<Jet<Scalar>> t;
    t.reserve(static_cast<size_t>(k) + 1);
    t.push_back(Jet<Scalar>::constant(u, Scalar(1), order));
    if (k >= 1) t.push_back(Jet<Scalar>::variable(u, order));
    const Jet<Scalar> two_u = Scalar(2) * Jet<Scalar>::variable(u, order);
    for (int i = 2; i <= k; ++i) t.push_back(two_u * t[i - 1] - t[i - 2]);
    return t;
}

// Gaussian elimination with partial pivoting; returns false when singular to
// working accuracy.
bool solve_dense(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b, std::vector<Scalar>& out) {
    const size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
        if (a[piv][col].is_zero()) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            const Scalar f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    out.assign(n, Scalar(0));
    for (size_t r = n; r-- > 0;) {
        Scalar acc = b[r];
        for (size_t c = r + 1; c < n; ++c) acc -= a[r][c] * out[c];
        out[r] = acc / a[r][r];
    }
    return true;
}

}  // namespace

Scalar markov_factor_lp(const MarkovQuery& q, MarkovCertificate* cert) {
    const int k = q.degree, j = q.deriv;
    if (k < 0 || j < 0 || j > k) throw std::invalid_argument("markov query requires 0 <= deriv <= degree");
    for (size_t i = 0; i < q.points.size(); ++i)
        if (q.points.multiplicity(i) != 1)
            throw std::invalid_argument("markov query requires multiplicity-1 points");
    const size_t npts = q.points.size();
    if (npts < static_cast<size_t>(k) + 1)
        throw std::runtime_error("unbounded: fewer than k+1 constraint points");

    Scalar lo = q.points.node(0), hi = q.points.node(npts - 1);
    if (q.y < lo) lo = q.y;
    if (q.y > hi) hi = q.y;

    if (k == 0) {
        // Constant polynomials: the extremal value is 1, attained by P = 1.
        if (cert) {
            cert->lo = lo;
            cert->hi = hi;
            cert->cheb_coeffs = {Scalar(1)};
            cert->active.clear();
            for (size_t i = 0; i < npts; ++i) cert->active.push_back(i);
            cert->max_active_deviation = Scalar(0);
            cert->max_constraint_excess = Scalar(0);
            cert->objective_check = Scalar(1);
            cert->complete = true;
        }
        return Scalar(1);
    }

    const Scalar width = hi - lo;
    const Scalar uscale = Scalar(2) / width;  // du/dt
    auto to_u = [&](const Scalar& t) { return (Scalar(2) * t - lo - hi) / width; };

    // Objective c_i = (d/dt)^j T_i(u(t)) at y = T_i^(j)(u_y) * uscale^j.
    const Scalar u_y = to_u(q.y);
    auto jets = chebyshev_jets(u_y, k, j);
    const Scalar ds = pow(uscale, static_cast<long>(j));
    std::vector<Scalar> c;
    c.reserve(static_cast<size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) c.push_back(jets[static_cast<size_t>(i)].derivative(j) * ds);

    // Rescale the objective by an exact power of two so the tableau starts
    // O(1) regardless of how tightly the points cluster; the constraint
    // matrix is already bounded by 1 in the Chebyshev basis.
    std::int64_t cexp = 0;
    bool have_c = false;
    for (const auto& ci : c)
        if (!ci.is_zero()) {
            cexp = have_c ? std::max(cexp, ci.exponent2()) : ci.exponent2();
            have_c = true;
        }
    std::vector<Scalar> c_scaled;
    c_scaled.reserve(c.size());
    for (const auto& ci : c)
        c_scaled.push_back(have_c ? Scalar::ldexp2(ci, -cexp) : ci);

    // Dual columns: for each point two columns (+row, -row).
    const size_t m = static_cast<size_t>(k) + 1;
    std::vector<std::vector<Scalar>> a(m, std::vector<Scalar>(2 * npts, Scalar(0)));
    for (size_t p = 0; p < npts; ++p) {
        const auto tv = chebyshev_values(to_u(q.points.node(p)), k);
        for (size_t r = 0; r < m; ++r) {
            a[r][2 * p] = tv[r];
            a[r][2 * p + 1] = -tv[r];
        }
    }

    Simplex lp(std::move(a), c_scaled);
    const Scalar value = have_c ? Scalar::ldexp2(lp.solve(), cexp) : Scalar(0);

    if (cert) {
        cert->lo = lo;
        cert->hi = hi;
        cert->active.clear();
        cert->cheb_coeffs.clear();
        cert->complete = false;
        // Active constraints from the optimal dual basis.
        std::vector<std::pair<size_t, int>> act;  // (point index, sign)
        for (size_t r = 0; r < lp.basis().size(); ++r) {
            const size_t col = lp.basis()[r];
            if (col >= lp.real_columns()) continue;
            act.emplace_back(col / 2, col % 2 == 0 ? +1 : -1);
        }
        std::sort(act.begin(), act.end());
        act.erase(std::unique(act.begin(), act.end()), act.end());
        if (act.size() == m) {
            std::vector<std::vector<Scalar>> sys(m, std::vector<Scalar>(m, Scalar(0)));
            std::vector<Scalar> rhs(m, Scalar(1));
            for (size_t r = 0; r < m; ++r) {
                const auto tv = chebyshev_values(to_u(q.points.node(act[r].first)), k);
                for (size_t cidx = 0; cidx < m; ++cidx)
                    sys[r][cidx] = act[r].second > 0 ? tv[cidx] : -tv[cidx];
            }
            std::vector<Scalar> coeffs;
            if (solve_dense(sys, rhs, coeffs)) {
                cert->cheb_coeffs = coeffs;
                cert->complete = true;
                Scalar dev(0), excess(0);
                for (const auto& [pi, sg] : act) {
                    cert->active.push_back(pi);
                    const auto tv = chebyshev_values(to_u(q.points.node(pi)), k);
                    Scalar pv(0);
                    for (size_t i = 0; i < m; ++i) pv += coeffs[i] * tv[i];
                    const Scalar d = abs(abs(pv) - Scalar(1));
                    if (dev < d) dev = d;
                }
                for (size_t p = 0; p < npts; ++p) {
                    const auto tv = chebyshev_values(to_u(q.points.node(p)), k);
                    Scalar pv(0);
                    for (size_t i = 0; i < m; ++i) pv += coeffs[i] * tv[i];
                    const Scalar ex = abs(pv) - Scalar(1);
                    if (excess < ex) excess = ex;
                }
                cert->max_active_deviation = dev;
                cert->max_constraint_excess = excess;
                Scalar oj(0);
                for (size_t i = 0; i < m; ++i) oj += coeffs[i] * c[i];
                cert->objective_check = abs(oj);
            }
        }
    }
    return value;
}

Scalar markov_factor_lagrange(const std::vector<Scalar>& nodes, const Scalar& y, int deriv) {
    const size_t n = nodes.size();
    if (n == 0) throw std::invalid_argument("markov_factor_lagrange: empty node set");
    if (deriv < 0 || deriv >= static_cast<int>(n))
        throw std::invalid_argument("markov_factor_lagrange: requires 0 <= deriv <= k");
    for (size_t i = 0; i < n; ++i)
        for (size_t l = i + 1; l < n; ++l)
            if (nodes[i] == nodes[l]) throw std::invalid_argument("markov_factor_lagrange: duplicate nodes");

    Scalar total(0);
    const Jet<Scalar> var = Jet<Scalar>::variable(y, deriv);
    for (size_t nu = 0; nu < n; ++nu) {
        Jet<Scalar> num = Jet<Scalar>::constant(y, Scalar(1), deriv);
        Scalar den(1);
        for (size_t i = 0; i < n; ++i) {
            if (i == nu) continue;
            num = num * (var - nodes[i]);
            den *= nodes[nu] - nodes[i];
        }
        total += abs(num.derivative(deriv) / den);
    }
    return total;
}

RegularTuple make_regular_tuple(std::vector<Scalar> nodes, int m) {
    if (nodes.size() < 2) throw std::invalid_argument("regular tuple needs at least two nodes");
    if (m < 0 || m > static_cast<int>(nodes.size()) - 1)
        throw std::invalid_argument("regular tuple requires 0 <= m <= k");
    std::sort(nodes.begin(), nodes.end());
    for (size_t i = 1; i < nodes.size(); ++i)
        if (nodes[i - 1] == nodes[i]) throw std::runtime_error("regular tuple: duplicate nodes");

    RegularTuple t;
    t.nodes = std::move(nodes);
    t.m = m;
    const int k = t.k();
    const Scalar maxgap = t.nodes.back() - t.nodes.front();
    Scalar mingap = t.nodes[1] - t.nodes[0];
    for (size_t i = 2; i < t.nodes.size(); ++i) {
        const Scalar g = t.nodes[i] - t.nodes[i - 1];
        if (g < mingap) mingap = g;
    }
    const Scalar lq = Scalar(k - m) * log(maxgap) - Scalar(k) * log(mingap);
    t.quotient_log = LogSigned::from_log(1, lq);
    return t;
}

LogSigned lagrange_quotient(const RegularTuple& t) { return t.quotient_log; }

}  // namespace sep
