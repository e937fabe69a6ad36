#pragma once

#include <cassert>
#include <stdexcept>
#include <vector>

namespace sep {

/// Truncated Taylor expansion at a base point: coefficients c_j = f^(j)(x)/j!.
///
/// The ring operations implement truncated power-series arithmetic, so sums,
/// products, reciprocals and the elementary recurrences below agree with the
/// analytic derivatives of the represented functions up to the stored order.
template <class F>
class Jet {
public:
    Jet(F base, int order) : base_(std::move(base)), c_(static_cast<size_t>(order) + 1, F(0)) {
        if (order < 0) throw std::invalid_argument("Jet order must be >= 0");
    }

    static Jet constant(F base, F value, int order) {
        Jet j(std::move(base), order);
        j.c_[0] = std::move(value);
        return j;
    }

    /// The identity function t -> t expanded at the base point.
    static Jet variable(F base, int order) {
        Jet j(base, order);
        j.c_[0] = base;
        if (order >= 1) j.c_[1] = F(1);
        return j;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const F& base() const { return base_; }
    const F& coeff(int j) const { return c_[static_cast<size_t>(j)]; }
    F& coeff(int j) { return c_[static_cast<size_t>(j)]; }
    const std::vector<F>& coeffs() const { return c_; }

    const F& value() const { return c_[0]; }

    /// f^(j)(base) = j! * c_j.
    F derivative(int j) const {
        F f(1);
        for (int i = 2; i <= j; ++i) f = f * F(i);
        return f * c_[static_cast<size_t>(j)];
    }

    bool is_zero() const {
        for (const F& v : c_)
            if (!(v == F(0))) return false;
        return true;
    }

    Jet operator-() const {
        Jet r(*this);
        for (F& v : r.c_) v = -v;
        return r;
    }

    Jet& operator+=(const Jet& rhs) {
        check_compatible(rhs);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] + rhs.c_[i];
        return *this;
    }

    Jet& operator-=(const Jet& rhs) {
        check_compatible(rhs);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] - rhs.c_[i];
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

    /// Cauchy product truncated to the common order.
    friend Jet operator*(const Jet& a, const Jet& b) {
        a.check_compatible(b);
        Jet r(a.base_, a.order());
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == F(0)) continue;
            for (size_t j = 0; i + j < r.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        }
        return r;
    }

    friend Jet operator*(const F& s, Jet a) {
        for (F& v : a.c_) v = s * v;
        return a;
    }
    friend Jet operator*(Jet a, const F& s) { return s * a; }

    friend Jet operator+(Jet a, const F& s) {
        a.c_[0] = a.c_[0] + s;
        return a;
    }
    friend Jet operator-(Jet a, const F& s) {
        a.c_[0] = a.c_[0] - s;
        return a;
    }
    friend Jet operator-(const F& s, const Jet& a) { return (-a) + s; }

private:
    void check_compatible(const Jet& rhs) const {
        if (c_.size() != rhs.c_.size() || !(base_ == rhs.base_))
            throw std::invalid_argument("Jet operands differ in base point or order");
    }

    F base_;
    std::vector<F> c_;
};

/// 1/f as a truncated series; requires f(base) != 0.
template <class F>
Jet<F> reciprocal(const Jet<F>& a) {
    if (a.value() == F(0)) throw std::domain_error("Jet reciprocal with vanishing constant term");
    Jet<F> r(a.base(), a.order());
    r.coeff(0) = F(1) / a.value();
    for (int k = 1; k <= a.order(); ++k) {
        F acc(0);
        for (int j = 1; j <= k; ++j) acc = acc + a.coeff(j) * r.coeff(k - j);
        r.coeff(k) = -acc / a.value();
    }
    return r;
}

template <class F>
Jet<F> operator/(const Jet<F>& a, const Jet<F>& b) {
    return a * reciprocal(b);
}

/// exp(f) via h' = f' h; uses exp() of the field on the constant term.
template <class F>
Jet<F> exp_jet(const Jet<F>& w) {
    Jet<F> h(w.base(), w.order());
    h.coeff(0) = exp(w.value());
    for (int k = 1; k <= w.order(); ++k) {
        F acc(0);
        for (int j = 1; j <= k; ++j) acc = acc + F(j) * w.coeff(j) * h.coeff(k - j);
        h.coeff(k) = acc / F(k);
    }
    return h;
}

/// sin(f) and cos(f) via the coupled first-order recurrences.
template <class F>
std::pair<Jet<F>, Jet<F>> sin_cos_jet(const Jet<F>& w) {
    Jet<F> s(w.base(), w.order()), c(w.base(), w.order());
    s.coeff(0) = sin(w.value());
    c.coeff(0) = cos(w.value());
    for (int k = 1; k <= w.order(); ++k) {
        F as(0), ac(0);
        for (int j = 1; j <= k; ++j) {
            as = as + F(j) * w.coeff(j) * c.coeff(k - j);
            ac = ac + F(j) * w.coeff(j) * s.coeff(k - j);
        }
        s.coeff(k) = as / F(k);
        c.coeff(k) = -ac / F(k);
    }
    return {s, c};
}

}  // namespace sep
