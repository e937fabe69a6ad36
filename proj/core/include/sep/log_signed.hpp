#pragma once

#include <stdexcept>

#include "sep/scalar.hpp"

namespace sep {

/// Sign plus natural-log magnitude. Holds quotients and products whose
/// exponents themselves overflow the Scalar exponent range (the log is the
/// stored quantity, so only the log needs to be representable).
class LogSigned {
public:
    LogSigned() : sign_(0) {}

    static LogSigned from_log(int sign, Scalar log_magnitude) {
        if (sign != -1 && sign != 0 && sign != 1) throw std::invalid_argument("LogSigned sign must be -1, 0 or 1");
        LogSigned r;
        r.sign_ = sign;
        if (sign != 0) r.log_ = std::move(log_magnitude);
        return r;
    }

    static LogSigned from_scalar(const Scalar& x) {
        if (x.is_zero()) return LogSigned();
        return from_log(x.sign(), log(abs(x)));
    }

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }

    const Scalar& logmag() const {
        if (sign_ == 0) throw std::domain_error("LogSigned logmag of zero");
        return log_;
    }

    Scalar to_scalar() const {
        if (sign_ == 0) return Scalar(0);
        Scalar m = exp(log_);
        return sign_ > 0 ? m : -m;
    }

    friend LogSigned operator*(const LogSigned& a, const LogSigned& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return LogSigned();
        return from_log(a.sign_ * b.sign_, a.log_ + b.log_);
    }

    friend LogSigned operator/(const LogSigned& a, const LogSigned& b) {
        if (b.sign_ == 0) throw std::domain_error("LogSigned division by zero");
        if (a.sign_ == 0) return LogSigned();
        return from_log(a.sign_ * b.sign_, a.log_ - b.log_);
    }

    friend LogSigned pow(const LogSigned& a, long n) {
        if (a.sign_ == 0) {
            if (n > 0) return LogSigned();
            if (n == 0) return from_log(1, Scalar(0));
            throw std::domain_error("LogSigned pow: 0 raised to negative power");
        }
        const int s = (n % 2 == 0) ? 1 : a.sign_;
        return from_log(s, a.log_ * Scalar(n));
    }

    friend LogSigned pow(const LogSigned& a, const Scalar& e) {
        if (a.sign_ == 0) return LogSigned();
        if (a.sign_ < 0) throw std::domain_error("LogSigned pow: negative base with non-integer exponent");
        return from_log(1, a.log_ * e);
    }

    LogSigned operator-() const {
        LogSigned r(*this);
        r.sign_ = -r.sign_;
        return r;
    }

    /// Exact in log space up to Scalar rounding; same-sign sums satisfy
    /// logmag(result) >= max of the operands' logmags.
    friend LogSigned operator+(const LogSigned& a, const LogSigned& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        const bool a_big = a.log_ >= b.log_;
        const LogSigned& big = a_big ? a : b;
        const LogSigned& small = a_big ? b : a;
        const Scalar delta = small.log_ - big.log_;  // <= 0
        if (a.sign_ == b.sign_)
            return from_log(a.sign_, big.log_ + log1p(exp_clamped(delta)));
        if (big.log_ == small.log_) return LogSigned();
        return from_log(big.sign_, big.log_ + log1p(-exp_clamped(delta)));
    }

    friend LogSigned operator-(const LogSigned& a, const LogSigned& b) { return a + (-b); }

    /// Exact value comparison.
    friend int cmp(const LogSigned& a, const LogSigned& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
        if (a.sign_ == 0) return 0;
        const int m = Scalar::cmp(a.log_, b.log_);
        return a.sign_ > 0 ? m : -m;
    }

    friend bool operator<(const LogSigned& a, const LogSigned& b) { return cmp(a, b) < 0; }
    friend bool operator>(const LogSigned& a, const LogSigned& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const LogSigned& a, const LogSigned& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const LogSigned& a, const LogSigned& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const LogSigned& a, const LogSigned& b) { return cmp(a, b) == 0; }

private:
    // exp with a short-circuit: once delta is far below -precision the
    // addend is under one ulp and exp may not even be representable.
    static Scalar exp_clamped(const Scalar& delta) {
        if (!delta.is_zero() && delta.sign() < 0) {
            const Scalar limit = Scalar(-(static_cast<long long>(scalar_precision()) + 16));
            if (delta < limit * scalar_ln2()) return Scalar(0);
        }
        return exp(delta);
    }

    int sign_;
    Scalar log_;
};

}  // namespace sep
