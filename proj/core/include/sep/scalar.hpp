#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <mpfr.h>

namespace sep {

/// Process-wide significand precision in bits for newly produced Scalar values.
mpfr_prec_t scalar_precision();
void set_scalar_precision(mpfr_prec_t bits);

/// Arbitrary-precision binary float with an explicit 64-bit exponent offset.
///
/// A value is mantissa * 2^off where the mantissa is an MPFR number kept
/// normalized to [1/2, 1) (or exactly zero). The offset widens the exponent
/// range far beyond MPFR's own, so quantities whose base-2 exponent fits a
/// machine word never underflow or overflow silently; past that range the
/// arithmetic throws instead of flushing to 0 or infinity.
class Scalar {
public:
    Scalar();
    Scalar(double v);
    Scalar(int v);
    Scalar(long v);
    Scalar(long long v);
    Scalar(unsigned v);
    explicit Scalar(const std::string& decimal_literal);

    Scalar(const Scalar& other);
    Scalar(Scalar&& other) noexcept;
    Scalar& operator=(const Scalar& other);
    Scalar& operator=(Scalar&& other) noexcept;
    ~Scalar();

    bool is_zero() const;
    int sign() const;                 // -1, 0, +1
    /// floor(log2 |x|); precondition: nonzero.
    std::int64_t exponent2() const;

    /// x * 2^e, exact.
    static Scalar ldexp2(const Scalar& x, std::int64_t e);

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);

    /// Exact three-way value comparison.
    static int cmp(const Scalar& a, const Scalar& b);

    friend bool operator==(const Scalar& a, const Scalar& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return cmp(a, b) != 0; }
    friend bool operator<(const Scalar& a, const Scalar& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return cmp(a, b) >= 0; }

    friend Scalar abs(const Scalar& x);
    friend Scalar exp(const Scalar& x);
    friend Scalar log(const Scalar& x);
    friend Scalar log1p(const Scalar& x);
    friend Scalar sqrt(const Scalar& x);
    friend Scalar sin(const Scalar& x);
    friend Scalar cos(const Scalar& x);
    friend Scalar pow(const Scalar& x, long n);
    friend Scalar pow(const Scalar& x, const Scalar& y);

    friend Scalar min(const Scalar& a, const Scalar& b) { return a <= b ? a : b; }
    friend Scalar max(const Scalar& a, const Scalar& b) { return a >= b ? a : b; }

    /// Best-effort conversion; values outside double range become 0 or +-inf.
    double to_double() const;
    /// Double approximation of log2 |x|; -inf for zero.
    double log2_abs() const;
    /// Double approximation of log10 |x|; -inf for zero.
    double log10_abs() const;

    std::string str(int significant_digits = 20) const;
    friend std::ostream& operator<<(std::ostream& os, const Scalar& x);

private:
    mpfr_t m_;
    std::int64_t off_ = 0;

    explicit Scalar(mpfr_prec_t prec, int /*tag*/);
    void normalize();
    friend class ScalarOps;
};

// Namespace-scope declarations so qualified lookup finds the friends.
Scalar abs(const Scalar& x);
Scalar exp(const Scalar& x);
Scalar log(const Scalar& x);
Scalar log1p(const Scalar& x);
Scalar sqrt(const Scalar& x);
Scalar sin(const Scalar& x);
Scalar cos(const Scalar& x);
Scalar pow(const Scalar& x, long n);
Scalar pow(const Scalar& x, const Scalar& y);

Scalar scalar_ln2();
Scalar scalar_pi();

}  // namespace sep
