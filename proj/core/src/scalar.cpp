#include "sep/scalar.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sep {

namespace {

std::atomic<mpfr_prec_t> g_precision{256};

// Extra working bits for argument reduction in exp/log/pow.
constexpr mpfr_prec_t kGuardBits = 96;

// Largest admissible |shift| when aligning mantissas; beyond that the smaller
// addend is under half an ulp of the result.
std::int64_t align_limit(mpfr_prec_t prec) { return static_cast<std::int64_t>(prec) + 64; }

std::int64_t checked_add(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error(std::string("Scalar exponent overflow in ") + what);
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error(std::string("Scalar exponent overflow in ") + what);
    return r;
}

// RAII mpfr temporary.
struct Raw {
    mpfr_t t;
    explicit Raw(mpfr_prec_t prec) { mpfr_init2(t, prec); }
    ~Raw() { mpfr_clear(t); }
    Raw(const Raw&) = delete;
    Raw& operator=(const Raw&) = delete;
};

}  // namespace

mpfr_prec_t scalar_precision() { return g_precision.load(std::memory_order_relaxed); }

void set_scalar_precision(mpfr_prec_t bits) {
    if (bits < 8 || bits > (1 << 24)) throw std::invalid_argument("scalar precision out of range [8, 2^24]");
    g_precision.store(bits, std::memory_order_relaxed);
}

Scalar::Scalar(mpfr_prec_t prec, int) { mpfr_init2(m_, prec); mpfr_set_zero(m_, 1); }

Scalar::Scalar() : Scalar(scalar_precision(), 0) {}

Scalar::Scalar(double v) : Scalar(scalar_precision(), 0) {
    if (!std::isfinite(v)) throw std::invalid_argument("Scalar from non-finite double");
    mpfr_set_d(m_, v, MPFR_RNDN);
    normalize();
}

Scalar::Scalar(int v) : Scalar(static_cast<long long>(v)) {}
Scalar::Scalar(long v) : Scalar(static_cast<long long>(v)) {}
Scalar::Scalar(unsigned v) : Scalar(static_cast<long long>(v)) {}

Scalar::Scalar(long long v) : Scalar(scalar_precision(), 0) {
    mpfr_set_sj(m_, v, MPFR_RNDN);
    normalize();
}

Scalar::Scalar(const std::string& decimal_literal) : Scalar(scalar_precision(), 0) {
    if (mpfr_set_str(m_, decimal_literal.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("malformed numeric literal: '" + decimal_literal + "'");
    if (!mpfr_number_p(m_)) throw std::invalid_argument("non-finite numeric literal: '" + decimal_literal + "'");
    normalize();
}

Scalar::Scalar(const Scalar& other) : off_(other.off_) {
    mpfr_init2(m_, mpfr_get_prec(other.m_));
    mpfr_set(m_, other.m_, MPFR_RNDN);
}

Scalar::Scalar(Scalar&& other) noexcept : off_(other.off_) {
    m_[0] = other.m_[0];
    mpfr_init2(other.m_, MPFR_PREC_MIN);
    mpfr_set_zero(other.m_, 1);
    other.off_ = 0;
}

Scalar& Scalar::operator=(const Scalar& other) {
    if (this != &other) {
        mpfr_set_prec(m_, mpfr_get_prec(other.m_));
        mpfr_set(m_, other.m_, MPFR_RNDN);
        off_ = other.off_;
    }
    return *this;
}

Scalar& Scalar::operator=(Scalar&& other) noexcept {
    if (this != &other) {
        mpfr_swap(m_, other.m_);
        std::swap(off_, other.off_);
    }
    return *this;
}

Scalar::~Scalar() { mpfr_clear(m_); }

void Scalar::normalize() {
    if (mpfr_zero_p(m_)) {
        off_ = 0;
        return;
    }
    if (!mpfr_number_p(m_)) throw std::overflow_error("Scalar mantissa became non-finite");
    mpfr_exp_t e = mpfr_get_exp(m_);
    if (e != 0) {
        off_ = checked_add(off_, static_cast<std::int64_t>(e), "normalize");
        mpfr_set_exp(m_, 0);
    }
}

bool Scalar::is_zero() const { return mpfr_zero_p(m_); }

int Scalar::sign() const { return mpfr_sgn(m_) > 0 ? 1 : (mpfr_sgn(m_) < 0 ? -1 : 0); }

std::int64_t Scalar::exponent2() const {
    if (is_zero()) throw std::domain_error("exponent2 of zero");
    return off_ - 1;  // |mantissa| in [1/2, 1)
}

Scalar Scalar::ldexp2(const Scalar& x, std::int64_t e) {
    Scalar r(x);
    if (!r.is_zero()) r.off_ = checked_add(r.off_, e, "ldexp2");
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    mpfr_neg(r.m_, r.m_, MPFR_RNDN);
    return r;
}

// All binary operations round into the current global precision.
class ScalarOps {
public:
    static Scalar add(const Scalar& a, const Scalar& b, int bsign) {
        const mpfr_prec_t prec = scalar_precision();
        if (a.is_zero()) {
            Scalar r(prec, 0);
            if (bsign > 0) mpfr_set(r.m_, b.m_, MPFR_RNDN); else mpfr_neg(r.m_, b.m_, MPFR_RNDN);
            r.off_ = b.off_;
            r.normalize();
            return r;
        }
        if (b.is_zero()) {
            Scalar r(prec, 0);
            mpfr_set(r.m_, a.m_, MPFR_RNDN);
            r.off_ = a.off_;
            r.normalize();
            return r;
        }
        const bool gap_overflows = __builtin_sub_overflow_p(a.off_, b.off_, (std::int64_t)0);
        const std::int64_t lim = align_limit(prec);
        std::int64_t d = 0;
        if (!gap_overflows) d = a.off_ - b.off_;
        if (gap_overflows || d > lim || d < -lim) {
            // The smaller operand is far below one ulp of the larger.
            const bool a_dominates = gap_overflows ? (a.off_ > b.off_) : (d > 0);
            const Scalar& dom = a_dominates ? a : b;
            Scalar r(prec, 0);
            if (!a_dominates && bsign < 0) mpfr_neg(r.m_, dom.m_, MPFR_RNDN);
            else mpfr_set(r.m_, dom.m_, MPFR_RNDN);
            r.off_ = dom.off_;
            r.normalize();
            return r;
        }
        Raw shifted(mpfr_get_prec(b.m_));
        mpfr_mul_2si(shifted.t, b.m_, static_cast<long>(-d), MPFR_RNDN);  // exact
        Scalar r(prec, 0);
        if (bsign > 0) mpfr_add(r.m_, a.m_, shifted.t, MPFR_RNDN);
        else mpfr_sub(r.m_, a.m_, shifted.t, MPFR_RNDN);
        r.off_ = a.off_;
        r.normalize();
        return r;
    }

    static Scalar mul_prec(const Scalar& a, const Scalar& b, mpfr_prec_t prec) {
        Scalar r(prec, 0);
        mpfr_mul(r.m_, a.m_, b.m_, MPFR_RNDN);
        if (!mpfr_zero_p(r.m_)) r.off_ = checked_add(a.off_, b.off_, "mul");
        r.normalize();
        return r;
    }

    static Scalar div(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw std::domain_error("Scalar division by zero");
        Scalar r(scalar_precision(), 0);
        mpfr_div(r.m_, a.m_, b.m_, MPFR_RNDN);
        if (!mpfr_zero_p(r.m_)) r.off_ = checked_add(a.off_, -b.off_, "div");
        r.normalize();
        return r;
    }

    // exp(x) with argument reduction x = (I + F) * ln2, I integral.
    static Scalar exp_impl(const Scalar& x, mpfr_prec_t out_prec) {
        if (x.is_zero()) {
            Scalar r(out_prec, 0);
            mpfr_set_ui(r.m_, 1, MPFR_RNDN);
            r.normalize();
            return r;
        }
        const mpfr_prec_t work = out_prec + kGuardBits;
        Raw l2(work);
        mpfr_const_log2(l2.t, MPFR_RNDN);
        Scalar ln2s(work, 0);
        mpfr_set(ln2s.m_, l2.t, MPFR_RNDN);
        ln2s.normalize();
        Scalar y(work, 0);  // y = x / ln2; offsets handle any magnitude
        mpfr_div(y.m_, x.m_, ln2s.m_, MPFR_RNDN);
        y.off_ = checked_add(x.off_, -ln2s.off_, "exp");
        y.normalize();

        if (y.off_ <= 0) {
            // |y| < 1: result exponent is 0 or +-1, no integer split needed.
            Raw ym(work);
            mpfr_mul_2si(ym.t, y.m_, static_cast<long>(std::max<std::int64_t>(y.off_, -(static_cast<std::int64_t>(work) + 8))), MPFR_RNDN);
            Scalar r(out_prec, 0);
            mpfr_exp2(r.m_, ym.t, MPFR_RNDN);
            r.normalize();
            return r;
        }
        if (y.off_ > 63) {
            throw std::overflow_error(y.sign() > 0 ? "Scalar exp overflow: exponent exceeds 64-bit range"
                                                   : "Scalar exp underflow: exponent exceeds 64-bit range");
        }
        Raw ym(work);
        mpfr_mul_2si(ym.t, y.m_, static_cast<long>(y.off_), MPFR_RNDN);  // exact, exponent <= 63
        Raw fl(work);
        mpfr_floor(fl.t, ym.t);
        if (!mpfr_fits_intmax_p(fl.t, MPFR_RNDN)) {
            throw std::overflow_error(y.sign() > 0 ? "Scalar exp overflow: exponent exceeds 64-bit range"
                                                   : "Scalar exp underflow: exponent exceeds 64-bit range");
        }
        const std::int64_t ipart = static_cast<std::int64_t>(mpfr_get_sj(fl.t, MPFR_RNDN));
        Raw frac(work);
        mpfr_sub(frac.t, ym.t, fl.t, MPFR_RNDN);  // in [0,1), exact at this precision
        Scalar r(out_prec, 0);
        mpfr_exp2(r.m_, frac.t, MPFR_RNDN);
        r.off_ = ipart;
        r.normalize();
        return r;
    }

    // log(x) = off*ln2 + log(mantissa), x > 0.
    static Scalar log_impl(const Scalar& x, mpfr_prec_t out_prec) {
        if (x.sign() <= 0) throw std::domain_error("Scalar log of non-positive value");
        const mpfr_prec_t work = out_prec + kGuardBits;
        Raw acc(work), lm(work), l2(work);
        mpfr_const_log2(l2.t, MPFR_RNDN);
        mpfr_log(lm.t, x.m_, MPFR_RNDN);  // mantissa in [1/2,1): log in [-ln2, 0)
        mpfr_mul_si(acc.t, l2.t, static_cast<long>(x.off_), MPFR_RNDN);
        mpfr_add(acc.t, acc.t, lm.t, MPFR_RNDN);
        Scalar r(out_prec, 0);
        mpfr_set(r.m_, acc.t, MPFR_RNDN);
        r.normalize();
        return r;
    }

    static Scalar pow_int(const Scalar& x, long n) {
        if (x.is_zero()) {
            if (n > 0) return Scalar(0);
            if (n == 0) return Scalar(1);
            throw std::domain_error("Scalar pow: 0 raised to negative power");
        }
        if (n == 0) return Scalar(1);
        if (std::labs(n) > (1L << 28)) throw std::overflow_error("Scalar pow: integer exponent too large");
        Scalar r(scalar_precision(), 0);
        mpfr_pow_si(r.m_, x.m_, n, MPFR_RNDN);
        r.off_ = checked_mul(x.off_, n, "pow");
        r.normalize();
        return r;
    }

    static Scalar materialize_small(const Scalar& x, mpfr_prec_t prec, const char* what) {
        // Folds the offset into the mantissa; only valid for moderate exponents.
        if (x.is_zero()) return Scalar(prec, 0);
        if (x.off_ > (1 << 28) || x.off_ < -(1 << 28))
            throw std::range_error(std::string("Scalar ") + what + ": argument exponent too large");
        Scalar r(prec, 0);
        mpfr_mul_2si(r.m_, x.m_, static_cast<long>(x.off_), MPFR_RNDN);
        return r;  // deliberately not normalized
    }

    static mpfr_srcptr mant(const Scalar& x) { return x.m_; }
    static mpfr_ptr mant_mut(Scalar& x) { return x.m_; }
    static Scalar make(mpfr_prec_t prec) { return Scalar(prec, 0); }
    static void renorm(Scalar& x) { x.normalize(); }
    static std::int64_t off(const Scalar& x) { return x.off_; }
    static void set_off(Scalar& x, std::int64_t o) { x.off_ = o; }
};

Scalar operator+(const Scalar& a, const Scalar& b) { return ScalarOps::add(a, b, +1); }
Scalar operator-(const Scalar& a, const Scalar& b) { return ScalarOps::add(a, b, -1); }
Scalar operator*(const Scalar& a, const Scalar& b) { return ScalarOps::mul_prec(a, b, scalar_precision()); }
Scalar operator/(const Scalar& a, const Scalar& b) { return ScalarOps::div(a, b); }

Scalar& Scalar::operator+=(const Scalar& rhs) { return *this = *this + rhs; }
Scalar& Scalar::operator-=(const Scalar& rhs) { return *this = *this - rhs; }
Scalar& Scalar::operator*=(const Scalar& rhs) { return *this = *this * rhs; }
Scalar& Scalar::operator/=(const Scalar& rhs) { return *this = *this / rhs; }

int Scalar::cmp(const Scalar& a, const Scalar& b) {
    const int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    int mag;  // compare |a| vs |b|
    if (a.off_ != b.off_) mag = a.off_ < b.off_ ? -1 : 1;
    else mag = mpfr_cmpabs(a.m_, b.m_);
    return sa > 0 ? mag : -mag;
}

Scalar abs(const Scalar& x) {
    Scalar r(x);
    mpfr_abs(ScalarOps::mant_mut(r), ScalarOps::mant(r), MPFR_RNDN);
    return r;
}

Scalar exp(const Scalar& x) { return ScalarOps::exp_impl(x, scalar_precision()); }
Scalar log(const Scalar& x) { return ScalarOps::log_impl(x, scalar_precision()); }

Scalar log1p(const Scalar& x) {
    if (x.is_zero()) return Scalar(0);
    const mpfr_prec_t prec = scalar_precision();
    const std::int64_t o = ScalarOps::off(x);
    if (o <= -(static_cast<std::int64_t>(prec) + 8)) return x;  // log1p(x) = x to working precision
    if (o > (1 << 28)) return log(x) + log1p(Scalar(1) / x);
    Scalar mat = ScalarOps::materialize_small(x, prec + 16, "log1p");
    if (mpfr_cmp_si(ScalarOps::mant(mat), -1) <= 0) throw std::domain_error("Scalar log1p of value <= -1");
    Scalar r = ScalarOps::make(prec);
    mpfr_log1p(ScalarOps::mant_mut(r), ScalarOps::mant(mat), MPFR_RNDN);
    ScalarOps::renorm(r);
    return r;
}

Scalar sqrt(const Scalar& x) {
    if (x.sign() < 0) throw std::domain_error("Scalar sqrt of negative value");
    if (x.is_zero()) return Scalar(0);
    Scalar a(x);
    std::int64_t o = ScalarOps::off(a);
    if (o % 2 != 0) {
        mpfr_mul_2si(ScalarOps::mant_mut(a), ScalarOps::mant(a), 1, MPFR_RNDN);
        o -= 1;
    }
    ScalarOps::set_off(a, 0);
    Scalar r = ScalarOps::make(scalar_precision());
    mpfr_sqrt(ScalarOps::mant_mut(r), ScalarOps::mant(a), MPFR_RNDN);
    ScalarOps::renorm(r);
    return Scalar::ldexp2(r, o / 2);
}

namespace {
void check_trig_range(const Scalar& x, const char* what) {
    if (!x.is_zero() && (x.exponent2() > (1 << 22) || x.exponent2() < -(std::int64_t(1) << 28)))
        throw std::range_error(std::string("Scalar ") + what + ": argument out of reducible range");
}
}  // namespace

Scalar sin(const Scalar& x) {
    check_trig_range(x, "sin");
    Scalar mat = ScalarOps::materialize_small(x, scalar_precision() + 32, "sin");
    Scalar r = ScalarOps::make(scalar_precision());
    mpfr_sin(ScalarOps::mant_mut(r), ScalarOps::mant(mat), MPFR_RNDN);
    ScalarOps::renorm(r);
    return r;
}

Scalar cos(const Scalar& x) {
    check_trig_range(x, "cos");
    Scalar mat = ScalarOps::materialize_small(x, scalar_precision() + 32, "cos");
    Scalar r = ScalarOps::make(scalar_precision());
    mpfr_cos(ScalarOps::mant_mut(r), ScalarOps::mant(mat), MPFR_RNDN);
    ScalarOps::renorm(r);
    return r;
}

Scalar pow(const Scalar& x, long n) { return ScalarOps::pow_int(x, n); }

Scalar pow(const Scalar& x, const Scalar& y) {
    if (x.is_zero()) {
        if (y.sign() > 0) return Scalar(0);
        if (y.is_zero()) return Scalar(1);
        throw std::domain_error("Scalar pow: 0 raised to negative power");
    }
    if (x.sign() < 0) throw std::domain_error("Scalar pow: negative base with non-integer exponent");
    const mpfr_prec_t prec = scalar_precision();
    Scalar lx = ScalarOps::log_impl(x, prec + kGuardBits);
    return ScalarOps::exp_impl(ScalarOps::mul_prec(lx, y, prec + kGuardBits), prec);
}

double Scalar::to_double() const {
    if (is_zero()) return 0.0;
    const double m = mpfr_get_d(m_, MPFR_RNDN);
    const std::int64_t o = off_;
    if (o > 5000) return m > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    if (o < -5000) return m > 0 ? 0.0 : -0.0;
    return std::ldexp(m, static_cast<int>(o));
}

double Scalar::log2_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    Raw t(64);
    mpfr_abs(t.t, m_, MPFR_RNDN);
    mpfr_log2(t.t, t.t, MPFR_RNDN);
    return static_cast<double>(off_) + mpfr_get_d(t.t, MPFR_RNDN);
}

double Scalar::log10_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return log2_abs() * 0.30102999566398119521;
}

std::string Scalar::str(int significant_digits) const {
    if (is_zero()) return "0";
    long long e10 = static_cast<long long>(std::floor(log10_abs()));
    // r = |x| / 10^e10, computed in log space so any exponent works.
    const Scalar ln10 = log(Scalar(10));
    Scalar r = exp(log(abs(*this)) - Scalar(static_cast<long long>(e10)) * ln10);
    if (r >= Scalar(10)) {
        r = r / Scalar(10);
        e10 += 1;
    } else if (r < Scalar(1)) {
        r = r * Scalar(10);
        e10 -= 1;
    }
    Scalar mat = ScalarOps::materialize_small(r, scalar_precision(), "str");
    mpfr_exp_t de;
    char* s = mpfr_get_str(nullptr, &de, 10, static_cast<size_t>(significant_digits), ScalarOps::mant(mat), MPFR_RNDN);
    std::string digits(s);
    mpfr_free_str(s);
    const long long total_e10 = e10 + static_cast<long long>(de) - 1;
    std::ostringstream os;
    if (sign() < 0) os << '-';
    os << digits.substr(0, 1);
    if (digits.size() > 1) os << "." << digits.substr(1);
    if (total_e10 != 0) os << "e" << total_e10;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

namespace {
struct ConstCache {
    mpfr_prec_t prec = 0;
    Scalar value;
};
}  // namespace

Scalar scalar_ln2() {
    thread_local ConstCache cache;
    const mpfr_prec_t prec = scalar_precision();
    if (cache.prec != prec) {
        Scalar tmp = ScalarOps::make(prec);
        mpfr_const_log2(ScalarOps::mant_mut(tmp), MPFR_RNDN);
        ScalarOps::renorm(tmp);
        cache.prec = prec;
        cache.value = tmp;
    }
    return cache.value;
}

Scalar scalar_pi() {
    thread_local ConstCache cache;
    const mpfr_prec_t prec = scalar_precision();
    if (cache.prec != prec) {
        Scalar tmp = ScalarOps::make(prec);
        mpfr_const_pi(ScalarOps::mant_mut(tmp), MPFR_RNDN);
        ScalarOps::renorm(tmp);
        cache.prec = prec;
        cache.value = tmp;
    }
    return cache.value;
}

}  // namespace sep
