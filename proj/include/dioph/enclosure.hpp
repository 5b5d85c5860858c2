#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <string>

#include "dioph/number.hpp"

namespace dioph {

// Mantissa bits used when an irrational quantity has to be enclosed.
// DIOPH_PRECISION_BITS overrides the default of 256.
inline long initial_precision_bits() {
  if (const char* env = std::getenv("DIOPH_PRECISION_BITS")) {
    long bits = std::atol(env);
    if (bits >= 32 && bits <= 1 << 20) return bits;
  }
  return 256;
}

inline long& precision_bits_slot() {
  thread_local long bits = initial_precision_bits();
  return bits;
}

inline long precision_bits() { return precision_bits_slot(); }

class PrecisionScope {
 public:
  explicit PrecisionScope(long bits) : saved_(precision_bits_slot()) {
    precision_bits_slot() = bits;
  }
  ~PrecisionScope() { precision_bits_slot() = saved_; }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  long saved_;
};

namespace detail {

class Mpfr {
 public:
  explicit Mpfr(long bits = precision_bits()) { mpfr_init2(v_, bits); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

inline void assign(Mpfr& out, const Rational& q, mpfr_rnd_t rnd) {
  mpfr_set_q(out.get(), q.backend().data(), rnd);
}

inline Rational to_rational(const Mpfr& value) {
  Rational q;
  mpfr_get_q(q.backend().data(), value.get());
  return q;
}

inline Rational round_rational(const Rational& q, mpfr_rnd_t rnd) {
  Mpfr tmp;
  assign(tmp, q, rnd);
  return to_rational(tmp);
}

// Applies a monotone non-decreasing MPFR function to a rational argument,
// rounding the argument and the result in the same direction.
template <class Fn>
Rational apply_monotone(const Rational& q, mpfr_rnd_t rnd, Fn fn) {
  Mpfr arg;
  assign(arg, q, rnd);
  Mpfr out;
  fn(out.get(), arg.get(), rnd);
  return to_rational(out);
}

}  // namespace detail

enum class Truth { kFalse, kTrue, kUnknown };

constexpr const char* truth_name(Truth t) {
  switch (t) {
    case Truth::kFalse: return "false";
    case Truth::kTrue: return "true";
    case Truth::kUnknown: return "unknown";
  }
  return "unknown";
}

// Closed rational interval [lo, hi] containing a real quantity. Exact values
// are degenerate intervals and stay exact under + - * /.
class Enclosure {
 public:
  Enclosure() = default;
  Enclosure(const Rational& exact) : lo_(exact), hi_(exact) {}  // NOLINT
  Enclosure(long exact) : lo_(exact), hi_(exact) {}             // NOLINT
  Enclosure(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (hi_ < lo_) throw Error(ErrorCode::kDomainError, "inverted enclosure");
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool is_exact() const { return lo_ == hi_; }
  Rational width() const { return hi_ - lo_; }
  bool contains(const Rational& q) const { return lo_ <= q && q <= hi_; }
  bool overlaps(const Enclosure& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  bool positive() const { return lo_ > 0; }
  double mid_double() const { return to_double(Rational((lo_ + hi_) / 2)); }

  // Outward rounding of both endpoints to the working precision.
  Enclosure rounded() const {
    if (is_exact() && bit_length(numerator(lo_)) + bit_length(denominator(lo_)) <
                          static_cast<std::size_t>(precision_bits()))
      return *this;
    return Enclosure(detail::round_rational(lo_, MPFR_RNDD),
                     detail::round_rational(hi_, MPFR_RNDU));
  }

  Enclosure operator-() const { return Enclosure(-hi_, -lo_); }

  friend Enclosure operator+(const Enclosure& a, const Enclosure& b) {
    Enclosure r(a.lo_ + b.lo_, a.hi_ + b.hi_);
    return (a.is_exact() && b.is_exact()) ? r : r.rounded();
  }
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b) {
    return a + (-b);
  }
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    if (a.is_exact() && b.is_exact()) return Enclosure(Rational(a.lo_ * b.lo_));
    Rational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    return Enclosure(*std::min_element(p, p + 4), *std::max_element(p, p + 4))
        .rounded();
  }
  friend Enclosure operator/(const Enclosure& a, const Enclosure& b) {
    if (b.lo_ <= 0 && b.hi_ >= 0)
      throw Error(ErrorCode::kDomainError, "division by enclosure containing 0");
    if (a.is_exact() && b.is_exact()) return Enclosure(Rational(a.lo_ / b.lo_));
    return a * Enclosure(Rational(1 / b.hi_), Rational(1 / b.lo_));
  }

 private:
  Rational lo_ = 0;
  Rational hi_ = 0;
};

inline Enclosure pow(const Enclosure& x, long k) {
  if (k == 0) return Enclosure(1);
  if (k < 0) return Enclosure(1) / pow(x, -k);
  if (x.is_exact()) return Enclosure(pow_int(x.lo(), k));
  Rational a = pow_int(x.lo(), k);
  Rational b = pow_int(x.hi(), k);
  if (x.lo() >= 0) return Enclosure(a, b).rounded();
  if (x.hi() <= 0)
    return (k % 2 == 0 ? Enclosure(b, a) : Enclosure(a, b)).rounded();
  if (k % 2 == 1) return Enclosure(a, b).rounded();
  return Enclosure(Rational(0), std::max(a, b)).rounded();
}

inline Enclosure root(const Enclosure& x, unsigned long k) {
  if (x.lo() < 0) throw Error(ErrorCode::kDomainError, "root of negative");
  if (k == 1) return x;
  if (x.is_exact()) {
    // Perfect k-th powers keep an exact root.
    Integer num = numerator(x.lo()), den = denominator(x.lo());
    Integer a, b;
    if (mpz_root(a.backend().data(), num.backend().data(), k) &&
        mpz_root(b.backend().data(), den.backend().data(), k))
      return Enclosure(Rational(a, b));
  }
  auto rootn = [k](mpfr_ptr out, mpfr_srcptr in, mpfr_rnd_t rnd) {
    mpfr_rootn_ui(out, in, k, rnd);
  };
  return Enclosure(detail::apply_monotone(x.lo(), MPFR_RNDD, rootn),
                   detail::apply_monotone(x.hi(), MPFR_RNDU, rootn));
}

inline Enclosure sqrt(const Enclosure& x) { return root(x, 2); }

// x^(p/q) for positive x.
inline Enclosure pow(const Enclosure& x, const Rational& exponent) {
  Integer p = numerator(exponent);
  Integer q = denominator(exponent);
  if (q == 1) return pow(x, p.convert_to<long>());
  if (!x.positive())
    throw Error(ErrorCode::kDomainError, "fractional power of non-positive");
  Enclosure raised = pow(x, p.convert_to<long>()).rounded();
  return root(raised, q.convert_to<unsigned long>());
}

inline Enclosure exp(const Enclosure& x) {
  auto fn = [](mpfr_ptr out, mpfr_srcptr in, mpfr_rnd_t rnd) {
    mpfr_exp(out, in, rnd);
  };
  if (x.is_exact() && x.lo() == 0) return Enclosure(1);
  return Enclosure(detail::apply_monotone(x.lo(), MPFR_RNDD, fn),
                   detail::apply_monotone(x.hi(), MPFR_RNDU, fn));
}

inline Enclosure log(const Enclosure& x) {
  if (!x.positive()) throw Error(ErrorCode::kDomainError, "log of non-positive");
  if (x.is_exact() && x.lo() == 1) return Enclosure(0);
  auto fn = [](mpfr_ptr out, mpfr_srcptr in, mpfr_rnd_t rnd) {
    mpfr_log(out, in, rnd);
  };
  return Enclosure(detail::apply_monotone(x.lo(), MPFR_RNDD, fn),
                   detail::apply_monotone(x.hi(), MPFR_RNDU, fn));
}

inline Enclosure min(const Enclosure& a, const Enclosure& b) {
  return Enclosure(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}
inline Enclosure max(const Enclosure& a, const Enclosure& b) {
  return Enclosure(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

inline Truth less_equal(const Enclosure& a, const Enclosure& b) {
  if (a.hi() <= b.lo()) return Truth::kTrue;
  if (a.lo() > b.hi()) return Truth::kFalse;
  return Truth::kUnknown;
}

inline Truth less(const Enclosure& a, const Enclosure& b) {
  if (a.hi() < b.lo()) return Truth::kTrue;
  if (a.lo() >= b.hi()) return Truth::kFalse;
  return Truth::kUnknown;
}

// Decimal rendering with `digits` significant digits, rounded outward.
inline std::string to_decimal(const Rational& q, int digits, mpfr_rnd_t rnd) {
  detail::Mpfr v(std::max<long>(precision_bits(), 64));
  detail::assign(v, q, rnd);
  char* buf = nullptr;
  const char* fmt = rnd == MPFR_RNDD ? "%.*RDg" : rnd == MPFR_RNDU ? "%.*RUg" : "%.*RNg";
  mpfr_asprintf(&buf, fmt, digits, v.get());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

inline std::string to_decimal(const Enclosure& e, int digits = 17) {
  if (e.is_exact()) return to_decimal(e.lo(), digits, MPFR_RNDN);
  return "[" + to_decimal(e.lo(), digits, MPFR_RNDD) + ", " +
         to_decimal(e.hi(), digits, MPFR_RNDU) + "]";
}

// c = sqrt(2 d (d-1)), the wedge-norm constant of the main lemma.
inline Rational wedge_constant_squared(int d) { return Rational(2 * d * (d - 1)); }
inline Enclosure wedge_constant(int d) {
  return sqrt(Enclosure(wedge_constant_squared(d)));
}

}  // namespace dioph
