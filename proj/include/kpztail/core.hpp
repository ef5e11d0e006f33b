#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kpztail {

using Complex = std::complex<double>;

// Error taxonomy. Validation problems (bad input, bad configuration) and
// numerical failures are separated so callers such as the CLI can map them to
// distinct exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

class DomainError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ContourError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class CertificateError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ResourceError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class NonConvergence : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class OverflowError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class IllConditioned : public NumericalError {
public:
  using NumericalError::NumericalError;
};

namespace constants {
inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt_pi = 1.7724538509055160273;
inline constexpr double cbrt2 = 1.2599210498948731648;
inline constexpr double euler_gamma = std::numbers::egamma;
// Rightmost zero of Ai on the negative real axis.
inline constexpr double airy_zero_1 = -2.338107410459767039;
// log of the largest finite double, with a little headroom.
inline constexpr double log_max = 709.0;
}  // namespace constants

/// Controls for every series/asymptotic/quadrature evaluation.
struct AccuracyPolicy {
  double target_rel_tol = 1e-12;
  double target_abs_tol = 1e-300;
  int max_terms = 400;

  void validate() const {
    if (!(target_rel_tol > 0.0) || !(target_abs_tol > 0.0) || max_terms < 1) {
      throw DomainError("AccuracyPolicy: tolerances must be > 0 and max_terms >= 1");
    }
  }
};

/// Result of a quadrature- or series-based evaluation.
///
/// `value` may underflow to zero for exponentially small quantities;
/// `log_value` (natural log of |value|) always carries the magnitude.
template <class T>
struct Evaluated {
  T value{};
  double log_value = -std::numeric_limits<double>::infinity();
  double abs_err_est = 0.0;
  double rel_err_est = 0.0;
  long nodes_used = 0;
  // Set when the result is a fallback (e.g. asymptotic outside the
  // documented range of a numerical method).
  bool flagged = false;
};

using EvalResult = Evaluated<double>;
using ComplexEvalResult = Evaluated<Complex>;

/// A complex number stored as mantissa * exp(log_scale). Used for Airy and
/// Scorer values whose magnitude can leave the double range.
struct ScaledComplex {
  Complex mantissa{};
  Complex log_scale{};

  [[nodiscard]] Complex value() const { return mantissa * std::exp(log_scale); }
  [[nodiscard]] double log_abs() const { return std::log(std::abs(mantissa)) + log_scale.real(); }
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline void require_finite(Complex z, const char* where) {
  if (!is_finite(z)) {
    throw DomainError(std::string(where) + ": non-finite argument");
  }
}

inline void require_finite(double x, const char* where) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(where) + ": non-finite argument");
  }
}

/// zeta(z) = (2/3) z^{3/2} on the principal branch.
inline Complex zeta(Complex z) { return 2.0 / 3.0 * z * std::sqrt(z); }

/// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

/// Fill value/log_value of an EvalResult from a log-magnitude and sign.
inline EvalResult from_log(double log_value, double sign = 1.0) {
  EvalResult r;
  r.log_value = log_value;
  r.value = sign * std::exp(log_value);
  return r;
}

}  // namespace kpztail
