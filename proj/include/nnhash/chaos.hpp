// Piecewise linear chaotic map, its iterates, and modulo-1 arithmetic.
//
// Every routine here is templated on the scalar so the same code path can be
// run on plain binary64 (hashing) or on an instrumented scalar (operation
// counting, see op_count.hpp). For `double` the evaluation order is exactly
// as written; the library is compiled with -ffp-contract=off so no fused
// multiply-add can change a rounding.
#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace nnhash {

/// Plain value of a scalar, used for branch selection and clamping.
inline double scalar_value(double x) { return x; }

/// Control parameter Q of the map, kept strictly inside (0, 0.5).
class ChaosParam {
 public:
  static constexpr double kMin = 0x1p-20;
  static constexpr double kMax = 0.5 - 0x1p-20;

  /// Throws std::invalid_argument when q lies outside [kMin, kMax].
  explicit ChaosParam(double q) : q_(q) {
    if (!(q >= kMin && q <= kMax)) {
      throw std::invalid_argument("chaos parameter outside [2^-20, 0.5-2^-20]");
    }
  }

  double value() const { return q_; }

 private:
  double q_;
};

namespace detail {

template <typename Scalar>
Scalar clamp_unit(const Scalar& r) {
  if (scalar_value(r) < 0.0) return Scalar(0.0);
  if (scalar_value(r) > 1.0) return Scalar(1.0);
  return r;
}

}  // namespace detail

/// One application of the four-branch map. Intervals are [0,Q), [Q,0.5),
/// [0.5,1-Q), [1-Q,1]; the result is clamped to [0,1].
template <typename Scalar>
Scalar map_step(const Scalar& x, const Scalar& q) {
  const double xv = scalar_value(x);
  const double qv = scalar_value(q);
  assert(xv >= 0.0 && xv <= 1.0);
  if (xv < qv) {
    return detail::clamp_unit(Scalar(x / q));
  }
  if (xv < 0.5) {
    return detail::clamp_unit(Scalar((x - q) / (Scalar(0.5) - q)));
  }
  if (xv < 1.0 - qv) {
    return detail::clamp_unit(Scalar((Scalar(1.0) - q - x) / (Scalar(0.5) - q)));
  }
  return detail::clamp_unit(Scalar((Scalar(1.0) - x) / q));
}

inline double map_step(double x, ChaosParam q) { return map_step(x, q.value()); }

/// t-fold composition of map_step. t = 0 is the identity.
template <typename Scalar>
Scalar map_iter(Scalar x, const Scalar& q, int t) {
  if (t < 0) throw std::invalid_argument("iteration count must be non-negative");
  for (int i = 0; i < t; ++i) x = map_step(x, q);
  return x;
}

inline double map_iter(double x, ChaosParam q, int t) {
  return map_iter(x, q.value(), t);
}

/// Fractional part a - floor(a) for finite a >= 0. Values already in [0,1)
/// pass through untouched.
template <typename Scalar>
Scalar mod1(const Scalar& a) {
  const double av = scalar_value(a);
  assert(std::isfinite(av) && av >= 0.0);
  const double whole = std::floor(av);
  if (whole == 0.0) return a;
  return a - Scalar(whole);
}

/// Fraction of `trials` uniformly drawn starting points x for which the
/// t-step orbits of x and mod1(x + delta) end more than 0.1 apart.
double divergence_probe(double delta, ChaosParam q, int t, std::uint64_t trials,
                        std::uint64_t seed);

}  // namespace nnhash
