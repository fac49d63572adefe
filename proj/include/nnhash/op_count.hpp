// Instrumented scalar for operation counting.
//
// CountedScalar wraps a binary64 value. Every +, -, *, / on it is added to the
// thread's active OpTally, and the result carries the length of its longest
// dependency chain (separately for mul/div and add/sub). Running the
// templated hash on CountedScalar therefore yields both the sequential totals
// and the critical path of a fully parallel evaluation, where every neuron of
// a layer and both key-generator orbits proceed concurrently.
//
// Branch tests, clamps and floor() read the plain value and are not counted.
#pragma once

#include <algorithm>
#include <cstdint>

#include <Eigen/Core>

namespace nnhash {

struct OpTally {
  std::uint64_t mul = 0;
  std::uint64_t div = 0;
  std::uint64_t add = 0;
  std::uint64_t sub = 0;

  std::uint64_t mul_div() const { return mul + div; }
  std::uint64_t add_sub() const { return add + sub; }

  friend OpTally operator-(const OpTally& a, const OpTally& b) {
    return {a.mul - b.mul, a.div - b.div, a.add - b.add, a.sub - b.sub};
  }
  friend bool operator==(const OpTally&, const OpTally&) = default;
};

namespace detail {
inline thread_local OpTally* active_tally = nullptr;
}

/// Installs `tally` as the counting target for this thread while in scope.
class TallyScope {
 public:
  explicit TallyScope(OpTally& tally) : previous_(detail::active_tally) {
    detail::active_tally = &tally;
  }
  ~TallyScope() { detail::active_tally = previous_; }
  TallyScope(const TallyScope&) = delete;
  TallyScope& operator=(const TallyScope&) = delete;

 private:
  OpTally* previous_;
};

class CountedScalar {
 public:
  CountedScalar() = default;
  // Constants and inputs start with empty dependency chains.
  CountedScalar(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  double value() const { return value_; }
  std::uint32_t path_mul_div() const { return path_mul_div_; }
  std::uint32_t path_add_sub() const { return path_add_sub_; }

  friend CountedScalar operator+(const CountedScalar& a, const CountedScalar& b) {
    if (detail::active_tally) ++detail::active_tally->add;
    return combine(a.value_ + b.value_, a, b, 0, 1);
  }
  friend CountedScalar operator-(const CountedScalar& a, const CountedScalar& b) {
    if (detail::active_tally) ++detail::active_tally->sub;
    return combine(a.value_ - b.value_, a, b, 0, 1);
  }
  friend CountedScalar operator*(const CountedScalar& a, const CountedScalar& b) {
    if (detail::active_tally) ++detail::active_tally->mul;
    return combine(a.value_ * b.value_, a, b, 1, 0);
  }
  friend CountedScalar operator/(const CountedScalar& a, const CountedScalar& b) {
    if (detail::active_tally) ++detail::active_tally->div;
    return combine(a.value_ / b.value_, a, b, 1, 0);
  }

 private:
  static CountedScalar combine(double v, const CountedScalar& a, const CountedScalar& b,
                               std::uint32_t md, std::uint32_t as) {
    CountedScalar r(v);
    r.path_mul_div_ = std::max(a.path_mul_div_, b.path_mul_div_) + md;
    r.path_add_sub_ = std::max(a.path_add_sub_, b.path_add_sub_) + as;
    return r;
  }

  double value_ = 0.0;
  std::uint32_t path_mul_div_ = 0;
  std::uint32_t path_add_sub_ = 0;
};

inline double scalar_value(const CountedScalar& x) { return x.value(); }

}  // namespace nnhash

namespace Eigen {

template <>
struct NumTraits<nnhash::CountedScalar> : GenericNumTraits<double> {
  using Real = nnhash::CountedScalar;
  using NonInteger = nnhash::CountedScalar;
  using Nested = nnhash::CountedScalar;
  using Literal = nnhash::CountedScalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 1,
    MulCost = 1
  };
};

}  // namespace Eigen
