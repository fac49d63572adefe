// Keyed three-layer network mapping one 1024-bit block to a 128-bit digest.
//
//   input layer   32 -> 8   confusion,   f^t per neuron, 4 inputs each
//   hidden layer   8 -> 8   diffusion,   a single map step per neuron
//   output layer   8 -> 4   compression, f^t per neuron
//
// Every pre-activation is sum(w_i * x_i) in ascending i, plus the bias, then
// one mod1. Neurons are independent, so Execution::parallel only changes who
// evaluates them, never the result.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <execution>
#include <numeric>
#include <stdexcept>

#include <Eigen/Core>

#include "nnhash/chaos.hpp"
#include "nnhash/key_schedule.hpp"

namespace nnhash {

inline constexpr int kProductionIterations = 50;

enum class Execution { sequential, parallel };

/// 32 data words P0..P31.
struct Block {
  std::array<std::uint32_t, 32> words{};
  friend bool operator==(const Block&, const Block&) = default;
};

/// 4 digest words H0..H3; serialized H0 first, big-endian.
struct Digest {
  std::array<std::uint32_t, 4> words{};

  friend bool operator==(const Digest&, const Digest&) = default;
  friend Digest operator^(const Digest& a, const Digest& b) {
    Digest r;
    for (std::size_t i = 0; i < 4; ++i) r.words[i] = a.words[i] ^ b.words[i];
    return r;
  }
};

template <typename Scalar>
using Signal8 = Eigen::Matrix<Scalar, 8, 1>;
template <typename Scalar>
using Signal4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using BlockSignal = Eigen::Matrix<Scalar, 32, 1>;

namespace detail {

template <typename Fn>
void for_each_neuron(Execution exec, int count, Fn&& fn) {
  if (exec == Execution::parallel) {
    std::array<int, 8> idx{};
    std::iota(idx.begin(), idx.begin() + count, 0);
    std::for_each(std::execution::par, idx.begin(), idx.begin() + count, fn);
  } else {
    for (int j = 0; j < count; ++j) fn(j);
  }
}

inline void require_iterations(int t) {
  if (t < 1) throw std::invalid_argument("iteration count must be >= 1");
}

}  // namespace detail

template <typename Scalar>
BlockSignal<Scalar> quantize_block(const Block& block) {
  BlockSignal<Scalar> p;
  for (int i = 0; i < 32; ++i) p(i) = quantize_word<Scalar>(block.words[i]);
  return p;
}

/// C_j = f^t(mod1(sum_{i=4j}^{4j+3} w0_i p_i + b0_j); q0).
template <typename Scalar>
Signal8<Scalar> input_layer(const BlockSignal<Scalar>& p, const BlockSignal<Scalar>& w0,
                            const Signal8<Scalar>& b0, const Scalar& q0, int t,
                            Execution exec = Execution::sequential) {
  Signal8<Scalar> c;
  detail::for_each_neuron(exec, 8, [&](int j) {
    Scalar acc = w0(4 * j) * p(4 * j);
    for (int i = 4 * j + 1; i < 4 * j + 4; ++i) acc = acc + w0(i) * p(i);
    c(j) = map_iter(mod1(Scalar(acc + b0(j))), q0, t);
  });
  return c;
}

/// D_j = f(mod1(sum_i w1_{j,i} c_i + b1_j); q1), exactly one map step.
template <typename Scalar>
Signal8<Scalar> hidden_layer(const Signal8<Scalar>& c,
                             const Eigen::Matrix<Scalar, 8, 8, Eigen::RowMajor>& w1,
                             const Signal8<Scalar>& b1, const Scalar& q1,
                             Execution exec = Execution::sequential) {
  Signal8<Scalar> d;
  detail::for_each_neuron(exec, 8, [&](int j) {
    Scalar acc = w1(j, 0) * c(0);
    for (int i = 1; i < 8; ++i) acc = acc + w1(j, i) * c(i);
    d(j) = map_step(mod1(Scalar(acc + b1(j))), q1);
  });
  return d;
}

/// H_j = f^t(mod1(sum_i w2_{j,i} d_i + b2_j); q2).
template <typename Scalar>
Signal4<Scalar> output_layer(const Signal8<Scalar>& d,
                             const Eigen::Matrix<Scalar, 4, 8, Eigen::RowMajor>& w2,
                             const Signal4<Scalar>& b2, const Scalar& q2, int t,
                             Execution exec = Execution::sequential) {
  Signal4<Scalar> h;
  detail::for_each_neuron(exec, 4, [&](int j) {
    Scalar acc = w2(j, 0) * d(0);
    for (int i = 1; i < 8; ++i) acc = acc + w2(j, i) * d(i);
    h(j) = map_iter(mod1(Scalar(acc + b2(j))), q2, t);
  });
  return h;
}

/// word_j = min(floor(h_j * 2^32), 2^32 - 1).
template <typename Scalar>
Digest extract_digest(const Signal4<Scalar>& h) {
  Digest d;
  for (int j = 0; j < 4; ++j) {
    const double scaled = scalar_value(Scalar(h(j) * Scalar(0x1p32)));
    const double w = std::min(std::floor(scaled), 4294967295.0);
    d.words[j] = static_cast<std::uint32_t>(std::max(w, 0.0));
  }
  return d;
}

/// Intermediate signals of one block evaluation.
template <typename Scalar>
struct LayerTrace {
  BlockSignal<Scalar> p;
  Signal8<Scalar> c;
  Signal8<Scalar> d;
  Signal4<Scalar> h;
};

template <typename Scalar>
LayerTrace<Scalar> run_network(const Block& block, const BasicSubKeys<Scalar>& keys, int t,
                               Execution exec = Execution::sequential) {
  LayerTrace<Scalar> tr;
  tr.p = quantize_block<Scalar>(block);
  tr.c = input_layer<Scalar>(tr.p, keys.w0, keys.b0, keys.q0, t, exec);
  tr.d = hidden_layer<Scalar>(tr.c, keys.w1, keys.b1, keys.q1, exec);
  tr.h = output_layer<Scalar>(tr.d, keys.w2, keys.b2, keys.q2, t, exec);
  return tr;
}

/// Throws std::invalid_argument when t < 1. Production use needs
/// t >= kProductionIterations; smaller t is for tests only.
Digest hash_block(const Block& block, const SubKeys& keys, int t,
                  Execution exec = Execution::sequential);

}  // namespace nnhash
