// Straight-line transcription of the map, key generator and the three layers,
// written against plain arrays. Shares no code with the library beyond the
// ChainKey byte accessors; used as the independent oracle in tests.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace reference {

inline double pwlcm(double x, double q) {
  double r;
  if (0.0 <= x && x < q) {
    r = x / q;
  } else if (q <= x && x < 0.5) {
    r = (x - q) / (0.5 - q);
  } else if (0.5 <= x && x < 1.0 - q) {
    r = (1.0 - q - x) / (0.5 - q);
  } else {
    r = (1.0 - x) / q;
  }
  if (r > 1.0) r = 1.0;
  if (r < 0.0) r = 0.0;
  return r;
}

inline double pwlcm_n(double x, double q, int n) {
  for (int i = 0; i < n; ++i) x = pwlcm(x, q);
  return x;
}

inline double frac(double a) { return a < 1.0 ? a : a - std::floor(a); }

inline double param(double u) {
  double q = u / 2.0;
  if (q < 0x1p-20) q = 0x1p-20;
  if (q > 0.5 - 0x1p-20) q = 0.5 - 0x1p-20;
  return q;
}

inline double seed(double x) {
  if (x < 0x1p-32) x = 0x1p-32;
  if (x > 1.0 - 0x1p-32) x = 1.0 - 0x1p-32;
  return x;
}

/// Sub-key k = (f^(T+k)(K0,K1) + f^(T+k)(K2,K3)) mod 1, each orbit iterated
/// from scratch for every k.
inline std::vector<double> subkeys(const std::array<std::uint32_t, 4>& k, int count, int t) {
  const double x0 = seed(k[0] / 4294967296.0);
  const double qa = param(k[1] / 4294967296.0);
  const double x1 = seed(k[2] / 4294967296.0);
  const double qb = param(k[3] / 4294967296.0);
  std::vector<double> out;
  for (int j = 0; j < count; ++j) {
    out.push_back(frac(pwlcm_n(x0, qa, t + j) + pwlcm_n(x1, qb, t + j)));
  }
  return out;
}

struct Net {
  double w0[32], b0[8], q0;
  double w1[8][8], b1[8], q1;
  double w2[4][8], b2[4], q2;
};

inline Net unpack(const std::vector<double>& s) {
  Net n{};
  int i = 0;
  for (double& w : n.w0) w = s[i++];
  for (double& b : n.b0) b = s[i++];
  n.q0 = param(s[i++]);
  for (auto& row : n.w1)
    for (double& w : row) w = s[i++];
  for (double& b : n.b1) b = s[i++];
  n.q1 = param(s[i++]);
  for (auto& row : n.w2)
    for (double& w : row) w = s[i++];
  for (double& b : n.b2) b = s[i++];
  n.q2 = param(s[i++]);
  return n;
}

inline std::array<double, 8> layer0(const double p[32], const Net& n, int t) {
  std::array<double, 8> c{};
  for (int j = 0; j < 8; ++j) {
    double z = n.w0[4 * j] * p[4 * j];
    z = z + n.w0[4 * j + 1] * p[4 * j + 1];
    z = z + n.w0[4 * j + 2] * p[4 * j + 2];
    z = z + n.w0[4 * j + 3] * p[4 * j + 3];
    z = z + n.b0[j];
    c[j] = pwlcm_n(frac(z), n.q0, t);
  }
  return c;
}

inline std::array<double, 8> layer1(const std::array<double, 8>& c, const Net& n) {
  std::array<double, 8> d{};
  for (int j = 0; j < 8; ++j) {
    double z = n.w1[j][0] * c[0];
    for (int i = 1; i < 8; ++i) z = z + n.w1[j][i] * c[i];
    z = z + n.b1[j];
    d[j] = pwlcm(frac(z), n.q1);
  }
  return d;
}

inline std::array<double, 4> layer2(const std::array<double, 8>& d, const Net& n, int t) {
  std::array<double, 4> h{};
  for (int j = 0; j < 4; ++j) {
    double z = n.w2[j][0] * d[0];
    for (int i = 1; i < 8; ++i) z = z + n.w2[j][i] * d[i];
    z = z + n.b2[j];
    h[j] = pwlcm_n(frac(z), n.q2, t);
  }
  return h;
}

inline std::array<std::uint32_t, 4> block_digest(const std::array<std::uint32_t, 32>& words,
                                                 const std::array<std::uint32_t, 4>& key, int t) {
  const Net n = unpack(subkeys(key, 151, t));
  double p[32];
  for (int i = 0; i < 32; ++i) p[i] = words[i] / 4294967296.0;
  const auto h = layer2(layer1(layer0(p, n, t), n), n, t);
  std::array<std::uint32_t, 4> out{};
  for (int j = 0; j < 4; ++j) {
    const double s = std::floor(h[j] * 4294967296.0);
    out[j] = s >= 4294967295.0 ? 0xFFFFFFFFu : static_cast<std::uint32_t>(s);
  }
  return out;
}

}  // namespace reference
