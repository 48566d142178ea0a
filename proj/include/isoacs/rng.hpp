#pragma once

// Deterministic gaussian stream: std::mt19937_64 driving the Marsaglia polar
// transform.  std::normal_distribution is implementation-defined, so recorded
// minima would not reproduce across standard libraries; both algorithms used
// here are pinned by name (see README).

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "isoacs/delta.hpp"

namespace isoacs {

class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : eng_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = uniform_pm1();
      v = uniform_pm1();
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  void fill(std::vector<double>& out) {
    for (double& v : out) v = next();
  }

 private:
  // 53-bit uniform on [0,1), mapped affinely to (-1,1).
  double uniform_pm1() {
    const double u01 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return 2.0 * u01 - 1.0;
  }

  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Draws an orthonormal pair (X, ν) from the rotation-invariant measure on the
// Stiefel manifold V₂(ℝ^dim): two i.i.d. gaussian vectors, then Gram–Schmidt.
// Degenerate draws (norms below 1e-140) are rejected and redrawn, so the
// result is always feasible to machine precision.
inline AmbientPair random_orthonormal_pair(int dim, GaussianSampler& gauss) {
  AmbientPair pair{std::vector<double>(static_cast<std::size_t>(dim)),
                   std::vector<double>(static_cast<std::size_t>(dim))};
  for (;;) {
    gauss.fill(pair.x);
    gauss.fill(pair.nu);
    const double nx = norm(pair.x);
    if (nx < 1e-140) continue;
    for (double& v : pair.x) v /= nx;
    const double c = dot(pair.x, pair.nu);
    for (std::size_t k = 0; k < pair.nu.size(); ++k) pair.nu[k] -= c * pair.x[k];
    const double nn = norm(pair.nu);
    if (nn < 1e-140) continue;
    for (double& v : pair.nu) v /= nn;
    // Second pass: nearly parallel draws leave a residual of order ε/sin∠,
    // which in low dimensions shows up often enough to breach the pair
    // tolerance downstream.
    const double resid = dot(pair.x, pair.nu);
    for (std::size_t k = 0; k < pair.nu.size(); ++k) {
      pair.nu[k] -= resid * pair.x[k];
    }
    const double renorm = norm(pair.nu);
    if (renorm < 1e-140) continue;
    for (double& v : pair.nu) v /= renorm;
    return pair;
  }
}

} // namespace isoacs
