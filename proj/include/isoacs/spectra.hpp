#pragma once

// Principal-curvature spectra of minimal isoparametric hypersurfaces of the
// round sphere.
//
// An isoparametric family in S^{n+2} has g ∈ {1,2,3,4,6} distinct principal
// curvatures on each leaf,
//
//     λ_i = cot(θ₁ + (i-1)π/g),   θ₁ ∈ (0, π/g),
//
// with multiplicities alternating between two values m₁, m₂ (equal when g is
// odd, and equal and ∈ {1,2} when g = 6; for g = 3 the common value lies in
// {1,2,4,8}).  The minimal leaf is the unique level with Σ μ_i λ_i = 0.  For
// g = 4 that level has the closed form cos 2θ₁ = √(m₂/s), s = m₁+m₂, with the
// smaller multiplicity attached to the extreme curvatures; for the other g we
// locate θ₁ by bisection of the strictly decreasing map θ ↦ Σ μ_i cot(θ+(i-1)π/g).
//
// The eigenvalue labeling is canonical: multiplicities are stored in the
// pattern q,p,q,p,... with q = min{m₁,m₂}, so that (g,m₁,m₂) and (g,m₂,m₁)
// yield the identical spectrum (the swap reverses the unit normal, which would
// otherwise mirror every λ to -λ).

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace isoacs {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Bisection controls for the minimal-leaf angle.
inline constexpr double kAngleBracketEps = 1e-12;
inline constexpr double kAngleTol = 1e-14;
inline constexpr int kAngleMaxIter = 200;

struct FamilySpec {
  int g = 0;
  int m1 = 0;
  int m2 = 0;
};

enum class FamilyError {
  Ok,
  GOutOfRange,              // g ∉ {1,2,3,4,6}
  NonPositiveMultiplicity,  // m₁ < 1 or m₂ < 1
  UnequalMultiplicities,    // g ∈ {1,3,6} with m₁ ≠ m₂
  G3MultiplicityNotAllowed, // g = 3 with m ∉ {1,2,4,8}
  G6MultiplicityNotAllowed, // g = 6 with m ∉ {1,2}
};

struct ValidationResult {
  bool ok = false;
  FamilyError reason = FamilyError::Ok;
  std::string message;
};

inline ValidationResult validate_family(int g, int m1, int m2) {
  auto reject = [](FamilyError why, std::string msg) {
    return ValidationResult{false, why, std::move(msg)};
  };
  if (g != 1 && g != 2 && g != 3 && g != 4 && g != 6) {
    return reject(FamilyError::GOutOfRange,
                  "g must be one of 1,2,3,4,6; got " + std::to_string(g));
  }
  if (m1 < 1 || m2 < 1) {
    return reject(FamilyError::NonPositiveMultiplicity,
                  "multiplicities must be positive; got (" +
                      std::to_string(m1) + "," + std::to_string(m2) + ")");
  }
  if ((g == 1 || g == 3 || g == 6) && m1 != m2) {
    return reject(FamilyError::UnequalMultiplicities,
                  "g=" + std::to_string(g) + " requires m1 == m2; got (" +
                      std::to_string(m1) + "," + std::to_string(m2) + ")");
  }
  if (g == 3 && m1 != 1 && m1 != 2 && m1 != 4 && m1 != 8) {
    return reject(FamilyError::G3MultiplicityNotAllowed,
                  "g=3 requires m in {1,2,4,8}; got " + std::to_string(m1));
  }
  if (g == 6 && m1 != 1 && m1 != 2) {
    return reject(FamilyError::G6MultiplicityNotAllowed,
                  "g=6 requires m in {1,2}; got " + std::to_string(m1));
  }
  return ValidationResult{true, FamilyError::Ok, "ok"};
}

inline ValidationResult validate_family(const FamilySpec& spec) {
  return validate_family(spec.g, spec.m1, spec.m2);
}

// Ricci curvature sign of the minimal leaf, by the classification:
// positive for the g=1 spheres, for g ∈ {2,4} iff both multiplicities are at
// least 2, for g=3 iff m > 1, and never for g=6.
inline bool ricci_positive(const FamilySpec& spec) {
  const ValidationResult v = validate_family(spec);
  if (!v.ok) throw std::invalid_argument("ricci_positive: " + v.message);
  const int q = spec.m1 < spec.m2 ? spec.m1 : spec.m2;
  switch (spec.g) {
    case 1: return true;
    case 2: return q >= 2;
    case 3: return spec.m1 > 1;
    case 4: return q >= 2;
    default: return false; // g = 6
  }
}

struct Spectrum {
  FamilySpec spec;             // family as requested (order preserved)
  double theta1 = 0.0;         // minimal-leaf angle, θ₁ ∈ (0, π/g)
  std::vector<double> lambdas; // λ_1 > λ_2 > ... > λ_g
  std::vector<int> mults;      // canonical pattern q,p,q,p,... (q = min{m1,m2})
  int n = 0;                   // hypersurface dimension; Σ μ_i = n+1
  int s = 0;                   // m1 + m2
  int d = 0;                   // n + 3, ambient round-sphere dimension + 1
  double a = 0.0;              // max_i |λ_i|  (0 for g = 1)
  double b = 0.0;              // -min_i λ_i   (0 for g = 1)
  bool ricci_positive = false;

  int dim() const { return n + 1; } // dim of the leaf's tangent spaces
};

// Starting index of each curvature block inside a length-(n+1) coordinate
// vector adapted to the principal directions.
inline std::vector<int> block_offsets(const Spectrum& sp) {
  std::vector<int> off(sp.lambdas.size() + 1, 0);
  for (std::size_t i = 0; i < sp.mults.size(); ++i) {
    off[i + 1] = off[i] + sp.mults[i];
  }
  return off;
}

// Root of h(θ) = Σ μ_i cot(θ + (i-1)π/g) on (0, π/g).  h is strictly
// decreasing with h(0+) = +∞ and h(π/g-) = -∞, so plain bisection on the
// ε-shrunk bracket converges unconditionally.
inline double isoparametric_angle_bisection(int g, const std::vector<int>& mults,
                                            double bracket_eps = kAngleBracketEps,
                                            double tol = kAngleTol,
                                            int max_iter = kAngleMaxIter) {
  const double step = kPi / g;
  auto h = [&](double theta) {
    double sum = 0.0;
    for (int i = 0; i < g; ++i) {
      sum += mults[static_cast<std::size_t>(i)] * (1.0 / std::tan(theta + i * step));
    }
    return sum;
  };
  double lo = bracket_eps;
  double hi = step - bracket_eps;
  if (!(h(lo) > 0.0) || !(h(hi) < 0.0)) {
    throw std::runtime_error("isoparametric_angle_bisection: bracket lost");
  }
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  if (hi - lo > tol) {
    throw std::runtime_error("isoparametric_angle_bisection: no convergence");
  }
  return 0.5 * (lo + hi);
}

inline Spectrum minimal_spectrum(const FamilySpec& spec) {
  const ValidationResult v = validate_family(spec);
  if (!v.ok) throw std::invalid_argument("minimal_spectrum: " + v.message);

  const int q = spec.m1 < spec.m2 ? spec.m1 : spec.m2;
  const int p = spec.m1 < spec.m2 ? spec.m2 : spec.m1;

  Spectrum sp;
  sp.spec = spec;
  sp.s = spec.m1 + spec.m2;
  sp.mults.resize(static_cast<std::size_t>(spec.g));
  for (int i = 0; i < spec.g; ++i) {
    sp.mults[static_cast<std::size_t>(i)] = (i % 2 == 0) ? q : p;
  }

  if (spec.g == 1) {
    // Totally geodesic subsphere: a single vanishing curvature.
    sp.theta1 = 0.5 * kPi;
    sp.lambdas = {0.0};
  } else if (spec.g == 4) {
    // Minimal leaf in closed form: tan² 2θ₁ = q/p, i.e. cos 2θ₁ = √(p/s).
    sp.theta1 = 0.5 * std::acos(std::sqrt(static_cast<double>(p) / sp.s));
    sp.lambdas.resize(4);
  } else {
    sp.theta1 = isoparametric_angle_bisection(spec.g, sp.mults);
    sp.lambdas.resize(static_cast<std::size_t>(spec.g));
  }

  if (spec.g >= 2) {
    const double step = kPi / spec.g;
    for (int i = 0; i < spec.g; ++i) {
      sp.lambdas[static_cast<std::size_t>(i)] = 1.0 / std::tan(sp.theta1 + i * step);
    }
  }

  sp.n = 0;
  for (int m : sp.mults) sp.n += m;
  sp.n -= 1;
  sp.d = sp.n + 3;

  if (spec.g >= 2) {
    double amax = 0.0;
    for (double l : sp.lambdas) amax = std::max(amax, std::abs(l));
    sp.a = amax;
    sp.b = -sp.lambdas.back(); // λ_g is the most negative curvature
  }
  sp.ricci_positive = isoacs::ricci_positive(spec);
  return sp;
}

// |Σ μ_i λ_i| scaled by Σ μ_i |λ_i|; the minimal leaf should make this vanish
// to bisection accuracy.  Identically 0 for g = 1.
inline double minimality_residual(const Spectrum& sp) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < sp.lambdas.size(); ++i) {
    num += sp.mults[i] * sp.lambdas[i];
    den += sp.mults[i] * std::abs(sp.lambdas[i]);
  }
  return den > 0.0 ? std::abs(num) / den : 0.0;
}

} // namespace isoacs
