#pragma once

// Closed-form bounds, predicates, and exact-arithmetic certificates for the
// Δ minimization.  Everything here is a direct formula in (g, m₁, m₂) or in
// the scalars of a DeltaBreakdown.
//
// The two generic lower bounds come from discarding 2C² ≥ 0 and estimating
// the remaining F = 2Sx + 2Sν - B² + AB:
//
//     rough   = (2n-2) - 5a²        (Sx,Sν ≤ a², |AB|,B² ≤ a²)
//     refined = (2n-2) - (17/4)a²   (B² - AB ≥ -A²/4 and A² ≤ Sx)
//
// For g = 4 the moment relaxation is sharper: every λ_i lies in [-b, a], so
// λ_i² ≤ (a-b)λ_i + ab (the chord of the parabola), giving
// F ≤ G(A,B) = 2(a-b)A + 2(a-b)B + 4ab - B² + AB, and when b ≤ a/2 the
// maximum of G over the box is G(a,a) = 4a².  Hence Δ ≥ (2n-2) - 4a²,
// attained by an orthonormal pair inside the largest-|λ| eigenspace whenever
// that block is at least 2-dimensional.
//
// Sign claims that sit near zero (the s = 19/20 flip of 16s² - 304s - 1, the
// ratio bound 80s(s-1)/(4s+1)² < 5) are certified in exact integer/rational
// arithmetic so they cannot be floating-point artifacts.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "isoacs/delta.hpp"
#include "isoacs/spectra.hpp"

namespace isoacs {

// Tolerance band for algebraic predicates with a non-strict boundary.
inline constexpr double kPredicateBand = 1e-12;
// Slack admitted on moment_G's box domain.
inline constexpr double kMomentDomainTol = 1e-9;

struct BoundReport {
  double rough = 0.0;                  // (2n-2) - 5a²
  double refined = 0.0;                // (2n-2) - (17/4)a²
  std::optional<double> optimal;       // 4s-4-4a², g = 4 only
  std::optional<double> extremal_delta;// (2n-2) - 4a², needs a 2-dim extreme block
  std::optional<bool> threshold_ok;    // q > 4 - 4/s, g = 4 only
  std::optional<bool> b_le_half_a;     // g = 4 only
  double index_coeff = 0.0;            // 2/(d(d-1))
};

inline double index_coefficient(const Spectrum& sp) {
  return 2.0 / (static_cast<double>(sp.d) * (sp.d - 1));
}

inline double g3_estimate(const Spectrum& sp) {
  if (sp.spec.g != 3) {
    throw std::domain_error("g3_estimate: defined for g=3 only");
  }
  // Δ ≥ (2n-2) - 2·3 - 2·3 - 3: drop 2C² and B², bound Sx,Sν by a² = 3 and
  // -AB by |A||B| ≤ 3.
  return (2.0 * sp.n - 2.0) - 15.0;
}

// G(A,B) = 2(a-b)A + 2(a-b)B + 4ab - B² + AB, the chord-relaxed upper bound
// for F on the moment box [-b, a]².
inline double moment_G(const Spectrum& sp, double A, double B) {
  if (sp.spec.g != 4) {
    throw std::domain_error("moment_G: defined for g=4 only");
  }
  const double lo = -sp.b - kMomentDomainTol;
  const double hi = sp.a + kMomentDomainTol;
  if (A < lo || A > hi || B < lo || B > hi) {
    throw std::domain_error("moment_G: arguments outside [-b, a]");
  }
  return 2.0 * (sp.a - sp.b) * A + 2.0 * (sp.a - sp.b) * B + 4.0 * sp.a * sp.b -
         B * B + A * B;
}

// F = 2Sx + 2Sν - B² + AB, so that Δ = (2n-2) - F + 2C².
inline double F_value(const DeltaBreakdown& bd) {
  return 2.0 * bd.Sx + 2.0 * bd.Snu - bd.B * bd.B + bd.A * bd.B;
}

// [b ≤ a/2], decided through the cancellation-free equivalent a² - 3a - 2 ≥ 0
// (with b = (a+1)/(a-1) this is the same inequality cleared of denominators);
// the boundary band counts as true, matching the non-strict inequality.
inline bool b_le_half_a(const Spectrum& sp) {
  if (sp.spec.g != 4) {
    throw std::domain_error("b_le_half_a: defined for g=4 only");
  }
  return sp.a * sp.a - 3.0 * sp.a - 2.0 >= -kPredicateBand;
}

// [q > 4 - 4/s] in exact integers: q·s > 4s - 4.
inline bool pointwise_threshold(const Spectrum& sp) {
  if (sp.spec.g != 4) {
    throw std::domain_error("pointwise_threshold: defined for g=4 only");
  }
  const long long q = std::min(sp.spec.m1, sp.spec.m2);
  const long long s = sp.s;
  return q * s > 4 * s - 4;
}

// Index of the first block attaining max |λ_i| that is at least
// 2-dimensional; ties between ±λ blocks always carry equal multiplicities.
inline std::optional<std::size_t> extremal_block(const Spectrum& sp) {
  const double cutoff = sp.a * (1.0 - kPredicateBand);
  for (std::size_t i = 0; i < sp.lambdas.size(); ++i) {
    if (std::abs(sp.lambdas[i]) >= cutoff && sp.mults[i] >= 2) {
      return i;
    }
  }
  return std::nullopt;
}

// Orthonormal X, ν inside the largest-|λ| eigenspace; realizes
// Δ = (2n-2) - 4a².
inline AmbientPair extremal_pair(const Spectrum& sp) {
  const std::optional<std::size_t> blk = extremal_block(sp);
  if (!blk) {
    throw std::domain_error(
        "extremal_pair: largest-|λ| block is 1-dimensional, configuration "
        "does not exist");
  }
  const std::vector<int> off = block_offsets(sp);
  const std::size_t dim = static_cast<std::size_t>(sp.dim());
  AmbientPair pair{std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
  pair.x[static_cast<std::size_t>(off[*blk])] = 1.0;
  pair.nu[static_cast<std::size_t>(off[*blk]) + 1] = 1.0;
  return pair;
}

inline BoundReport bound_report(const Spectrum& sp) {
  BoundReport rep;
  const double base = 2.0 * sp.n - 2.0;
  const double asq = sp.a * sp.a;
  rep.rough = base - 5.0 * asq;
  rep.refined = base - 4.25 * asq;
  if (sp.spec.g == 4) {
    rep.optimal = 4.0 * sp.s - 4.0 - 4.0 * asq;
    rep.threshold_ok = pointwise_threshold(sp);
    rep.b_le_half_a = isoacs::b_le_half_a(sp);
  }
  if (extremal_block(sp)) {
    rep.extremal_delta = base - 4.0 * asq;
  }
  rep.index_coeff = index_coefficient(sp);
  return rep;
}

// ---------------------------------------------------------------------------
// Exact-arithmetic certificates.

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// 16s² - 304s - 1: negative exactly for s ≤ 19 among integers s ≥ 8.
inline BigInt refined_range_quadratic(long long s) {
  const BigInt S = s;
  return 16 * S * S - 304 * S - 1;
}

// 5(4s+1)² - 80s(s-1); collapses to 120s + 5.
inline BigInt completed_square_gap(long long s) {
  const BigInt S = s;
  return 5 * (4 * S + 1) * (4 * S + 1) - 80 * S * (S - 1);
}

// 80s(s-1)/(4s+1)², the quantity that must stay below 5.
inline BigRat rough_threshold_ratio(long long s) {
  const BigInt S = s;
  return BigRat(80 * S * (S - 1), (4 * S + 1) * (4 * S + 1));
}

struct CertificateSet {
  bool quadratic_sign_ok = false;  // 16s²-304s-1 < 0 ⟺ s ≤ 19 on s ∈ [8,200]
  long long quadratic_at_19 = 0;   // expected -1
  long long quadratic_at_20 = 0;   // expected 319
  bool square_gap_ok = false;      // 5(4s+1)²-80s(s-1) == 120s+5 on s ∈ [2,100]
  bool ratio_bound_ok = false;     // 80s(s-1)/(4s+1)² < 5 on s ∈ [2,100]
  bool sharp_gap_ok = false;       // q=4: s-1-a² == 2/(1+x), x = √(1-4/s), s ∈ [8,60]

  bool all_ok() const {
    return quadratic_sign_ok && quadratic_at_19 == -1 && quadratic_at_20 == 319 &&
           square_gap_ok && ratio_bound_ok && sharp_gap_ok;
  }
};

inline CertificateSet integer_certificates() {
  CertificateSet cs;

  cs.quadratic_sign_ok = true;
  for (long long s = 8; s <= 200; ++s) {
    const bool neg = refined_range_quadratic(s) < 0;
    if (neg != (s <= 19)) cs.quadratic_sign_ok = false;
  }
  cs.quadratic_at_19 = refined_range_quadratic(19).convert_to<long long>();
  cs.quadratic_at_20 = refined_range_quadratic(20).convert_to<long long>();

  cs.square_gap_ok = true;
  cs.ratio_bound_ok = true;
  for (long long s = 2; s <= 100; ++s) {
    if (completed_square_gap(s) != 120 * BigInt(s) + 5) cs.square_gap_ok = false;
    // 80s(s-1) < 5(4s+1)², compared as integers.
    const BigInt S = s;
    if (!(80 * S * (S - 1) < 5 * (4 * S + 1) * (4 * S + 1))) {
      cs.ratio_bound_ok = false;
    }
  }

  // Sharp-margin identity for q = 4: with x = √(1-4/s) and
  // a² = (1+x)/(1-x), the margin (4s-4-4a²)/4 = s-1-a² equals 2/(1+x).
  cs.sharp_gap_ok = true;
  for (long long s = 8; s <= 60; ++s) {
    const double x = std::sqrt(1.0 - 4.0 / static_cast<double>(s));
    // a² = (1+x)/(1-x) = (1+x)²·s/4, the second form avoiding the 1-x
    // cancellation so the s-1-a² difference carries full precision.
    const double asq = (1.0 + x) * (1.0 + x) * static_cast<double>(s) / 4.0;
    const double lhs = static_cast<double>(s) - 1.0 - asq;
    const double rhs = 2.0 / (1.0 + x);
    if (std::abs(lhs - rhs) > 1e-12 * std::abs(rhs)) cs.sharp_gap_ok = false;
  }
  return cs;
}

} // namespace isoacs
