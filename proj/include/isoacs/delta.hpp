#pragma once

// The pointwise stability integrand Δ(X,ν) on a minimal isoparametric
// hypersurface N^{n+1} ⊂ S^{n+2}, for an orthonormal pair X, ν ∈ T_pN.
//
// In principal-curvature coordinates, with A = Σ x_i²λ_i, B = Σ ν_i²λ_i,
// C = Σ x_iν_iλ_i, Sx = Σ x_i²λ_i², Sν = Σ ν_i²λ_i², the integrand collapses
// to
//
//     Δ = (2n-2) - 2Sx - 2Sν + 2C² + B² - AB.                       (formula)
//
// `delta_definition` recomputes the same quantity along the geometric route:
// Gauss-equation curvature sums of N as a submanifold of the round sphere,
// minus the second-fundamental-form payload of the pair, without performing
// the collapsing algebra.  Agreement of the two routes is a regression test of
// the algebra, so the definition route deliberately shares nothing with the
// formula beyond the raw block sums.
//
// Since all coefficients are constant on curvature blocks, Δ only sees the
// block masses p_i = Σ_block x², q_i = Σ_block ν², r_i = Σ_block xν
// (`reduce`), and any feasible reduced point with r_i² ≤ p_iq_i can be
// realized by an orthonormal pair again (`lift`) provided no single-direction
// block is asked to carry off-diagonal mass.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isoacs/spectra.hpp"

namespace isoacs {

// Orthonormality tolerance for ambient pairs.
inline constexpr double kPairTol = 1e-12;
// Feasibility tolerance for reduced points.
inline constexpr double kReducedTol = 1e-9;

struct AmbientPair {
  std::vector<double> x;
  std::vector<double> nu;
};

struct DeltaBreakdown {
  double A = 0.0;   // Σ x_i² λ_i
  double B = 0.0;   // Σ ν_i² λ_i
  double C = 0.0;   // Σ x_i ν_i λ_i
  double Sx = 0.0;  // Σ x_i² λ_i²
  double Snu = 0.0; // Σ ν_i² λ_i²
  double delta = 0.0;
};

// Gauss-equation route, kept as the four geometric summands.
struct DefinitionBreakdown {
  double curvature_sum = 0.0; // Ric(X,X) - R(ν,X,ν,X)
  double ricci_nu = 0.0;      // Ric(ν,ν)
  double pi_x_sum = 0.0;      // Σ_k |Π(e_k,X)|² over e_k ⊥ ν
  double pi_nu_sum = 0.0;     // Σ_k |Π(e_k,ν)|² over e_k ⊥ ν

  double total() const { return curvature_sum + ricci_nu - pi_x_sum - pi_nu_sum; }
};

// Block masses of an ambient pair: p_i, q_i ≥ 0 sum to 1 each, Σ r_i = 0,
// and Cauchy-Schwarz gives r_i² ≤ p_i q_i per block.
struct ReducedPoint {
  std::vector<double> p;
  std::vector<double> q;
  std::vector<double> r;
};

inline double dot(const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) s += u[k] * v[k];
  return s;
}

inline double norm(const std::vector<double>& u) { return std::sqrt(dot(u, u)); }

// Largest violation of |X|=|ν|=1, ⟨X,ν⟩=0 (∞ on a size mismatch).
inline double pair_feasibility_error(const Spectrum& sp, const AmbientPair& pair) {
  const std::size_t dim = static_cast<std::size_t>(sp.dim());
  if (pair.x.size() != dim || pair.nu.size() != dim) {
    return std::numeric_limits<double>::infinity();
  }
  double err = std::abs(norm(pair.x) - 1.0);
  err = std::max(err, std::abs(norm(pair.nu) - 1.0));
  err = std::max(err, std::abs(dot(pair.x, pair.nu)));
  return err;
}

inline void validate_pair(const Spectrum& sp, const AmbientPair& pair,
                          const char* where, double tol = kPairTol) {
  const std::size_t dim = static_cast<std::size_t>(sp.dim());
  if (pair.x.size() != dim || pair.nu.size() != dim) {
    throw std::invalid_argument(std::string(where) + ": pair has dimension " +
                                std::to_string(pair.x.size()) + "/" +
                                std::to_string(pair.nu.size()) + ", expected " +
                                std::to_string(dim));
  }
  if (pair_feasibility_error(sp, pair) > tol) {
    throw std::invalid_argument(std::string(where) +
                                ": pair is not orthonormal within tolerance");
  }
}

// Block sums (Σx², Σν², Σxν, and λ-weighted versions) in one pass.
inline DeltaBreakdown delta_formula(const Spectrum& sp, const AmbientPair& pair) {
  validate_pair(sp, pair, "delta_formula");
  DeltaBreakdown out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < sp.lambdas.size(); ++i) {
    const double lam = sp.lambdas[i];
    double px = 0.0, pnu = 0.0, pr = 0.0;
    for (int j = 0; j < sp.mults[i]; ++j, ++k) {
      px += pair.x[k] * pair.x[k];
      pnu += pair.nu[k] * pair.nu[k];
      pr += pair.x[k] * pair.nu[k];
    }
    out.A += px * lam;
    out.B += pnu * lam;
    out.C += pr * lam;
    out.Sx += px * lam * lam;
    out.Snu += pnu * lam * lam;
  }
  out.delta = (2.0 * sp.n - 2.0) - 2.0 * out.Sx - 2.0 * out.Snu +
              2.0 * out.C * out.C + out.B * out.B - out.A * out.B;
  return out;
}

// The same polynomial, extended off the constraint set: no feasibility check,
// inputs are arbitrary vectors of the right length.  delta_gradient is the
// Euclidean gradient of precisely this function, which makes it the right
// object to difference when checking the gradient by finite differences
// (perturbed points x ± h·e_k are not orthonormal).
inline double delta_polynomial(const Spectrum& sp,
                               const std::vector<double>& x,
                               const std::vector<double>& nu) {
  const std::size_t dim = static_cast<std::size_t>(sp.dim());
  if (x.size() != dim || nu.size() != dim) {
    throw std::invalid_argument("delta_polynomial: vector length mismatch");
  }
  double A = 0.0, B = 0.0, C = 0.0, Sx = 0.0, Snu = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < sp.lambdas.size(); ++i) {
    const double lam = sp.lambdas[i];
    double px = 0.0, pnu = 0.0, pr = 0.0;
    for (int j = 0; j < sp.mults[i]; ++j, ++k) {
      px += x[k] * x[k];
      pnu += nu[k] * nu[k];
      pr += x[k] * nu[k];
    }
    A += px * lam;
    B += pnu * lam;
    C += pr * lam;
    Sx += px * lam * lam;
    Snu += pnu * lam * lam;
  }
  return (2.0 * sp.n - 2.0) - 2.0 * Sx - 2.0 * Snu + 2.0 * C * C + B * B -
         A * B;
}

// Geometric route.  N sits in S^{n+2} with shape operator diag(λ) and in
// R^{n+3} with the additional umbilic normal (the sphere's position vector),
// so for tangent vectors U, V the Gauss equation of N ⊂ S^{n+2} reads
//     R(U,V,U,V) = (|U|²|V|² - ⟨U,V⟩²) + (II(U,U)II(V,V) - II(U,V)²),
// with II the λ-weighted sum.  Nothing below assumes Σ μ_iλ_i = 0 or exact
// orthonormality; those enter only through the inputs.
inline DefinitionBreakdown delta_definition(const Spectrum& sp, const AmbientPair& pair) {
  validate_pair(sp, pair, "delta_definition");

  // Raw weighted sums and honest inner products.
  double A = 0.0, B = 0.0, C = 0.0, Sx = 0.0, Snu = 0.0;
  double xx = 0.0, nn = 0.0, xn = 0.0;
  double lambda_trace = 0.0; // Σ μ_i λ_i, kept symbolic rather than assumed 0
  std::size_t k = 0;
  for (std::size_t i = 0; i < sp.lambdas.size(); ++i) {
    const double lam = sp.lambdas[i];
    lambda_trace += sp.mults[i] * lam;
    for (int j = 0; j < sp.mults[i]; ++j, ++k) {
      const double xv = pair.x[k], nv = pair.nu[k];
      xx += xv * xv;
      nn += nv * nv;
      xn += xv * nv;
      A += xv * xv * lam;
      B += nv * nv * lam;
      C += xv * nv * lam;
      Sx += xv * xv * lam * lam;
      Snu += nv * nv * lam * lam;
    }
  }

  DefinitionBreakdown out;
  // Ric(X,X) = Σ_k R(e_k,X,e_k,X) over a full orthonormal basis.
  const double ric_x = sp.n * xx + lambda_trace * A - Sx;
  const double ric_nu = sp.n * nn + lambda_trace * B - Snu;
  // The plane section spanned by ν and X.
  const double sec_nu_x = (nn * xx - xn * xn) + (B * A - C * C);
  out.curvature_sum = ric_x - sec_nu_x;
  out.ricci_nu = ric_nu;
  // Second fundamental form of N ⊂ R^{n+3}: Π(U,V) = (II(U,V), -⟨U,V⟩).
  // Summed over a basis of ν^⊥: full trace minus the ν-direction.
  out.pi_x_sum = (Sx + xx) - (C * C + xn * xn);
  out.pi_nu_sum = (Snu + nn) - (B * B + nn * nn);
  return out;
}

// Euclidean gradient of the collapsed formula in the 2(n+1) coordinates of
// (X,ν); the optimizer projects it to the orthonormality constraint set.
inline std::pair<std::vector<double>, std::vector<double>>
delta_gradient(const Spectrum& sp, const AmbientPair& pair) {
  validate_pair(sp, pair, "delta_gradient");
  const DeltaBreakdown bd = delta_formula(sp, pair);
  const std::size_t dim = static_cast<std::size_t>(sp.dim());
  std::vector<double> gx(dim, 0.0), gnu(dim, 0.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < sp.lambdas.size(); ++i) {
    const double lam = sp.lambdas[i];
    for (int j = 0; j < sp.mults[i]; ++j, ++k) {
      gx[k] = -4.0 * lam * lam * pair.x[k] + 4.0 * bd.C * lam * pair.nu[k] -
              2.0 * bd.B * lam * pair.x[k];
      gnu[k] = -4.0 * lam * lam * pair.nu[k] + 4.0 * bd.C * lam * pair.x[k] +
               (4.0 * bd.B - 2.0 * bd.A) * lam * pair.nu[k];
    }
  }
  return {std::move(gx), std::move(gnu)};
}

inline ReducedPoint reduce(const Spectrum& sp, const AmbientPair& pair) {
  validate_pair(sp, pair, "reduce");
  const std::size_t g = sp.lambdas.size();
  ReducedPoint pt{std::vector<double>(g, 0.0), std::vector<double>(g, 0.0),
                  std::vector<double>(g, 0.0)};
  std::size_t k = 0;
  for (std::size_t i = 0; i < g; ++i) {
    for (int j = 0; j < sp.mults[i]; ++j, ++k) {
      pt.p[i] += pair.x[k] * pair.x[k];
      pt.q[i] += pair.nu[k] * pair.nu[k];
      pt.r[i] += pair.x[k] * pair.nu[k];
    }
  }
  return pt;
}

// Feasibility of a reduced point: simplex masses, Σ r_i = 0, and the per-block
// Cauchy-Schwarz box r_i² ≤ p_i q_i, all within `tol`.
inline double reduced_feasibility_error(const Spectrum& sp, const ReducedPoint& pt) {
  const std::size_t g = sp.lambdas.size();
  if (pt.p.size() != g || pt.q.size() != g || pt.r.size() != g) {
    return std::numeric_limits<double>::infinity();
  }
  double err = 0.0, sp_sum = 0.0, sq_sum = 0.0, sr_sum = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    err = std::max(err, -pt.p[i]);
    err = std::max(err, -pt.q[i]);
    err = std::max(err, pt.r[i] * pt.r[i] - pt.p[i] * pt.q[i]);
    sp_sum += pt.p[i];
    sq_sum += pt.q[i];
    sr_sum += pt.r[i];
  }
  err = std::max(err, std::abs(sp_sum - 1.0));
  err = std::max(err, std::abs(sq_sum - 1.0));
  err = std::max(err, std::abs(sr_sum));
  return err;
}

inline void validate_reduced(const Spectrum& sp, const ReducedPoint& pt,
                             const char* where, double tol = kReducedTol) {
  if (reduced_feasibility_error(sp, pt) > tol) {
    throw std::invalid_argument(std::string(where) +
                                ": reduced point violates feasibility");
  }
}

inline double delta_reduced(const Spectrum& sp, const ReducedPoint& pt) {
  validate_reduced(sp, pt, "delta_reduced");
  double A = 0.0, B = 0.0, C = 0.0, Sx = 0.0, Snu = 0.0;
  for (std::size_t i = 0; i < sp.lambdas.size(); ++i) {
    const double lam = sp.lambdas[i];
    A += pt.p[i] * lam;
    B += pt.q[i] * lam;
    C += pt.r[i] * lam;
    Sx += pt.p[i] * lam * lam;
    Snu += pt.q[i] * lam * lam;
  }
  return (2.0 * sp.n - 2.0) - 2.0 * Sx - 2.0 * Snu + 2.0 * C * C + B * B - A * B;
}

// Realize a feasible reduced point as an orthonormal pair.  Per block, X takes
// the first principal direction with weight √p_i; ν splits into a component
// along it (carrying the cross mass r_i) and one along the second direction.
// A block of multiplicity 1 has no second direction, so it can only host a
// reduced point with r_i² = p_i q_i there (up to tolerance).
inline AmbientPair lift(const Spectrum& sp, const ReducedPoint& pt) {
  validate_reduced(sp, pt, "lift");
  const std::size_t dim = static_cast<std::size_t>(sp.dim());
  AmbientPair pair{std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
  std::size_t off = 0;
  for (std::size_t i = 0; i < sp.lambdas.size(); ++i) {
    const int mult = sp.mults[i];
    const double p = std::max(pt.p[i], 0.0);
    const double q = std::max(pt.q[i], 0.0);
    if (p > 0.0) {
      pair.x[off] = std::sqrt(p);
      double c1 = pt.r[i] / std::sqrt(p);
      const double cap = std::sqrt(q);
      if (c1 > cap) c1 = cap;
      if (c1 < -cap) c1 = -cap;
      const double c2sq = q - c1 * c1;
      pair.nu[off] = c1;
      if (c2sq > 0.0) {
        if (mult >= 2) {
          pair.nu[off + 1] = std::sqrt(c2sq);
        } else if (c2sq > kReducedTol) {
          throw std::domain_error(
              "lift: block " + std::to_string(i + 1) +
              " has multiplicity 1 and cannot carry independent ν mass");
        } else {
          // Sub-tolerance remainder in a 1-dimensional block: keep the block
          // masses exact and let the final orthonormalization absorb it.
          pair.nu[off] = (c1 >= 0.0 ? 1.0 : -1.0) * std::sqrt(q);
        }
      }
    } else {
      pair.nu[off] = std::sqrt(q);
    }
    off += static_cast<std::size_t>(mult);
  }
  // Exact orthonormalization; moves the pair by at most the input's
  // feasibility residual.
  const double nx = norm(pair.x);
  if (nx <= 0.0) throw std::domain_error("lift: X mass vanished");
  for (double& v : pair.x) v /= nx;
  const double c = dot(pair.x, pair.nu);
  for (std::size_t k = 0; k < dim; ++k) pair.nu[k] -= c * pair.x[k];
  const double nn = norm(pair.nu);
  if (nn <= 0.0) throw std::domain_error("lift: ν mass vanished");
  for (double& v : pair.nu) v /= nn;
  return pair;
}

} // namespace isoacs
