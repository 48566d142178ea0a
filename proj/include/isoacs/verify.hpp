#pragma once

// Acceptance matrix: eleven independent checks covering the verified results
// end to end — agreement of the two Δ evaluation routes, the closed-form g=3
// and g=4 minima, borderline positivity, pointwise failure below the
// multiplicity threshold, exact-rational certificates, the chord-relaxation
// property suite, the b ≤ a/2 threshold equivalence, cross-validation of the
// exact solver against the sampling oracle, the analytic gradient, and the
// index coefficient.  Each check reports one pass/fail line; the suite
// passes iff every line does.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdarg>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "isoacs/bounds.hpp"
#include "isoacs/delta.hpp"
#include "isoacs/optimize.hpp"
#include "isoacs/rng.hpp"
#include "isoacs/spectra.hpp"
#include "isoacs/sweep.hpp"

namespace isoacs {

struct VerifyOptions {
  int max_s = 40;                // upper end of the g=4 closed-form scans
  double exact_tol = 1e-9;       // tolerance on closed-form equalities
  long long n_samples = 100000;  // budget of the sampling oracle (check 9)
  int refine_top = 16;
  std::uint64_t seed = 42;
  int jobs = 0;                  // 0 = hardware concurrency
  double tamper = 0.0;           // negative control: shifts λ₁ (test-only)
  std::set<int> only;            // run only these check ids (empty = all)
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// The eight families exercised by the pair-level checks: one per geometry
// class, both covered g=3 cases, the threshold failure (4,2,2), the smallest
// covered g=4 case (4,4,5), and the first sharp g=4 case (4,4,11).
inline constexpr std::array<FamilySpec, 8> kAcceptanceFamilies{{
    {1, 5, 5},
    {2, 3, 6},
    {3, 4, 4},
    {3, 8, 8},
    {4, 2, 2},
    {4, 4, 5},
    {4, 4, 11},
    {6, 2, 2},
}};

namespace verify_detail {

inline std::string strf(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return std::string(buf);
}

// Index-sharded loop over [0, count): deterministic as long as each body
// writes only to its own slot.
template <typename Fn>
inline void parallel_over(std::size_t count, int jobs, Fn&& body) {
  if (count == 0) return;
  int workers = resolve_jobs(jobs);
  if (static_cast<std::size_t>(workers) > count) workers = static_cast<int>(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  const auto drain = [&] {
    for (std::size_t i = cursor.fetch_add(1); i < count;
         i = cursor.fetch_add(1)) {
      body(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
  drain();
  for (std::thread& t : pool) t.join();
}

inline std::string first_error(const std::vector<std::string>& errs) {
  for (const std::string& e : errs) {
    if (!e.empty()) return e;
  }
  return {};
}

}  // namespace verify_detail

// Spectrum used by the anchored checks.  The tamper shift perturbs λ₁ and
// recomputes the derived extremes; it exists so the suite can demonstrate
// that a corrupted spectrum is caught (the anchored closed-form checks must
// then fail).
inline Spectrum acceptance_spectrum(const FamilySpec& fam, double tamper) {
  Spectrum sp = minimal_spectrum(fam);
  if (tamper != 0.0) {
    sp.lambdas.front() += tamper;
    double amax = 0.0;
    for (double l : sp.lambdas) amax = std::max(amax, std::abs(l));
    sp.a = amax;
    sp.b = -sp.lambdas.back();
  }
  return sp;
}

// 1. The collapsed formula for Δ agrees with the curvature-by-curvature
//    evaluation through the Gauss equation on random orthonormal pairs.
inline CriterionResult criterion_two_route(const VerifyOptions& opts) {
  CriterionResult res{1, "two-route delta agreement", false, ""};
  const std::size_t nfam = kAcceptanceFamilies.size();
  std::vector<double> worst(nfam, 0.0);
  std::vector<std::string> errs(nfam);
  verify_detail::parallel_over(nfam, opts.jobs, [&](std::size_t i) {
    try {
      const Spectrum sp =
          acceptance_spectrum(kAcceptanceFamilies[i], opts.tamper);
      GaussianSampler gauss(opts.seed + 101 * (i + 1));
      for (int t = 0; t < 1000; ++t) {
        const AmbientPair pair = random_orthonormal_pair(sp.dim(), gauss);
        const double d1 = delta_formula(sp, pair).delta;
        const double d2 = delta_definition(sp, pair).total();
        worst[i] =
            std::max(worst[i], std::abs(d1 - d2) / (1.0 + std::abs(d1)));
      }
    } catch (const std::exception& e) {
      errs[i] = e.what();
    }
  });
  const std::string err = verify_detail::first_error(errs);
  if (!err.empty()) {
    res.detail = "exception: " + err;
    return res;
  }
  const double gap = *std::max_element(worst.begin(), worst.end());
  res.pass = gap <= 1e-10;
  res.detail = verify_detail::strf(
      "max gap/(1+|delta|) = %.2e over 8 families x 1000 pairs (cap 1e-10)",
      gap);
  return res;
}

// 2. Exact minima for the two covered g=3 families, plus the cruder
//    (2n-2)-15 estimate sitting below both.
inline CriterionResult criterion_g3_exact(const VerifyOptions& opts) {
  CriterionResult res{2, "g=3 exact minima (m=4, m=8)", false, ""};
  try {
    const Spectrum sp4 = acceptance_spectrum({3, 4, 4}, opts.tamper);
    const Spectrum sp8 = acceptance_spectrum({3, 8, 8}, opts.tamper);
    const double v4 = exact_min_delta(sp4).min_delta;
    const double v8 = exact_min_delta(sp8).min_delta;
    const bool est_ok = g3_estimate(sp4) <= v4 + kPredicateBand &&
                        g3_estimate(sp8) <= v8 + kPredicateBand;
    res.pass = std::abs(v4 - 29.0 / 4.0) <= opts.exact_tol &&
               std::abs(v8 - 31.25) <= opts.exact_tol && v4 > 0.0 &&
               v8 > 0.0 && est_ok;
    res.detail = verify_detail::strf(
        "min delta: m=4 -> %.12g (want 7.25), m=8 -> %.12g (want 31.25), "
        "crude estimate below both: %s",
        v4, v8, est_ok ? "yes" : "NO");
  } catch (const std::exception& e) {
    res.detail = std::string("exception: ") + e.what();
  }
  return res;
}

// 3. Sharp g=4 range: for q = 4 and s >= 15 the exact minimum matches
//    4s-4-4a² and the pure-in-s anchor 8/(1+sqrt(1-4/s)).
inline CriterionResult criterion_g4_sharp(const VerifyOptions& opts) {
  CriterionResult res{3, "g=4 sharp minimum (q=4, s>=15)", false, ""};
  try {
    double worst = 0.0;
    int count = 0;
    for (int s = 15; s <= opts.max_s; ++s) {
      const Spectrum sp = acceptance_spectrum({4, 4, s - 4}, opts.tamper);
      const double exact = exact_min_delta(sp).min_delta;
      const double closed = 4.0 * s - 4.0 - 4.0 * sp.a * sp.a;
      const double anchor = 8.0 / (1.0 + std::sqrt(1.0 - 4.0 / s));
      worst = std::max(
          {worst, std::abs(exact - closed), std::abs(exact - anchor)});
      ++count;
    }
    res.pass = count > 0 && worst <= opts.exact_tol;
    res.detail = verify_detail::strf(
        "s in [15,%d]: max |exact - closed form| = %.2e over %d families "
        "(cap %.0e)",
        opts.max_s, worst, count, opts.exact_tol);
  } catch (const std::exception& e) {
    res.detail = std::string("exception: ") + e.what();
  }
  return res;
}

// 4. Borderline g=4 range: for q = 4 and 8 <= s <= 14 the refined bound is
//    already positive, the exact minimum is positive, and it never exceeds
//    the extremal configuration's value.
inline CriterionResult criterion_g4_borderline(const VerifyOptions& opts) {
  CriterionResult res{4, "g=4 borderline positivity (q=4, s in 8..14)", false,
                      ""};
  try {
    double min_refined = std::numeric_limits<double>::infinity();
    double min_exact = std::numeric_limits<double>::infinity();
    bool ok = true;
    int count = 0;
    for (int s = 8; s <= std::min(14, opts.max_s); ++s) {
      const Spectrum sp = acceptance_spectrum({4, 4, s - 4}, opts.tamper);
      const BoundReport rep = bound_report(sp);
      const double exact = exact_min_delta(sp).min_delta;
      ok = ok && rep.refined > 0.0 && exact > 0.0 && rep.extremal_delta &&
           exact <= *rep.extremal_delta + opts.exact_tol;
      min_refined = std::min(min_refined, rep.refined);
      min_exact = std::min(min_exact, exact);
      ++count;
    }
    res.pass = ok && count > 0;
    res.detail = verify_detail::strf(
        "%d families: min refined bound = %.6g, min exact = %.6g, exact <= "
        "extremal everywhere: %s",
        count, min_refined, min_exact, ok ? "yes" : "NO");
  } catch (const std::exception& e) {
    res.detail = std::string("exception: ") + e.what();
  }
  return res;
}

// 5. Below the multiplicity threshold (g=4, min{m1,m2} < 4) the condition
//    fails pointwise, witnessed by the extremal configuration whose value is
//    the closed form (2n-2)-4a² < 0.
inline CriterionResult criterion_threshold_failure(const VerifyOptions&) {
  CriterionResult res{5, "pointwise failure below threshold (g=4, q<4)",
                      false, ""};
  try {
    int count = 0;
    bool ok = true;
    double max_extremal = -std::numeric_limits<double>::infinity();
    for (int m1 = 2; m1 <= 3; ++m1) {
      for (int m2 = m1; m2 <= 20; ++m2) {
        const FamilySpec fam{4, m1, m2};
        const AcsVerdict verdict = classify_acs(fam);
        const Spectrum sp = minimal_spectrum(fam);
        const double witness = delta_formula(sp, extremal_pair(sp)).delta;
        const double closed = (2.0 * sp.n - 2.0) - 4.0 * sp.a * sp.a;
        ok = ok && verdict.status == AcsStatus::PointwiseFails &&
             std::abs(witness - closed) <= 1e-9 && witness < 0.0;
        max_extremal = std::max(max_extremal, witness);
        ++count;
      }
    }
    res.pass = ok && count == 37;
    res.detail = verify_detail::strf(
        "%d families (2<=m1<=m2<=20, q<4): all fail, extremal witness "
        "matches (2n-2)-4a^2 and tops out at %.6g",
        count, max_extremal);
  } catch (const std::exception& e) {
    res.detail = std::string("exception: ") + e.what();
  }
  return res;
}

// 6. Integer certificates in exact arithmetic.
inline CriterionResult criterion_certificates(const VerifyOptions&) {
  CriterionResult res{6, "integer certificates", false, ""};
  try {
    const CertificateSet cs = integer_certificates();
    res.pass = cs.all_ok();
    res.detail = verify_detail::strf(
        "16s^2-304s-1 at s=19: %lld, at s=20: %lld; square identity and "
        "ratio bound on s in [2,100]: %s",
        cs.quadratic_at_19, cs.quadratic_at_20,
        (cs.square_gap_ok && cs.ratio_bound_ok) ? "hold" : "FAIL");
  } catch (const std::exception& e) {
    res.detail = std::string("exception: ") + e.what();
  }
  return res;
}

// 7. Chord-relaxation property suite: F <= G(A,B) <= 4a² on random pairs for
//    every g=4 family with b <= a/2, and the one-sided chord bounds on the
//    second moments for every g >= 2 family with s <= 20.
inline CriterionResult criterion_moment_suite(const VerifyOptions& opts) {
  CriterionResult res{7, "moment chord bounds", false, ""};
  try {
    std::vector<FamilySpec> g4;
    for (int m1 = 2; m1 <= 20; ++m1) {
      for (int m2 = m1; m2 <= 20; ++m2) {
        if (b_le_half_a(minimal_spectrum({4, m1, m2}))) {
          g4.push_back({4, m1, m2});
        }
      }
    }
    std::vector<FamilySpec> chord = enumerate_families(0, 20);
    std::erase_if(chord, [](const FamilySpec& f) { return f.g < 2; });

    constexpr int kPairs = 10000;
    std::vector<double> viol_g4(g4.size(), 0.0);
    std::vector<std::string> errs_g4(g4.size());
    verify_detail::parallel_over(g4.size(), opts.jobs, [&](std::size_t i) {
      try {
        const Spectrum sp = minimal_spectrum(g4[i]);
        GaussianSampler gauss(opts.seed + 7001 * (i + 1));
        const double cap = 4.0 * sp.a * sp.a;
        for (int t = 0; t < kPairs; ++t) {
          const AmbientPair pair = random_orthonormal_pair(sp.dim(), gauss);
          const DeltaBreakdown bd = delta_formula(sp, pair);
          const double G = moment_G(sp, bd.A, bd.B);
          const double scale = 1.0 + std::abs(G);
          viol_g4[i] = std::max(
              {viol_g4[i], (F_value(bd) - G) / scale, (G - cap) / scale});
        }
      } catch (const std::exception& e) {
        errs_g4[i] = e.what();
      }
    });

    std::vector<double> viol_chord(chord.size(), 0.0);
    std::vector<std::string> errs_chord(chord.size());
    verify_detail::parallel_over(chord.size(), opts.jobs, [&](std::size_t i) {
      try {
        const Spectrum sp = minimal_spectrum(chord[i]);
        GaussianSampler gauss(opts.seed + 9001 * (i + 1));
        const double ab = sp.a * sp.b;
        const double span = sp.a - sp.b;
        const double scale = 1.0 + sp.a * sp.a;
        for (int t = 0; t < kPairs; ++t) {
          const AmbientPair pair = random_orthonormal_pair(sp.dim(), gauss);
          const DeltaBreakdown bd = delta_formula(sp, pair);
          viol_chord[i] =
              std::max({viol_chord[i], (bd.Sx - (span * bd.A + ab)) / scale,
                        (bd.Snu - (span * bd.B + ab)) / scale});
        }
      } catch (const std::exception& e) {
        errs_chord[i] = e.what();
      }
    });

    std::string err = verify_detail::first_error(errs_g4);
    if (err.empty()) err = verify_detail::first_error(errs_chord);
    if (!err.empty()) {
      res.detail = "exception: " + err;
      return res;
    }
    const double worst_g4 =
        g4.empty() ? 0.0 : *std::max_element(viol_g4.begin(), viol_g4.end());
    const double worst_chord =
        chord.empty()
            ? 0.0
            : *std::max_element(viol_chord.begin(), viol_chord.end());
    res.pass = !g4.empty() && !chord.empty() && worst_g4 <= 1e-10 &&
               worst_chord <= 1e-10;
    res.detail = verify_detail::strf(
        "F<=G<=4a^2: worst normalized violation %.2e over %zu g=4 families; "
        "moment chords: %.2e over %zu g>=2 families (10^4 pairs each)",
        worst_g4, g4.size(), worst_chord, chord.size());
  } catch (const std::exception& e) {
    res.detail = std::string("exception: ") + e.what();
  }
  return res;
}

// 8. The predicates [b <= a/2] and [a >= (3+sqrt(17))/2] agree on every g=4
//    family in the scan box.
inline CriterionResult criterion_threshold_equivalence(const VerifyOptions&) {
  CriterionResult res{8, "b<=a/2 threshold equivalence", false, ""};
  try {
    const double athr = (3.0 + std::sqrt(17.0)) / 2.0;
    int count = 0;
    bool ok = true;
    for (int m1 = 2; m1 <= 40; ++m1) {
      for (int m2 = m1; m2 <= 40; ++m2) {
        const Spectrum sp = minimal_spectrum({4, m1, m2});
        const bool p1 = b_le_half_a(sp);
        const bool p2 = sp.a >= athr - kPredicateBand;
        ok = ok && p1 == p2;
        ++count;
      }
    }
    res.pass = ok && count == 780;
    res.detail = verify_detail::strf(
        "%d families (2<=m1<=m2<=40): predicates %s", count,
        ok ? "agree everywhere" : "DISAGREE");
  } catch (const std::exception& e) {
    res.detail = std::string("exception: ") + e.what();
  }
  return res;
}

// 9. Oracle cross-validation: on every family with all block multiplicities
//    >= 2, g <= 4, and dimension n+1 <= 60, the sampling oracle lands inside
//    [exact - 1e-9, exact + 1e-4].
inline CriterionResult criterion_oracle(const VerifyOptions& opts) {
  CriterionResult res{9, "sampled vs exact cross-validation", false, ""};
  try {
    std::vector<FamilySpec> fams;
    for (int m = 2; m <= 60; ++m) fams.push_back({1, m, m});
    for (int m1 = 2; m1 <= 30; ++m1) {
      for (int m2 = m1; m1 + m2 <= 60; ++m2) fams.push_back({2, m1, m2});
    }
    for (int m : {2, 4, 8}) fams.push_back({3, m, m});
    for (int m1 = 2; m1 <= 15; ++m1) {
      for (int m2 = m1; 2 * (m1 + m2) <= 60; ++m2) fams.push_back({4, m1, m2});
    }

    std::vector<double> low(fams.size(), 0.0), high(fams.size(), 0.0);
    std::vector<std::string> errs(fams.size());
    verify_detail::parallel_over(fams.size(), opts.jobs, [&](std::size_t i) {
      try {
        const Spectrum sp = minimal_spectrum(fams[i]);
        const double exact = exact_min_delta(sp).min_delta;
        const double sampled =
            sample_min_delta(sp, opts.n_samples, 42, 16).min_delta;
        low[i] = exact - sampled;   // > 1e-9 means the sampler beat "exact"
        high[i] = sampled - exact;  // > 1e-4 means the sampler missed a basin
      } catch (const std::exception& e) {
        errs[i] = e.what();
      }
    });
    const std::string err = verify_detail::first_error(errs);
    if (!err.empty()) {
      res.detail = "exception: " + err;
      return res;
    }
    const double max_low = *std::max_element(low.begin(), low.end());
    const double max_high = *std::max_element(high.begin(), high.end());
    res.pass = max_low <= 1e-9 && max_high <= 1e-4;
    res.detail = verify_detail::strf(
        "%zu families: exact - sampled <= %.2e (cap 1e-9), sampled - exact "
        "<= %.2e (cap 1e-4)",
        fams.size(), max_low, max_high);
  } catch (const std::exception& e) {
    res.detail = std::string("exception: ") + e.what();
  }
  return res;
}

// 10. The analytic gradient matches central finite differences of the
//     polynomial extension at random feasible points.
inline CriterionResult criterion_gradient(const VerifyOptions& opts) {
  CriterionResult res{10, "analytic gradient vs finite differences", false,
                      ""};
  const double h = 1e-6;
  const std::size_t nfam = kAcceptanceFamilies.size();
  std::vector<double> worst(nfam, 0.0);
  std::vector<std::string> errs(nfam);
  verify_detail::parallel_over(nfam, opts.jobs, [&](std::size_t i) {
    try {
      const Spectrum sp =
          acceptance_spectrum(kAcceptanceFamilies[i], opts.tamper);
      GaussianSampler gauss(opts.seed + 501 * (i + 1));
      const std::size_t dim = static_cast<std::size_t>(sp.dim());
      for (int t = 0; t < 100; ++t) {
        AmbientPair pair = random_orthonormal_pair(sp.dim(), gauss);
        const auto [gx, gnu] = delta_gradient(sp, pair);
        double diff_sq = 0.0, grad_sq = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
          pair.x[k] += h;
          const double fp = delta_polynomial(sp, pair.x, pair.nu);
          pair.x[k] -= 2.0 * h;
          const double fm = delta_polynomial(sp, pair.x, pair.nu);
          pair.x[k] += h;
          const double fd = (fp - fm) / (2.0 * h);
          diff_sq += (fd - gx[k]) * (fd - gx[k]);
          grad_sq += gx[k] * gx[k];
        }
        for (std::size_t k = 0; k < dim; ++k) {
          pair.nu[k] += h;
          const double fp = delta_polynomial(sp, pair.x, pair.nu);
          pair.nu[k] -= 2.0 * h;
          const double fm = delta_polynomial(sp, pair.x, pair.nu);
          pair.nu[k] += h;
          const double fd = (fp - fm) / (2.0 * h);
          diff_sq += (fd - gnu[k]) * (fd - gnu[k]);
          grad_sq += gnu[k] * gnu[k];
        }
        worst[i] = std::max(
            worst[i], std::sqrt(diff_sq) / std::max(1.0, std::sqrt(grad_sq)));
      }
    } catch (const std::exception& e) {
      errs[i] = e.what();
    }
  });
  const std::string err = verify_detail::first_error(errs);
  if (!err.empty()) {
    res.detail = "exception: " + err;
    return res;
  }
  const double gap = *std::max_element(worst.begin(), worst.end());
  res.pass = gap <= 1e-5;
  res.detail = verify_detail::strf(
      "max relative gradient error %.2e over 8 families x 100 points "
      "(h=1e-6, cap 1e-5)",
      gap);
  return res;
}

// 11. Index coefficient arithmetic for the two flagship families.
inline CriterionResult criterion_index(const VerifyOptions&) {
  CriterionResult res{11, "index coefficient arithmetic", false, ""};
  try {
    const Spectrum s344 = minimal_spectrum({3, 4, 4});
    const Spectrum s444 = minimal_spectrum({4, 4, 4});
    const double c344 = index_coefficient(s344);
    const double c444 = index_coefficient(s444);
    res.pass = s344.d == 14 && s444.d == 18 &&
               std::abs(c344 - 1.0 / 91.0) <= 1e-15 &&
               std::abs(c444 - 1.0 / 153.0) <= 1e-15;
    res.detail = verify_detail::strf(
        "(3,4,4): d=%d, 2/(d(d-1)) = %.12g (want 1/91); (4,4,4): d=%d, "
        "%.12g (want 1/153)",
        s344.d, c344, s444.d, c444);
  } catch (const std::exception& e) {
    res.detail = std::string("exception: ") + e.what();
  }
  return res;
}

inline std::vector<CriterionResult> run_acceptance(
    const VerifyOptions& opts = {}) {
  using CriterionFn = CriterionResult (*)(const VerifyOptions&);
  constexpr std::array<CriterionFn, 11> kCriteria{
      &criterion_two_route,     &criterion_g3_exact,
      &criterion_g4_sharp,      &criterion_g4_borderline,
      &criterion_threshold_failure, &criterion_certificates,
      &criterion_moment_suite,  &criterion_threshold_equivalence,
      &criterion_oracle,        &criterion_gradient,
      &criterion_index,
  };
  std::vector<CriterionResult> results;
  results.reserve(kCriteria.size());
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!opts.only.empty() && opts.only.count(id) == 0) continue;
    results.push_back(kCriteria[i](opts));
  }
  return results;
}

inline bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.pass; });
}

inline std::string format_criterion_line(const CriterionResult& r) {
  return verify_detail::strf("[%2d/11] %s  %-44s %s", r.id,
                             r.pass ? "PASS" : "FAIL", r.name.c_str(),
                             r.detail.c_str());
}

}  // namespace isoacs
