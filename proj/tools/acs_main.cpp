// Command-line front end: per-family spectrum reports, global minimization of
// the pointwise ACS integrand Δ(X,ν), the acceptance matrix, and multiplicity
// sweeps with machine-readable output.
//
// Subcommands: spectrum, min-delta, verify-paper, sweep.
// Exit codes:  0 success, 1 generic failure (including failed acceptance
// criteria), 2 invalid family, 3 exact/sampled disagreement, 4 exact method
// requested where it does not apply.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "isoacs/bounds.hpp"
#include "isoacs/delta.hpp"
#include "isoacs/optimize.hpp"
#include "isoacs/spectra.hpp"
#include "isoacs/sweep.hpp"
#include "isoacs/verify.hpp"

namespace {

using namespace isoacs;

const char* bool_str(bool b) { return b ? "true" : "false"; }

std::string join_g12(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += format_g12(v[i]);
  }
  return out;
}

// --- spectrum ---------------------------------------------------------------

void print_spectrum_table(const Spectrum& sp, const BoundReport& rep) {
  std::printf("%-16s %d\n", "g", sp.spec.g);
  std::printf("%-16s %d\n", "m1", sp.spec.m1);
  std::printf("%-16s %d\n", "m2", sp.spec.m2);
  std::printf("%-16s %d\n", "n", sp.n);
  std::printf("%-16s %d\n", "s", sp.s);
  std::printf("%-16s %d\n", "dim", sp.dim());
  std::printf("%-16s %s\n", "theta1", format_g12(sp.theta1).c_str());
  std::string lams;
  for (std::size_t i = 0; i < sp.lambdas.size(); ++i) {
    if (i > 0) lams += ", ";
    lams += format_g12(sp.lambdas[i]) + " (x" + std::to_string(sp.mults[i]) + ")";
  }
  std::printf("%-16s %s\n", "lambdas", lams.c_str());
  std::printf("%-16s %s\n", "a", format_g12(sp.a).c_str());
  std::printf("%-16s %s\n", "a_sq", format_g12(sp.a * sp.a).c_str());
  std::printf("%-16s %s\n", "b", format_g12(sp.b).c_str());
  std::printf("%-16s %s\n", "ricci_positive", bool_str(sp.ricci_positive));
  std::printf("%-16s %s\n", "rough_bound", format_g12(rep.rough).c_str());
  std::printf("%-16s %s\n", "refined_bound", format_g12(rep.refined).c_str());
  if (rep.optimal) {
    std::printf("%-16s %s\n", "optimal_bound", format_g12(*rep.optimal).c_str());
  }
  if (rep.extremal_delta) {
    std::printf("%-16s %s\n", "extremal_delta",
                format_g12(*rep.extremal_delta).c_str());
  }
  if (rep.threshold_ok) {
    std::printf("%-16s %s\n", "threshold_ok", bool_str(*rep.threshold_ok));
  }
  if (rep.b_le_half_a) {
    std::printf("%-16s %s\n", "b_le_half_a", bool_str(*rep.b_le_half_a));
  }
  std::printf("%-16s %s (d = %d)\n", "index_coeff",
              format_g12(rep.index_coeff).c_str(), sp.d);
}

int run_spectrum(int g, int m1, int m2, const std::string& format) {
  const ValidationResult val = validate_family(g, m1, m2);
  if (!val.ok) {
    std::fprintf(stderr, "invalid family: %s\n", val.message.c_str());
    return 2;
  }
  const Spectrum sp = minimal_spectrum({g, m1, m2});
  const BoundReport rep = bound_report(sp);

  if (format == "json") {
    nlohmann::json jb{{"rough", rep.rough},
                      {"refined", rep.refined},
                      {"index_coeff", rep.index_coeff}};
    if (rep.optimal) jb["optimal"] = *rep.optimal;
    if (rep.extremal_delta) jb["extremal_delta"] = *rep.extremal_delta;
    if (rep.threshold_ok) jb["threshold_ok"] = *rep.threshold_ok;
    if (rep.b_le_half_a) jb["b_le_half_a"] = *rep.b_le_half_a;
    const nlohmann::json j{{"g", sp.spec.g},
                           {"m1", sp.spec.m1},
                           {"m2", sp.spec.m2},
                           {"n", sp.n},
                           {"s", sp.s},
                           {"d", sp.d},
                           {"dim", sp.dim()},
                           {"theta1", sp.theta1},
                           {"lambdas", sp.lambdas},
                           {"mults", sp.mults},
                           {"a", sp.a},
                           {"a_sq", sp.a * sp.a},
                           {"b", sp.b},
                           {"ricci_positive", sp.ricci_positive},
                           {"bounds", jb}};
    std::printf("%s\n", j.dump(2).c_str());
  } else if (format == "csv") {
    std::printf(
        "g,m1,m2,n,s,d,theta1,a,a_sq,b,ricci_positive,rough_bound,"
        "refined_bound,index_coeff\n");
    std::printf("%d,%d,%d,%d,%d,%d,%s,%s,%s,%s,%s,%s,%s,%s\n", sp.spec.g,
                sp.spec.m1, sp.spec.m2, sp.n, sp.s, sp.d,
                format_g12(sp.theta1).c_str(), format_g12(sp.a).c_str(),
                format_g12(sp.a * sp.a).c_str(), format_g12(sp.b).c_str(),
                bool_str(sp.ricci_positive), format_g12(rep.rough).c_str(),
                format_g12(rep.refined).c_str(),
                format_g12(rep.index_coeff).c_str());
  } else {
    print_spectrum_table(sp, rep);
  }
  return 0;
}

// --- min-delta ---------------------------------------------------------------

void print_min_result(const MinResult& res) {
  std::printf("%-14s %s\n", "min_delta", format_g12(res.min_delta).c_str());
  std::printf("%-14s %s\n", "witness_p", join_g12(res.witness.p).c_str());
  std::printf("%-14s %s\n", "witness_q", join_g12(res.witness.q).c_str());
  std::printf("%-14s %s\n", "witness_r", join_g12(res.witness.r).c_str());
  if (res.certificate) {
    std::printf("%-14s %zu\n", "vertex", res.certificate->vertex);
    std::printf("%-14s %s\n", "chord_B",
                format_g12(res.certificate->chord_coordinate).c_str());
  }
}

int run_min_delta(int g, int m1, int m2, const std::string& method,
                  long long samples, std::uint64_t seed, double tol) {
  const ValidationResult val = validate_family(g, m1, m2);
  if (!val.ok) {
    std::fprintf(stderr, "invalid family: %s\n", val.message.c_str());
    return 2;
  }
  const Spectrum sp = minimal_spectrum({g, m1, m2});
  const bool want_exact = method == "exact" || method == "both";
  const bool want_sample = method == "sample" || method == "both";
  if (want_exact && !all_blocks_at_least_2(sp)) {
    std::fprintf(stderr,
                 "exact method unavailable: a 1-dimensional eigenspace forces "
                 "the nonconvex constraint r_i^2 = p_i q_i; rerun with "
                 "--method sample\n");
    return 4;
  }

  std::printf("%-14s g=%d m1=%d m2=%d\n", "family", g, m1, m2);
  std::optional<MinResult> exact, sampled;
  if (want_exact) {
    exact = exact_min_delta(sp);
    std::printf("%-14s exact\n", "method");
    print_min_result(*exact);
  }
  if (want_sample) {
    sampled = sample_min_delta(sp, samples, seed);
    std::printf("%-14s sample\n", "method");
    std::printf("%-14s %lld\n", "samples", samples);
    std::printf("%-14s %llu\n", "seed",
                static_cast<unsigned long long>(seed));
    print_min_result(*sampled);
  }
  if (exact && sampled) {
    const double gap = std::abs(exact->min_delta - sampled->min_delta);
    std::printf("%-14s %s\n", "agreement_gap", format_g12(gap).c_str());
    if (gap > tol) {
      std::fprintf(stderr,
                   "methods disagree: |exact - sampled| = %g exceeds "
                   "tolerance %g\n",
                   gap, tol);
      return 3;
    }
  }
  return 0;
}

// --- verify-paper ------------------------------------------------------------

int run_verify(const VerifyOptions& opts) {
  const std::vector<CriterionResult> results = run_acceptance(opts);
  std::string failing;
  std::size_t passed = 0;
  for (const CriterionResult& r : results) {
    std::printf("%s\n", format_criterion_line(r).c_str());
    if (r.pass) {
      ++passed;
    } else {
      if (!failing.empty()) failing += ", ";
      failing += std::to_string(r.id);
    }
  }
  if (failing.empty()) {
    std::printf("acceptance: %zu/%zu passed\n", passed, results.size());
    return 0;
  }
  std::printf("acceptance: %zu/%zu passed; failing criteria: %s\n", passed,
              results.size(), failing.c_str());
  return 1;
}

// --- sweep --------------------------------------------------------------------

int run_sweep_cmd(const std::string& gsel, int max_s,
                  const std::string& out_path, const std::string& format,
                  int jobs, std::uint64_t seed, bool strict) {
  const int g_filter = gsel == "all" ? 0 : std::atoi(gsel.c_str());
  ClassifyOptions copts;
  copts.seed = seed;
  if (strict) copts.exact_tol = 1e-12;
  const std::vector<FamilySpec> fams = enumerate_families(g_filter, max_s);
  const std::vector<SweepRow> rows = run_sweep(fams, jobs, copts);
  const std::string payload = format == "json" ? to_json(rows) : to_csv(rows);
  if (out_path.empty()) {
    std::fputs(payload.c_str(), stdout);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "cannot open output path: %s\n", out_path.c_str());
    return 1;
  }
  out << payload;
  out.flush();
  if (!out) {
    std::fprintf(stderr, "write failed: %s\n", out_path.c_str());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Verifier and global optimizer for the pointwise ACS integrand on "
      "minimal isoparametric hypersurfaces of the sphere"};
  app.require_subcommand(1);

  // spectrum
  auto* sc = app.add_subcommand(
      "spectrum", "Principal-curvature spectrum and bound report");
  int g = 0, m1 = 0, m2 = 0;
  std::string format = "table";
  sc->add_option("--g", g, "number of distinct principal curvatures")
      ->required();
  sc->add_option("--m1", m1, "first multiplicity")->required();
  sc->add_option("--m2", m2, "second multiplicity")->required();
  sc->add_option("--format", format, "table, json, or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));

  // min-delta
  auto* md = app.add_subcommand(
      "min-delta", "Global minimum of the integrand over orthonormal pairs");
  int dg = 0, dm1 = 0, dm2 = 0;
  std::string method = "both";
  long long samples = 100000;
  std::uint64_t seed = 42;
  double tol = 1e-4;
  md->add_option("--g", dg, "number of distinct principal curvatures")
      ->required();
  md->add_option("--m1", dm1, "first multiplicity")->required();
  md->add_option("--m2", dm2, "second multiplicity")->required();
  md->add_option("--method", method, "exact, sample, or both")
      ->check(CLI::IsMember({"exact", "sample", "both"}));
  md->add_option("--samples", samples, "sampling budget");
  md->add_option("--seed", seed, "generator seed");
  md->add_option("--tol", tol, "exact/sampled agreement tolerance");

  // verify-paper
  auto* vp = app.add_subcommand(
      "verify-paper", "Run the acceptance matrix, one line per criterion");
  VerifyOptions vo;
  std::string only;
  vp->add_option("--max-s", vo.max_s, "upper end of the g=4 closed-form scans");
  vp->add_option("--tol", vo.exact_tol, "tolerance on closed-form equalities");
  vp->add_option("--samples", vo.n_samples, "sampling-oracle budget");
  vp->add_option("--jobs", vo.jobs, "worker threads (0 = hardware)");
  vp->add_option("--only", only, "comma-separated criterion ids to run");
  vp->add_option("--tamper", vo.tamper)->group("");  // hidden negative control

  // sweep
  auto* sw = app.add_subcommand(
      "sweep", "Classify every family in a multiplicity box");
  std::string gsel = "all";
  int max_s = 12;
  std::string out_path;
  std::string sformat = "csv";
  int jobs = 0;
  std::uint64_t sseed = 42;
  bool strict = false;
  sw->add_option("--g", gsel, "1, 2, 3, 4, 6, or all")
      ->check(CLI::IsMember({"1", "2", "3", "4", "6", "all"}));
  sw->add_option("--max-s", max_s, "largest m1+m2 to include");
  sw->add_option("--out", out_path, "output file (default: standard output)");
  sw->add_option("--format", sformat, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sw->add_option("--jobs", jobs, "worker threads (0 = hardware)");
  sw->add_option("--seed", sseed, "classification sampling seed");
  sw->add_flag("--strict", strict,
               "tighten the exact-method sign tolerance to 1e-12");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sc) return run_spectrum(g, m1, m2, format);
    if (*md) return run_min_delta(dg, dm1, dm2, method, samples, seed, tol);
    if (*vp) {
      if (!only.empty()) {
        std::size_t pos = 0;
        while (pos < only.size()) {
          const std::size_t comma = only.find(',', pos);
          const std::string tok = only.substr(
              pos, comma == std::string::npos ? std::string::npos
                                              : comma - pos);
          const int id = std::atoi(tok.c_str());
          if (id < 1 || id > 11) {
            std::fprintf(stderr, "invalid --only id: %s\n", tok.c_str());
            return 1;
          }
          vo.only.insert(id);
          if (comma == std::string::npos) break;
          pos = comma + 1;
        }
      }
      return run_verify(vo);
    }
    if (*sw) {
      return run_sweep_cmd(gsel, max_s, out_path, sformat, jobs, sseed,
                           strict);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
