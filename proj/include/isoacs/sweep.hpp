#pragma once

// Multiplicity sweeps: enumerate every validated family up to a size cap,
// classify each one, and emit machine-readable rows.  Work fans out to a
// bounded worker pool; each row is a pure function of its family (fixed
// per-family seed), so the output is byte-identical for any worker count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "isoacs/bounds.hpp"
#include "isoacs/optimize.hpp"
#include "isoacs/spectra.hpp"

namespace isoacs {

struct SweepRow {
  int g = 0, m1 = 0, m2 = 0, n = 0, s = 0;
  double a_sq = 0.0;
  bool ricci_positive = false;
  double min_delta = 0.0;
  AcsStatus status = AcsStatus::Indeterminate;
  std::string paper_case;
  double index_coeff = 0.0;
};

inline constexpr const char* kSweepCsvHeader =
    "g,m1,m2,n,s,a_sq,ricci_positive,min_delta,status,paper_case,index_coeff";

// Fixed 12-significant-digit rendering used for every floating field.
inline std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::string(buf);
}

// All validated families with m1 <= m2 and s <= max_s, for one g or all
// (g_filter = 0), ordered by (g, s, min multiplicity).
inline std::vector<FamilySpec> enumerate_families(int g_filter, int max_s) {
  std::vector<FamilySpec> fams;
  auto add = [&](int g, int m1, int m2) {
    if (validate_family(g, m1, m2).ok && m1 + m2 <= max_s) {
      fams.push_back({g, m1, m2});
    }
  };
  for (int g : {1, 2, 3, 4, 6}) {
    if (g_filter != 0 && g != g_filter) continue;
    switch (g) {
      case 1:
        for (int m = 1; 2 * m <= max_s; ++m) add(1, m, m);
        break;
      case 2:
        for (int m1 = 1; 2 * m1 <= max_s; ++m1) {
          for (int m2 = m1; m1 + m2 <= max_s; ++m2) add(2, m1, m2);
        }
        break;
      case 3:
        for (int m : {1, 2, 4, 8}) add(3, m, m);
        break;
      case 4:
        for (int m1 = 1; 2 * m1 <= max_s; ++m1) {
          for (int m2 = m1; m1 + m2 <= max_s; ++m2) add(4, m1, m2);
        }
        break;
      default:
        for (int m : {1, 2}) add(6, m, m);
        break;
    }
  }
  std::sort(fams.begin(), fams.end(), [](const FamilySpec& l, const FamilySpec& r) {
    return std::make_tuple(l.g, l.m1 + l.m2, std::min(l.m1, l.m2), l.m1, l.m2) <
           std::make_tuple(r.g, r.m1 + r.m2, std::min(r.m1, r.m2), r.m1, r.m2);
  });
  return fams;
}

// Worker-count resolution: explicit request, else hardware concurrency, both
// capped by the ACS_MAX_JOBS environment variable when set.
inline int resolve_jobs(int requested) {
  int jobs = requested > 0 ? requested
                           : static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  if (const char* cap = std::getenv("ACS_MAX_JOBS")) {
    const int c = std::atoi(cap);
    if (c >= 1) jobs = std::min(jobs, c);
  }
  return jobs;
}

inline SweepRow sweep_row(const FamilySpec& fam, const ClassifyOptions& copts) {
  const Spectrum sp = minimal_spectrum(fam);
  const AcsVerdict verdict = classify_acs(fam, copts);
  SweepRow row;
  row.g = fam.g;
  row.m1 = fam.m1;
  row.m2 = fam.m2;
  row.n = sp.n;
  row.s = sp.s;
  row.a_sq = sp.a * sp.a;
  row.ricci_positive = sp.ricci_positive;
  row.min_delta = verdict.margin;
  row.status = verdict.status;
  row.paper_case = verdict.paper_case;
  row.index_coeff = index_coefficient(sp);
  return row;
}

inline std::vector<SweepRow> run_sweep(const std::vector<FamilySpec>& fams,
                                       int jobs,
                                       const ClassifyOptions& copts = {}) {
  std::vector<SweepRow> rows(fams.size());
  int workers = resolve_jobs(jobs);
  if (static_cast<std::size_t>(workers) > fams.size() && !fams.empty()) {
    workers = static_cast<int>(fams.size());
  }
  std::atomic<std::size_t> cursor{0};
  auto drain = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= fams.size()) return;
      rows[i] = sweep_row(fams[i], copts);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
  drain();
  for (std::thread& t : pool) t.join();
  return rows;
}

inline std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  for (const SweepRow& r : rows) {
    out += std::to_string(r.g) + ',' + std::to_string(r.m1) + ',' +
           std::to_string(r.m2) + ',' + std::to_string(r.n) + ',' +
           std::to_string(r.s) + ',' + format_g12(r.a_sq) + ',' +
           (r.ricci_positive ? "true" : "false") + ',' +
           format_g12(r.min_delta) + ',' + to_string(r.status) + ',' +
           r.paper_case + ',' + format_g12(r.index_coeff) + '\n';
  }
  return out;
}

inline std::string to_json(const std::vector<SweepRow>& rows) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    out += "  {\"g\":" + std::to_string(r.g) + ",\"m1\":" + std::to_string(r.m1) +
           ",\"m2\":" + std::to_string(r.m2) + ",\"n\":" + std::to_string(r.n) +
           ",\"s\":" + std::to_string(r.s) + ",\"a_sq\":" + format_g12(r.a_sq) +
           ",\"ricci_positive\":" + (r.ricci_positive ? "true" : "false") +
           // JSON has no NaN literal; degenerate families emit null instead.
           ",\"min_delta\":" +
           (std::isfinite(r.min_delta) ? format_g12(r.min_delta)
                                       : std::string("null")) +
           ",\"status\":\"" +
           to_string(r.status) + "\",\"paper_case\":\"" + r.paper_case +
           "\",\"index_coeff\":" + format_g12(r.index_coeff) + "}";
    out += (i + 1 < rows.size()) ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

} // namespace isoacs
