// Acceptance gate: runs every checked claim about the ACS verifier end to
// end and prints one pass/fail line per criterion.  Exit status is the
// number of failing criteria, so a zero exit means the build is good.

#include <isoacs/verify.hpp>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

int main(int argc, char** argv) {
  isoacs::VerifyOptions opts;

  // Minimal flag handling; the full-featured interface lives in the CLI's
  // `verify-paper` subcommand.  These knobs exist so a constrained machine
  // can still exercise the gate with a smaller budget.
  for (int i = 1; i < argc; ++i) {
    const char* arg = argv[i];
    auto next_value = [&](const char* flag) -> const char* {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "missing value for %s\n", flag);
        std::exit(2);
      }
      return argv[++i];
    };
    if (std::strcmp(arg, "--samples") == 0) {
      opts.n_samples = std::atoll(next_value("--samples"));
    } else if (std::strcmp(arg, "--jobs") == 0) {
      opts.jobs = std::atoi(next_value("--jobs"));
    } else if (std::strcmp(arg, "--max-s") == 0) {
      opts.max_s = std::atoi(next_value("--max-s"));
    } else if (std::strcmp(arg, "--only") == 0) {
      const std::string list = next_value("--only");
      std::size_t pos = 0;
      while (pos < list.size()) {
        std::size_t comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        opts.only.insert(std::atoi(list.substr(pos, comma - pos).c_str()));
        pos = comma + 1;
      }
    } else {
      std::fprintf(stderr, "unknown argument: %s\n", arg);
      return 2;
    }
  }

  const auto results = isoacs::run_acceptance(opts);

  int failures = 0;
  for (const auto& res : results) {
    std::fputs(isoacs::format_criterion_line(res).c_str(), stdout);
    std::fputc('\n', stdout);
    if (!res.pass) ++failures;
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - static_cast<std::size_t>(failures),
              results.size());
  return failures;
}
