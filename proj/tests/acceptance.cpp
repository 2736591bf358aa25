// One line per acceptance criterion; exits 1 if any criterion fails.
// Tolerances and fitted constants live in src/verify.cpp.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "geod/parallel.hpp"
#include "geod/precision.hpp"
#include "geod/verify.hpp"

int main(int argc, char** argv) {
  geod::set_working_precision(50);
  geod::verify::Options o;
  o.jobs = geod::default_jobs();
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  int failed = 0;
  for (const auto& c : geod::verify::acceptance_criteria()) {
    const auto r = c.run(o);
    const bool ok = r.pass();
    failed += ok ? 0 : 1;
    std::printf("criterion %2d %s  %s (%.1fs)\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str(), r.seconds);
    for (const auto& ch : r.checks)
      if (!ch.pass || verbose)
        std::printf("    %s %s: value %.4g, threshold %.4g %s\n", ch.pass ? "ok  " : "FAIL", ch.name.c_str(), ch.value,
                    ch.threshold, ch.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(geod::verify::acceptance_criteria().size()) - failed,
              geod::verify::acceptance_criteria().size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
