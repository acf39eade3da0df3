// Acceptance gate: runs every acceptance criterion at its pinned tolerance
// and prints one PASS/FAIL line per criterion. Exit code 0 only if all pass.

#include <cstdio>
#include <cstring>
#include <cstdlib>

#include "ghs/pipeline.hpp"

int main(int argc, char** argv) {
  uint64_t seed = 42;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
      seed = std::strtoull(argv[i + 1], nullptr, 10);
  }

  std::vector<ghs::CriterionResult> results;
  try {
    results = ghs::run_acceptance(seed);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance suite aborted: %s\n", e.what());
    return 3;
  }

  int failed = 0;
  for (const ghs::CriterionResult& c : results) {
    std::printf("%s criterion %2d: %s\n", c.ok ? "PASS" : "FAIL", c.index, c.title.c_str());
    for (const ghs::CheckResult& chk : c.checks) {
      std::printf("       %s %-28s residual %.3e %s %.3e%s%s\n", chk.ok ? "ok  " : "FAIL",
                  chk.id.c_str(), chk.max_residual, chk.negative_control ? ">" : "<",
                  chk.tolerance, chk.detail.empty() ? "" : "  ", chk.detail.c_str());
    }
    if (!c.ok) ++failed;
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}
