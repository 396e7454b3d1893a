// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion.  Exit code 0 iff all pass.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "pclab/acceptance.hpp"

int main(int argc, char** argv) {
  bool fast = false;
  std::uint64_t seed = 20260809ull;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--fast") == 0) fast = true;
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
      seed = std::strtoull(argv[++i], nullptr, 10);
  }
  auto results = pclab::accept::run_all(fast, seed);
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] criterion %2d: %-32s (%6.2fs)  %s\n", r.pass ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.seconds, r.details.c_str());
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "ACCEPTANCE: all criteria pass" : "ACCEPTANCE: FAILURES");
  return all ? 0 : 1;
}
