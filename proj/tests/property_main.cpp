#include <cstdio>
#include <cstdlib>
#include <string>

#include "property_suites.hpp"

int main(int argc, char** argv) {
  int cases = 100;
  unsigned seed = 20240611;
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string k = argv[i];
    if (k == "--cases") cases = std::atoi(argv[i + 1]);
    if (k == "--seed") seed = static_cast<unsigned>(std::strtoul(argv[i + 1], nullptr, 10));
  }
  bool ok = true;
  for (const auto& r : props::run_all(seed, cases)) {
    bool pass = r.ok(cases);
    ok = ok && pass;
    std::printf("%-40s cases=%d failures=%d %.2fs %s\n", r.name.c_str(), r.cases, r.failures, r.seconds,
                pass ? "ok" : "FAILED");
    if (!r.first_failure.empty()) std::printf("  first failure: %s\n", r.first_failure.c_str());
  }
  return ok ? 0 : 1;
}
