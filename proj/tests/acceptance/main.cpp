#include <cstdio>
#include <cstdlib>
#include <string>

#include "wulff/verify/acceptance.hpp"

int main(int argc, char** argv) {
  wulff::verify::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) opts.only.push_back(std::atoi(argv[i]));
  const auto results = wulff::verify::run_acceptance(opts);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s\n", wulff::verify::format_result(r).c_str());
    failed += r.pass ? 0 : 1;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
