// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Usage: acceptance_test [--small] [--only N] [--seed S]

#include <cstdlib>
#include <iostream>
#include <string>

#include "wpmep/acceptance.hpp"

int main(int argc, char** argv) {
  wpmep::acceptance::Options options;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--small") {
      options.small = true;
    } else if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (arg == "--seed" && i + 1 < argc) {
      options.seed = static_cast<std::uint32_t>(std::strtoul(argv[++i], nullptr, 10));
    } else {
      std::cerr << "unknown argument " << arg << "\n";
      return 2;
    }
  }
  const int count = static_cast<int>(wpmep::acceptance::criteria().size());
  int failed = 0;
  for (int id = 1; id <= count; ++id) {
    if (only && id != only) continue;
    auto r = wpmep::acceptance::run(id, options);
    std::cout << wpmep::acceptance::format_line(r) << std::endl;
    failed += !r.passed;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << failed << " failing criteria" << std::endl;
  return failed ? 1 : 0;
}
