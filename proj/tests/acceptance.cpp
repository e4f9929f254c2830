// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cstdlib>
#include <iostream>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
  const auto suite = nilflow::app::run_acceptance(seed, [](const auto& r) {
    std::cout << nilflow::app::format_line(r) << std::endl;
  });
  std::cout << (suite.all_passed() ? "all criteria passed" : "some criteria FAILED") << '\n';
  return suite.all_passed() ? 0 : 1;
}
