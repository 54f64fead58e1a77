#include <chrono>
#include <exception>
#include <iostream>

#include "pfw/reproduction.hpp"

int main() {
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& check : pfw::acceptance_suite()) {
    pfw::CriterionResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r.title = "exception";
      r.detail = e.what();
    }
    failed += !r.pass;
    std::cout << pfw::render_row(r) << std::flush;
  }
  const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << 12 - failed << "/12 in " << secs << " s\n";
  return failed ? 1 : 0;
}
