// Prints one PASS/FAIL line per acceptance criterion; exit status 1 when any fails.
#include <cstdlib>
#include <iostream>
#include <string>

#include "pfk3/verification.hpp"

int main(int argc, char** argv) {
  pfk3::SuiteOptions opts;
  if (const char* j = std::getenv("PFK3_JOBS")) opts.jobs = std::max(1, std::atoi(j));
  bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  bool all = true;
  for (const auto& r : pfk3::run_suite(opts)) {
    std::cout << "Criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << " - " << r.title << "\n";
    if (verbose || !r.pass)
      for (const auto& d : r.details) std::cout << "    " << d << "\n";
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
