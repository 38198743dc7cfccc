// Runs every acceptance check and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include "verify.hpp"

int main() {
  struct Outcome {
    bool pass = true;
    std::vector<std::string> details;
    double seconds = 0.0;
  };
  std::map<int, Outcome> by_criterion;
  for (const qsum::verify::Check& c : qsum::verify::all_checks()) {
    const auto t0 = std::chrono::steady_clock::now();
    qsum::verify::CheckResult r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    Outcome& o = by_criterion[c.criterion];
    o.pass = o.pass && r.pass;
    o.details.push_back(c.name + ": " + r.detail);
    o.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  bool all = true;
  for (const auto& [criterion, o] : by_criterion) {
    all = all && o.pass;
    std::printf("criterion %2d: %s (%.2f s)\n", criterion, o.pass ? "PASS" : "FAIL", o.seconds);
    for (const std::string& d : o.details) std::printf("    %s\n", d.c_str());
  }
  std::printf("%s\n", all ? "all criteria passed" : "some criteria FAILED");
  return all ? 0 : 1;
}
