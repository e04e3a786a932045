// Acceptance run: one line per criterion. Each suite runs twice at one
// thread and twice at four; criterion 12 compares the four outputs.

#include <iostream>

#include "genuslab/verify.hpp"

using namespace genuslab;

int main() {
  const std::vector<std::string> criteria = {"ringel-youngs", "euler",  "planar-census", "dominance", "downsets", "lemma32",
                                             "fsgr",          "bp",     "bounds",        "unlabelled", "closure"};
  VerifyOptions base;
  base.long_run = true;
  bool all = true, deterministic = true;
  std::vector<std::string> lines, details;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::vector<SuiteResult> runs;
    for (int threads : {1, 1, 4, 4}) {
      VerifyOptions o = base;
      o.threads = threads;
      runs.push_back(run_suite(criteria[i], o));
    }
    bool passed = true, same = true;
    for (const auto& r : runs) {
      passed = passed && r.passed;
      same = same && r.text() == runs.front().text();
    }
    if (!passed) details.push_back(runs.front().text());
    if (!same) details.push_back(criteria[i] + ": outputs differ across runs\n");
    all = all && passed;
    deterministic = deterministic && same;
    lines.push_back("criterion " + std::to_string(i + 1) + " " + criteria[i] + ": " + (passed ? "PASS" : "FAIL"));
    std::cout << lines.back() << std::endl;
  }
  std::cout << "criterion 12 determinism: " << (deterministic ? "PASS" : "FAIL") << std::endl;
  for (const auto& d : details) std::cout << d;
  return all && deterministic ? 0 : 1;
}
