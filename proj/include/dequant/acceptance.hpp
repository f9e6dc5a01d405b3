// acceptance.hpp
// The self-verification suite behind `dequantlab verify` and the acceptance
// test binary. Each criterion runs independently and reports pass/fail with
// a one-line detail.

#pragma once

#include <string>
#include <vector>

namespace dequant::acceptance {

struct Options {
  unsigned max_n = 4;         // cap for the exhaustive parts
  bool inject_fault = false;  // negative control: flips the expected n=1 verdicts
};

struct CriterionResult {
  int id;
  std::string title;
  bool passed;
  std::string detail;
  double seconds;
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id, const Options& options);
std::vector<CriterionResult> run_all(const Options& options);

}  // namespace dequant::acceptance
