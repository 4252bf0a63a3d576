#pragma once

// The acceptance suite on the reference configuration: n = 2, Euclidean Phi,
// beta = 1.5, a = 0.5, R = 1, r = 0.5, eps in {0.1, 0.05, 0.025, 0.0125}.

#include <cstddef>
#include <string>
#include <vector>

#include "wulff/config.hpp"

namespace wulff::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

constexpr int criterion_count = 10;

RunConfig reference_config();

struct AcceptanceOptions {
  std::size_t jobs = 0;
  /// Criterion ids to run; empty runs all.
  std::vector<int> only;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// One line: "PASS  3 second-order vanishing  0.41 s  <detail>".
std::string format_result(const CriterionResult& result);

}  // namespace wulff::verify
