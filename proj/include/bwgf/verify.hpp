#pragma once

#include <string>
#include <vector>

namespace bwgf {

struct VerifyCheck {
  std::string name;
  bool passed = false;
  // Serialized instance and both sides on failure.
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  int bound = 0;
  std::vector<VerifyCheck> checks;

  bool passed() const;
  // "PASS name" / "FAIL name: detail" per line, then a summary line.
  std::string to_string() const;
};

// Suites: families, feynman, wright, aut. Throws DomainError for an unknown
// suite and BoundError when `bound` is above the suite's limit.
VerifyReport run_verify(const std::string& suite, int bound);

int verify_bound_limit(const std::string& suite);

}  // namespace bwgf
