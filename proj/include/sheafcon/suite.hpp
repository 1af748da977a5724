#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sheafcon/corpus.hpp"

namespace sheafcon {

  struct SuiteOptions {
    std::uint64_t seed = default_seed;
    std::size_t random_count = 200;
    /// Criteria to run (1..10); empty means all.
    std::vector<int> only;
  };

  struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;  // counts on success, first witness on failure
    double seconds = 0.0;
  };

  std::vector<CriterionResult> run_suite(const SuiteOptions& options);

  /// One line per criterion: "PASS  3  <title>  <detail>  (<t>s)".
  std::string format_result(const CriterionResult& r);

}  // namespace sheafcon
