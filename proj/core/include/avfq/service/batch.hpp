#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avfq/service/report.hpp"

namespace avfq::service {

struct BatchItem {
  std::optional<std::string> label;
  Int q;
  std::vector<Int> poly;  // ascending
};

struct BatchResult {
  std::optional<ClassReport> report;
  std::string error;  // "<code>: message" when report is empty
};

// Analyzes the items on `threads` workers (0 = hardware concurrency). Results
// come back in input order and do not depend on the thread count.
std::vector<BatchResult> run_batch(const std::vector<BatchItem>& items, const AnalyzeOptions& opts, unsigned threads);

}  // namespace avfq::service
