#include "avfq/service/batch.hpp"

#include <atomic>
#include <thread>

#include "avfq/error.hpp"

namespace avfq::service {

std::vector<BatchResult> run_batch(const std::vector<BatchItem>& items, const AnalyzeOptions& opts, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, items.size())));
  std::vector<BatchResult> out(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < items.size();) {
      const BatchItem& item = items[i];
      try {
        const WeilPoly w = validate_weil(IntPoly(std::vector<Int>(item.poly)), item.q);
        out[i].report = analyze(w, opts, item.label);
      } catch (const Error& e) {
        out[i].error = e.what();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  return out;
}

}  // namespace avfq::service
