#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "avfq/integer.hpp"

namespace avfq::service {

struct LmfdbRecord {
  std::string label;
  int g = 0;
  Int q;
  std::vector<Int> poly;  // ascending
};

// Endpoint and field names. Defaults match the public av_fq_isog API; a JSON
// file can override any of them.
struct LmfdbConfig {
  std::string base_url = "https://www.lmfdb.org";
  std::string collection_path = "/api/av_fq_isog/";
  std::string field_label = "label";
  std::string field_g = "g";
  std::string field_q = "q";
  std::string field_poly = "poly";
  // The API tags integer query values with a type prefix, e.g. q=i5.
  std::string int_prefix = "i";
  std::string limit_param = "_max_count";
  int page_size = 100;
  double requests_per_second = 1.0;
  int max_attempts = 3;
  int backoff_ms = 500;
  int timeout_s = 30;

  static LmfdbConfig load(const std::filesystem::path& file);  // throws ParseError
};

// Canonical query string for one page; the cache key is its SHA-256.
std::string page_query(const LmfdbConfig& cfg, int g, const Int& q, int offset);
std::string cache_key(const LmfdbConfig& cfg, const std::string& query);
std::string sha256_hex(const std::string& data);

// Records from an API response body. Throws ParseError naming the offending path.
std::vector<LmfdbRecord> parse_page(const LmfdbConfig& cfg, const std::string& body);
// Response body in the API's format, used by the fixture generator.
std::string render_page(const LmfdbConfig& cfg, const std::vector<LmfdbRecord>& records);

class LmfdbClient {
 public:
  // offline: serve only from cache_dir, CacheMiss otherwise.
  LmfdbClient(LmfdbConfig cfg, std::filesystem::path cache_dir, bool offline);

  // Up to `limit` records for (g, q), paging until a short page. Throws
  // NetworkError after max_attempts, CacheMiss, ParseError.
  std::vector<LmfdbRecord> fetch(int g, const Int& q, std::size_t limit);

  const LmfdbConfig& config() const { return cfg_; }

 private:
  std::string get_page(const std::string& query);
  std::string http_get(const std::string& query);

  LmfdbConfig cfg_;
  std::filesystem::path cache_dir_;
  bool offline_;
  std::mutex cache_mutex_;
  std::mutex rate_mutex_;
  std::chrono::steady_clock::time_point last_request_{};
};

}  // namespace avfq::service
