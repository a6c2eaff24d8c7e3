#include "avfq/service/lmfdb.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>
#include <thread>

#include "avfq/error.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"
#include "json.hpp"

namespace avfq::service {

namespace {

using json = nlohmann::json;

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("config key '") + key + "': " + e.what());
  }
}

Int int_from_json(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Int(v.get<long>());
  if (v.is_string()) {
    Int out;
    if (out.set_str(v.get<std::string>(), 10) == 0) return out;
  }
  throw Error(ErrorCode::ParseError, "payload path " + path + ": expected an integer");
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

LmfdbConfig LmfdbConfig::load(const std::filesystem::path& file) {
  LmfdbConfig cfg;
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read config " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, file.string() + ": " + e.what());
  }
  read_field(j, "base_url", cfg.base_url);
  read_field(j, "collection_path", cfg.collection_path);
  if (j.contains("fields")) {
    const json& f = j["fields"];
    read_field(f, "label", cfg.field_label);
    read_field(f, "g", cfg.field_g);
    read_field(f, "q", cfg.field_q);
    read_field(f, "poly", cfg.field_poly);
  }
  read_field(j, "int_prefix", cfg.int_prefix);
  read_field(j, "limit_param", cfg.limit_param);
  read_field(j, "page_size", cfg.page_size);
  read_field(j, "requests_per_second", cfg.requests_per_second);
  read_field(j, "max_attempts", cfg.max_attempts);
  read_field(j, "backoff_ms", cfg.backoff_ms);
  read_field(j, "timeout_s", cfg.timeout_s);
  if (cfg.page_size <= 0 || cfg.max_attempts <= 0 || cfg.requests_per_second <= 0)
    throw Error(ErrorCode::ParseError, file.string() + ": page_size, max_attempts and requests_per_second must be positive");
  return cfg;
}

std::string page_query(const LmfdbConfig& cfg, int g, const Int& q, int offset) {
  // Keys in lexicographic order so equal requests hash equally.
  std::map<std::string, std::string> params{
      {"_fields", cfg.field_label + "," + cfg.field_g + "," + cfg.field_q + "," + cfg.field_poly},
      {"_format", "json"},
      {cfg.limit_param, std::to_string(cfg.page_size)},
      {"_offset", std::to_string(offset)},
      {cfg.field_g, cfg.int_prefix + std::to_string(g)},
      {cfg.field_q, cfg.int_prefix + q.get_str()},
  };
  std::string out;
  for (const auto& [k, v] : params) out += (out.empty() ? "" : "&") + k + "=" + v;
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::InvalidArgument, "SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

std::string cache_key(const LmfdbConfig& cfg, const std::string& query) { return sha256_hex(cfg.collection_path + "?" + query); }

std::vector<LmfdbRecord> parse_page(const LmfdbConfig& cfg, const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("payload is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("data") || !j["data"].is_array())
    throw Error(ErrorCode::ParseError, "payload path /data: expected an array");
  std::vector<LmfdbRecord> out;
  const json& data = j["data"];
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::string base = "/data/" + std::to_string(i);
    const json& rec = data[i];
    if (!rec.is_object()) throw Error(ErrorCode::ParseError, "payload path " + base + ": expected an object");
    for (const auto* key : {&cfg.field_label, &cfg.field_g, &cfg.field_q, &cfg.field_poly})
      if (!rec.contains(*key)) throw Error(ErrorCode::ParseError, "payload path " + base + "/" + *key + ": missing");
    LmfdbRecord r;
    if (!rec[cfg.field_label].is_string())
      throw Error(ErrorCode::ParseError, "payload path " + base + "/" + cfg.field_label + ": expected a string");
    r.label = rec[cfg.field_label].get<std::string>();
    const Int g = int_from_json(rec[cfg.field_g], base + "/" + cfg.field_g);
    if (!fits_long(g) || g < 1) throw Error(ErrorCode::ParseError, "payload path " + base + "/" + cfg.field_g + ": bad dimension");
    r.g = static_cast<int>(g.get_si());
    r.q = int_from_json(rec[cfg.field_q], base + "/" + cfg.field_q);
    const json& poly = rec[cfg.field_poly];
    if (!poly.is_array()) throw Error(ErrorCode::ParseError, "payload path " + base + "/" + cfg.field_poly + ": expected an array");
    for (std::size_t k = 0; k < poly.size(); ++k)
      r.poly.push_back(int_from_json(poly[k], base + "/" + cfg.field_poly + "/" + std::to_string(k)));
    out.push_back(std::move(r));
  }
  return out;
}

std::string render_page(const LmfdbConfig& cfg, const std::vector<LmfdbRecord>& records) {
  json data = json::array();
  for (const auto& r : records) {
    json poly = json::array();
    for (const auto& c : r.poly) poly.push_back(fits_long(c) ? json(c.get_si()) : json(c.get_str()));
    json rec;
    rec[cfg.field_label] = r.label;
    rec[cfg.field_g] = r.g;
    rec[cfg.field_q] = fits_long(r.q) ? json(r.q.get_si()) : json(r.q.get_str());
    rec[cfg.field_poly] = poly;
    data.push_back(rec);
  }
  return json{{"data", data}}.dump(1);
}

LmfdbClient::LmfdbClient(LmfdbConfig cfg, std::filesystem::path cache_dir, bool offline)
    : cfg_(std::move(cfg)), cache_dir_(std::move(cache_dir)), offline_(offline) {}

std::vector<LmfdbRecord> LmfdbClient::fetch(int g, const Int& q, std::size_t limit) {
  std::vector<LmfdbRecord> out;
  for (int offset = 0; out.size() < limit; offset += cfg_.page_size) {
    auto page = parse_page(cfg_, get_page(page_query(cfg_, g, q, offset)));
    const bool last = static_cast<int>(page.size()) < cfg_.page_size;
    for (auto& r : page) out.push_back(std::move(r));
    if (last) break;
  }
  if (out.size() > limit) out.resize(limit);
  return out;
}

std::string LmfdbClient::get_page(const std::string& query) {
  const auto path = cache_dir_ / (cache_key(cfg_, query) + ".json");
  {
    std::lock_guard lock(cache_mutex_);
    if (std::filesystem::exists(path)) return read_file(path);
  }
  if (offline_) throw Error(ErrorCode::CacheMiss, "no cached response for " + cfg_.collection_path + "?" + query);
  std::string body = http_get(query);
  parse_page(cfg_, body);  // never cache a payload we cannot read
  std::lock_guard lock(cache_mutex_);
  std::filesystem::create_directories(cache_dir_);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream outf(tmp, std::ios::binary);
    outf << body;
  }
  std::filesystem::rename(tmp, path);
  return body;
}

std::string LmfdbClient::http_get(const std::string& query) {
  const auto gap = std::chrono::duration<double>(1.0 / cfg_.requests_per_second);
  std::string last_error;
  for (int attempt = 0; attempt < cfg_.max_attempts; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(cfg_.backoff_ms << (attempt - 1)));
    {
      std::lock_guard lock(rate_mutex_);
      const auto ready = last_request_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(gap);
      std::this_thread::sleep_until(ready);
      last_request_ = std::chrono::steady_clock::now();
    }
    httplib::Client client(cfg_.base_url);
    client.set_connection_timeout(cfg_.timeout_s);
    client.set_read_timeout(cfg_.timeout_s);
    client.set_follow_location(true);
    auto res = client.Get(cfg_.collection_path + "?" + query);
    if (res && res->status == 200) return res->body;
    last_error = res ? "HTTP " + std::to_string(res->status) : httplib::to_string(res.error());
  }
  throw Error(ErrorCode::NetworkError,
              cfg_.base_url + cfg_.collection_path + "?" + query + " failed after " + std::to_string(cfg_.max_attempts) + " attempts: " + last_error);
}

}  // namespace avfq::service
