// Writes offline LMFDB responses for small (g, q).
//
// The pages have the API's shape and file names, so LmfdbClient serves them
// with --offline. Only classes known to be isogeny classes without further
// checks are written: over a prime field every squarefree Weil polynomial
// without real roots is a characteristic polynomial of Frobenius, and ordinary
// Weil polynomials are over any field.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "avfq/error.hpp"
#include "avfq/factor.hpp"
#include "avfq/isogeny_class.hpp"
#include "avfq/service/lmfdb.hpp"
#include "avfq/service/report.hpp"
#include "json.hpp"

using namespace avfq;
using namespace avfq::service;
namespace fs = std::filesystem;

namespace {

Int binom(int n, int k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// |a_i| <= C(2g, i) q^{i/2}
Int coeff_bound(int g, int i, const Int& q) {
  Int sq = binom(2 * g, i) * binom(2 * g, i) * pow_int(q, static_cast<unsigned long>(i));
  Int r;
  mpz_sqrt(r.get_mpz_t(), sq.get_mpz_t());
  return r;
}

bool is_isogeny_class(const WeilPoly& w) {
  if (!w.squarefree) return false;
  if (w.ordinary) return true;
  return w.a == 1 && !w.has_real_roots;
}

std::vector<LmfdbRecord> classes(int g, const Int& q) {
  std::vector<Int> bound(g + 1);
  for (int i = 1; i <= g; ++i) bound[i] = coeff_bound(g, i, q);
  std::vector<Int> a(g + 1);  // h = x^{2g} + a_1 x^{2g-1} + ... ; a_{2g-i} = q^{g-i} a_i
  std::vector<LmfdbRecord> out;
  auto emit = [&] {
    std::vector<Int> c(2 * g + 1);
    c[2 * g] = 1;
    for (int i = 1; i <= g; ++i) c[2 * g - i] = a[i];
    for (int i = 0; i < g; ++i) c[i] = pow_int(q, static_cast<unsigned long>(g - i)) * c[2 * g - i];
    const IntPoly h(c);
    // Cheap necessary conditions before the Sturm count.
    if (h.eval(Int(1)) <= 0 || h.eval(Int(-1)) <= 0) return;
    WeilPoly w;
    try {
      w = validate_weil(h, q);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotWeil) return;
      throw;
    }
    if (!is_isogeny_class(w)) return;
    out.push_back({lmfdb_label(w), g, q, c});
  };
  auto rec = [&](auto&& self, int i) -> void {
    if (i > g) return emit();
    for (a[i] = -bound[i]; a[i] <= bound[i]; ++a[i]) self(self, i + 1);
  };
  rec(rec, 1);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.label < y.label; });
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate offline LMFDB fixture pages"};
  std::string out_dir = AVFQ_DEFAULT_FIXTURES;
  std::string config = AVFQ_DEFAULT_CONFIG;
  std::vector<std::string> pairs{"1:2", "1:3", "1:4", "1:5", "2:2", "2:3", "2:4", "2:5", "3:2", "3:3", "3:4", "3:5"};
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--config", config, "LMFDB configuration used for page size and keys");
  app.add_option("--pairs", pairs, "g:q pairs")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  try {
    const LmfdbConfig cfg = fs::exists(config) ? LmfdbConfig::load(config) : LmfdbConfig{};
    fs::create_directories(out_dir);
    nlohmann::ordered_json index = nlohmann::ordered_json::array();
    for (const auto& pr : pairs) {
      const auto colon = pr.find(':');
      if (colon == std::string::npos) throw Error(ErrorCode::InvalidArgument, "expected g:q, got " + pr);
      const int g = std::stoi(pr.substr(0, colon));
      const Int q(pr.substr(colon + 1));
      const auto recs = classes(g, q);
      int pages = 0;
      // One extra empty page when the count is a multiple of the page size, as
      // the client stops only on a short page.
      for (std::size_t off = 0;; off += cfg.page_size) {
        const auto end = std::min(recs.size(), off + cfg.page_size);
        std::vector<LmfdbRecord> page(recs.begin() + static_cast<long>(std::min(off, recs.size())), recs.begin() + static_cast<long>(end));
        const auto query = page_query(cfg, g, q, static_cast<int>(off));
        std::ofstream(fs::path(out_dir) / (cache_key(cfg, query) + ".json")) << render_page(cfg, page) << "\n";
        ++pages;
        if (static_cast<int>(page.size()) < cfg.page_size) break;
      }
      index.push_back({{"g", g}, {"q", q.get_si()}, {"count", recs.size()}, {"pages", pages}});
      std::cout << "g = " << g << ", q = " << q << ": " << recs.size() << " classes, " << pages << " pages\n";
    }
    std::ofstream(fs::path(out_dir) / "index.json") << index.dump(2) << "\n";
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
