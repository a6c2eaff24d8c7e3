// avfq: classify squarefree isogeny classes of abelian varieties over finite fields.
//
// Exit codes: 0 success, 1 external failure (network, cache), 2 invalid input,
// 3 disagreement between independent methods.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "avfq/error.hpp"
#include "avfq/isogeny_class.hpp"
#include "avfq/service/batch.hpp"
#include "avfq/service/lmfdb.hpp"
#include "avfq/service/report.hpp"
#include "avfq/service/table1.hpp"
#include "json.hpp"

using namespace avfq;
using namespace avfq::service;
namespace fs = std::filesystem;

namespace {

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::OracleDisagreement: return 3;
    case ErrorCode::NetworkError:
    case ErrorCode::CacheMiss:
    case ErrorCode::BoundExceeded:
    case ErrorCode::PartialFactorization: return 1;
    default: return 2;
  }
}

Int parse_int(const std::string& s) {
  Int v;
  std::string t = s;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty() || v.set_str(t, 10) != 0) throw Error(ErrorCode::InvalidArgument, "not an integer: '" + s + "'");
  return v;
}

std::vector<Int> parse_ints(const std::vector<std::string>& v) {
  std::vector<Int> out;
  for (const auto& s : v) out.push_back(parse_int(s));
  return out;
}

struct LmfdbOptions {
  std::string config = AVFQ_DEFAULT_CONFIG;
  std::string fixtures = AVFQ_DEFAULT_FIXTURES;
  std::string cache_dir;
  bool offline = false;

  void add(CLI::App* app) {
    app->add_option("--config", config, "LMFDB endpoint configuration (JSON)");
    app->add_option("--fixtures", fixtures, "directory of committed responses used with --offline");
    app->add_option("--cache-dir", cache_dir, "response cache for online use");
    app->add_flag("--offline", offline, "serve responses from the fixture directory only");
  }

  LmfdbClient client() const {
    LmfdbConfig cfg = fs::exists(config) ? LmfdbConfig::load(config) : LmfdbConfig{};
    fs::path dir;
    if (offline) {
      dir = fixtures;
    } else if (!cache_dir.empty()) {
      dir = cache_dir;
    } else {
      const char* xdg = std::getenv("XDG_CACHE_HOME");
      const char* home = std::getenv("HOME");
      dir = xdg ? fs::path(xdg) / "avfq" : fs::path(home ? home : ".") / ".cache" / "avfq";
    }
    return LmfdbClient(std::move(cfg), dir, offline);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groups of points, cyclicity and richness of squarefree isogeny classes"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "classify one isogeny class");
  std::string q_arg;
  std::vector<std::string> poly_arg;
  std::string label_arg;
  std::string orders_arg = "all";
  unsigned n_arg = 1;
  std::uint64_t bound_arg = AnalyzeOptions{}.overorder_bound;
  bool timings = false;
  analyze_cmd->add_option("--q", q_arg, "field size")->required();
  analyze_cmd->add_option("--poly", poly_arg, "coefficients of h, constant term first")->required()->delimiter(',');
  analyze_cmd->add_option("--label", label_arg, "label to attach to the report");
  analyze_cmd->add_option("--n", n_arg, "report groups over F_{q^n}");
  analyze_cmd->add_option("--orders", orders_arg, "all | maximal | frobenius");
  analyze_cmd->add_option("--overorder-bound", bound_arg, "largest [O_K : R] for which all overorders are listed");
  analyze_cmd->add_flag("--timings", timings, "include per-phase timings");

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "list the elliptic classes over F_q");
  std::string enum_q;
  enum_cmd->add_option("--q", enum_q, "field size")->required();

  // table1
  auto* table_cmd = app.add_subcommand("table1", "share of cyclic and rich squarefree classes");
  std::vector<std::string> table_q{"2", "3", "4", "5"};
  std::vector<int> table_g{1};
  std::string source = "builtin";
  bool exclude_trivial = false;
  std::size_t table_limit = 100000;
  LmfdbOptions table_lmfdb;
  table_cmd->add_option("--q", table_q, "field sizes")->delimiter(',');
  table_cmd->add_option("--g", table_g, "dimensions")->delimiter(',');
  table_cmd->add_option("--source", source, "builtin | lmfdb")->check(CLI::IsMember({"builtin", "lmfdb"}));
  table_cmd->add_flag("--exclude-trivial", exclude_trivial, "leave out classes with a single point");
  table_cmd->add_option("--limit", table_limit, "largest number of classes per (q, g) from lmfdb");
  table_lmfdb.add(table_cmd);

  // fetch
  auto* fetch_cmd = app.add_subcommand("fetch", "download isogeny classes from the LMFDB");
  int fetch_g = 2;
  std::string fetch_q;
  std::size_t fetch_limit = 1000;
  LmfdbOptions fetch_lmfdb;
  fetch_cmd->add_option("--g", fetch_g, "dimension")->required();
  fetch_cmd->add_option("--q", fetch_q, "field size")->required();
  fetch_cmd->add_option("--limit", fetch_limit, "largest number of records");
  fetch_lmfdb.add(fetch_cmd);

  // batch
  auto* batch_cmd = app.add_subcommand("batch", "analyze many classes in parallel");
  std::string batch_input;
  int batch_g = 0;
  std::string batch_q;
  std::size_t batch_limit = 1000;
  unsigned threads = 0;
  std::string batch_orders = "maximal";
  LmfdbOptions batch_lmfdb;
  batch_cmd->add_option("--input", batch_input, "JSON array of {label, q, poly} or an LMFDB response");
  batch_cmd->add_option("--g", batch_g, "take classes of this dimension from the LMFDB");
  batch_cmd->add_option("--q", batch_q, "field size for --g");
  batch_cmd->add_option("--limit", batch_limit, "largest number of LMFDB records");
  batch_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
  batch_cmd->add_option("--orders", batch_orders, "all | maximal | frobenius");
  batch_lmfdb.add(batch_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*analyze_cmd) {
      AnalyzeOptions opts;
      opts.n = n_arg;
      opts.orders = parse_order_selection(orders_arg);
      opts.overorder_bound = bound_arg;
      opts.timings = timings;
      const WeilPoly w = validate_weil(IntPoly(parse_ints(poly_arg)), parse_int(q_arg));
      std::optional<std::string> label = label_arg.empty() ? std::optional<std::string>(lmfdb_label(w)) : label_arg;
      const ClassReport r = analyze(w, opts, label);
      std::cout << (as_json ? to_json(r) + "\n" : to_text(r));
      return 0;
    }

    if (*enum_cmd) {
      const Int q = parse_int(enum_q);
      nlohmann::ordered_json out = nlohmann::ordered_json::array();
      for (const auto& w : enumerate_elliptic_classes(q)) {
        const bool cyclic = is_cyclic_class(w, CyclicMethod::Newton);
        const bool rich = is_rich_class(w, RichMethod::Formula);
        if (as_json) {
          out.push_back({{"label", lmfdb_label(w)}, {"trace", -w.h.coeff(1).get_si()}, {"N", w.point_count().get_si()},
                         {"ordinary", w.ordinary}, {"cyclic", cyclic}, {"rich", rich}});
        } else {
          std::cout << lmfdb_label(w) << "  " << to_string(w.h) << "  N = " << w.point_count() << (w.ordinary ? "  ordinary" : "")
                    << (cyclic ? "  cyclic" : "") << (rich ? "  rich" : "") << "\n";
        }
      }
      if (as_json) std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (*table_cmd) {
      std::vector<Table1Row> rows;
      LmfdbClient client = table_lmfdb.client();  // touches the network only on fetch
      for (int g : table_g) {
        for (const auto& qs : table_q) {
          const Int q = parse_int(qs);
          if (source == "builtin") {
            rows.push_back(table1_builtin(q, g, !exclude_trivial));
            continue;
          }
          std::vector<WeilPoly> classes;
          for (const auto& rec : client.fetch(g, q, table_limit)) classes.push_back(validate_weil(IntPoly(rec.poly), rec.q));
          rows.push_back(tabulate(q, g, classes, !exclude_trivial));
        }
      }
      if (as_json) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
          auto cell = [&](long c) {
            return nlohmann::ordered_json{{"count", c}, {"fraction", r.fraction(c).get_str()}, {"percent", format_percent(r.fraction(c))}};
          };
          out.push_back({{"q", r.q.get_si()}, {"g", r.g}, {"total", r.total}, {"trivial", r.trivial},
                         {"only_rich", cell(r.only_rich)}, {"only_cyclic", cell(r.only_cyclic)}, {"both", cell(r.both)},
                         {"neither", cell(r.neither)}});
        }
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << render_table1(rows);
        if (source == "lmfdb" && table_lmfdb.offline)
          std::cout << "(g >= 2 rows cover the committed fixture subset, not the full LMFDB)\n";
      }
      return 0;
    }

    if (*fetch_cmd) {
      LmfdbClient client = fetch_lmfdb.client();
      const auto recs = client.fetch(fetch_g, parse_int(fetch_q), fetch_limit);
      if (as_json) {
        std::cout << render_page(client.config(), recs) << "\n";
      } else {
        for (const auto& r : recs) {
          std::cout << r.label << "  [";
          for (std::size_t i = 0; i < r.poly.size(); ++i) std::cout << (i ? "," : "") << r.poly[i];
          std::cout << "]\n";
        }
      }
      return 0;
    }

    if (*batch_cmd) {
      std::vector<LmfdbRecord> recs;
      if (!batch_input.empty()) {
        std::ifstream in(batch_input);
        if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + batch_input);
        std::stringstream ss;
        ss << in.rdbuf();
        auto j = nlohmann::json::parse(ss.str(), nullptr, false);
        if (j.is_discarded()) throw Error(ErrorCode::ParseError, batch_input + " is not JSON");
        if (j.is_array()) j = nlohmann::json{{"data", j}};
        recs = parse_page(LmfdbConfig{}, j.dump());
      } else if (batch_g > 0 && !batch_q.empty()) {
        recs = batch_lmfdb.client().fetch(batch_g, parse_int(batch_q), batch_limit);
      } else {
        throw Error(ErrorCode::InvalidArgument, "batch needs --input or --g with --q");
      }
      std::vector<BatchItem> items;
      for (auto& r : recs) items.push_back({r.label, r.q, std::move(r.poly)});
      AnalyzeOptions opts;
      opts.orders = parse_order_selection(batch_orders);
      const auto results = run_batch(items, opts, threads);
      int rc = 0;
      std::string out = "[";
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& res = results[i];
        if (res.report) {
          if (as_json) {
            out += (i ? ",\n" : "\n") + to_json(*res.report);
          } else {
            const auto& r = *res.report;
            std::cout << (r.label ? *r.label : "?") << "  N = " << r.n_points << "  cyclic " << (r.cyclic.verdict ? "yes" : "no")
                      << "  rich " << (r.rich.verdict ? "yes" : "no") << "\n";
          }
        } else {
          std::cerr << (items[i].label ? *items[i].label : "item " + std::to_string(i)) << ": " << res.error << "\n";
          if (res.error.rfind("OracleDisagreement", 0) == 0)
            rc = 3;
          else if (rc == 0)
            rc = 2;
          if (as_json) out += std::string(i ? ",\n" : "\n") + nlohmann::json{{"error", res.error}}.dump();
        }
      }
      if (as_json) std::cout << out << "\n]\n";
      return rc;
    }
  } catch (const Error& e) {
    std::cerr << "avfq: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "avfq: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
