#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avfq/isogeny_class.hpp"
#include "avfq/rational_points.hpp"

namespace avfq::service {

inline constexpr int kReportSchemaVersion = 1;

enum class OrderSelection { All, Maximal, Frobenius };
OrderSelection parse_order_selection(const std::string& s);  // throws InvalidArgument
std::string to_string(OrderSelection s);

struct AnalyzeOptions {
  unsigned n = 1;  // groups over F_{q^n}
  OrderSelection orders = OrderSelection::All;
  std::uint64_t overorder_bound = 4096;
  bool timings = false;  // off by default so reports are reproducible byte for byte
};

struct Verdict {
  bool verdict = false;
  bool methods_agree = true;
  std::map<std::string, bool> methods;
};

struct PrimeTypeEntry {
  Int p;
  int residue_degree = 0;
  int type = 0;
  bool self_conjugate = false;
};

struct OrderEntry {
  std::string fingerprint;
  Int index_over_r;
  bool conjugation_stable = false;
  bool maximal = false;
  // Types at the primes where S is not maximal.
  std::vector<PrimeTypeEntry> singular_primes;
  AbGroup group;
  AbGroup dual_group;
  ClaimBasis basis = ClaimBasis::IdealQuotient;
  std::vector<PrimeTypeEntry> hypotheses;
  std::string warning;
  // Self-duality obstruction: the witness order and the rational prime below its type-2 prime.
  std::optional<std::string> not_self_dual_order;
  std::optional<Int> not_self_dual_prime;
};

struct ClassReport {
  std::optional<std::string> label;
  Int q;
  int g = 0;
  std::vector<Int> h;  // ascending
  Int n_points;
  bool squarefree = false;
  bool ordinary = false;
  FunctorRegime regime = FunctorRegime::None;
  Verdict cyclic;
  Verdict rich;
  std::vector<AbGroup> admissible_groups;
  Int conductor_index;
  std::optional<std::size_t> overorder_count;
  std::vector<OrderEntry> orders;
  std::optional<std::string> notes;
  std::map<std::string, double> timings_ms;
};

// Full classification. Throws OracleDisagreement if independent methods
// disagree, and the validation errors of validate_weil / IsogenyClass::make.
ClassReport analyze(const WeilPoly& w, const AnalyzeOptions& opts = {}, std::optional<std::string> label = std::nullopt);

std::string to_json(const ClassReport& r, int indent = 2);
std::string to_text(const ClassReport& r);

// LMFDB label g.q.xxx_yyy built from a_1..a_g of x^{2g} + a_1 x^{2g-1} + ...
std::string lmfdb_label(const WeilPoly& w);

}  // namespace avfq::service
