#include "avfq/service/report.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "avfq/error.hpp"
#include "json.hpp"

namespace avfq::service {

namespace {

using json = nlohmann::ordered_json;

class Stopwatch {
 public:
  explicit Stopwatch(std::map<std::string, double>* sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
  void lap(const std::string& name) {
    if (!sink_) return;
    const auto now = std::chrono::steady_clock::now();
    (*sink_)[name] = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
  }

 private:
  std::map<std::string, double>* sink_;
  std::chrono::steady_clock::time_point start_;
};

Verdict combine(const std::string& what, std::map<std::string, bool> methods) {
  Verdict v;
  v.methods = std::move(methods);
  const bool first = v.methods.begin()->second;
  v.verdict = first;
  for (const auto& [name, value] : v.methods) v.methods_agree = v.methods_agree && value == first;
  if (!v.methods_agree) {
    std::string detail;
    for (const auto& [name, value] : v.methods) detail += " " + name + "=" + (value ? "true" : "false");
    throw Error(ErrorCode::OracleDisagreement, what + " methods disagree:" + detail);
  }
  return v;
}

PrimeTypeEntry prime_entry(const OrderPrime& p, int type, const Conjugation& conj) {
  return {p.p, p.residue_degree, type, conjugate_prime(p, conj) == p};
}

json int_json(const Int& v) {
  if (fits_long(v)) return v.get_si();
  return v.get_str();
}

json group_json(const AbGroup& g) {
  json a = json::array();
  for (const auto& d : g.invariants()) a.push_back(int_json(d));
  return a;
}

json primes_json(const std::vector<PrimeTypeEntry>& ps) {
  json a = json::array();
  for (const auto& p : ps)
    a.push_back({{"p", int_json(p.p)}, {"residue_degree", p.residue_degree}, {"type", p.type}, {"self_conjugate", p.self_conjugate}});
  return a;
}

json verdict_json(const Verdict& v) {
  json m = json::object();
  for (const auto& [k, b] : v.methods) m[k] = b;
  return {{"verdict", v.verdict}, {"methods_agree", v.methods_agree}, {"methods", m}};
}

std::string encode_base26(const Int& v) {
  Int a = abs_int(v);
  std::string s;
  do {
    s.push_back(static_cast<char>('a' + mpz_fdiv_ui(a.get_mpz_t(), 26)));
    a /= 26;
  } while (a > 0);
  std::reverse(s.begin(), s.end());
  return v < 0 ? "a" + s : s;
}

}  // namespace

OrderSelection parse_order_selection(const std::string& s) {
  if (s == "all") return OrderSelection::All;
  if (s == "maximal") return OrderSelection::Maximal;
  if (s == "frobenius") return OrderSelection::Frobenius;
  throw Error(ErrorCode::InvalidArgument, "orders must be all, maximal or frobenius, not '" + s + "'");
}

std::string to_string(OrderSelection s) {
  switch (s) {
    case OrderSelection::All: return "all";
    case OrderSelection::Maximal: return "maximal";
    case OrderSelection::Frobenius: return "frobenius";
  }
  return "";
}

std::string lmfdb_label(const WeilPoly& w) {
  std::string out = std::to_string(w.g) + "." + w.q.get_str() + ".";
  for (int i = 1; i <= w.g; ++i) {
    if (i > 1) out += "_";
    out += encode_base26(w.h.coeff(static_cast<std::size_t>(2 * w.g - i)));
  }
  return out;
}

ClassReport analyze(const WeilPoly& w, const AnalyzeOptions& opts, std::optional<std::string> label) {
  if (opts.n == 0) throw Error(ErrorCode::InvalidArgument, "extension degree n must be positive");
  ClassReport r;
  Stopwatch clock(opts.timings ? &r.timings_ms : nullptr);
  r.label = std::move(label);
  r.q = w.q;
  r.g = w.g;
  r.h = w.h.coeffs();
  r.n_points = w.point_count();
  r.squarefree = w.squarefree;
  r.ordinary = w.ordinary;
  r.regime = functor_regime(w);
  const IsogenyClass cls = IsogenyClass::make(w);
  r.conductor_index = cls.conductor_index();
  clock.lap("orders");

  r.cyclic = combine("cyclicity", {{"conductor", is_cyclic_class(w, CyclicMethod::Conductor, &cls)},
                                   {"newton", is_cyclic_class(w, CyclicMethod::Newton, &cls)},
                                   {"enumeration", is_cyclic_class(w, CyclicMethod::Enumeration, &cls)}});
  r.rich = combine("richness", {{"formula", is_rich_class(w, RichMethod::Formula, &cls)},
                                {"integrality", is_rich_class(w, RichMethod::Integrality, &cls)},
                                {"enumeration", is_rich_class(w, RichMethod::Enumeration, &cls)}});
  r.admissible_groups = admissible_groups(w);
  clock.lap("classification");

  std::vector<Order> orders;
  switch (opts.orders) {
    case OrderSelection::Frobenius: orders = {cls.frobenius_order()}; break;
    case OrderSelection::Maximal: orders = {cls.maximal_order()}; break;
    case OrderSelection::All:
      try {
        orders = overorders(cls.frobenius_order(), cls.maximal_order(), opts.overorder_bound);
        r.overorder_count = orders.size();
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BoundExceeded) throw;
        r.notes = std::string(e.what()) + "; only R and O_K analyzed";
        orders = {cls.frobenius_order()};
        if (!(cls.maximal_order() == cls.frobenius_order())) orders.push_back(cls.maximal_order());
      }
      break;
  }
  clock.lap("overorders");

  const Conjugation& conj = cls.conjugation();
  const bool check_admissible = opts.n == 1 && r.regime != FunctorRegime::None;
  for (const auto& s : orders) {
    OrderEntry e;
    e.fingerprint = s.lattice().fingerprint();
    e.index_over_r = index(s.lattice(), cls.frobenius_order().lattice());
    e.conjugation_stable = conjugate_order(s, conj) == s;
    e.maximal = s == cls.maximal_order();
    if (!e.maximal)
      for (const auto& p : primes_containing(s, conductor(s, cls.maximal_order())))
        e.singular_primes.push_back(prime_entry(p, cm_type_at(s, p), conj));
    const PointsResult pr = group_from_order(cls, s, opts.n);
    e.group = pr.group;
    e.basis = pr.basis;
    e.warning = pr.warning;
    for (const auto& h : pr.hypotheses_checked) e.hypotheses.push_back(prime_entry(h.prime, h.type, conj));
    e.dual_group = dual_group(cls, s.lattice(), opts.n);
    if (check_admissible) {
      for (const AbGroup* g : {&e.group, &e.dual_group})
        if (std::find(r.admissible_groups.begin(), r.admissible_groups.end(), *g) == r.admissible_groups.end())
          throw Error(ErrorCode::OracleDisagreement, "group " + g->to_string() + " of an order fails the polygon criterion");
    }
    if (r.regime != FunctorRegime::None) {
      if (auto wit = not_self_dual_witness(cls, s, orders)) {
        e.not_self_dual_order = wit->order.lattice().fingerprint();
        e.not_self_dual_prime = wit->prime.p;
      }
    }
    r.orders.push_back(std::move(e));
  }
  clock.lap("groups");
  return r;
}

std::string to_json(const ClassReport& r, int indent) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["label"] = r.label ? json(*r.label) : json(nullptr);
  j["q"] = int_json(r.q);
  j["g"] = r.g;
  json h = json::array();
  for (const auto& c : r.h) h.push_back(int_json(c));
  j["h"] = h;
  j["N"] = int_json(r.n_points);
  j["flags"] = {{"squarefree", r.squarefree}, {"ordinary", r.ordinary}, {"functor_regime", to_string(r.regime)}};
  j["cyclic"] = verdict_json(r.cyclic);
  j["rich"] = verdict_json(r.rich);
  json adm = json::array();
  for (const auto& g : r.admissible_groups) adm.push_back(group_json(g));
  j["admissible_groups"] = adm;
  j["conductor_index"] = int_json(r.conductor_index);
  j["overorder_count"] = r.overorder_count ? json(*r.overorder_count) : json(nullptr);
  json orders = json::array();
  json pairs = json::array();
  json obstruction = nullptr;
  for (const auto& e : r.orders) {
    json o;
    o["fingerprint"] = e.fingerprint;
    o["index_over_R"] = int_json(e.index_over_r);
    o["conjugation_stable"] = e.conjugation_stable;
    o["maximal"] = e.maximal;
    o["singular_primes"] = primes_json(e.singular_primes);
    o["group"] = group_json(e.group);
    o["basis_of_claim"] = to_string(e.basis);
    o["hypotheses"] = primes_json(e.hypotheses);
    o["warning"] = e.warning.empty() ? json(nullptr) : json(e.warning);
    o["dual_group"] = group_json(e.dual_group);
    if (e.not_self_dual_order) {
      o["not_self_dual_witness"] = {{"order", *e.not_self_dual_order}, {"p", int_json(*e.not_self_dual_prime)}};
      if (obstruction.is_null()) obstruction = {{"end_order", e.fingerprint}, {"order", *e.not_self_dual_order}, {"p", int_json(*e.not_self_dual_prime)}};
    } else {
      o["not_self_dual_witness"] = nullptr;
    }
    orders.push_back(o);
    pairs.push_back({{"order", e.fingerprint}, {"group", group_json(e.group)}, {"dual_group", group_json(e.dual_group)}});
  }
  j["orders"] = orders;
  j["duality"] = {{"self_dual_obstruction", obstruction}, {"dual_group_pairs", pairs}};
  j["notes"] = r.notes ? json(*r.notes) : json(nullptr);
  if (!r.timings_ms.empty()) {
    json t = json::object();
    for (const auto& [k, v] : r.timings_ms) t[k] = v;
    j["timings_ms"] = t;
  }
  return j.dump(indent);
}

std::string to_text(const ClassReport& r) {
  std::ostringstream os;
  IntPoly h{std::vector<Int>(r.h)};
  os << (r.label ? *r.label + "  " : "") << "q = " << r.q << ", g = " << r.g << ", h = " << to_string(h) << "\n";
  os << "N = " << r.n_points << (r.ordinary ? ", ordinary" : ", not ordinary") << ", regime " << to_string(r.regime)
     << ", [O_K : R] = " << r.conductor_index << "\n";
  os << "cyclic: " << (r.cyclic.verdict ? "yes" : "no") << ", rich: " << (r.rich.verdict ? "yes" : "no") << "\n";
  os << "admissible groups:";
  for (const auto& g : r.admissible_groups) os << "  " << g.to_string();
  os << "\n";
  if (r.overorder_count) os << "overorders of R: " << *r.overorder_count << "\n";
  for (const auto& e : r.orders) {
    os << "  order " << e.fingerprint << "  [S:R] = " << e.index_over_r << (e.maximal ? "  maximal" : "")
       << (e.conjugation_stable ? "  S = conj(S)" : "") << "\n";
    if (!e.singular_primes.empty()) {
      os << "    types:";
      for (const auto& p : e.singular_primes) os << "  " << p.p << "^" << p.residue_degree << " -> " << p.type;
      os << "\n";
    }
    os << "    group " << e.group.to_string() << " (" << to_string(e.basis) << "), dual " << e.dual_group.to_string() << "\n";
    if (!e.warning.empty()) os << "    warning: " << e.warning << "\n";
    if (e.not_self_dual_order) os << "    not self-dual: type-2 prime above " << *e.not_self_dual_prime << " in " << *e.not_self_dual_order << "\n";
  }
  if (r.notes) os << "note: " << *r.notes << "\n";
  return os.str();
}

}  // namespace avfq::service
