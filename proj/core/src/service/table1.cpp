#include "avfq/service/table1.hpp"

#include <iomanip>
#include <sstream>

#include "avfq/error.hpp"

namespace avfq::service {

namespace {

bool all_equal(std::initializer_list<bool> v) {
  for (bool b : v)
    if (b != *v.begin()) return false;
  return true;
}

}  // namespace

Table1Row tabulate(const Int& q, int g, const std::vector<WeilPoly>& classes, bool include_trivial) {
  Table1Row row;
  row.q = q;
  row.g = g;
  for (const auto& w : classes) {
    if (!w.squarefree || w.g != g || w.q != q) continue;
    const bool trivial = w.point_count() == 1;
    if (trivial && !include_trivial) continue;
    const IsogenyClass cls = IsogenyClass::make(w);
    const bool c1 = is_cyclic_class(w, CyclicMethod::Conductor, &cls);
    const bool c2 = is_cyclic_class(w, CyclicMethod::Newton, &cls);
    const bool c3 = is_cyclic_class(w, CyclicMethod::Enumeration, &cls);
    const bool r1 = is_rich_class(w, RichMethod::Formula, &cls);
    const bool r2 = is_rich_class(w, RichMethod::Integrality, &cls);
    const bool r3 = is_rich_class(w, RichMethod::Enumeration, &cls);
    if (!all_equal({c1, c2, c3}) || !all_equal({r1, r2, r3}))
      throw Error(ErrorCode::OracleDisagreement, "methods disagree on h = " + to_string(w.h));
    ++row.total;
    if (trivial) ++row.trivial;
    if (c1 && r1)
      ++row.both;
    else if (c1)
      ++row.only_cyclic;
    else if (r1)
      ++row.only_rich;
    else
      ++row.neither;
  }
  return row;
}

Table1Row table1_builtin(const Int& q, int g, bool include_trivial) {
  if (g != 1) throw Error(ErrorCode::UnsupportedDimension, "the builtin class list covers g = 1 only; use the lmfdb source");
  return tabulate(q, g, enumerate_elliptic_classes(q), include_trivial);
}

std::string format_percent(const Rat& fraction) {
  const Rat p = fraction * 100;
  if (p == 0) return "0";
  // p lies in [10^e, 10^(e+1)).
  int e = 0;
  while (p >= Rat(pow_int(Int(10), static_cast<unsigned long>(e + 1)))) ++e;
  while (p < Rat(1) / Rat(pow_int(Int(10), static_cast<unsigned long>(-std::min(e, 0))))) --e;
  int decimals = std::max(0, 2 - e);
  auto round_to = [&](int d) {
    const Rat scaled = p * Rat(pow_int(Int(10), static_cast<unsigned long>(d))) + Rat(1, 2);
    return floor_div(scaled.get_num(), scaled.get_den());
  };
  Int rounded = round_to(decimals);
  // 99.95 rounds to 100.0; keep three significant figures.
  if (decimals > 0 && rounded >= 1000) rounded = round_to(--decimals);
  std::string digits = rounded.get_str();
  if (decimals == 0) return digits;
  while (static_cast<int>(digits.size()) <= decimals) digits.insert(digits.begin(), '0');
  digits.insert(digits.end() - decimals, '.');
  return digits;
}

std::string render_table1(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(6) << "q" << std::setw(4) << "g" << std::setw(7) << "total" << std::setw(12) << "only-rich"
     << std::setw(13) << "only-cyclic" << std::setw(9) << "both" << "neither\n";
  for (const auto& r : rows) {
    auto cell = [&](long c) { return format_percent(r.fraction(c)) + " "; };
    os << std::left << std::setw(6) << r.q.get_str() << std::setw(4) << r.g << std::setw(7) << r.total << std::setw(12)
       << cell(r.only_rich) << std::setw(13) << cell(r.only_cyclic) << std::setw(9) << cell(r.both) << cell(r.neither) << "\n";
  }
  os << "(percent of squarefree classes; classes with one point count as cyclic and rich)\n";
  return os.str();
}

}  // namespace avfq::service
