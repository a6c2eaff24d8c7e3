#pragma once

#include <string>
#include <vector>

#include "avfq/isogeny_class.hpp"

namespace avfq::service {

// Counts of squarefree classes by (rich, cyclic) for one (q, g).
struct Table1Row {
  Int q;
  int g = 0;
  long total = 0;
  long only_rich = 0;
  long only_cyclic = 0;
  long both = 0;
  long neither = 0;
  long trivial = 0;  // classes with N = 1, counted as both cyclic and rich

  Rat fraction(long count) const {
    Rat f = total ? Rat(count, total) : Rat(0);
    f.canonicalize();
    return f;
  }
};

// Classifies each class with every method and throws OracleDisagreement on a split.
Table1Row tabulate(const Int& q, int g, const std::vector<WeilPoly>& classes, bool include_trivial = true);
// g = 1 from the elliptic enumeration. Throws UnsupportedDimension otherwise.
Table1Row table1_builtin(const Int& q, int g, bool include_trivial = true);

// Percent with three significant figures, rounding half up; 0 prints as "0".
std::string format_percent(const Rat& fraction);

std::string render_table1(const std::vector<Table1Row>& rows);

}  // namespace avfq::service
