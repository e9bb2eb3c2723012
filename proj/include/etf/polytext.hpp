#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "etf/exactpoly.hpp"

namespace etf {

/// Prints `p` in the line grammar `3*x_2_3^4 + 58*x_2_3^3*al - 3`: terms in
/// descending grevlex order, every term starting with its coefficient.
/// Non-integer coefficients print as `p/q`. The zero polynomial prints as `0`.
std::string to_string(const MultiPoly& p);

/// Parses one polynomial over `vars`. Accepts the printed grammar plus terms
/// without an explicit coefficient (`-x*y`) and `p/q` coefficients.
MultiPoly parse_poly(std::string_view text, const VarTablePtr& vars);

/// Variable names occurring in `text`, in order of first appearance.
std::vector<std::string> scan_variables(std::string_view text);

/// Default table for names without a `# vars:` directive: `al` first,
/// `x_i_j` by (i, j), other names alphabetically, `u` last.
VarTablePtr infer_var_table(std::vector<std::string> names);

struct PolyFile {
  VarTablePtr vars;
  std::vector<MultiPoly> polys;
};

/// Reads a polynomial file: one polynomial per line, `#` comments, blank
/// lines ignored. A `# vars: a b c` comment fixes the variable table;
/// otherwise the table is `fixed_vars` when given, else inferred.
PolyFile parse_poly_file(std::istream& in, const VarTablePtr& fixed_vars = nullptr);
PolyFile parse_poly_text(std::string_view text, const VarTablePtr& fixed_vars = nullptr);

}  // namespace etf
