#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "etf/exactpoly.hpp"
#include "etf/frames.hpp"

namespace etf {

/// Polynomial with integer (possibly negative) exponents over a VarTable.
class LaurentPoly {
 public:
  using Exponents = std::vector<std::int32_t>;
  using TermMap = std::map<Exponents, Rational>;

  explicit LaurentPoly(VarTablePtr vars);

  static LaurentPoly constant(VarTablePtr vars, const Rational& c);
  static LaurentPoly variable(VarTablePtr vars, std::string_view name, std::int32_t exp = 1);

  const VarTablePtr& vars() const noexcept { return vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Exponents& e, const Rational& c);

  /// Substitutes v -> 1/v for every variable index in `which`.
  LaurentPoly invert(const std::vector<std::size_t>& which) const;

  std::complex<double> evaluate(const Assignment& point) const;

  LaurentPoly& operator+=(const LaurentPoly& q);
  LaurentPoly& operator-=(const LaurentPoly& q);
  LaurentPoly& operator*=(const Rational& c);

  friend LaurentPoly operator+(LaurentPoly p, const LaurentPoly& q) { return p += q; }
  friend LaurentPoly operator-(LaurentPoly p, const LaurentPoly& q) { return p -= q; }
  friend LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q);
  friend LaurentPoly operator*(LaurentPoly p, const Rational& c) { return p *= c; }

 private:
  VarTablePtr vars_;
  TermMap terms_;
};

/// Multiplies by the smallest monomial making every exponent non-negative and
/// returns the primitive part. Only variables named `x_*` may carry negative
/// exponents; anything else raises Errc::NonMonomialDenominator.
MultiPoly clear_denominators(const LaurentPoly& p);

/// Parameters of a generated system.
struct SystemParams {
  int n = 0;
  int m = 0;
  bool alphaRational = false;
  /// Exact value of alpha when it is rational.
  std::optional<Rational> alpha;

  static SystemParams make(int n, int m);
};

/// Exact alpha^2 = (n - m) / (m (n - 1)).
Rational alpha_squared(int n, int m);

/// Names of the x variables for an (n - 2) x (n - 2) block, in the order
/// x_2_3, x_2_4, ..., x_{n-3}_{n-2}.
std::vector<std::string> x_variable_names(int n);

/// The (n - 2) x (n - 2) symbolic sub-Gram matrix with Laurent entries.
class SymbolicHermitian {
 public:
  SymbolicHermitian(const SystemParams& p, VarTablePtr vars);

  int size() const noexcept { return size_; }
  /// Zero-based entry access.
  const LaurentPoly& entry(int i, int j) const { return h_[i * size_ + j]; }
  /// (n/m) h_xy - (H^2)_xy.
  LaurentPoly sigma(int x, int y) const;
  /// Triple-product expression for rows i < j < k (zero-based).
  LaurentPoly haagerup(int i, int j, int k) const;
  /// m H^2 - n H.
  std::vector<LaurentPoly> frame_matrix() const;
  /// Indices of the x variables in the table.
  const std::vector<std::size_t>& x_indices() const noexcept { return xs_; }

 private:
  SystemParams params_;
  VarTablePtr vars_;
  int size_;
  std::vector<LaurentPoly> h_;
  std::vector<LaurentPoly> sq_;
  LaurentPoly alpha_;
  std::vector<std::size_t> xs_;
};

enum class EqTag { AlphaRelation, RankMinor, FrameMinor, Haagerup, HaagerupConj, Nonzero };

std::string_view to_string(EqTag tag) noexcept;

struct Equation {
  MultiPoly poly;
  EqTag tag;
};

struct PolySystem {
  SystemParams params;
  VarTablePtr vars;
  std::vector<Equation> equations;
};

struct SystemCounts {
  std::uint64_t equations = 0;
  std::uint64_t variables = 0;
  bool operator==(const SystemCounts&) const = default;
};

/// The closed-form counts, one less each when alpha is rational.
SystemCounts expected_counts(int n, int m);

/// One entry of the generation plan: the tag plus the row and column index
/// sets (minors) or the triple (Haagerup equations), zero-based.
struct PlannedEquation {
  EqTag tag;
  std::vector<int> rows;
  std::vector<int> cols;
};

/// Enumerates the equations generate_system would emit, in emission order,
/// without computing any polynomial.
std::vector<PlannedEquation> plan_system(int n, int m);

/// Counts derived from plan_system and the variable table.
SystemCounts planned_counts(int n, int m);

struct GenerateOptions {
  bool alphaReduce = true;
};

/// Builds conditions (c) through (h) for the (n, m) problem. Throws
/// Errc::BadParams unless m >= 2, n >= m + 1 and n >= 3.
PolySystem generate_system(int n, int m, const GenerateOptions& opts = {});

/// Reduces `p` to degree <= 1 in `al` modulo m(n-1) al^2 - (n-m) and returns
/// the primitive part. Throws Errc::AlphaIsRational when alpha is rational.
MultiPoly reduce_alpha(const MultiPoly& p, const SystemParams& params);

enum class Dialect { Plain, Maple, Magma };

Dialect parse_dialect(std::string_view text);

void export_system(std::ostream& out, const PolySystem& sys, Dialect dialect);
std::string export_system(const PolySystem& sys, Dialect dialect);

/// Largest |value| of the equations at `point`. A missing `u` is derived as
/// 1 / prod x.
double evaluate_at_solution(const PolySystem& sys, Assignment point);

/// Variable values read off a Gram matrix: dephase it, then x_ij = G_ij / alpha
/// on the leading (n - 2) block, plus `al` and `u`.
Assignment solution_from_gram(const ComplexMatrix& g, const SystemParams& params);

}  // namespace etf
