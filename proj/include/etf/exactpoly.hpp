#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace etf {

using Integer = mpz_class;
using Rational = mpq_class;

/// Ordered list of variable names. Position in the table is the exponent slot
/// of every monomial built over it, and also the variable's rank in the
/// monomial orders: later entries are larger variables.
class VarTable {
 public:
  explicit VarTable(std::vector<std::string> names);

  static std::shared_ptr<const VarTable> make(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> index(std::string_view name) const;

  bool operator==(const VarTable& other) const noexcept { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

bool same_vars(const VarTablePtr& a, const VarTablePtr& b) noexcept;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  std::size_t size() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, std::uint32_t e) { exps_.at(i) = e; }
  std::span<const std::uint32_t> exponents() const noexcept { return exps_; }

  std::uint64_t degree() const noexcept;
  bool is_one() const noexcept;
  /// True when *this divides `other`.
  bool divides(const Monomial& other) const noexcept;
  bool coprime(const Monomial& other) const noexcept;

  /// Exponent sums above 2^32 - 1 raise Errc::ExponentOverflow.
  Monomial operator*(const Monomial& other) const;
  /// Requires `other.divides(*this)`.
  Monomial operator/(const Monomial& other) const;

  static Monomial lcm(const Monomial& a, const Monomial& b);

  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exps_;
};

enum class MonomialOrder { Lex, Grevlex };

/// Three-way comparison of monomials under `order`: negative, zero or
/// positive as `a` is smaller, equal or larger than `b`.
int compare(MonomialOrder order, const Monomial& a, const Monomial& b) noexcept;

std::string_view to_string(MonomialOrder order) noexcept;
MonomialOrder parse_order(std::string_view text);

/// Sparse multivariate polynomial with exact rational coefficients. Terms are
/// kept in a sorted map keyed by exponent vector; zero coefficients are never
/// stored.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  explicit MultiPoly(VarTablePtr vars);

  static MultiPoly constant(VarTablePtr vars, const Rational& c);
  static MultiPoly variable(VarTablePtr vars, std::string_view name, std::uint32_t exp = 1);
  static MultiPoly term(VarTablePtr vars, Monomial mono, const Rational& c);

  const VarTablePtr& vars() const noexcept { return vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;

  std::uint64_t total_degree() const noexcept;
  std::uint32_t degree_in(std::size_t var) const noexcept;
  Rational coefficient(const Monomial& mono) const;

  /// Adds `c * mono`, dropping the term if it cancels. `c` must be canonical.
  void add_term(const Monomial& mono, const Rational& c);

  /// Throws Errc::ZeroPolynomial on the zero polynomial.
  std::pair<Monomial, Rational> leading_term(MonomialOrder order) const;
  Monomial leading_monomial(MonomialOrder order) const { return leading_term(order).first; }

  /// Integer coefficients with gcd 1 and positive grevlex leading coefficient.
  MultiPoly primitive() const;

  MultiPoly& operator+=(const MultiPoly& q);
  MultiPoly& operator-=(const MultiPoly& q);
  MultiPoly& operator*=(const Rational& c);
  MultiPoly operator-() const;

  friend MultiPoly operator+(MultiPoly p, const MultiPoly& q) { return p += q; }
  friend MultiPoly operator-(MultiPoly p, const MultiPoly& q) { return p -= q; }
  friend MultiPoly operator*(const MultiPoly& p, const MultiPoly& q);
  friend MultiPoly operator*(MultiPoly p, const Rational& c) { return p *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly p) { return p *= c; }

  /// Structural equality; the variable tables must agree by name.
  bool operator==(const MultiPoly& q) const;

 private:
  void require_same(const MultiPoly& q) const;

  VarTablePtr vars_;
  TermMap terms_;
};

MultiPoly pow(const MultiPoly& p, unsigned e);

/// Reduces `p` modulo a relation c*var^2 - d, leaving degree < 2 in `var`.
MultiPoly reduce_mod(const MultiPoly& p, const MultiPoly& rel, std::string_view var);

using Assignment = std::map<std::string, std::complex<double>, std::less<>>;

/// Double-precision evaluation. Variables absent from `point` raise
/// Errc::UnassignedVariable, but only if they occur in `p`.
std::complex<double> evaluate(const MultiPoly& p, const Assignment& point);

}  // namespace etf
