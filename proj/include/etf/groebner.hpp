#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "etf/error.hpp"
#include "etf/exactpoly.hpp"

namespace etf {

/// Resource limits for a Buchberger run.
struct ComputeBudget {
  std::uint64_t maxSeconds = 600;
  std::size_t maxBasisSize = 100000;
  std::uint64_t maxTotalDegree = 1000;

  void validate() const;
};

struct GroebnerStats {
  std::size_t pairsProcessed = 0;
  std::size_t pairsSkipped = 0;
  std::size_t zeroReductions = 0;
  std::size_t basisSize = 0;
  std::uint64_t maxDegreeSeen = 0;
  double seconds = 0;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, GroebnerStats stats)
      : Error(Errc::BudgetExceeded, what), stats_(stats) {}
  const GroebnerStats& stats() const noexcept { return stats_; }

 private:
  GroebnerStats stats_;
};

/// Reduced Gröbner basis: each element primitive with positive leading
/// coefficient, sorted by increasing leading monomial.
struct GroebnerBasis {
  VarTablePtr vars;
  MonomialOrder order = MonomialOrder::Grevlex;
  std::vector<MultiPoly> basis;
  bool isUnitIdeal = false;
  GroebnerStats stats;
};

/// S(p, q) = (L/lt(p)) p - (L/lt(q)) q with L the lcm of the leading monomials.
MultiPoly s_polynomial(const MultiPoly& p, const MultiPoly& q, MonomialOrder order);

/// Multivariate division remainder of `f` by `divisors`: divisors are tried in
/// list order against the largest not-yet-reduced term.
MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& divisors,
                      MonomialOrder order);

/// Buchberger's algorithm with the normal selection strategy and the
/// Gebauer–Möller pair criteria. Throws BudgetExceeded when a limit trips.
GroebnerBasis buchberger(const std::vector<MultiPoly>& generators, MonomialOrder order,
                         const ComputeBudget& budget = {});

bool ideal_membership(const MultiPoly& f, const GroebnerBasis& gb);

enum class DimensionHint { ZeroDimensional, PositiveDimensional };

/// Zero-dimensional iff every variable has a pure power among the leading
/// monomials. Throws Errc::UnitIdeal for the unit ideal.
DimensionHint staircase_dimension_hint(const GroebnerBasis& gb);

/// True when every pairwise S-polynomial of `basis` reduces to zero.
bool satisfies_buchberger_criterion(const std::vector<MultiPoly>& basis, MonomialOrder order);

}  // namespace etf
