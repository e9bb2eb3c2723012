#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "etf/frames.hpp"
#include "etf/groebner.hpp"

namespace etf {

/// Principal cubic root of unity -1/2 + i sqrt(3)/2.
Complex omega();

ComplexMatrix g4_simplex();
ComplexMatrix g6_family(Complex a);
ComplexMatrix h9_family(Complex a);
/// (3I - H9(a)) / 2.
ComplexMatrix g9_family(Complex a);

/// The 3x3 (5,3) sub-Gram candidate that passes the analytic test.
ComplexMatrix near_miss_53();
Complex near_miss_53_parameter();

/// H9(a) with its lower right 3x3 block negated.
ComplexMatrix h9_negated_block(Complex a = 1.0);

/// -sqrt(2)/4 + i sqrt(14)/4, a root of 16 + 6x^2 + 5x^4 + 6x^6 + 16x^8.
Complex x73_parameter();

/// All 5x5 (7,3) sub-Grams with off-diagonal x values drawn from
/// {a, conj(a), a^3, conj(a)^3} that pass the rank, frame and triple filters,
/// sorted by entries. `threads` = 0 picks worker_threads().
std::vector<ComplexMatrix> enumerate_73_solutions(unsigned threads = 0);

/// A (7,3) ETF Gram completing the first enumerated 5x5 solution.
ComplexMatrix g7_unique();

/// Roots of sum_k coeffs[k] v^k.
std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs);

/// Backtracking search for a rank-3 6x6 (8,3) sub-Gram whose x values are
/// roots of the two octics of the (8,3) near miss.
ComplexMatrix near_miss_83_search(const ComputeBudget& budget = {});

enum class Scenario { GenericA, AMinusOne, CubicOnly };

Scenario parse_scenario(std::string_view text);
std::string_view to_string(Scenario s) noexcept;

struct RowExtensionCount {
  std::size_t distinct = 0;  // candidate rows passing orthogonality
  std::size_t classes = 0;   // orbits under column permutations fixing the given rows
  std::size_t reported = 0;
};

/// distinct for GenericA and CubicOnly, classes for AMinusOne.
RowExtensionCount count_row_extensions_detail(Scenario s);
std::size_t count_row_extensions(Scenario s);

struct FamilyInfo {
  std::string name;
  int arity = 0;
  /// Set for families whose matrix is an ETF Gram.
  std::optional<FrameParams> params;
};

const std::vector<FamilyInfo>& families();
const FamilyInfo& family(std::string_view name);
/// Builds a catalog matrix; one-parameter families default to a = 1.
ComplexMatrix instantiate(std::string_view name, std::optional<Complex> a = std::nullopt);

/// ETF_FORGE_THREADS when set and positive, else the hardware concurrency.
unsigned worker_threads();

}  // namespace etf
