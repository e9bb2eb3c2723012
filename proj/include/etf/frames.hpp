#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace etf {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kDefaultRankTol = 1e-8;

/// Welch angle sqrt((n - m) / (m (n - 1))). Throws Errc::BadParams unless
/// n >= m >= 1 and n > 1.
double welch_bound(int n, int m);

/// Parameters of an equiangular (n, m)-frame: n unit vectors in C^m at common
/// angle alpha.
struct FrameParams {
  int n = 0;
  int m = 0;
  double alpha = 0;

  static FrameParams make(int n, int m);
};

// Tolerance-aware predicates on ComplexMatrix.
bool is_self_adjoint(const ComplexMatrix& a, double tol = kDefaultTol);
bool has_unit_diagonal(const ComplexMatrix& a, double tol = kDefaultTol);
bool has_off_diagonal_modulus(const ComplexMatrix& a, double alpha, double tol = kDefaultTol);
/// Number of singular values above tol * sigma_max.
int numerical_rank(const ComplexMatrix& a, double tol = kDefaultRankTol);
double max_abs(const ComplexMatrix& a);

/// G = F^* F for a frame with unit-norm columns.
ComplexMatrix gram_from_frame(const ComplexMatrix& frame, double tol = kDefaultTol);

struct EtfReport {
  bool selfAdjoint = false;
  bool unitDiagonal = false;
  bool equiangular = false;
  bool frameCondition = false;
  double selfAdjointResidual = 0;
  double diagonalResidual = 0;
  double angleResidual = 0;
  double frameResidual = 0;

  bool pass() const { return selfAdjoint && unitDiagonal && equiangular && frameCondition; }
  double worst() const;
};

/// Checks self-adjointness, unit diagonal, equiangularity at p.alpha and the
/// frame condition m G^2 = n G, each within `tol` in max-norm.
EtfReport check_etf_gram(const ComplexMatrix& g, const FrameParams& p, double tol = kDefaultTol);

/// (nI - mG) / (n - m), the Gram matrix of the complementary (n, n - m) frame.
std::pair<ComplexMatrix, FrameParams> naimark_complement(const ComplexMatrix& g,
                                                         const FrameParams& p,
                                                         double tol = kDefaultTol);

struct IntRange {
  int lower = 0;
  int upper = -1;
  bool empty() const { return lower > upper; }
};

/// Values of n with no (n, m)-frame forced by the m^2 bound on the Naimark
/// complement: [m + 2, ceil((1 + 2m + sqrt(1 + 4m)) / 2) - 1].
IntRange nonexistence_range(int m);

/// Rebuilds the n x n Gram matrix from its leading (n-1) x (n-1) block. The
/// recovered column has a positive real first entry.
ComplexMatrix extend_subgram(const ComplexMatrix& h, const FrameParams& p,
                             double tol = kDefaultRankTol);

/// rank(m H^2 - n H) <= r for the (n-r) x (n-r) principal block H.
bool subgram_rank_test(const ComplexMatrix& h, const FrameParams& p, int r,
                       double rank_tol = kDefaultRankTol);

/// |(n/m) h_ij - sum_k h_ik conj(h_jk)| <= r alpha^2 for every i < j.
bool subgram_analytic_test(const ComplexMatrix& h, const FrameParams& p, int r,
                           double tol = kDefaultTol);

/// Largest left-hand side of the analytic inequality over i < j.
double subgram_analytic_margin(const ComplexMatrix& h, const FrameParams& p);

/// Both sides of the unimodular triple-product identity.
struct HaagerupSides {
  Complex lhs;
  double rhs = 0;
};
HaagerupSides haagerup_identity(Complex x1, Complex x2, Complex y1, Complex y2, Complex z1,
                                Complex z2);

struct TripleResiduals {
  int i = 0, j = 0, k = 0;  // zero-based row indices, i < j < k
  Complex sigma, delta, psi;
  double lhsResidual = 0;
};

struct TripleTestResult {
  std::vector<TripleResiduals> triples;
  double maxResidual = 0;
  bool pass = false;
};

/// Evaluates the triple-product condition on every row triple of the
/// (n-2) x (n-2) block `h`. Passes when the largest residual is <= tol.
TripleTestResult haagerup_triple_test(const ComplexMatrix& h, const FrameParams& p,
                                      double tol = 1e-9);

/// D G D^* with D unitary diagonal, making row and column 0 positive real.
ComplexMatrix dephase(const ComplexMatrix& g);

/// Search for a permutation P and unitary diagonal D with P D a D^* P^T = b.
bool equivalent(const ComplexMatrix& a, const ComplexMatrix& b, double tol = 1e-8);

/// P D G D^* P^T for the permutation `perm` (row i of the result is row
/// perm[i] of the input) and diagonal phases `phases`.
ComplexMatrix permute_and_phase(const ComplexMatrix& g, const std::vector<int>& perm,
                                const std::vector<Complex>& phases);

// Matrix text format: "rows cols" header, then one row per line of `re,im`
// entries. Lines starting with '#' are comments.
void write_matrix(std::ostream& out, const ComplexMatrix& a);
std::string format_matrix(const ComplexMatrix& a);
ComplexMatrix read_matrix(std::istream& in);
ComplexMatrix parse_matrix(const std::string& text);

}  // namespace etf
