#include "etf/frames.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <Eigen/SVD>

#include "etf/error.hpp"

namespace etf {
namespace {

void require_square(const ComplexMatrix& a, Eigen::Index n, Errc code, const char* what) {
  if (a.rows() != n || a.cols() != n) {
    throw Error(code, std::string(what) + ": expected " + std::to_string(n) + "x" +
                          std::to_string(n) + ", got " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()));
  }
}

double self_adjoint_residual(const ComplexMatrix& a) {
  return a.rows() == a.cols() ? max_abs(a - a.adjoint()) : INFINITY;
}

double diagonal_residual(const ComplexMatrix& a) {
  double worst = 0;
  for (Eigen::Index i = 0; i < std::min(a.rows(), a.cols()); ++i) {
    worst = std::max(worst, std::abs(a(i, i) - 1.0));
  }
  return worst;
}

double angle_residual(const ComplexMatrix& a, double alpha) {
  double worst = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j) worst = std::max(worst, std::abs(std::abs(a(i, j)) - alpha));
    }
  }
  return worst;
}

void check_block_size(const ComplexMatrix& h, const FrameParams& p, int r) {
  if (r < 2 || r > p.n - 2) {
    throw Error(Errc::BadSize, "r must satisfy 2 <= r <= n - 2, got r = " + std::to_string(r));
  }
  require_square(h, p.n - r, Errc::BadSize, "sub-Gram block");
}

}  // namespace

double welch_bound(int n, int m) {
  if (m < 1 || n < m || n <= 1) {
    throw Error(Errc::BadParams, "need n >= m >= 1 and n > 1, got (n, m) = (" +
                                     std::to_string(n) + ", " + std::to_string(m) + ")");
  }
  return std::sqrt(static_cast<double>(n - m) / (static_cast<double>(m) * (n - 1)));
}

FrameParams FrameParams::make(int n, int m) { return FrameParams{n, m, welch_bound(n, m)}; }

bool is_self_adjoint(const ComplexMatrix& a, double tol) { return self_adjoint_residual(a) <= tol; }

bool has_unit_diagonal(const ComplexMatrix& a, double tol) { return diagonal_residual(a) <= tol; }

bool has_off_diagonal_modulus(const ComplexMatrix& a, double alpha, double tol) {
  return angle_residual(a, alpha) <= tol;
}

int numerical_rank(const ComplexMatrix& a, double tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol * s(0)) ++rank;
  }
  return rank;
}

double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

ComplexMatrix gram_from_frame(const ComplexMatrix& frame, double tol) {
  for (Eigen::Index j = 0; j < frame.cols(); ++j) {
    double norm = frame.col(j).norm();
    if (std::abs(norm - 1.0) > tol) {
      throw Error(Errc::NonUnitColumns,
                  "column " + std::to_string(j) + " has norm " + std::to_string(norm));
    }
  }
  return frame.adjoint() * frame;
}

double EtfReport::worst() const {
  return std::max({selfAdjointResidual, diagonalResidual, angleResidual, frameResidual});
}

EtfReport check_etf_gram(const ComplexMatrix& g, const FrameParams& p, double tol) {
  require_square(g, p.n, Errc::SizeMismatch, "Gram matrix");
  EtfReport r;
  r.selfAdjointResidual = self_adjoint_residual(g);
  r.diagonalResidual = diagonal_residual(g);
  r.angleResidual = angle_residual(g, p.alpha);
  r.frameResidual = max_abs(static_cast<double>(p.m) * g * g - static_cast<double>(p.n) * g);
  r.selfAdjoint = r.selfAdjointResidual <= tol;
  r.unitDiagonal = r.diagonalResidual <= tol;
  r.equiangular = r.angleResidual <= tol;
  r.frameCondition = r.frameResidual <= tol;
  return r;
}

std::pair<ComplexMatrix, FrameParams> naimark_complement(const ComplexMatrix& g,
                                                         const FrameParams& p, double tol) {
  if (p.n == p.m) throw Error(Errc::NEqualsM, "complement of an orthonormal basis is empty");
  auto report = check_etf_gram(g, p, tol);
  if (!report.pass()) {
    throw Error(Errc::NotAnEtf, "input fails the ETF check (worst residual " +
                                    std::to_string(report.worst()) + ")");
  }
  const auto n = static_cast<double>(p.n), m = static_cast<double>(p.m);
  ComplexMatrix c = (n * ComplexMatrix::Identity(p.n, p.n) - m * g) / (n - m);
  return {c, FrameParams::make(p.n, p.n - p.m)};
}

IntRange nonexistence_range(int m) {
  if (m < 3) throw Error(Errc::MTooSmall, "the range needs m >= 3, got " + std::to_string(m));
  const long disc = 1 + 4L * m;
  long s = static_cast<long>(std::sqrt(static_cast<double>(disc)));
  while (s * s > disc) --s;
  while ((s + 1) * (s + 1) <= disc) ++s;
  // ceil((1 + 2m + sqrt(disc)) / 2), exactly.
  const long base = 1 + 2L * m + s;
  const long ceil_half = (s * s == disc) ? base / 2 : base / 2 + 1;
  return IntRange{m + 2, static_cast<int>(ceil_half - 1)};
}

ComplexMatrix extend_subgram(const ComplexMatrix& h, const FrameParams& p, double tol) {
  require_square(h, p.n - 1, Errc::BadSubgram, "sub-Gram matrix");
  if (self_adjoint_residual(h) > tol || diagonal_residual(h) > tol ||
      angle_residual(h, p.alpha) > tol) {
    throw Error(Errc::BadSubgram, "block is not self-adjoint, unit-diagonal and equiangular");
  }
  const auto n = static_cast<double>(p.n), m = static_cast<double>(p.m);
  const ComplexMatrix r = n * h - m * h * h;

  Eigen::Index c = 0;
  r.colwise().norm().maxCoeff(&c);
  const double rcc = r(c, c).real();
  const double scale = std::max(1.0, max_abs(r));
  if (rcc <= tol * scale) throw Error(Errc::NotRankOne, "n H - m H^2 vanishes");

  // R = m v v^*: column c equals m v conj(v_c) with v_c = sqrt(R_cc / m) > 0.
  Eigen::VectorXcd v = r.col(c) / std::sqrt(m * rcc);
  const double r0 = std::abs(v(0));
  if (r0 > 0) v *= std::conj(v(0)) / r0;

  if (max_abs(r - m * v * v.adjoint()) > tol * scale) {
    throw Error(Errc::NotRankOne, "n H - m H^2 is not m v v^*");
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(std::abs(v(i)) - p.alpha) > tol) {
      throw Error(Errc::BadModulus, "recovered entry " + std::to_string(i) + " has modulus " +
                                        std::to_string(std::abs(v(i))));
    }
  }

  ComplexMatrix g(p.n, p.n);
  g.topLeftCorner(p.n - 1, p.n - 1) = h;
  g.topRightCorner(p.n - 1, 1) = v;
  g.bottomLeftCorner(1, p.n - 1) = v.adjoint();
  g(p.n - 1, p.n - 1) = 1.0;
  return g;
}

bool subgram_rank_test(const ComplexMatrix& h, const FrameParams& p, int r, double rank_tol) {
  check_block_size(h, p, r);
  const auto n = static_cast<double>(p.n), m = static_cast<double>(p.m);
  return numerical_rank(m * h * h - n * h, rank_tol) <= r;
}

double subgram_analytic_margin(const ComplexMatrix& h, const FrameParams& p) {
  const double ratio = static_cast<double>(p.n) / p.m;
  const ComplexMatrix hh = h * h.adjoint();
  double worst = 0;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < h.rows(); ++j) {
      worst = std::max(worst, std::abs(ratio * h(i, j) - hh(i, j)));
    }
  }
  return worst;
}

bool subgram_analytic_test(const ComplexMatrix& h, const FrameParams& p, int r, double tol) {
  check_block_size(h, p, r);
  return subgram_analytic_margin(h, p) <= r * p.alpha * p.alpha + tol;
}

HaagerupSides haagerup_identity(Complex x1, Complex x2, Complex y1, Complex y2, Complex z1,
                                Complex z2) {
  for (Complex z : {x1, x2, y1, y2, z1, z2}) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12) {
      throw Error(Errc::NotUnimodular, "input of modulus " + std::to_string(std::abs(z)));
    }
  }
  const Complex a = x1 * std::conj(y1) + x2 * std::conj(y2);
  const Complex b = y1 * std::conj(z1) + y2 * std::conj(z2);
  const Complex c = z1 * std::conj(x1) + z2 * std::conj(x2);
  return {a * b * c, std::norm(a) + std::norm(b) + std::norm(c) - 4.0};
}

TripleTestResult haagerup_triple_test(const ComplexMatrix& h, const FrameParams& p, double tol) {
  require_square(h, p.n - 2, Errc::BadSize, "triple-test block");
  const double ratio = static_cast<double>(p.n) / p.m;
  const double a2 = p.alpha * p.alpha;
  const ComplexMatrix hh = h * h.adjoint();
  auto combo = [&](Eigen::Index x, Eigen::Index y) { return ratio * h(x, y) - hh(x, y); };

  TripleTestResult out;
  const auto size = static_cast<int>(h.rows());
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) {
      for (int k = j + 1; k < size; ++k) {
        TripleResiduals t;
        t.i = i;
        t.j = j;
        t.k = k;
        t.sigma = combo(i, j);
        t.delta = combo(j, k);
        t.psi = combo(k, i);
        const double squares = std::norm(t.sigma) + std::norm(t.delta) + std::norm(t.psi);
        t.lhsResidual =
            std::abs(t.sigma * t.delta * t.psi - a2 * (squares - 4.0 * a2 * a2));
        out.maxResidual = std::max(out.maxResidual, t.lhsResidual);
        out.triples.push_back(t);
      }
    }
  }
  out.pass = out.maxResidual <= tol;
  return out;
}

ComplexMatrix dephase(const ComplexMatrix& g) {
  if (g.rows() != g.cols()) throw Error(Errc::SizeMismatch, "dephase needs a square matrix");
  const Eigen::Index n = g.rows();
  Eigen::VectorXcd d = Eigen::VectorXcd::Ones(n);
  for (Eigen::Index j = 1; j < n; ++j) {
    const double r = std::abs(g(0, j));
    if (r < 1e-12) {
      throw Error(Errc::ZeroFirstRowEntry, "entry (0, " + std::to_string(j) + ") vanishes");
    }
    d(j) = g(0, j) / r;
  }
  ComplexMatrix out = d.asDiagonal() * g * d.conjugate().asDiagonal();
  for (Eigen::Index j = 1; j < n; ++j) {
    out(0, j) = std::abs(out(0, j));
    out(j, 0) = std::abs(out(j, 0));
  }
  return out;
}

ComplexMatrix permute_and_phase(const ComplexMatrix& g, const std::vector<int>& perm,
                                const std::vector<Complex>& phases) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = phases[i] * g(perm[i], perm[j]) * std::conj(phases[j]);
    }
  }
  return out;
}

namespace {

struct EquivSearch {
  const ComplexMatrix& a;
  const ComplexMatrix& b;
  double tol;
  Eigen::Index n;
  std::vector<Eigen::Index> order;   // b-indices in BFS order
  std::vector<Eigen::Index> parent;  // BFS parent of each b-index, or -1
  std::vector<std::vector<double>> sigA, sigB;
  std::vector<Eigen::Index> sigma;   // b-index -> a-index
  std::vector<Complex> phase;        // indexed by b-index
  std::vector<bool> used;
  std::vector<bool> placed;

  static std::vector<std::vector<double>> signatures(const ComplexMatrix& m) {
    std::vector<std::vector<double>> out(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (i != j) out[i].push_back(std::abs(m(i, j)));
      }
      std::sort(out[i].begin(), out[i].end());
    }
    return out;
  }

  bool same_signature(Eigen::Index s, Eigen::Index t) const {
    for (std::size_t k = 0; k < sigA[s].size(); ++k) {
      if (std::abs(sigA[s][k] - sigB[t][k]) > tol) return false;
    }
    return true;
  }

  void build_order() {
    std::vector<bool> seen(n, false);
    for (Eigen::Index root = 0; root < n; ++root) {
      if (seen[root]) continue;
      seen[root] = true;
      std::size_t head = order.size();
      order.push_back(root);
      parent[root] = -1;
      while (head < order.size()) {
        Eigen::Index x = order[head++];
        for (Eigen::Index y = 0; y < n; ++y) {
          if (!seen[y] && std::abs(b(x, y)) > tol) {
            seen[y] = true;
            parent[y] = x;
            order.push_back(y);
          }
        }
      }
    }
  }

  bool consistent(Eigen::Index t) const {
    const Eigen::Index s = sigma[t];
    if (std::abs(b(t, t) - a(s, s)) > tol) return false;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!placed[j] || j == t) continue;
      const Eigen::Index sj = sigma[j];
      if (std::abs(b(t, j) - phase[t] * a(s, sj) * std::conj(phase[j])) > tol) return false;
      if (std::abs(b(j, t) - phase[j] * a(sj, s) * std::conj(phase[t])) > tol) return false;
    }
    return true;
  }

  bool search(std::size_t depth) {
    if (depth == order.size()) return true;
    const Eigen::Index t = order[depth];
    const Eigen::Index p = parent[t];
    for (Eigen::Index s = 0; s < n; ++s) {
      if (used[s] || !same_signature(s, t)) continue;
      Complex d = 1.0;
      if (p >= 0) {
        const Complex src = a(s, sigma[p]);
        if (std::abs(src) <= tol) continue;
        d = b(t, p) * phase[p] / src;
        d /= std::abs(d);
      }
      sigma[t] = s;
      phase[t] = d;
      placed[t] = true;
      if (consistent(t)) {
        used[s] = true;
        if (search(depth + 1)) return true;
        used[s] = false;
      }
      placed[t] = false;
    }
    return false;
  }
};

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

[[noreturn]] void malformed(std::size_t line, std::size_t col, const std::string& what) {
  throw Error(Errc::MalformedEntry, "line " + std::to_string(line) + ", column " +
                                        std::to_string(col) + ": " + what);
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

bool equivalent(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw Error(Errc::SizeMismatch, "equivalence needs square matrices of equal size");
  }
  if (a.rows() > 10) throw Error(Errc::TooLarge, "equivalence search is limited to n <= 10");
  const Eigen::Index n = a.rows();
  EquivSearch e{a, b, tol, n, {}, std::vector<Eigen::Index>(n, -1), EquivSearch::signatures(a),
                EquivSearch::signatures(b), std::vector<Eigen::Index>(n, -1),
                std::vector<Complex>(n, 1.0), std::vector<bool>(n, false),
                std::vector<bool>(n, false)};
  e.build_order();
  return e.search(0);
}

void write_matrix(std::ostream& out, const ComplexMatrix& a) {
  out << a.rows() << ' ' << a.cols() << '\n';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(a(i, j).real()) << ',' << format_double(a(i, j).imag());
    }
    out << '\n';
  }
}

std::string format_matrix(const ComplexMatrix& a) {
  std::ostringstream out;
  write_matrix(out, a);
  return out.str();
}

ComplexMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  long rows = -1, cols = -1;
  ComplexMatrix m;
  Eigen::Index filled = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok) || tok.front() == '#') continue;
    if (rows < 0) {
      std::istringstream hs(line);
      std::string extra;
      if (!(hs >> rows >> cols) || (hs >> extra) || rows <= 0 || cols <= 0) {
        malformed(lineno, 1, "expected a 'rows cols' header");
      }
      m.resize(rows, cols);
      continue;
    }
    if (filled == rows) {
      throw Error(Errc::DimensionMismatch,
                  "line " + std::to_string(lineno) + ": more than " + std::to_string(rows) +
                      " rows");
    }
    std::vector<std::string> entries{tok};
    while (ss >> tok) entries.push_back(tok);
    if (static_cast<long>(entries.size()) != cols) {
      throw Error(Errc::DimensionMismatch, "line " + std::to_string(lineno) + ": " +
                                               std::to_string(entries.size()) + " entries, expected " +
                                               std::to_string(cols));
    }
    for (std::size_t j = 0; j < entries.size(); ++j) {
      std::string_view e = entries[j];
      auto comma = e.find(',');
      double re = 0, im = 0;
      if (comma == std::string_view::npos || !parse_double(e.substr(0, comma), re) ||
          !parse_double(e.substr(comma + 1), im)) {
        malformed(lineno, j + 1, "bad entry '" + entries[j] + "'");
      }
      m(filled, static_cast<Eigen::Index>(j)) = Complex(re, im);
    }
    ++filled;
  }
  if (in.bad()) throw Error(Errc::Io, "failed reading matrix input");
  if (rows < 0) malformed(lineno + 1, 1, "missing header");
  if (filled != rows) {
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(rows) + " rows, got " +
                                             std::to_string(filled));
  }
  return m;
}

ComplexMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

}  // namespace etf
