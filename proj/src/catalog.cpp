#include "etf/catalog.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <thread>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>
#include <unsupported/Eigen/Polynomials>

#include "etf/error.hpp"

namespace etf {
namespace {

void require_unimodular(Complex a) {
  if (std::abs(std::abs(a) - 1.0) > 1e-12) {
    throw Error(Errc::NotUnimodular, "parameter has modulus " + std::to_string(std::abs(a)));
  }
}

ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool entry_less(const ComplexMatrix& a, const ComplexMatrix& b) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const Complex x = a.data()[k], y = b.data()[k];
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

// 5x5 (7,3) sub-Gram for one choice of the six x values.
ComplexMatrix subgram_73(const std::array<int, 6>& choice, const std::array<Complex, 4>& vals,
                         double alpha) {
  ComplexMatrix h = ComplexMatrix::Identity(5, 5);
  for (int i = 1; i < 5; ++i) h(0, i) = h(i, 0) = alpha;
  int k = 0;
  for (int i = 1; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j, ++k) {
      const Complex x = vals[choice[k]];
      h(i, j) = alpha * x;
      h(j, i) = alpha / x;
    }
  }
  return h;
}

struct ExtensionResidual {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  ComplexMatrix b;  // 3 x 5
  ComplexMatrix c;  // 3 x 2
  double alpha2;

  int inputs() const { return 4; }
  int values() const { return 3 + 2 * static_cast<int>(b.cols()); }

  static Eigen::Matrix2cd unitary(const Eigen::VectorXd& p) {
    const Complex g = std::polar(1.0, p(3));
    const double ct = std::cos(p(0)), st = std::sin(p(0));
    Eigen::Matrix2cd u;
    u << ct * std::polar(1.0, p(1)), st * std::polar(1.0, p(2)),
        -st * std::polar(1.0, -p(2)), ct * std::polar(1.0, -p(1));
    return g * u;
  }

  ComplexMatrix columns(const Eigen::VectorXd& p) const { return c * unitary(p); }

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& f) const {
    const ComplexMatrix x = columns(p);
    f.resize(values());
    f(0) = x.col(0).squaredNorm() - 1.0;
    f(1) = x.col(1).squaredNorm() - 1.0;
    f(2) = std::norm(x.col(0).dot(x.col(1))) - alpha2;
    const ComplexMatrix cross = b.adjoint() * x;
    for (Eigen::Index i = 0; i < cross.rows(); ++i) {
      for (Eigen::Index j = 0; j < 2; ++j) f(3 + 2 * i + j) = std::norm(cross(i, j)) - alpha2;
    }
    return 0;
  }
};

struct RowProblem {
  std::vector<std::vector<Complex>> given;
  std::vector<Complex> prefix;
  std::vector<Complex> pool;  // multiset permuted into the free positions
  bool permutePool = true;    // false: free positions range over `pool` independently
  std::vector<int> designated;
};

using EntryKey = std::pair<long long, long long>;

EntryKey entry_key(Complex z) {
  return {std::llround(z.real() * 1e8), std::llround(z.imag() * 1e8)};
}

RowProblem row_problem(Scenario s) {
  const Complex w = omega(), w2 = w * w;
  RowProblem p;
  if (s == Scenario::CubicOnly) {
    const ComplexMatrix h = h9_family(1.0);
    for (int r = 0; r < 3; ++r) {
      std::vector<Complex> row(9);
      for (int c = 0; c < 9; ++c) row[c] = h(r, c);
      p.given.push_back(row);
    }
    for (int r = 0; r < 3; ++r) p.prefix.push_back(std::conj(h(r, 3)));
    p.prefix.push_back(1.0);
    p.pool = {1.0, w, w2};
    p.permutePool = false;
    p.designated = {0, 1, 2, 3, 4, 5, 6, 7, 8};
    return p;
  }
  const Complex a = (s == Scenario::GenericA) ? std::polar(1.0, 0.8391) : Complex(-1.0);
  const Complex ab = std::conj(a);
  p.given.push_back(std::vector<Complex>(9, 1.0));
  p.given.push_back({1.0, 1.0, a, a * w, a * w2, w, w, w2, w2});
  p.prefix = {1.0, ab, 1.0};
  p.pool = {ab * w, ab * w2, w, w, w2, w2};
  p.designated = {5, 6, 7, 8};
  return p;
}

}  // namespace

Complex omega() { return {-0.5, std::sqrt(3.0) / 2.0}; }

ComplexMatrix g4_simplex() {
  return (4.0 / 3.0) * ComplexMatrix::Identity(4, 4) -
         (1.0 / 3.0) * ComplexMatrix::Ones(4, 4);
}

ComplexMatrix g6_family(Complex a) {
  require_unimodular(a);
  const Complex s = std::sqrt(5.0), ab = std::conj(a);
  ComplexMatrix g = from_rows({
      {s, 1.0, 1.0, 1.0, 1.0, 1.0},
      {1.0, s, a, -a, -1.0, 1.0},
      {1.0, ab, s, 1.0, -ab, -1.0},
      {1.0, -ab, 1.0, s, ab, -1.0},
      {1.0, -1.0, -a, a, s, 1.0},
      {1.0, 1.0, -1.0, -1.0, 1.0, s},
  });
  return g / s;
}

ComplexMatrix h9_family(Complex a) {
  require_unimodular(a);
  const Complex w = omega(), w2 = w * w, ab = std::conj(a), o = 1.0;
  return from_rows({
      {o, o, o, o, o, o, o, o, o},
      {o, o, o, w, w, w, w2, w2, w2},
      {o, o, o, w2, w2, w2, w, w, w},
      {o, w2, w, o, w2, w, a, a * w2, a * w},
      {o, w2, w, w, o, w2, a * w2, a * w, a},
      {o, w2, w, w2, w, o, a * w, a, a * w2},
      {o, w, w2, ab, ab * w, ab * w2, o, w, w2},
      {o, w, w2, ab * w, ab * w2, ab, w2, o, w},
      {o, w, w2, ab * w2, ab, ab * w, w, w2, o},
  });
}

ComplexMatrix g9_family(Complex a) {
  return (3.0 * ComplexMatrix::Identity(9, 9) - h9_family(a)) / 2.0;
}

Complex near_miss_53_parameter() {
  return {-std::sqrt(6.0) / 9.0, 5.0 * std::sqrt(3.0) / 9.0};
}

ComplexMatrix near_miss_53() {
  const Complex a = near_miss_53_parameter(), s = std::sqrt(6.0);
  ComplexMatrix h = from_rows({{s, 1.0, 1.0}, {1.0, s, a}, {1.0, 1.0 / a, s}});
  return h / s;
}

ComplexMatrix h9_negated_block(Complex a) {
  ComplexMatrix h = h9_family(a);
  h.bottomRightCorner(3, 3) *= -1.0;
  return h;
}

Complex x73_parameter() { return {-std::sqrt(2.0) / 4.0, std::sqrt(14.0) / 4.0}; }

std::vector<ComplexMatrix> enumerate_73_solutions(unsigned threads) {
  const FrameParams p = FrameParams::make(7, 3);
  const Complex a = x73_parameter();
  const std::array<Complex, 4> vals{a, std::conj(a), a * a * a, std::conj(a * a * a)};

  // Each worker owns a slice of the first choice digit.
  auto scan = [&](int first, std::vector<ComplexMatrix>& out) {
    std::array<int, 6> c{first, 0, 0, 0, 0, 0};
    for (int rest = 0; rest < 1024; ++rest) {
      for (int k = 0; k < 5; ++k) c[5 - k] = (rest >> (2 * k)) & 3;
      const ComplexMatrix h = subgram_73(c, vals, p.alpha);
      if (numerical_rank(h) > 3) continue;
      if (numerical_rank(3.0 * h * h - 7.0 * h) > 2) continue;
      if (haagerup_triple_test(h, p, 1e-8).pass) out.push_back(h);
    }
  };

  std::array<std::vector<ComplexMatrix>, 4> parts;
  const unsigned nt = std::clamp(threads ? threads : worker_threads(), 1u, 4u);
  if (nt == 1) {
    for (int f = 0; f < 4; ++f) scan(f, parts[f]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) {
      pool.emplace_back([&, t] {
        for (unsigned f = t; f < 4; f += nt) scan(static_cast<int>(f), parts[f]);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<ComplexMatrix> all;
  for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  std::sort(all.begin(), all.end(), entry_less);
  return all;
}

ComplexMatrix g7_unique() {
  const FrameParams p = FrameParams::make(7, 3);
  const auto sols = enumerate_73_solutions();
  if (sols.empty()) throw Error(Errc::ExtensionNotFound, "no 5x5 (7,3) solution to extend");
  const ComplexMatrix& h = sols.front();

  // H = B^* B with B = sqrt(Lambda) Q^* over the top three eigenpairs.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eh(h);
  ComplexMatrix b(3, 5);
  Eigen::Vector3d lambda;
  for (int k = 0; k < 3; ++k) {
    lambda(k) = std::max(0.0, eh.eigenvalues()(4 - k));
    b.row(k) = std::sqrt(lambda(k)) * eh.eigenvectors().col(4 - k).adjoint();
  }
  const double ratio = static_cast<double>(p.n) / p.m;
  const ComplexMatrix mm = ratio * ComplexMatrix::Identity(3, 3) - b * b.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> em(mm);
  ComplexMatrix c(3, 2);
  for (int k = 0; k < 2; ++k) {
    c.col(k) = std::sqrt(std::max(0.0, em.eigenvalues()(2 - k))) * em.eigenvectors().col(2 - k);
  }

  ExtensionResidual fn{b, c, p.alpha * p.alpha};
  Eigen::VectorXd best(4), f;
  double best_cost = INFINITY;
  constexpr int kGrid = 20;
  const double pi = std::numbers::pi;
  Eigen::VectorXd q(4);
  for (int i0 = 0; i0 < kGrid; ++i0) {
    for (int i1 = 0; i1 < kGrid; ++i1) {
      for (int i2 = 0; i2 < kGrid; ++i2) {
        for (int i3 = 0; i3 < kGrid; ++i3) {
          q << (pi / 2) * i0 / (kGrid - 1), 2 * pi * i1 / kGrid, 2 * pi * i2 / kGrid,
              2 * pi * i3 / kGrid;
          fn(q, f);
          const double cost = f.squaredNorm();
          if (cost < best_cost) {
            best_cost = cost;
            best = q;
          }
        }
      }
    }
  }

  Eigen::NumericalDiff<ExtensionResidual> diff(fn);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<ExtensionResidual>> lm(diff);
  lm.parameters.xtol = 1e-15;
  lm.parameters.ftol = 1e-15;
  lm.parameters.maxfev = 20000;
  lm.minimize(best);
  fn(best, f);
  if (f.cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(Errc::ExtensionNotFound,
                "unitary search stalled at residual " + std::to_string(f.cwiseAbs().maxCoeff()));
  }

  ComplexMatrix frame(3, 7);
  frame.leftCols(5) = b;
  frame.rightCols(2) = fn.columns(best);
  const ComplexMatrix g = frame.adjoint() * frame;
  const EtfReport report = check_etf_gram(g, p, 1e-8);
  if (!report.pass()) {
    throw Error(Errc::ExtensionNotFound,
                "assembled Gram fails the ETF check at " + std::to_string(report.worst()));
  }
  return g;
}

std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t k = 0; k < coeffs.size(); ++k) c(static_cast<Eigen::Index>(k)) = coeffs[k];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(c);
  std::vector<Complex> roots(solver.roots().begin(), solver.roots().end());
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
    return std::arg(x) < std::arg(y);
  });
  return roots;
}

ComplexMatrix near_miss_83_search(const ComputeBudget& budget) {
  budget.validate();
  const auto start = std::chrono::steady_clock::now();
  const FrameParams p = FrameParams::make(8, 3);
  const auto first = polynomial_roots({625, 0, 1020, 0, 806, 0, 1020, 0, 625});
  const auto second = polynomial_roots({15625, 0, -39780, 0, 52406, 0, -39780, 0, 15625});
  constexpr int size = 6;

  std::vector<std::pair<int, int>> order;
  for (int j = 2; j < size; ++j) {
    for (int i = 1; i < j; ++i) order.emplace_back(i, j);
  }
  ComplexMatrix h = ComplexMatrix::Identity(size, size);
  Eigen::Matrix<bool, size, size> known;
  known.setZero();
  for (int i = 0; i < size; ++i) {
    h(0, i) = h(i, 0) = (i == 0) ? 1.0 : p.alpha;
    known(0, i) = known(i, 0) = known(i, i) = true;
  }

  std::vector<std::array<int, 4>> subsets;
  for (int a = 0; a < size; ++a)
    for (int b = a + 1; b < size; ++b)
      for (int c = b + 1; c < size; ++c)
        for (int d = c + 1; d < size; ++d) subsets.push_back({a, b, c, d});

  auto contains = [](const std::array<int, 4>& s, int v) {
    return std::find(s.begin(), s.end(), v) != s.end();
  };
  auto minors_vanish = [&](int i, int j) {
    Eigen::Matrix4cd sub;
    for (const auto& rows : subsets) {
      for (const auto& cols : subsets) {
        if (!((contains(rows, i) && contains(cols, j)) || (contains(rows, j) && contains(cols, i)))) {
          continue;
        }
        bool full = true;
        for (int r = 0; r < 4 && full; ++r)
          for (int c = 0; c < 4 && full; ++c) full = known(rows[r], cols[c]);
        if (!full) continue;
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 4; ++c) sub(r, c) = h(rows[r], cols[c]);
        if (std::abs(sub.determinant()) > 1e-6) return false;
      }
    }
    return true;
  };

  std::size_t nodes = 0;
  std::function<bool(std::size_t)> search = [&](std::size_t k) {
    if (++nodes % 64 == 0) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (secs > static_cast<double>(budget.maxSeconds)) {
        GroebnerStats stats;
        stats.seconds = secs;
        throw BudgetExceeded("near-miss search exceeded " + std::to_string(budget.maxSeconds) +
                                 " s",
                             stats);
      }
    }
    if (k == order.size()) return true;
    const auto [i, j] = order[k];
    const auto& cands = (i == 4 && j == 5) ? second : first;
    for (Complex x : cands) {
      h(i, j) = p.alpha * x;
      h(j, i) = p.alpha / x;
      known(i, j) = known(j, i) = true;
      if (minors_vanish(i, j) && search(k + 1)) return true;
      known(i, j) = known(j, i) = false;
    }
    return false;
  };

  if (!search(0)) throw Error(Errc::SearchExhausted, "no rank-3 assignment of the octic roots");
  if (numerical_rank(h) != 3 || !has_off_diagonal_modulus(h, p.alpha, 1e-9)) {
    throw Error(Errc::SearchExhausted, "search ended on a configuration failing the final check");
  }
  return h;
}

Scenario parse_scenario(std::string_view text) {
  if (text == "genericA") return Scenario::GenericA;
  if (text == "aMinusOne") return Scenario::AMinusOne;
  if (text == "cubicOnly") return Scenario::CubicOnly;
  throw Error(Errc::BadScenario, "unknown scenario '" + std::string(text) + "'");
}

std::string_view to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::GenericA: return "genericA";
    case Scenario::AMinusOne: return "aMinusOne";
    case Scenario::CubicOnly: return "cubicOnly";
  }
  return "?";
}

RowExtensionCount count_row_extensions_detail(Scenario s) {
  const RowProblem prob = row_problem(s);
  const std::size_t width = prob.given.front().size();
  const std::size_t free = width - prob.prefix.size();

  std::map<std::vector<EntryKey>, std::vector<Complex>> rows;
  auto consider = [&](const std::vector<Complex>& row) {
    for (const auto& g : prob.given) {
      Complex ip = 0;
      for (std::size_t c = 0; c < width; ++c) ip += std::conj(g[c]) * row[c];
      if (std::abs(ip) > 1e-8) return;
    }
    std::vector<EntryKey> key;
    for (Complex z : row) key.push_back(entry_key(z));
    rows.emplace(std::move(key), row);
  };

  std::vector<Complex> row = prob.prefix;
  row.resize(width);
  if (prob.permutePool) {
    std::vector<int> ids(prob.pool.size());
    for (std::size_t k = 0; k < ids.size(); ++k) {
      ids[k] = static_cast<int>(std::find_if(prob.pool.begin(), prob.pool.end(), [&](Complex z) {
                                  return std::abs(z - prob.pool[k]) < 1e-12;
                                }) - prob.pool.begin());
    }
    std::sort(ids.begin(), ids.end());
    do {
      for (std::size_t k = 0; k < free; ++k) row[prob.prefix.size() + k] = prob.pool[ids[k]];
      consider(row);
    } while (std::next_permutation(ids.begin(), ids.end()));
  } else {
    std::size_t total = 1;
    for (std::size_t k = 0; k < free; ++k) total *= prob.pool.size();
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t k = 0; k < free; ++k, c /= prob.pool.size()) {
        row[prob.prefix.size() + k] = prob.pool[c % prob.pool.size()];
      }
      consider(row);
    }
  }

  // Designated columns that agree on every given row may be permuted freely;
  // sorting within each such group picks an orbit representative.
  std::map<std::vector<EntryKey>, std::vector<int>> groups;
  for (int c : prob.designated) {
    std::vector<EntryKey> sig;
    for (const auto& g : prob.given) sig.push_back(entry_key(g[c]));
    groups[sig].push_back(c);
  }
  std::set<std::vector<EntryKey>> orbits;
  for (const auto& [key, r] : rows) {
    std::vector<EntryKey> rep = key;
    for (const auto& [sig, cols] : groups) {
      std::vector<EntryKey> vals;
      for (int c : cols) vals.push_back(key[c]);
      std::sort(vals.begin(), vals.end());
      for (std::size_t k = 0; k < cols.size(); ++k) rep[cols[k]] = vals[k];
    }
    orbits.insert(rep);
  }

  RowExtensionCount out;
  out.distinct = rows.size();
  out.classes = orbits.size();
  out.reported = (s == Scenario::AMinusOne) ? out.classes : out.distinct;
  return out;
}

std::size_t count_row_extensions(Scenario s) { return count_row_extensions_detail(s).reported; }

const std::vector<FamilyInfo>& families() {
  static const std::vector<FamilyInfo> list{
      {"g4_simplex", 0, FrameParams::make(4, 3)},
      {"g6_family", 1, FrameParams::make(6, 3)},
      {"g7_unique", 0, FrameParams::make(7, 3)},
      {"h9_family", 1, std::nullopt},
      {"g9_family", 1, FrameParams::make(9, 3)},
      {"near_miss_53", 0, std::nullopt},
      {"near_miss_83", 0, std::nullopt},
      {"h9_negated_block", 1, std::nullopt},
  };
  return list;
}

const FamilyInfo& family(std::string_view name) {
  for (const auto& f : families()) {
    if (f.name == name) return f;
  }
  throw Error(Errc::BadParams, "unknown catalog entry '" + std::string(name) + "'");
}

ComplexMatrix instantiate(std::string_view name, std::optional<Complex> a) {
  const FamilyInfo& info = family(name);
  if (a && info.arity == 0) {
    throw Error(Errc::BadParams, "'" + info.name + "' takes no parameter");
  }
  const Complex param = a.value_or(1.0);
  if (name == "g4_simplex") return g4_simplex();
  if (name == "g6_family") return g6_family(param);
  if (name == "g7_unique") return g7_unique();
  if (name == "h9_family") return h9_family(param);
  if (name == "g9_family") return g9_family(param);
  if (name == "near_miss_53") return near_miss_53();
  if (name == "near_miss_83") return near_miss_83_search();
  return h9_negated_block(param);
}

unsigned worker_threads() {
  if (const char* env = std::getenv("ETF_FORGE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace etf
