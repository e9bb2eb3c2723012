#include "etf/sysgen.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "etf/error.hpp"
#include "etf/polytext.hpp"

namespace etf {
namespace {

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

// All k-subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

void check_params(int n, int m) {
  if (m < 2 || n < m + 1 || n < 3) {
    throw Error(Errc::BadParams, "need m >= 2, n >= m + 1 and n >= 3, got (n, m) = (" +
                                     std::to_string(n) + ", " + std::to_string(m) + ")");
  }
}

bool is_x_name(const std::string& name) { return name.starts_with("x_"); }

VarTablePtr system_vars(const SystemParams& p) {
  std::vector<std::string> names;
  if (!p.alphaRational) names.push_back("al");
  for (auto& x : x_variable_names(p.n)) names.push_back(std::move(x));
  names.push_back("u");
  return VarTable::make(std::move(names));
}

// Determinant by Laplace expansion along the first row, memoised on the set of
// remaining columns.
class MinorDet {
 public:
  MinorDet(const std::vector<LaurentPoly>& mat, int stride, std::vector<int> rows,
           std::vector<int> cols, VarTablePtr vars)
      : mat_(mat), stride_(stride), rows_(std::move(rows)), cols_(std::move(cols)),
        vars_(std::move(vars)) {}

  LaurentPoly run() { return det(0, (1u << cols_.size()) - 1); }

 private:
  LaurentPoly det(std::size_t depth, unsigned mask) {
    if (depth == rows_.size()) return LaurentPoly::constant(vars_, 1);
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    LaurentPoly acc(vars_);
    int sign = 1;
    for (std::size_t c = 0; c < cols_.size(); ++c) {
      if (!(mask & (1u << c))) continue;
      const LaurentPoly& e = mat_[rows_[depth] * stride_ + cols_[c]];
      if (!e.is_zero()) {
        LaurentPoly term = e * det(depth + 1, mask & ~(1u << c));
        if (sign > 0) {
          acc += term;
        } else {
          acc -= term;
        }
      }
      sign = -sign;
    }
    memo_.emplace(mask, acc);
    return acc;
  }

  const std::vector<LaurentPoly>& mat_;
  int stride_;
  std::vector<int> rows_, cols_;
  VarTablePtr vars_;
  std::unordered_map<unsigned, LaurentPoly> memo_;
};

std::string dialect_comment(Dialect d) { return d == Dialect::Magma ? "//" : "#"; }

}  // namespace

LaurentPoly::LaurentPoly(VarTablePtr vars) : vars_(std::move(vars)) {}

LaurentPoly LaurentPoly::constant(VarTablePtr vars, const Rational& c) {
  LaurentPoly p(vars);
  p.add_term(Exponents(vars->size(), 0), c);
  return p;
}

LaurentPoly LaurentPoly::variable(VarTablePtr vars, std::string_view name, std::int32_t exp) {
  auto idx = vars->index(name);
  if (!idx) throw Error(Errc::VarTableMismatch, "unknown variable '" + std::string(name) + "'");
  Exponents e(vars->size(), 0);
  e[*idx] = exp;
  LaurentPoly p(vars);
  p.add_term(e, 1);
  return p;
}

void LaurentPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::invert(const std::vector<std::size_t>& which) const {
  LaurentPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    for (std::size_t i : which) f[i] = -f[i];
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

std::complex<double> LaurentPoly::evaluate(const Assignment& point) const {
  std::vector<std::complex<double>> vals(vars_->size());
  std::vector<bool> known(vars_->size(), false);
  for (std::size_t i = 0; i < vars_->size(); ++i) {
    auto it = point.find(vars_->name(i));
    if (it != point.end()) {
      vals[i] = it->second;
      known[i] = true;
    }
  }
  std::complex<double> sum = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!known[i]) {
        throw Error(Errc::UnassignedVariable, "no value for '" + vars_->name(i) + "'");
      }
      t *= std::pow(vals[i], e[i]);
    }
    sum += t;
  }
  return sum;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& q) {
  for (const auto& [e, c] : q.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& q) {
  for (const auto& [e, c] : q.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [e, v] : terms_) v *= c;
  }
  return *this;
}

LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) {
  LaurentPoly r(p.vars_);
  LaurentPoly::Exponents e(p.vars_->size());
  for (const auto& [ep, cp] : p.terms_) {
    for (const auto& [eq, cq] : q.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ep[i] + eq[i];
      r.add_term(e, cp * cq);
    }
  }
  return r;
}

MultiPoly clear_denominators(const LaurentPoly& p) {
  const auto& vars = p.vars();
  MultiPoly out(vars);
  if (p.is_zero()) return out;
  std::vector<std::int32_t> low(vars->size(), 0);
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) low[i] = std::min(low[i], e[i]);
  }
  for (std::size_t i = 0; i < low.size(); ++i) {
    if (low[i] < 0 && !is_x_name(vars->name(i))) {
      throw Error(Errc::NonMonomialDenominator,
                  "negative power of '" + vars->name(i) + "' cannot be cleared");
    }
  }
  for (const auto& [e, c] : p.terms()) {
    std::vector<std::uint32_t> exps(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) exps[i] = static_cast<std::uint32_t>(e[i] - low[i]);
    out.add_term(Monomial(std::move(exps)), c);
  }
  return out.primitive();
}

Rational alpha_squared(int n, int m) {
  Rational a(n - m, static_cast<long>(m) * (n - 1));
  a.canonicalize();
  return a;
}

SystemParams SystemParams::make(int n, int m) {
  check_params(n, m);
  SystemParams p{n, m, false, std::nullopt};
  Rational a2 = alpha_squared(n, m);
  const Integer num = a2.get_num(), den = a2.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    p.alphaRational = true;
    p.alpha = Rational(rn, rd);
  }
  return p;
}

std::vector<std::string> x_variable_names(int n) {
  std::vector<std::string> names;
  const int size = n - 2;
  for (int i = 2; i <= size; ++i) {
    for (int j = i + 1; j <= size; ++j) {
      names.push_back("x_" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  return names;
}

SymbolicHermitian::SymbolicHermitian(const SystemParams& p, VarTablePtr vars)
    : params_(p), vars_(std::move(vars)), size_(p.n - 2), alpha_(vars_) {
  alpha_ = p.alphaRational ? LaurentPoly::constant(vars_, *p.alpha)
                           : LaurentPoly::variable(vars_, "al");
  h_.assign(static_cast<std::size_t>(size_) * size_, LaurentPoly(vars_));
  for (int i = 0; i < size_; ++i) {
    h_[i * size_ + i] = LaurentPoly::constant(vars_, 1);
    if (i > 0) {
      h_[i] = alpha_;
      h_[i * size_] = alpha_;
    }
  }
  for (int i = 1; i < size_; ++i) {
    for (int j = i + 1; j < size_; ++j) {
      const std::string name = "x_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      xs_.push_back(*vars_->index(name));
      h_[i * size_ + j] = alpha_ * LaurentPoly::variable(vars_, name, 1);
      h_[j * size_ + i] = alpha_ * LaurentPoly::variable(vars_, name, -1);
    }
  }
  sq_.assign(h_.size(), LaurentPoly(vars_));
  for (int i = 0; i < size_; ++i) {
    for (int j = 0; j < size_; ++j) {
      LaurentPoly acc(vars_);
      for (int k = 0; k < size_; ++k) acc += entry(i, k) * entry(k, j);
      sq_[i * size_ + j] = std::move(acc);
    }
  }
}

LaurentPoly SymbolicHermitian::sigma(int x, int y) const {
  return entry(x, y) * Rational(params_.n, params_.m) - sq_[x * size_ + y];
}

LaurentPoly SymbolicHermitian::haagerup(int i, int j, int k) const {
  const LaurentPoly sij = sigma(i, j), sjk = sigma(j, k), ski = sigma(k, i);
  const LaurentPoly sji = sigma(j, i), skj = sigma(k, j), sik = sigma(i, k);
  const LaurentPoly a2 = alpha_ * alpha_;
  LaurentPoly squares = sij * sji + sjk * skj + ski * sik - a2 * a2 * Rational(4);
  return sij * sjk * ski - a2 * squares;
}

std::vector<LaurentPoly> SymbolicHermitian::frame_matrix() const {
  std::vector<LaurentPoly> k(h_.size(), LaurentPoly(vars_));
  for (std::size_t i = 0; i < h_.size(); ++i) {
    k[i] = sq_[i] * Rational(params_.m) - h_[i] * Rational(params_.n);
  }
  return k;
}

std::string_view to_string(EqTag tag) noexcept {
  switch (tag) {
    case EqTag::AlphaRelation: return "alphaRelation";
    case EqTag::RankMinor: return "rankMinor";
    case EqTag::FrameMinor: return "frameMinor";
    case EqTag::Haagerup: return "haagerup";
    case EqTag::HaagerupConj: return "haagerupConj";
    case EqTag::Nonzero: return "nonzero";
  }
  return "?";
}

SystemCounts expected_counts(int n, int m) {
  const SystemParams p = SystemParams::make(n, m);
  const std::uint64_t t = binomial(n - 2, 3);
  const std::uint64_t r = binomial(n - 2, m + 1);
  SystemCounts c{2 + r * r + t * t + 2 * t, 2 + binomial(n - 3, 2)};
  if (p.alphaRational) {
    --c.equations;
    --c.variables;
  }
  return c;
}

std::vector<PlannedEquation> plan_system(int n, int m) {
  const SystemParams p = SystemParams::make(n, m);
  const int size = n - 2;
  std::vector<PlannedEquation> plan;
  if (!p.alphaRational) plan.push_back({EqTag::AlphaRelation, {}, {}});
  const auto rank_sets = combinations(size, m + 1);
  for (const auto& r : rank_sets) {
    for (const auto& c : rank_sets) plan.push_back({EqTag::RankMinor, r, c});
  }
  const auto triples = combinations(size, 3);
  for (const auto& r : triples) {
    for (const auto& c : triples) plan.push_back({EqTag::FrameMinor, r, c});
  }
  for (const auto& t : triples) plan.push_back({EqTag::Haagerup, t, {}});
  for (const auto& t : triples) plan.push_back({EqTag::HaagerupConj, t, {}});
  plan.push_back({EqTag::Nonzero, {}, {}});
  return plan;
}

SystemCounts planned_counts(int n, int m) {
  const SystemParams p = SystemParams::make(n, m);
  return {plan_system(n, m).size(), system_vars(p)->size()};
}

MultiPoly reduce_alpha(const MultiPoly& p, const SystemParams& params) {
  if (params.alphaRational) {
    throw Error(Errc::AlphaIsRational, "alpha is rational for (n, m) = (" +
                                           std::to_string(params.n) + ", " +
                                           std::to_string(params.m) + ")");
  }
  const auto& vars = p.vars();
  MultiPoly rel = MultiPoly::variable(vars, "al", 2) *
                      Rational(static_cast<long>(params.m) * (params.n - 1)) -
                  MultiPoly::constant(vars, params.n - params.m);
  return reduce_mod(p, rel, "al").primitive();
}

PolySystem generate_system(int n, int m, const GenerateOptions& opts) {
  const SystemParams params = SystemParams::make(n, m);
  PolySystem sys{params, system_vars(params), {}};
  const auto& vars = sys.vars;
  const SymbolicHermitian h(params, vars);
  const int size = h.size();
  std::vector<LaurentPoly> hmat;
  hmat.reserve(static_cast<std::size_t>(size) * size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) hmat.push_back(h.entry(i, j));
  }
  const std::vector<LaurentPoly> kmat = h.frame_matrix();

  auto finish = [&](const LaurentPoly& l) {
    MultiPoly p = clear_denominators(l);
    if (!params.alphaRational && opts.alphaReduce) p = reduce_alpha(p, params);
    return p;
  };

  for (const auto& eq : plan_system(n, m)) {
    switch (eq.tag) {
      case EqTag::AlphaRelation: {
        MultiPoly rel = MultiPoly::variable(vars, "al", 2) *
                            Rational(static_cast<long>(m) * (n - 1)) -
                        MultiPoly::constant(vars, n - m);
        sys.equations.push_back({rel.primitive(), eq.tag});
        break;
      }
      case EqTag::RankMinor:
        sys.equations.push_back(
            {finish(MinorDet(hmat, size, eq.rows, eq.cols, vars).run()), eq.tag});
        break;
      case EqTag::FrameMinor:
        sys.equations.push_back(
            {finish(MinorDet(kmat, size, eq.rows, eq.cols, vars).run()), eq.tag});
        break;
      case EqTag::Haagerup:
        sys.equations.push_back({finish(h.haagerup(eq.rows[0], eq.rows[1], eq.rows[2])), eq.tag});
        break;
      case EqTag::HaagerupConj:
        sys.equations.push_back(
            {finish(h.haagerup(eq.rows[0], eq.rows[1], eq.rows[2]).invert(h.x_indices())),
             eq.tag});
        break;
      case EqTag::Nonzero: {
        MultiPoly prod = MultiPoly::variable(vars, "u");
        for (std::size_t idx : h.x_indices()) prod = prod * MultiPoly::variable(vars, vars->name(idx));
        sys.equations.push_back({prod - MultiPoly::constant(vars, 1), eq.tag});
        break;
      }
    }
  }
  return sys;
}

Dialect parse_dialect(std::string_view text) {
  if (text == "plain") return Dialect::Plain;
  if (text == "maple") return Dialect::Maple;
  if (text == "magma") return Dialect::Magma;
  throw Error(Errc::BadParams, "unknown dialect '" + std::string(text) + "'");
}

void export_system(std::ostream& out, const PolySystem& sys, Dialect dialect) {
  const auto& names = sys.vars->names();
  out << dialect_comment(dialect) << " n=" << sys.params.n << " m=" << sys.params.m
      << " eqs=" << sys.equations.size() << " vars=" << names.size()
      << " alpha=" << (sys.params.alphaRational ? "rational" : "irrational") << '\n';
  // Maple and Magma rank the first listed variable highest, so the lists are
  // reversed to keep the same monomial order as the plain table.
  std::vector<std::string> reversed(names.rbegin(), names.rend());
  auto join = [](const std::vector<std::string>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
  };
  switch (dialect) {
    case Dialect::Plain:
      out << "# vars: " << join(names, " ") << '\n';
      for (const auto& eq : sys.equations) out << to_string(eq.poly) << '\n';
      break;
    case Dialect::Maple:
      out << "vars := [" << join(reversed, ", ") << "]:\n";
      out << "F := [\n";
      for (std::size_t i = 0; i < sys.equations.size(); ++i) {
        out << to_string(sys.equations[i].poly) << (i + 1 < sys.equations.size() ? ",\n" : "\n");
      }
      out << "]:\n";
      break;
    case Dialect::Magma:
      out << "R<" << join(reversed, ",") << "> := PolynomialRing(Rationals(), " << names.size()
          << ", \"grevlex\");\n";
      out << "I := ideal<R |\n";
      for (std::size_t i = 0; i < sys.equations.size(); ++i) {
        out << to_string(sys.equations[i].poly) << (i + 1 < sys.equations.size() ? ",\n" : "\n");
      }
      out << ">;\n";
      break;
  }
}

std::string export_system(const PolySystem& sys, Dialect dialect) {
  std::ostringstream out;
  export_system(out, sys, dialect);
  return out.str();
}

double evaluate_at_solution(const PolySystem& sys, Assignment point) {
  if (sys.vars->index("u") && !point.contains("u")) {
    std::complex<double> prod = 1.0;
    for (const auto& name : sys.vars->names()) {
      if (!is_x_name(name)) continue;
      auto it = point.find(name);
      if (it == point.end()) throw Error(Errc::UnassignedVariable, "no value for '" + name + "'");
      prod *= it->second;
    }
    point["u"] = 1.0 / prod;
  }
  double worst = 0;
  for (const auto& eq : sys.equations) worst = std::max(worst, std::abs(evaluate(eq.poly, point)));
  return worst;
}

Assignment solution_from_gram(const ComplexMatrix& g, const SystemParams& params) {
  if (g.rows() != params.n || g.cols() != params.n) {
    throw Error(Errc::SizeMismatch, "Gram matrix must be " + std::to_string(params.n) + "x" +
                                        std::to_string(params.n));
  }
  const ComplexMatrix d = dephase(g);
  const double alpha = welch_bound(params.n, params.m);
  Assignment point;
  point["al"] = alpha;
  std::complex<double> prod = 1.0;
  const int size = params.n - 2;
  for (int i = 1; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) {
      const std::complex<double> x = d(i, j) / alpha;
      point["x_" + std::to_string(i + 1) + "_" + std::to_string(j + 1)] = x;
      prod *= x;
    }
  }
  point["u"] = 1.0 / prod;
  return point;
}

}  // namespace etf
