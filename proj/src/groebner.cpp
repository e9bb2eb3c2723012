#include "etf/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

namespace etf {
namespace {

using Clock = std::chrono::steady_clock;

struct DescendingMonomial {
  MonomialOrder order;
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(order, a, b) > 0; }
};

// Integer-coefficient polynomial, terms sorted by decreasing monomial.
struct Term {
  Monomial mono;
  Integer coef;
};

struct IPoly {
  std::vector<Term> terms;

  bool empty() const { return terms.empty(); }
  const Monomial& lead() const { return terms.front().mono; }
  const Integer& lc() const { return terms.front().coef; }
  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms) d = std::max(d, t.mono.degree());
    return d;
  }
};

void make_primitive(IPoly& p) {
  if (p.empty()) return;
  Integer g = 0;
  for (const auto& t : p.terms) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
    if (g == 1) break;
  }
  if (p.lc() < 0) g = -g;
  if (g != 1) {
    for (auto& t : p.terms) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), g.get_mpz_t());
  }
}

IPoly to_ipoly(const MultiPoly& f, MonomialOrder order) {
  MultiPoly prim = f.primitive();
  IPoly p;
  p.terms.reserve(prim.size());
  for (const auto& [m, c] : prim.terms()) p.terms.push_back({m, c.get_num()});
  std::sort(p.terms.begin(), p.terms.end(),
            [order](const Term& a, const Term& b) { return compare(order, a.mono, b.mono) > 0; });
  make_primitive(p);
  return p;
}

MultiPoly to_multipoly(const IPoly& p, const VarTablePtr& vars) {
  MultiPoly r(vars);
  for (const auto& t : p.terms) r.add_term(t.mono, Rational(t.coef));
  return r;
}

class Deadline {
 public:
  Deadline(Clock::time_point start, std::uint64_t seconds)
      : start_(start), limit_(start + std::chrono::seconds(seconds)) {}
  bool passed() const { return Clock::now() > limit_; }
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  Clock::time_point start_;
  Clock::time_point limit_;
};

struct Engine {
  MonomialOrder order;
  const ComputeBudget& budget;
  VarTablePtr vars;
  Deadline deadline;
  GroebnerStats stats;

  std::vector<IPoly> polys;   // every polynomial ever added
  std::vector<bool> active;   // current minimal generating set

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint64_t degree;
  };
  struct PairLess {
    MonomialOrder order;
    bool operator()(const Pair& a, const Pair& b) const {
      if (a.degree != b.degree) return a.degree < b.degree;
      int c = compare(order, a.lcm, b.lcm);
      if (c != 0) return c < 0;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    }
  };
  std::set<Pair, PairLess> pairs{PairLess{order}};

  Engine(MonomialOrder o, const ComputeBudget& b, VarTablePtr v)
      : order(o), budget(b), vars(std::move(v)), deadline(Clock::now(), b.maxSeconds) {}

  [[noreturn]] void exceeded(const std::string& why) {
    stats.basisSize = static_cast<std::size_t>(std::count(active.begin(), active.end(), true));
    stats.seconds = deadline.elapsed();
    throw BudgetExceeded(why, stats);
  }

  void check_time() {
    if (deadline.passed()) exceeded("time limit of " + std::to_string(budget.maxSeconds) + " s");
  }

  // Fully reduces `f` by the active basis using integer pseudo-division.
  IPoly reduce(IPoly f) {
    std::map<Monomial, Integer, DescendingMonomial> work{DescendingMonomial{order}};
    for (auto& t : f.terms) work.emplace(std::move(t.mono), std::move(t.coef));
    IPoly rem;
    std::size_t steps = 0;
    while (!work.empty()) {
      auto it = work.begin();
      const IPoly* div = nullptr;
      for (std::size_t k = 0; k < polys.size(); ++k) {
        if (active[k] && polys[k].lead().divides(it->first)) {
          div = &polys[k];
          break;
        }
      }
      if (!div) {
        rem.terms.push_back({it->first, std::move(it->second)});
        work.erase(it);
        continue;
      }
      if (++steps % 256 == 0) check_time();
      Integer g;
      mpz_gcd(g.get_mpz_t(), div->lc().get_mpz_t(), it->second.get_mpz_t());
      Integer a = div->lc() / g;
      Integer b = it->second / g;
      if (a < 0) {
        a = -a;
        b = -b;
      }
      Monomial shift = it->first / div->lead();
      work.erase(it);
      if (a != 1) {
        for (auto& [m, c] : work) c *= a;
        for (auto& t : rem.terms) t.coef *= a;
      }
      for (std::size_t k = 1; k < div->terms.size(); ++k) {
        const Term& t = div->terms[k];
        Monomial m = t.mono * shift;
        auto [pos, inserted] = work.try_emplace(std::move(m));
        pos->second -= b * t.coef;
        if (pos->second == 0) work.erase(pos);
      }
      if (steps % 32 == 0) shrink(work, rem);
    }
    make_primitive(rem);
    return rem;
  }

  // Divides out the common content of the partially reduced polynomial.
  static void shrink(std::map<Monomial, Integer, DescendingMonomial>& work, IPoly& rem) {
    Integer g = 0;
    for (const auto& [m, c] : work) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g == 1) return;
    }
    for (const auto& t : rem.terms) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_mpz_t());
      if (g == 1) return;
    }
    if (g == 0) return;
    for (auto& [m, c] : work) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    for (auto& t : rem.terms) mpz_divexact(t.coef.get_mpz_t(), t.coef.get_mpz_t(), g.get_mpz_t());
  }

  IPoly spoly(const IPoly& p, const IPoly& q) const {
    Monomial l = Monomial::lcm(p.lead(), q.lead());
    Integer g;
    mpz_gcd(g.get_mpz_t(), p.lc().get_mpz_t(), q.lc().get_mpz_t());
    Integer fp = q.lc() / g, fq = p.lc() / g;
    Monomial sp = l / p.lead(), sq = l / q.lead();
    std::map<Monomial, Integer, DescendingMonomial> acc{DescendingMonomial{order}};
    for (std::size_t k = 1; k < p.terms.size(); ++k) {
      acc[p.terms[k].mono * sp] += fp * p.terms[k].coef;
    }
    for (std::size_t k = 1; k < q.terms.size(); ++k) {
      acc[q.terms[k].mono * sq] -= fq * q.terms[k].coef;
    }
    IPoly s;
    for (auto& [m, c] : acc) {
      if (c != 0) s.terms.push_back({m, std::move(c)});
    }
    make_primitive(s);
    return s;
  }

  // Gebauer–Möller installation of a new basis element.
  void update(IPoly h) {
    const std::size_t k = polys.size();
    const Monomial lh = h.lead();
    stats.maxDegreeSeen = std::max(stats.maxDegreeSeen, h.degree());
    if (h.degree() > budget.maxTotalDegree) {
      exceeded("basis element of degree " + std::to_string(h.degree()) + " exceeds limit");
    }
    polys.push_back(std::move(h));
    active.push_back(false);

    struct Cand {
      std::size_t i;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < k; ++i) {
      if (!active[i]) continue;
      cands.push_back({i, Monomial::lcm(polys[i].lead(), lh), polys[i].lead().coprime(lh)});
    }
    std::vector<Cand> kept;
    for (std::size_t c = 0; c < cands.size(); ++c) {
      const Cand& p = cands[c];
      bool keep = p.coprime;
      if (!keep) {
        keep = true;
        for (std::size_t d = c + 1; d < cands.size() && keep; ++d) {
          if (cands[d].lcm.divides(p.lcm)) keep = false;
        }
        for (const Cand& q : kept) {
          if (!keep) break;
          if (q.lcm.divides(p.lcm)) keep = false;
        }
      }
      if (keep) kept.push_back(p);
    }

    // Chain criterion on the existing pairs.
    for (auto it = pairs.begin(); it != pairs.end();) {
      if (lh.divides(it->lcm) &&
          Monomial::lcm(polys[it->i].lead(), lh) != it->lcm &&
          Monomial::lcm(polys[it->j].lead(), lh) != it->lcm) {
        it = pairs.erase(it);
        ++stats.pairsSkipped;
      } else {
        ++it;
      }
    }
    for (const Cand& p : kept) {
      if (p.coprime) {
        ++stats.pairsSkipped;
        continue;
      }
      pairs.insert(Pair{p.i, k, p.lcm, p.lcm.degree()});
    }

    for (std::size_t i = 0; i < k; ++i) {
      if (active[i] && lh.divides(polys[i].lead())) active[i] = false;
    }
    active[k] = true;
    auto live = static_cast<std::size_t>(std::count(active.begin(), active.end(), true));
    if (live > budget.maxBasisSize) exceeded("basis size limit reached");
  }

  // Returns true once the unit ideal has been detected.
  bool add(IPoly f) {
    IPoly h = reduce(std::move(f));
    if (h.empty()) {
      ++stats.zeroReductions;
      return false;
    }
    if (h.lead().is_one()) return true;
    update(std::move(h));
    return false;
  }

  std::vector<IPoly> reduced_basis() {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < polys.size(); ++k) {
      if (active[k]) idx.push_back(k);
    }
    std::vector<IPoly> out;
    for (std::size_t k : idx) {
      // The active set is minimal, so reducing polys[k] by the others keeps
      // its leading term and only rewrites the tail.
      active[k] = false;
      IPoly r = reduce(polys[k]);
      active[k] = true;
      polys[k] = r;
      out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [this](const IPoly& a, const IPoly& b) {
      return compare(order, a.lead(), b.lead()) < 0;
    });
    return out;
  }
};

}  // namespace

void ComputeBudget::validate() const {
  if (maxSeconds == 0 || maxBasisSize == 0 || maxTotalDegree == 0) {
    throw Error(Errc::BadParams, "compute budget limits must be positive");
  }
}

MultiPoly s_polynomial(const MultiPoly& p, const MultiPoly& q, MonomialOrder order) {
  if (!same_vars(p.vars(), q.vars())) {
    throw Error(Errc::VarTableMismatch, "S-polynomial of polynomials over different tables");
  }
  if (p.is_zero() || q.is_zero()) throw Error(Errc::ZeroPolynomial, "S-polynomial of zero");
  auto [mp, cp] = p.leading_term(order);
  auto [mq, cq] = q.leading_term(order);
  Monomial l = Monomial::lcm(mp, mq);
  MultiPoly fp = MultiPoly::term(p.vars(), l / mp, 1 / cp);
  MultiPoly fq = MultiPoly::term(q.vars(), l / mq, 1 / cq);
  return fp * p - fq * q;
}

MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& divisors,
                      MonomialOrder order) {
  std::vector<std::pair<Monomial, Rational>> leads;
  for (const auto& d : divisors) {
    if (!same_vars(f.vars(), d.vars())) {
      throw Error(Errc::VarTableMismatch, "divisor over a different variable table");
    }
    if (d.is_zero()) throw Error(Errc::ZeroPolynomial, "zero divisor in normal form");
    leads.push_back(d.leading_term(order));
  }
  std::map<Monomial, Rational, DescendingMonomial> work{DescendingMonomial{order}};
  for (const auto& [m, c] : f.terms()) work.emplace(m, c);
  MultiPoly rem(f.vars());
  while (!work.empty()) {
    auto it = work.begin();
    std::size_t k = 0;
    while (k < leads.size() && !leads[k].first.divides(it->first)) ++k;
    if (k == leads.size()) {
      rem.add_term(it->first, it->second);
      work.erase(it);
      continue;
    }
    Rational q = it->second / leads[k].second;
    Monomial shift = it->first / leads[k].first;
    work.erase(it);
    for (const auto& [m, c] : divisors[k].terms()) {
      if (m == leads[k].first) continue;
      auto [pos, inserted] = work.try_emplace(m * shift, 0);
      pos->second -= q * c;
      if (pos->second == 0) work.erase(pos);
    }
  }
  return rem;
}

GroebnerBasis buchberger(const std::vector<MultiPoly>& generators, MonomialOrder order,
                         const ComputeBudget& budget) {
  budget.validate();
  if (generators.empty()) throw Error(Errc::BadParams, "no generators");
  const VarTablePtr& vars = generators.front().vars();
  for (const auto& g : generators) {
    if (!same_vars(vars, g.vars())) {
      throw Error(Errc::VarTableMismatch, "generators over different variable tables");
    }
  }

  Engine eng(order, budget, vars);
  GroebnerBasis gb;
  gb.vars = vars;
  gb.order = order;

  auto unit = [&] {
    gb.isUnitIdeal = true;
    gb.basis = {MultiPoly::constant(vars, 1)};
    eng.stats.basisSize = 1;
    eng.stats.seconds = eng.deadline.elapsed();
    gb.stats = eng.stats;
    return gb;
  };

  std::vector<IPoly> inputs;
  for (const auto& g : generators) {
    if (!g.is_zero()) inputs.push_back(to_ipoly(g, order));
  }
  // Smallest leading monomials first; ties broken by the full term list so the
  // run is independent of the caller's ordering.
  std::sort(inputs.begin(), inputs.end(), [order](const IPoly& a, const IPoly& b) {
    const std::size_t n = std::min(a.terms.size(), b.terms.size());
    for (std::size_t k = 0; k < n; ++k) {
      int c = compare(order, a.terms[k].mono, b.terms[k].mono);
      if (c != 0) return c < 0;
      if (a.terms[k].coef != b.terms[k].coef) return a.terms[k].coef < b.terms[k].coef;
    }
    return a.terms.size() < b.terms.size();
  });
  for (auto& f : inputs) {
    eng.check_time();
    if (eng.add(std::move(f))) return unit();
  }

  while (!eng.pairs.empty()) {
    eng.check_time();
    auto it = eng.pairs.begin();
    auto pair = *it;
    eng.pairs.erase(it);
    ++eng.stats.pairsProcessed;
    IPoly s = eng.spoly(eng.polys[pair.i], eng.polys[pair.j]);
    if (s.empty()) {
      ++eng.stats.zeroReductions;
      continue;
    }
    if (eng.add(std::move(s))) return unit();
  }

  for (auto& p : eng.reduced_basis()) gb.basis.push_back(to_multipoly(p, vars));
  eng.stats.basisSize = gb.basis.size();
  eng.stats.seconds = eng.deadline.elapsed();
  gb.stats = eng.stats;
  return gb;
}

bool ideal_membership(const MultiPoly& f, const GroebnerBasis& gb) {
  if (!same_vars(f.vars(), gb.vars)) {
    throw Error(Errc::VarTableMismatch, "polynomial and basis use different variable tables");
  }
  if (f.is_zero() || gb.isUnitIdeal) return true;
  if (gb.basis.empty()) return false;
  return normal_form(f, gb.basis, gb.order).is_zero();
}

DimensionHint staircase_dimension_hint(const GroebnerBasis& gb) {
  if (gb.isUnitIdeal) throw Error(Errc::UnitIdeal, "dimension of the unit ideal is undefined");
  const std::size_t nv = gb.vars->size();
  std::vector<bool> has_power(nv, false);
  for (const auto& g : gb.basis) {
    Monomial lm = g.leading_monomial(gb.order);
    std::size_t nonzero = 0, which = 0;
    for (std::size_t i = 0; i < nv; ++i) {
      if (lm[i] != 0) {
        ++nonzero;
        which = i;
      }
    }
    if (nonzero == 1) has_power[which] = true;
  }
  bool all = std::all_of(has_power.begin(), has_power.end(), [](bool b) { return b; });
  return all ? DimensionHint::ZeroDimensional : DimensionHint::PositiveDimensional;
}

bool satisfies_buchberger_criterion(const std::vector<MultiPoly>& basis, MonomialOrder order) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (!normal_form(s_polynomial(basis[i], basis[j], order), basis, order).is_zero()) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace etf
