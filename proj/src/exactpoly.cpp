#include "etf/exactpoly.hpp"

#include <algorithm>
#include <limits>

#include "etf/error.hpp"

namespace etf {

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw Error(Errc::BadParams, "empty variable name");
    if (!lookup_.emplace(names_[i], i).second) {
      throw Error(Errc::BadParams, "duplicate variable name '" + names_[i] + "'");
    }
  }
}

std::shared_ptr<const VarTable> VarTable::make(std::vector<std::string> names) {
  return std::make_shared<const VarTable>(std::move(names));
}

std::optional<std::size_t> VarTable::index(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

bool same_vars(const VarTablePtr& a, const VarTablePtr& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// ---------------------------------------------------------------------------

std::uint64_t Monomial::degree() const noexcept {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const noexcept {
  return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    std::uint64_t s = std::uint64_t{exps_[i]} + other.exps_[i];
    if (s > std::numeric_limits<std::uint32_t>::max()) {
      throw Error(Errc::ExponentOverflow, "exponent exceeds 32 bits");
    }
    r.exps_[i] = static_cast<std::uint32_t>(s);
  }
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = exps_[i] - other.exps_[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
  return r;
}

int compare(MonomialOrder order, const Monomial& a, const Monomial& b) noexcept {
  const std::size_t n = a.size();
  if (order == MonomialOrder::Grevlex) {
    auto da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    // Equal degree: the smaller exponent in the smallest differing variable wins.
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }
  for (std::size_t i = n; i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::string_view to_string(MonomialOrder order) noexcept {
  return order == MonomialOrder::Lex ? "lex" : "grevlex";
}

MonomialOrder parse_order(std::string_view text) {
  if (text == "lex") return MonomialOrder::Lex;
  if (text == "grevlex") return MonomialOrder::Grevlex;
  throw Error(Errc::BadParams, "unknown monomial order '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------

MultiPoly::MultiPoly(VarTablePtr vars) : vars_(std::move(vars)) {
  if (!vars_) throw Error(Errc::VarTableMismatch, "null variable table");
}

MultiPoly MultiPoly::constant(VarTablePtr vars, const Rational& c) {
  MultiPoly p(std::move(vars));
  p.add_term(Monomial(p.vars_->size()), c);
  return p;
}

MultiPoly MultiPoly::variable(VarTablePtr vars, std::string_view name, std::uint32_t exp) {
  MultiPoly p(std::move(vars));
  auto idx = p.vars_->index(name);
  if (!idx) throw Error(Errc::VarTableMismatch, "unknown variable '" + std::string(name) + "'");
  Monomial m(p.vars_->size());
  m.set(*idx, exp);
  p.add_term(m, 1);
  return p;
}

MultiPoly MultiPoly::term(VarTablePtr vars, Monomial mono, const Rational& c) {
  MultiPoly p(std::move(vars));
  if (mono.size() != p.vars_->size()) {
    throw Error(Errc::VarTableMismatch, "monomial length does not match variable table");
  }
  p.add_term(mono, c);
  return p;
}

bool MultiPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::uint64_t MultiPoly::total_degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::uint32_t MultiPoly::degree_in(std::size_t var) const noexcept {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

Rational MultiPoly::coefficient(const Monomial& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Monomial& mono, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::pair<Monomial, Rational> MultiPoly::leading_term(MonomialOrder order) const {
  if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "zero polynomial has no leading term");
  auto best = terms_.begin();
  for (auto it = std::next(best); it != terms_.end(); ++it) {
    if (compare(order, it->first, best->first) > 0) best = it;
  }
  return *best;
}

MultiPoly MultiPoly::primitive() const {
  if (terms_.empty()) return *this;
  Integer den = 1, num = 0;
  for (const auto& [m, c] : terms_) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational scale(den, num);
  scale.canonicalize();
  if (leading_term(MonomialOrder::Grevlex).second < 0) scale = -scale;
  MultiPoly r = *this;
  for (auto& [m, c] : r.terms_) c *= scale;
  return r;
}

void MultiPoly::require_same(const MultiPoly& q) const {
  if (!same_vars(vars_, q.vars_)) {
    throw Error(Errc::VarTableMismatch, "polynomials use different variable tables");
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& q) {
  require_same(q);
  for (const auto& [m, c] : q.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& q) {
  require_same(q);
  for (const auto& [m, c] : q.terms_) add_term(m, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MultiPoly operator*(const MultiPoly& p, const MultiPoly& q) {
  p.require_same(q);
  MultiPoly r(p.vars_);
  for (const auto& [mp, cp] : p.terms_) {
    for (const auto& [mq, cq] : q.terms_) r.add_term(mp * mq, cp * cq);
  }
  return r;
}

bool MultiPoly::operator==(const MultiPoly& q) const {
  return same_vars(vars_, q.vars_) && terms_ == q.terms_;
}

MultiPoly pow(const MultiPoly& p, unsigned e) {
  MultiPoly r = MultiPoly::constant(p.vars(), 1);
  MultiPoly base = p;
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

MultiPoly reduce_mod(const MultiPoly& p, const MultiPoly& rel, std::string_view var) {
  if (!same_vars(p.vars(), rel.vars())) {
    throw Error(Errc::VarTableMismatch, "relation uses a different variable table");
  }
  auto idx = rel.vars()->index(var);
  if (!idx) throw Error(Errc::BadRelationShape, "variable '" + std::string(var) + "' not in table");

  // rel must be c*var^2 - d: at most two terms, var^2 and the constant.
  const std::size_t nv = rel.vars()->size();
  Monomial sq(nv);
  sq.set(*idx, 2);
  Rational c = 0, d = 0;
  for (const auto& [m, coef] : rel.terms()) {
    if (m == sq) {
      c = coef;
    } else if (m.is_one()) {
      d = -coef;
    } else {
      throw Error(Errc::BadRelationShape, "relation must have the form c*var^2 - d");
    }
  }
  if (c == 0) throw Error(Errc::BadRelationShape, "relation has no var^2 term");
  const Rational sq_value = d / c;

  MultiPoly r(p.vars());
  for (const auto& [m, coef] : p.terms()) {
    const std::uint32_t e = m[*idx];
    Rational factor = 1;
    for (std::uint32_t k = 0; k < e / 2; ++k) factor *= sq_value;
    Monomial reduced = m;
    reduced.set(*idx, e % 2);
    r.add_term(reduced, coef * factor);
  }
  return r;
}

std::complex<double> evaluate(const MultiPoly& p, const Assignment& point) {
  const auto& vt = *p.vars();
  std::vector<std::complex<double>> values(vt.size());
  std::vector<bool> used(vt.size(), false);
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < vt.size(); ++i) used[i] = used[i] || m[i] != 0;
  }
  for (std::size_t i = 0; i < vt.size(); ++i) {
    if (!used[i]) continue;
    auto it = point.find(vt.name(i));
    if (it == point.end()) {
      throw Error(Errc::UnassignedVariable, "no value for variable '" + vt.name(i) + "'");
    }
    values[i] = it->second;
  }
  std::complex<double> sum = 0;
  for (const auto& [m, c] : p.terms()) {
    std::complex<double> t = c.get_d();
    for (std::size_t i = 0; i < vt.size(); ++i) {
      if (m[i] == 0) continue;
      std::complex<double> f = 1;
      for (std::uint32_t k = 0; k < m[i]; ++k) f *= values[i];
      t *= f;
    }
    sum += t;
  }
  return sum;
}

}  // namespace etf
