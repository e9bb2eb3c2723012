#include "etf/polytext.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <tuple>

#include "etf/error.hpp"

namespace etf {
namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
 public:
  Parser(std::string_view text, const VarTablePtr& vars) : s_(text), vars_(vars) {}

  MultiPoly run() {
    MultiPoly result(vars_);
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = (peek() == '-') ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [mono, coef] = parse_term();
      result.add_term(mono, sign * coef);
      skip_ws();
      if (at_end()) break;
    }
    return result;
  }

 private:
  std::pair<Monomial, Rational> parse_term() {
    Monomial mono(vars_->size());
    Rational coef = 1;
    bool any = false;
    while (true) {
      skip_ws();
      if (is_digit(peek())) {
        coef *= parse_number();
      } else if (ident_start(peek())) {
        std::size_t start = pos_;
        while (!at_end() && ident_char(peek())) ++pos_;
        std::string_view name = s_.substr(start, pos_ - start);
        auto idx = vars_->index(name);
        if (!idx) fail("unknown variable '" + std::string(name) + "'");
        std::uint32_t e = 1;
        skip_ws();
        if (peek() == '^') {
          ++pos_;
          skip_ws();
          e = parse_exponent();
        }
        Monomial f(vars_->size());
        f.set(*idx, e);
        mono = mono * f;
      } else {
        fail("expected a coefficient or variable");
      }
      any = true;
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
    if (!any) fail("empty term");
    return {mono, coef};
  }

  Rational parse_number() {
    std::size_t start = pos_;
    while (!at_end() && is_digit(peek())) ++pos_;
    std::string num(s_.substr(start, pos_ - start));
    std::string den = "1";
    if (peek() == '/') {
      ++pos_;
      std::size_t ds = pos_;
      while (!at_end() && is_digit(peek())) ++pos_;
      if (pos_ == ds) fail("expected denominator");
      den = std::string(s_.substr(ds, pos_ - ds));
    }
    Integer d(den);
    if (d == 0) fail("zero denominator");
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
  }

  std::uint32_t parse_exponent() {
    std::size_t start = pos_;
    while (!at_end() && is_digit(peek())) ++pos_;
    std::uint32_t e = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, e);
    if (pos_ == start || ec != std::errc()) fail("bad exponent");
    return e;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::ParseError, msg + " at column " + std::to_string(pos_ + 1) + " in '" +
                                      std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  const VarTablePtr& vars_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Sort key for inferred tables: al, then x_i_j numerically, then others, then u.
std::tuple<int, long, long, std::string> var_key(const std::string& name) {
  if (name == "al") return {0, 0, 0, name};
  if (name == "u") return {3, 0, 0, name};
  long i = 0, j = 0;
  char tail = 0;
  if (std::sscanf(name.c_str(), "x_%ld_%ld%c", &i, &j, &tail) == 2) return {1, i, j, name};
  return {2, 0, 0, name};
}

}  // namespace

std::string to_string(const MultiPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<const MultiPoly::TermMap::value_type*> terms;
  for (const auto& t : p.terms()) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(), [](auto* a, auto* b) {
    return compare(MonomialOrder::Grevlex, a->first, b->first) > 0;
  });
  std::ostringstream out;
  const auto& vt = *p.vars();
  bool first = true;
  for (const auto* t : terms) {
    Rational c = t->second;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    out << Rational(abs(c)).get_str();
    for (std::size_t i = 0; i < vt.size(); ++i) {
      auto e = t->first[i];
      if (e == 0) continue;
      out << '*' << vt.name(i);
      if (e > 1) out << '^' << e;
    }
  }
  return out.str();
}

MultiPoly parse_poly(std::string_view text, const VarTablePtr& vars) {
  return Parser(text, vars).run();
}

std::vector<std::string> scan_variables(std::string_view text) {
  std::vector<std::string> names;
  std::set<std::string, std::less<>> seen;
  std::size_t i = 0;
  while (i < text.size()) {
    if (ident_start(text[i])) {
      std::size_t start = i;
      while (i < text.size() && ident_char(text[i])) ++i;
      std::string name(text.substr(start, i - start));
      if (seen.insert(name).second) names.push_back(std::move(name));
    } else if (is_digit(text[i])) {
      while (i < text.size() && is_digit(text[i])) ++i;
    } else {
      ++i;
    }
  }
  return names;
}

VarTablePtr infer_var_table(std::vector<std::string> names) {
  std::sort(names.begin(), names.end(),
            [](const std::string& a, const std::string& b) { return var_key(a) < var_key(b); });
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return VarTable::make(std::move(names));
}

PolyFile parse_poly_text(std::string_view text, const VarTablePtr& fixed_vars) {
  std::vector<std::string_view> lines;
  VarTablePtr vars;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = trim(line.substr(1));
      if (body.starts_with("vars:") && !vars) {
        std::vector<std::string> names;
        std::istringstream ss{std::string(body.substr(5))};
        for (std::string w; ss >> w;) names.push_back(w);
        vars = VarTable::make(std::move(names));
      }
      continue;
    }
    lines.push_back(line);
  }
  if (!vars) vars = fixed_vars;
  if (!vars) {
    std::vector<std::string> names;
    for (auto line : lines) {
      for (auto& n : scan_variables(line)) names.push_back(std::move(n));
    }
    vars = infer_var_table(std::move(names));
  }
  PolyFile file{vars, {}};
  file.polys.reserve(lines.size());
  for (auto line : lines) file.polys.push_back(parse_poly(line, vars));
  return file;
}

PolyFile parse_poly_file(std::istream& in, const VarTablePtr& fixed_vars) {
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(Errc::Io, "failed reading polynomial input");
  return parse_poly_text(buf.str(), fixed_vars);
}

}  // namespace etf
