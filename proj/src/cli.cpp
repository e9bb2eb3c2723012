#include "etf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "etf/catalog.hpp"
#include "etf/error.hpp"
#include "etf/frames.hpp"
#include "etf/groebner.hpp"
#include "etf/polytext.hpp"
#include "etf/sysgen.hpp"

namespace etf::cli {
namespace {

using Clock = std::chrono::steady_clock;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string yes(bool b) { return b ? "true" : "false"; }

std::string complex_text(Complex z) { return num(z.real()) + "," + num(z.imag()); }

Complex parse_complex(const std::string& text) {
  auto comma = text.find(',');
  double re = 0, im = 0;
  auto parse = [](std::string_view s, double& v) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && p == s.data() + s.size() && !s.empty();
  };
  if (comma == std::string::npos || !parse(std::string_view(text).substr(0, comma), re) ||
      !parse(std::string_view(text).substr(comma + 1), im)) {
    throw Error(Errc::BadParams, "--param expects RE,IM, got '" + text + "'");
  }
  return {re, im};
}

// Key-value report with a closing verdict line.
class Report {
 public:
  Report(std::ostream& out, std::string prefix = "") : out_(out), prefix_(std::move(prefix)) {}

  template <typename T>
  Report& line(const std::string& key, const T& value) {
    out_ << prefix_ << key << ": " << value << '\n';
    return *this;
  }

  Report& seconds() {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f",
                  std::chrono::duration<double>(Clock::now() - start_).count());
    return line("seconds", buf);
  }

  int verdict(const std::string& v, int code) {
    seconds();
    return verdict_only(v, code);
  }

  int verdict_only(const std::string& v, int code) {
    out_ << "VERDICT: " << v << '\n';
    return code;
  }

  int pass_fail(bool ok) { return ok ? verdict("PASS", kExitPass) : verdict("FAIL", kExitFail); }

 private:
  std::ostream& out_;
  std::string prefix_;
  Clock::time_point start_ = Clock::now();
};

class Io {
 public:
  explicit Io(std::istream& in) : in_(in) {}

  template <typename F>
  auto read(const std::string& path, F&& f) {
    if (path == "-") return f(in_);
    std::ifstream file(path);
    if (!file) throw Error(Errc::Io, "cannot open '" + path + "'");
    return f(file);
  }

  ComplexMatrix matrix(const std::string& path) {
    return read(path, [](std::istream& s) { return read_matrix(s); });
  }

  static void write(const std::string& path, const std::function<void(std::ostream&)>& f) {
    std::ofstream file(path);
    if (!file) throw Error(Errc::Io, "cannot write '" + path + "'");
    f(file);
    if (!file) throw Error(Errc::Io, "failed writing '" + path + "'");
  }

 private:
  std::istream& in_;
};

void add_tol(CLI::App* sub, double& tol, double def = kDefaultTol) {
  tol = def;
  sub->add_option("--tol", tol, "numeric tolerance")->capture_default_str()->check(
      CLI::PositiveNumber);
}

void add_rank_tol(CLI::App* sub, double& tol) {
  tol = kDefaultRankTol;
  sub->add_option("--rank-tol", tol, "relative singular-value cutoff")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

struct Options {
  std::string file, file2, out_path, name, param, dialect = "plain", order = "grevlex", scenario,
      poly;
  int n = 0, m = 0, r = 0;
  double tol = kDefaultTol, rank_tol = kDefaultRankTol, equiv_tol = 1e-8;
  std::uint64_t max_seconds = 600;
  std::size_t max_basis = 100000;
  std::uint64_t max_degree = 1000;
  unsigned threads = 0;
  bool no_alpha_reduce = false;
  std::string member_file;
};

int cmd_check(const Options& o, Io& io, std::ostream& out) {
  const FrameParams p = FrameParams::make(o.n, o.m);
  const ComplexMatrix g = io.matrix(o.file);
  Report rep(out);
  rep.line("command", "check").line("file", o.file).line("n", o.n).line("m", o.m);
  rep.line("tol", sci(o.tol)).line("alpha", num(p.alpha));
  const EtfReport r = check_etf_gram(g, p, o.tol);
  rep.line("self_adjoint", yes(r.selfAdjoint)).line("self_adjoint_residual", sci(r.selfAdjointResidual));
  rep.line("unit_diagonal", yes(r.unitDiagonal)).line("unit_diagonal_residual", sci(r.diagonalResidual));
  rep.line("equiangular", yes(r.equiangular)).line("equiangular_residual", sci(r.angleResidual));
  rep.line("frame_condition", yes(r.frameCondition)).line("frame_residual", sci(r.frameResidual));
  rep.line("worst_residual", sci(r.worst()));
  return rep.pass_fail(r.pass());
}

int cmd_subgram(const Options& o, Io& io, std::ostream& out) {
  const FrameParams p = FrameParams::make(o.n, o.m);
  const ComplexMatrix h = io.matrix(o.file);
  Report rep(out);
  rep.line("command", "subgram-test").line("file", o.file).line("n", o.n).line("m", o.m);
  rep.line("r", o.r).line("tol", sci(o.tol)).line("rank_tol", sci(o.rank_tol));
  const bool rank_ok = subgram_rank_test(h, p, o.r, o.rank_tol);
  const ComplexMatrix k = static_cast<double>(p.m) * h * h - static_cast<double>(p.n) * h;
  rep.line("frame_rank", numerical_rank(k, o.rank_tol)).line("rank_test", yes(rank_ok));
  const bool analytic_ok = subgram_analytic_test(h, p, o.r, o.tol);
  rep.line("analytic_margin", num(subgram_analytic_margin(h, p)));
  rep.line("analytic_bound", num(o.r * p.alpha * p.alpha)).line("analytic_test", yes(analytic_ok));
  bool ok = rank_ok && analytic_ok;
  if (o.r == 2) {
    const TripleTestResult t = haagerup_triple_test(h, p, std::max(o.tol, 1e-9));
    rep.line("triple_max_residual", sci(t.maxResidual)).line("triple_test", yes(t.pass));
    ok = ok && t.pass;
  }
  return rep.pass_fail(ok);
}

int cmd_naimark(const Options& o, Io& io, std::ostream& out) {
  const FrameParams p = FrameParams::make(o.n, o.m);
  const ComplexMatrix g = io.matrix(o.file);
  auto [c, q] = naimark_complement(g, p, o.tol);
  if (o.out_path.empty()) {
    write_matrix(out, c);
    return kExitPass;
  }
  Io::write(o.out_path, [&](std::ostream& s) { write_matrix(s, c); });
  Report rep(out);
  rep.line("command", "naimark").line("file", o.file).line("n", o.n).line("m", o.m);
  rep.line("complement_m", q.m).line("complement_alpha", num(q.alpha)).line("output", o.out_path);
  const EtfReport r = check_etf_gram(c, q, std::max(o.tol, 1e-9));
  rep.line("complement_worst_residual", sci(r.worst()));
  return rep.pass_fail(r.pass());
}

int cmd_equiv(const Options& o, Io& io, std::ostream& out) {
  const ComplexMatrix a = io.matrix(o.file);
  const ComplexMatrix b = io.matrix(o.file2);
  Report rep(out);
  rep.line("command", "equiv").line("file1", o.file).line("file2", o.file2).line("tol", sci(o.equiv_tol));
  const bool eq = equivalent(a, b, o.equiv_tol);
  rep.line("equivalent", yes(eq));
  return rep.pass_fail(eq);
}

int cmd_gen_system(const Options& o, std::ostream& out) {
  const Dialect d = parse_dialect(o.dialect);
  const PolySystem sys = generate_system(o.n, o.m, GenerateOptions{!o.no_alpha_reduce});
  if (o.out_path.empty()) {
    export_system(out, sys, d);
    return kExitPass;
  }
  Io::write(o.out_path, [&](std::ostream& s) { export_system(s, sys, d); });
  Report rep(out);
  rep.line("command", "gen-system").line("n", o.n).line("m", o.m).line("dialect", o.dialect);
  rep.line("eqs", sys.equations.size()).line("vars", sys.vars->size());
  rep.line("alpha", sys.params.alphaRational ? "rational" : "irrational").line("output", o.out_path);
  return rep.verdict("PASS", kExitPass);
}

ComputeBudget budget_of(const Options& o) {
  ComputeBudget b;
  b.maxSeconds = o.max_seconds;
  b.maxBasisSize = o.max_basis;
  b.maxTotalDegree = o.max_degree;
  return b;
}

void stats_lines(Report& rep, const GroebnerStats& s) {
  rep.line("pairs_processed", s.pairsProcessed).line("pairs_skipped", s.pairsSkipped);
  rep.line("zero_reductions", s.zeroReductions).line("basis_size", s.basisSize);
  rep.line("max_degree", s.maxDegreeSeen);
}

int cmd_groebner(const Options& o, Io& io, std::ostream& out) {
  const MonomialOrder order = parse_order(o.order);
  const PolyFile file = io.read(o.file, [](std::istream& s) { return parse_poly_file(s); });
  std::vector<MultiPoly> members;
  if (!o.member_file.empty()) {
    members = io.read(o.member_file, [&](std::istream& s) {
                  return parse_poly_file(s, file.vars).polys;
                });
  }

  Report rep(out, "# ");
  rep.line("command", "groebner").line("input", o.file).line("order", to_string(order));
  std::string names;
  for (const auto& v : file.vars->names()) names += (names.empty() ? "" : " ") + v;
  rep.line("vars", names).line("generators", file.polys.size());
  GroebnerBasis gb;
  try {
    gb = buchberger(file.polys, order, budget_of(o));
  } catch (const BudgetExceeded& e) {
    stats_lines(rep, e.stats());
    rep.line("budget", e.what());
    return rep.verdict("BUDGET_EXCEEDED", kExitBudget);
  }
  stats_lines(rep, gb.stats);
  if (!gb.isUnitIdeal) {
    const bool zero = staircase_dimension_hint(gb) == DimensionHint::ZeroDimensional;
    rep.line("dimension", zero ? "zero" : "positive");
  }
  for (const auto& f : members) rep.line("member", to_string(f) + " -> " + yes(ideal_membership(f, gb)));
  rep.seconds();
  for (const auto& g : gb.basis) out << to_string(g) << '\n';
  return gb.isUnitIdeal ? rep.verdict_only("UNIT_IDEAL", kExitFail)
                        : rep.verdict_only("CONSISTENT", kExitPass);
}

int cmd_member(const Options& o, Io& io, std::ostream& out) {
  const MonomialOrder order = parse_order(o.order);
  const PolyFile file = io.read(o.file, [](std::istream& s) { return parse_poly_file(s); });
  const MultiPoly f = parse_poly(o.poly, file.vars);
  Report rep(out);
  rep.line("command", "member").line("input", o.file).line("order", to_string(order));
  rep.line("polynomial", to_string(f));
  GroebnerBasis gb;
  try {
    gb = buchberger(file.polys, order, budget_of(o));
  } catch (const BudgetExceeded& e) {
    stats_lines(rep, e.stats());
    return rep.verdict("BUDGET_EXCEEDED", kExitBudget);
  }
  rep.line("basis_size", gb.basis.size()).line("unit_ideal", yes(gb.isUnitIdeal));
  const bool in = ideal_membership(f, gb);
  rep.line("member", yes(in));
  return rep.pass_fail(in);
}

int cmd_catalog(const Options& o, std::ostream& out) {
  std::optional<Complex> a;
  if (!o.param.empty()) a = parse_complex(o.param);
  const ComplexMatrix g = instantiate(o.name, a);
  if (o.out_path.empty()) {
    write_matrix(out, g);
    return kExitPass;
  }
  Io::write(o.out_path, [&](std::ostream& s) { write_matrix(s, g); });
  Report rep(out);
  rep.line("command", "catalog").line("name", o.name);
  if (a) rep.line("param", complex_text(*a));
  rep.line("size", g.rows()).line("output", o.out_path);
  return rep.verdict("PASS", kExitPass);
}

int cmd_search73(const Options& o, std::ostream& out) {
  Report rep(out);
  rep.line("command", "search-73");
  const auto sols = enumerate_73_solutions(o.threads);
  bool all = !sols.empty();
  for (std::size_t i = 0; i < sols.size() && all; ++i) {
    for (std::size_t j = i + 1; j < sols.size() && all; ++j) all = equivalent(sols[i], sols[j]);
  }
  rep.line("candidates", 4096).line("solutions", sols.size()).line("all_equivalent", yes(all));
  return rep.pass_fail(all);
}

int cmd_search83(const Options& o, std::ostream& out) {
  Report rep(out);
  rep.line("command", "search-83").line("max_seconds", o.max_seconds);
  ComputeBudget b;
  b.maxSeconds = o.max_seconds;
  ComplexMatrix h;
  try {
    h = near_miss_83_search(b);
  } catch (const BudgetExceeded& e) {
    rep.line("budget", e.what());
    return rep.verdict("BUDGET_EXCEEDED", kExitBudget);
  }
  const FrameParams p = FrameParams::make(8, 3);
  for (int i = 1; i < h.rows(); ++i) {
    for (int j = i + 1; j < h.cols(); ++j) {
      rep.line("x_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
               complex_text(h(i, j) / p.alpha));
    }
  }
  const bool rank_ok = subgram_rank_test(h, p, 2, o.rank_tol);
  const TripleTestResult t = haagerup_triple_test(h, p);
  rep.line("rank", numerical_rank(h, o.rank_tol));
  rep.line("moduli_ok", yes(has_off_diagonal_modulus(h, p.alpha, 1e-9)));
  rep.line("rank_test_r2", yes(rank_ok));
  rep.line("triple_max_residual", sci(t.maxResidual)).line("triple_test", yes(t.pass));
  std::string failed;
  if (!rank_ok) failed = "rank_test_r2";
  if (!t.pass) failed += (failed.empty() ? "" : ",") + std::string("triple_test");
  rep.line("failed_conditions", failed.empty() ? "none" : failed);
  if (!o.out_path.empty()) {
    Io::write(o.out_path, [&](std::ostream& s) { write_matrix(s, h); });
    rep.line("output", o.out_path);
  }
  return rep.pass_fail(failed.empty());
}

int cmd_count(const Options& o, std::ostream& out) {
  const Scenario s = parse_scenario(o.scenario);
  Report rep(out);
  rep.line("command", "count-extensions").line("scenario", to_string(s));
  const RowExtensionCount c = count_row_extensions_detail(s);
  rep.line("distinct_rows", c.distinct).line("classes", c.classes).line("count", c.reported);
  return rep.verdict("PASS", kExitPass);
}

int cmd_welch(const Options& o, std::ostream& out) {
  const double a = welch_bound(o.n, o.m);
  Report rep(out);
  rep.line("command", "welch").line("n", o.n).line("m", o.m).line("alpha", num(a));
  rep.line("alpha_squared", alpha_squared(o.n, o.m).get_str());
  return rep.verdict("PASS", kExitPass);
}

int cmd_range(const Options& o, std::ostream& out) {
  const IntRange r = nonexistence_range(o.m);
  Report rep(out);
  rep.line("command", "range").line("m", o.m).line("lower", r.lower).line("upper", r.upper);
  rep.line("empty", yes(r.empty()));
  return rep.verdict("PASS", kExitPass);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             std::istream& in) {
  CLI::App app{"Equiangular tight frame toolkit", "etf-forge"};
  app.require_subcommand(1);
  Options o;

  auto nm = [&](CLI::App* s) {
    s->add_option("--n", o.n, "number of vectors")->required();
    s->add_option("--m", o.m, "dimension")->required();
  };

  auto* check = app.add_subcommand("check", "verify an ETF Gram matrix");
  check->add_option("file", o.file, "matrix file or -")->required();
  nm(check);
  add_tol(check, o.tol);

  auto* sub = app.add_subcommand("subgram-test", "rank, analytic and triple sub-Gram tests");
  sub->add_option("file", o.file, "matrix file or -")->required();
  nm(sub);
  sub->add_option("--r", o.r, "deleted rows")->required();
  add_tol(sub, o.tol);
  add_rank_tol(sub, o.rank_tol);

  auto* naimark = app.add_subcommand("naimark", "Naimark complement of an ETF Gram");
  naimark->add_option("file", o.file, "matrix file or -")->required();
  nm(naimark);
  naimark->add_option("-o,--output", o.out_path, "output matrix file");
  add_tol(naimark, o.tol);

  auto* equiv = app.add_subcommand("equiv", "permutation-phase equivalence of two matrices");
  equiv->add_option("file1", o.file, "first matrix")->required();
  equiv->add_option("file2", o.file2, "second matrix")->required();
  add_tol(equiv, o.equiv_tol, 1e-8);

  auto* gen = app.add_subcommand("gen-system", "generate the polynomial system");
  gen->add_option("N", o.n, "number of vectors")->required();
  gen->add_option("M", o.m, "dimension")->required();
  gen->add_option("--dialect", o.dialect, "plain, maple or magma")
      ->check(CLI::IsMember({"plain", "maple", "magma"}));
  gen->add_option("-o,--output", o.out_path, "output file");
  gen->add_flag("--no-alpha-reduce", o.no_alpha_reduce, "keep powers of al");

  auto budget = [&](CLI::App* s) {
    s->add_option("--order", o.order, "grevlex or lex")->check(CLI::IsMember({"grevlex", "lex"}));
    s->add_option("--max-seconds", o.max_seconds, "time limit")->check(CLI::PositiveNumber);
    s->add_option("--max-basis", o.max_basis, "basis size limit")->check(CLI::PositiveNumber);
    s->add_option("--max-degree", o.max_degree, "degree limit")->check(CLI::PositiveNumber);
  };

  auto* gb = app.add_subcommand("groebner", "reduced Groebner basis of a polynomial file");
  gb->add_option("file", o.file, "polynomial file or -")->required();
  budget(gb);
  gb->add_option("--member", o.member_file, "polynomial file whose entries are tested for membership");

  auto* member = app.add_subcommand("member", "ideal membership test");
  member->add_option("file", o.file, "polynomial file or -")->required();
  member->add_option("poly", o.poly, "candidate polynomial")->required();
  budget(member);

  auto* cat = app.add_subcommand("catalog", "emit a catalog matrix");
  std::vector<std::string> names;
  for (const auto& f : families()) names.push_back(f.name);
  cat->add_option("name", o.name, "catalog entry")->required()->check(CLI::IsMember(names));
  cat->add_option("--param", o.param, "family parameter RE,IM");
  cat->add_option("-o,--output", o.out_path, "output matrix file");

  auto* s73 = app.add_subcommand("search-73", "enumerate the (7,3) sub-Gram solutions");
  s73->add_option("--threads", o.threads, "worker threads");

  auto* s83 = app.add_subcommand("search-83", "search the (8,3) near-miss configuration");
  s83->add_option("--max-seconds", o.max_seconds, "time limit")->check(CLI::PositiveNumber);
  s83->add_option("-o,--output", o.out_path, "output matrix file");
  add_rank_tol(s83, o.rank_tol);

  auto* count = app.add_subcommand("count-extensions", "count orthogonal row extensions");
  count->add_option("scenario", o.scenario, "genericA, aMinusOne or cubicOnly")->required();

  auto* welch = app.add_subcommand("welch", "Welch bound alpha(n, m)");
  welch->add_option("N", o.n, "number of vectors")->required();
  welch->add_option("M", o.m, "dimension")->required();

  auto* range = app.add_subcommand("range", "forced nonexistence range for dimension m");
  range->add_option("M", o.m, "dimension")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitError;
  }

  Io io(in);
  try {
    if (check->parsed()) return cmd_check(o, io, out);
    if (sub->parsed()) return cmd_subgram(o, io, out);
    if (naimark->parsed()) return cmd_naimark(o, io, out);
    if (equiv->parsed()) return cmd_equiv(o, io, out);
    if (gen->parsed()) return cmd_gen_system(o, out);
    if (gb->parsed()) return cmd_groebner(o, io, out);
    if (member->parsed()) return cmd_member(o, io, out);
    if (cat->parsed()) return cmd_catalog(o, out);
    if (s73->parsed()) return cmd_search73(o, out);
    if (s83->parsed()) return cmd_search83(o, out);
    if (count->parsed()) return cmd_count(o, out);
    if (welch->parsed()) return cmd_welch(o, out);
    if (range->parsed()) return cmd_range(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.code() == Errc::NotAnEtf) {
      out << "VERDICT: FAIL\n";
      return kExitFail;
    }
    out << "VERDICT: ERROR\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace etf::cli
