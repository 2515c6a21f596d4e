#include "fockpsi/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "fockpsi/criteria.hpp"
#include "fockpsi/errors.hpp"
#include "fockpsi/kernel.hpp"
#include "fockpsi/linalg.hpp"
#include "fockpsi/moments.hpp"
#include "fockpsi/operators.hpp"
#include "fockpsi/parse.hpp"
#include "fockpsi/serialize.hpp"
#include "fockpsi/verify.hpp"

namespace fockpsi {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T read_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T v{};
  in >> v;
  if (in.fail() || !in.eof()) throw InputError("config key '" + key + "': bad value '" + value + "'");
  return v;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw InputError("cannot write '" + cfg.output + "'");
  f << text;
}

std::shared_ptr<const MomentTable> make_table(const RunConfig& cfg, const std::string& moments_file) {
  if (!moments_file.empty()) {
    auto t = std::make_shared<MomentTable>(moments_from_csv(read_text(moments_file), cfg.weight));
    t->validate();
    return t;
  }
  MomentOptions mo;
  mo.tol = cfg.tol;
  return std::make_shared<MomentTable>(compute_moments(parse_weight(cfg.weight), cfg.rmax, mo));
}

KernelEvaluator make_evaluator(const std::shared_ptr<const MomentTable>& table, const RunConfig& cfg) {
  KernelOptions ko;
  ko.tail_tol = cfg.tail_tol;
  ko.max_terms = std::min(cfg.max_terms, table->r_max() - cfg.n + 1);
  if (ko.max_terms < 1)
    throw InputError("moment table too short for n = " + std::to_string(cfg.n) + "; raise --rmax");
  return KernelEvaluator(table, cfg.n, ko);
}

CheckOptions check_options(const RunConfig& cfg) {
  CheckOptions co;
  co.tol = cfg.check_tol;
  co.series_tol = cfg.series_tol;
  co.defect_tol = cfg.defect_tol;
  co.samples = cfg.samples;
  co.seed = cfg.seed;
  return co;
}

std::string fixed(double v, int digits = 3) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

void print_conditions(const Verdict& v, std::ostream& out) {
  out << "  theorem: " << v.theorem << (v.necessary_only ? " (necessary conditions only)" : "")
      << "\n";
  for (const auto& c : v.conditions) {
    std::string status = c.informational ? "info" : (c.pass ? "pass" : "FAIL");
    out << "    [" << status << "] " << c.name << "  residual=" << fixed(c.residual);
    if (!c.informational) out << "  threshold=" << fixed(c.threshold, 1);
    out << "\n";
  }
  out << "  conditions hold: " << (v.conditions_pass() ? "yes" : "no")
      << "  satisfied: " << (v.satisfied ? "yes" : "no") << "\n";
}

int cmd_moments(const RunConfig& cfg, const std::string& moments_file, std::ostream& out) {
  const auto table = make_table(cfg, moments_file);
  const std::string fmt = cfg.format.empty() ? "csv" : cfg.format;
  emit(cfg, fmt == "csv" ? moments_to_csv(*table) : dump_line(to_json(*table)) + "\n", out);
  return 0;
}

int cmd_kernel(const RunConfig& cfg, const std::string& moments_file, const std::string& p_text,
               const std::string& z_text, std::ostream& out) {
  const CVector p = parse_vector(p_text), z = parse_vector(z_text);
  if (p.size() != cfg.n || z.size() != cfg.n)
    throw DimensionMismatch("--p and --z must have n = " + std::to_string(cfg.n) + " entries");
  const auto table = make_table(cfg, moments_file);
  const KernelEvaluator ev = make_evaluator(table, cfg);
  Json j = to_json(ev.kernel_series(p, z));
  j["weight"] = cfg.weight;
  j["n"] = cfg.n;
  emit(cfg, dump_line(j) + "\n", out);
  return 0;
}

int cmd_matrix(const RunConfig& cfg, const std::string& moments_file, const std::string& gamma,
               const std::string& u, std::ostream& out) {
  const AffineMap g = parse_gamma(gamma, cfg.n);
  const WeightSymbol w = parse_symbol(u, cfg.n);
  const auto table = make_table(cfg, moments_file);
  const KernelEvaluator ev = make_evaluator(table, cfg);
  Json j = to_json(truncated_matrix(w, g, ev, cfg.N));
  j["weight"] = cfg.weight;
  emit(cfg, dump_line(j) + "\n", out);
  return 0;
}

struct CheckArgs {
  std::string theorem, gamma, u, gamma2, u2;
};

int cmd_check(const RunConfig& cfg, const std::string& moments_file, const CheckArgs& a,
              std::ostream& out) {
  const CheckOptions co = check_options(cfg);
  const AffineMap g = parse_gamma(a.gamma, cfg.n);
  const auto table = make_table(cfg, moments_file);
  const KernelEvaluator ev = make_evaluator(table, cfg);
  Verdict v;
  if (a.theorem == "adjoint-pair") {
    if (a.gamma2.empty()) throw InputError("adjoint-pair needs --gamma2");
    const AffineMap g2 = parse_gamma(a.gamma2, cfg.n);
    if (a.u.empty() && a.u2.empty()) {
      v = adjoint_composition_pair(g, g2, co);
    } else {
      const WeightSymbol w1 = parse_symbol(a.u.empty() ? "1" : a.u, cfg.n);
      const WeightSymbol w2 = parse_symbol(a.u2.empty() ? "1" : a.u2, cfg.n);
      v = adjoint_weighted_pair(w1, g, w2, g2, ev, co);
    }
  } else if (a.theorem == "self-adjoint") {
    v = a.u.empty() ? is_self_adjoint_composition(g, co)
                    : self_adjoint_weighted(parse_symbol(a.u, cfg.n), g, ev, co);
  } else {
    v = a.u.empty() ? coisometry_equals_unitary_composition(g, ev, cfg.N, co)
                    : is_coisometry_weighted(parse_symbol(a.u, cfg.n), g, ev, co);
  }
  emit(cfg, dump_line(to_json(v)) + "\n", out);
  return v.conditions_pass() ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, std::ostream& out) {
  std::string text;
  bool ok = true;
  for (const auto& r : run_suite(suite, cfg.seed)) {
    text += dump_line(to_json(r)) + "\n";
    ok = ok && r.passed;
  }
  emit(cfg, text, out);
  return ok ? 0 : 1;
}

int cmd_demo(RunConfig cfg, const std::string& moments_file, std::ostream& out) {
  cfg.n = 2;
  const auto table = make_table(cfg, moments_file);
  const KernelEvaluator ev = make_evaluator(table, cfg);
  const CheckOptions co = check_options(cfg);
  std::ostringstream s;
  bool ok = true;

  // Projection onto the first coordinate: Gamma(z) = (z1, 0).
  const AffineMap proj = parse_gamma("proj11;0", 2);
  const Verdict v1 = is_self_adjoint_composition(proj, co);
  const double defect =
      defect_self_adjoint(truncated_matrix(WeightSymbol::constant(1.0), proj, ev, cfg.N));
  s << "Composition with Gamma(z) = (z1, 0) on C^2, weight " << cfg.weight << "\n";
  print_conditions(v1, s);
  s << "  ||C|| = " << fixed(proj.operator_norm(), 6) << "\n";
  s << "  truncated self-adjoint defect (N = " << cfg.N << "): " << fixed(defect) << "\n\n";
  ok = ok && v1.satisfied && defect <= 1e-12;

  // Non-Hermitian C whose series balance holds because both inner products vanish.
  const AffineMap skew = parse_gamma("0,0.5;-0.5,0|1,0", 2);
  const CVector d = skew.shift();
  const WeightSymbol u = WeightSymbol::kernel_multiple(1.0, d);
  const Verdict v2 = self_adjoint_weighted(u, skew, ev, co);
  const CMatrix& c = skew.linear_part();
  const CVector cinv_d = checked_inverse(c) * d;
  const CVector cadj_inv_d = checked_inverse(c.adjoint()) * d;
  const double norm = operator_norm(c);
  s << "Weighted composition with C = [[0, 1/2], [-1/2, 0]], D = (1, 0), U = K_D\n";
  print_conditions(v2, s);
  auto vec = [](const CVector& v) {
    std::ostringstream o;
    o << "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) o << (i ? ", " : "") << v(i).real();
    o << ")";
    return o.str();
  };
  s << "  C^{-1} D = " << vec(cinv_d) << "   (C^*)^{-1} D = " << vec(cadj_inv_d) << "\n";
  s << "  <C^{-1} D, D> = " << fixed(std::abs(inner(cinv_d, d)))
    << "   <(C^*)^{-1} D, D> = " << fixed(std::abs(inner(cadj_inv_d, d))) << "\n";
  s << "  ||C||^2 = " << fixed(norm * norm, 6) << " (<= 1/2: " << (norm * norm <= 0.5 ? "yes" : "no")
    << ")\n";
  s << "  max|C - C^*| = " << fixed(max_abs_entry(c - c.adjoint()), 6) << "\n";
  ok = ok && v2.conditions_pass() && inner(cinv_d, d) == Complex{} &&
       inner(cadj_inv_d, d) == Complex{} && norm * norm <= 0.5;

  emit(cfg, s.str(), out);
  return ok ? 0 : 1;
}

// Pre-scan for --config so file values become defaults that flags override.
std::string find_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return "";
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  const std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters = {
      {"weight", [&](auto&, auto& v) { cfg.weight = v; }},
      {"n", [&](auto& k, auto& v) { cfg.n = read_number<int>(k, v); }},
      {"N", [&](auto& k, auto& v) { cfg.N = read_number<int>(k, v); }},
      {"rmax", [&](auto& k, auto& v) { cfg.rmax = read_number<int>(k, v); }},
      {"tol", [&](auto& k, auto& v) { cfg.tol = read_number<double>(k, v); }},
      {"check_tol", [&](auto& k, auto& v) { cfg.check_tol = read_number<double>(k, v); }},
      {"series_tol", [&](auto& k, auto& v) { cfg.series_tol = read_number<double>(k, v); }},
      {"defect_tol", [&](auto& k, auto& v) { cfg.defect_tol = read_number<double>(k, v); }},
      {"tail_tol", [&](auto& k, auto& v) { cfg.tail_tol = read_number<double>(k, v); }},
      {"max_terms", [&](auto& k, auto& v) { cfg.max_terms = read_number<int>(k, v); }},
      {"samples", [&](auto& k, auto& v) { cfg.samples = read_number<int>(k, v); }},
      {"seed", [&](auto& k, auto& v) { cfg.seed = read_number<std::uint64_t>(k, v); }},
      {"output", [&](auto&, auto& v) { cfg.output = v; }},
      {"format", [&](auto&, auto& v) { cfg.format = v; }},
  };
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw InputError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    it->second(key, value);
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) { return parse_config(read_text(path)); }

void validate(const RunConfig& cfg) {
  auto positive = [](bool ok, const char* what) {
    if (!ok) throw InputError(std::string(what) + " must be positive");
  };
  positive(cfg.n >= 1, "n");
  positive(cfg.N >= 1, "N");
  positive(cfg.rmax >= 1, "rmax");
  positive(cfg.tol > 0, "tol");
  positive(cfg.check_tol > 0, "check_tol");
  positive(cfg.series_tol > 0, "series_tol");
  positive(cfg.defect_tol > 0, "defect_tol");
  positive(cfg.tail_tol > 0, "tail_tol");
  positive(cfg.max_terms >= 1, "max_terms");
  positive(cfg.samples >= 1, "samples");
  if (!cfg.format.empty() && cfg.format != "csv" && cfg.format != "json")
    throw InputError("format must be csv or json");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fock-type space moments, kernels, operator matrices and adjoint/co-isometry checks",
               "fockpsi"};
  app.require_subcommand(1);
  app.footer(
      "Moments CSV columns: r, c_r (moment), err_r (estimated absolute quadrature error).\n"
      "Gamma literal: \"a,b;c,d|d1,d2\" (rows ';', entries ','; shift after '|'),\n"
      "  named matrices I, 0, projKK, e.g. \"proj11;0\".\n"
      "U literal: 0 | c | kernel:ALPHA@q1,q2 | poly:COEF@e1,e2;COEF@e1,e2.\n"
      "Exit codes: 0 success, 1 failed verdict/threshold/numerics, 2 usage error.");

  RunConfig cfg;
  std::string moments_file, config_file, p_text, z_text, suite = "default";
  CheckArgs ca;

  try {
    const std::string cfg_path = find_config(args);
    if (!cfg_path.empty()) cfg = load_config(cfg_path);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "key=value config file");
    sub->add_option("--weight", cfg.weight, "linear | linear:a | linear-quadratic | poly:c0,c1,...");
    sub->add_option("--rmax", cfg.rmax, "highest moment index");
    sub->add_option("--tol", cfg.tol, "moment quadrature tolerance");
    sub->add_option("--moments", moments_file, "read moments from a CSV file instead of computing");
    sub->add_option("--output,-o", cfg.output, "write to file instead of standard output");
  };
  auto kernel_opts = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "dimension of C^n");
    sub->add_option("--tail-tol", cfg.tail_tol, "kernel series tail tolerance");
    sub->add_option("--max-terms", cfg.max_terms, "kernel series term budget");
  };

  auto* moments = app.add_subcommand("moments", "tabulate c_r = int_0^inf s^r exp(-psi(s)) ds");
  common(moments);
  moments->add_option("--format", cfg.format, "csv (default) or json");

  auto* kernel = app.add_subcommand("kernel", "evaluate K_p(z) with its tail bound");
  common(kernel);
  kernel_opts(kernel);
  kernel->add_option("--p", p_text, "kernel point p, comma separated")->required();
  kernel->add_option("--z", z_text, "evaluation point z, comma separated")->required();

  auto* matrix = app.add_subcommand("matrix", "truncated matrix of C_{U,Gamma}");
  common(matrix);
  kernel_opts(matrix);
  matrix->add_option("--N", cfg.N, "truncation degree");
  matrix->add_option("--gamma", ca.gamma, "affine symbol Gamma")->required();
  matrix->add_option("--u", ca.u, "multiplier U (default 1)");

  auto* check = app.add_subcommand("check", "decide adjoint / self-adjoint / co-isometry conditions");
  common(check);
  kernel_opts(check);
  check->add_option("--theorem", ca.theorem, "adjoint-pair | self-adjoint | coisometry")
      ->required()
      ->check(CLI::IsMember({"adjoint-pair", "self-adjoint", "coisometry"}));
  check->add_option("--gamma", ca.gamma, "affine symbol Gamma (Gamma_1 for adjoint-pair)")->required();
  check->add_option("--u", ca.u, "multiplier U; omit for plain composition");
  check->add_option("--gamma2", ca.gamma2, "second affine symbol (adjoint-pair)");
  check->add_option("--u2", ca.u2, "second multiplier (adjoint-pair)");
  check->add_option("--N", cfg.N, "truncation degree for matrix confirmation");
  check->add_option("--tol-check", cfg.check_tol, "tolerance for algebraic conditions");
  check->add_option("--series-tol", cfg.series_tol, "tolerance for kernel-series conditions");
  check->add_option("--samples", cfg.samples, "sample points for functional identities");
  check->add_option("--seed", cfg.seed, "sampling seed");

  auto* verify = app.add_subcommand("verify", "run oracle suites, one JSON line per report");
  verify->add_option("--config", config_file, "key=value config file");
  verify->add_option("--suite", suite, "default | kernel | operators")
      ->check(CLI::IsMember({"default", "kernel", "operators"}));
  verify->add_option("--seed", cfg.seed, "base seed");
  verify->add_option("--output,-o", cfg.output, "write to file instead of standard output");

  auto* demo = app.add_subcommand("demo", "reproduce the two worked examples with condition tables");
  common(demo);
  demo->add_option("--N", cfg.N, "truncation degree");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    validate(cfg);
    if (moments->parsed()) return cmd_moments(cfg, moments_file, out);
    if (kernel->parsed()) return cmd_kernel(cfg, moments_file, p_text, z_text, out);
    if (matrix->parsed()) return cmd_matrix(cfg, moments_file, ca.gamma, ca.u.empty() ? "1" : ca.u, out);
    if (check->parsed()) return cmd_check(cfg, moments_file, ca, out);
    if (verify->parsed()) return cmd_verify(cfg, suite, out);
    return cmd_demo(cfg, moments_file, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fockpsi
