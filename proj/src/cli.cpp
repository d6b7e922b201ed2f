#include "sos/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sos/errors.hpp"
#include "sos/partition.hpp"
#include "sos/verify.hpp"

namespace sos::cli {

namespace {

using nlohmann::json;

/// Exit codes.
constexpr int kOk = 0;
constexpr int kChecksFailed = 1;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;

std::string line_context(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < std::min(byte, text.size()); ++k) {
    if (text[k] == '\n') ++line, col = 1;
    else ++col;
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Complex complex_field(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ParseError("field '" + field + "': expected [re, im] with two numbers");
  return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<Complex> complex_list(const json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError("field '" + field + "': expected an array of [re, im]");
  std::vector<Complex> out;
  for (std::size_t k = 0; k < v.size(); ++k)
    out.push_back(complex_field(v[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json result_json(const PartitionResult& r) {
  json j = {{"Z", complex_json(r.value)},
            {"method", to_string(r.method)},
            {"elapsed_ms", r.elapsed.count()},
            {"n", r.n},
            {"log_abs_Z", r.log_abs}};
  if (r.cond_hint) {
    j["cond_hint"] = *r.cond_hint;
    if (*r.cond_hint < kIllConditionedPivot) j["warning"] = "ill-conditioned elimination";
  }
  return j;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

std::string fmt_ms(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

void write_output(const std::string& text, const std::optional<std::string>& path, std::ostream& out) {
  if (!path) {
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
    return;
  }
  std::ofstream f(*path);
  if (!f) throw Error("cannot open output file '" + *path + "'");
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

double effective_guard_tol(const CliConfig& cfg) {
  const double env = guard_tol_from_env();
  return std::getenv("SOS_GUARD_TOL") ? env : cfg.guard_tol;
}

}  // namespace

ModelParams parse_params(const std::string& text, std::optional<double> guard_tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at " + line_context(text, e.byte > 0 ? e.byte - 1 : 0) + ": " +
                     e.what());
  }
  if (!doc.is_object()) throw ParseError("top level must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "eta" && key != "zeta" && key != "theta" && key != "lambdas" && key != "xis" &&
        key != "guard_tol")
      throw ParseError("unknown field '" + key + "'");
  }
  for (const char* key : {"eta", "zeta", "theta", "lambdas", "xis"})
    if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");

  ModelParams p;
  p.eta = complex_field(doc["eta"], "eta");
  p.zeta = complex_field(doc["zeta"], "zeta");
  p.theta = complex_field(doc["theta"], "theta");
  p.lambdas = complex_list(doc["lambdas"], "lambdas");
  p.xis = complex_list(doc["xis"], "xis");

  double tol = kDefaultGuardTol;
  if (doc.contains("guard_tol")) {
    if (!doc["guard_tol"].is_number() || !(doc["guard_tol"].get<double>() > 0.0))
      throw ParseError("field 'guard_tol': expected a positive number");
    tol = doc["guard_tol"].get<double>();
  }
  if (guard_tol) tol = *guard_tol;
  validate(p, tol);
  return p;
}

ModelParams load_params(const std::string& path, std::optional<double> guard_tol) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_params(ss.str(), guard_tol);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string params_to_json(const ModelParams& p) {
  json l = json::array(), x = json::array();
  for (const auto z : p.lambdas) l.push_back(complex_json(z));
  for (const auto z : p.xis) x.push_back(complex_json(z));
  return json{{"eta", complex_json(p.eta)},
              {"zeta", complex_json(p.zeta)},
              {"theta", complex_json(p.theta)},
              {"lambdas", l},
              {"xis", x}}
      .dump();
}

Complex parse_complex_pair(const std::string& text) {
  std::istringstream is(text);
  is.imbue(std::locale::classic());
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(is >> re >> comma >> im) || comma != ',' || !(is >> std::ws).eof())
    throw ParseError("expected RE,IM but got '" + text + "'");
  return {re, im};
}

std::string cmd_compute(const ModelParams& p, ComputeMethod method, std::size_t brute_cap,
                        const Context& ctx) {
  if (method == ComputeMethod::Det) return result_json(z_determinant(p, MForm::SumForm, DetNormalization::Recursive, ctx)).dump(2);
  if (method == ComputeMethod::Brute) return result_json(z_bruteforce(p, ctx, brute_cap)).dump(2);
  const PartitionResult brute = z_bruteforce(p, ctx, brute_cap);
  const PartitionResult det = z_determinant(p, MForm::SumForm, DetNormalization::Recursive, ctx);
  return json{{"results", json::array({result_json(det), result_json(brute)})},
              {"rel_diff", relative_error(det.value, brute.value)}}
      .dump(2);
}

std::string cmd_bench(std::size_t max_n, std::uint64_t seed, std::size_t brute_cap,
                      const Context& ctx) {
  if (max_n < 1) throw InvariantViolation("bench requires --max-n >= 1");
  SuiteConfig cfg = default_suite_config();
  cfg.seed = seed;
  cfg.guard_tol = ctx.guard_tol;
  std::ostringstream os;
  os << "n,t_det_ms,t_brute_ms,rel_diff\n";
  for (std::size_t n = 1; n <= max_n; ++n) {
    const ModelParams p = sample_params(cfg, n, 0);
    const PartitionResult det = z_determinant(p, MForm::SumForm, DetNormalization::Recursive, ctx);
    os << n << ',' << fmt_ms(det.elapsed.count()) << ',';
    if (n <= brute_cap) {
      const PartitionResult brute = z_bruteforce(p, ctx, brute_cap);
      os << fmt_ms(brute.elapsed.count()) << ',' << fmt_double(relative_error(det.value, brute.value));
    } else {
      os << "-,-";
    }
    os << '\n';
  }
  return os.str();
}

std::string cmd_sweep(const ModelParams& p, std::size_t vary, Complex from, Complex to,
                      std::size_t points, const Context& ctx) {
  if (vary < 1 || vary > p.n())
    throw InvariantViolation("--vary must be in 1.." + std::to_string(p.n()));
  if (points < 1) throw InvariantViolation("--points must be >= 1");
  std::ostringstream os;
  os << "lambda_re,lambda_im,z_re,z_im,status\n";
  for (std::size_t k = 0; k < points; ++k) {
    const double t = points == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(points - 1);
    ModelParams q = p;
    q.lambdas[vary - 1] = from + t * (to - from);
    os << fmt_double(q.lambdas[vary - 1].real()) << ',' << fmt_double(q.lambdas[vary - 1].imag()) << ',';
    try {
      validate(q, ctx.guard_tol);
      const Complex z = z_determinant(q, MForm::SumForm, DetNormalization::Recursive, ctx).value;
      os << fmt_double(z.real()) << ',' << fmt_double(z.imag()) << ",ok\n";
    } catch (const InvariantViolation&) {
      os << ",,skipped\n";
    } catch (const NearSingular&) {
      os << ",,skipped\n";
    }
  }
  return os.str();
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partition function of the trigonometric SOS model with a reflecting end"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::string method = "det", from = "0,0", to = "0,0";

  auto* compute = app.add_subcommand("compute", "Compute Z for a parameter file");
  compute->add_option("--config", cfg.config_path, "Parameter JSON file")->required();
  compute->add_option("--method", method, "det|brute|both")
      ->check(CLI::IsMember({"det", "brute", "both"}));
  compute->add_option("--output", cfg.output_path, "Write JSON here instead of stdout");
  compute->add_option("--cap", cfg.brute_cap, "Brute-force chain cap")->check(CLI::Range(1, 12));

  auto* verify = app.add_subcommand("verify", "Run the randomized identity suites");
  verify->add_option("--suite", cfg.suite, "weights|algebra|partition|all")
      ->check(CLI::IsMember({"weights", "algebra", "partition", "all"}));
  verify->add_option("--seed", cfg.seed, "RNG seed");
  verify->add_option("--samples", cfg.samples, "Samples per case")->check(CLI::PositiveNumber);
  verify->add_option("--max-n", cfg.max_n, "Largest chain length")->check(CLI::Range(1, 8));
  verify->add_flag("--diagnostics", cfg.diagnostics, "Also run the alternative-convention cases");
  verify->add_option("--output", cfg.output_path, "Write JSON here instead of stdout");

  auto* bench = app.add_subcommand("bench", "Time determinant vs brute force");
  bench->add_option("--max-n", cfg.max_n, "Largest N")->required()->check(CLI::PositiveNumber);
  bench->add_option("--seed", cfg.seed, "RNG seed");
  bench->add_option("--cap", cfg.brute_cap, "Brute-force chain cap")->check(CLI::Range(1, 12));
  bench->add_option("--output", cfg.output_path, "Write CSV here instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "Determinant Z along a line in one lambda");
  sweep->add_option("--config", cfg.config_path, "Parameter JSON file")->required();
  sweep->add_option("--vary", cfg.vary, "1-based index of the lambda to vary")->required();
  sweep->add_option("--from", from, "Start RE,IM")->required();
  sweep->add_option("--to", to, "End RE,IM")->required();
  sweep->add_option("--points", cfg.points, "Grid points")->required()->check(CLI::PositiveNumber);
  sweep->add_option("--output", cfg.output_path, "Write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  cfg.guard_tol = effective_guard_tol(cfg);
  Context ctx;
  ctx.guard_tol = cfg.guard_tol;

  try {
    if (*compute) {
      cfg.method = method == "det" ? ComputeMethod::Det
                   : method == "brute" ? ComputeMethod::Brute
                                       : ComputeMethod::Both;
      const ModelParams p = load_params(*cfg.config_path, cfg.guard_tol);
      write_output(cmd_compute(p, cfg.method, cfg.brute_cap, ctx), cfg.output_path, out);
      return kOk;
    }
    if (*verify) {
      SuiteConfig sc = default_suite_config();
      sc.seed = cfg.seed;
      sc.samples_per_case = cfg.samples;
      sc.n_values.clear();
      for (std::size_t n = 1; n <= cfg.max_n; ++n) sc.n_values.push_back(n);
      sc.guard_tol = cfg.guard_tol;
      sc.include_diagnostics = cfg.diagnostics;
      const SuiteReport report = run_suite(parse_suite_name(cfg.suite), sc, ctx);
      write_output(to_json(report), cfg.output_path, out);
      return report.failed == 0 ? kOk : kChecksFailed;
    }
    if (*bench) {
      write_output(cmd_bench(cfg.max_n, cfg.seed, cfg.brute_cap, ctx), cfg.output_path, out);
      return kOk;
    }
    const ModelParams p = load_params(*cfg.config_path, cfg.guard_tol);
    const std::string csv =
        cmd_sweep(p, cfg.vary, parse_complex_pair(from), parse_complex_pair(to), cfg.points, ctx);
    write_output(csv, cfg.output_path, out);
    return csv.find("skipped") == std::string::npos ? kOk : kChecksFailed;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvariantViolation& e) {
    err << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const NearSingular& e) {
    err << "near-singular: " << e.what() << '\n';
    return kNumerical;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return kNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace sos::cli
