#include "sos/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "json.hpp"

#include "sos/chain.hpp"
#include "sos/errors.hpp"
#include "sos/partition.hpp"
#include "sos/weights.hpp"

namespace sos {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : s) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  return h;
}

/// Engine plus portable uniform draws (std distributions vary between
/// standard libraries; the 53-bit construction does not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  Complex in_box(const ParamBox& b) {
    const double re = uniform(b.re_min, b.re_max);
    return {re, uniform(b.im_min, b.im_max)};
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(seed ^ splitmix64(a)) ^ b);
}

bool passes_guards(const ModelParams& p, double tol) {
  if (first_violation(p, tol)) return false;
  for (const auto& d : sampler_extra_denominators(p))
    if (!(std::abs(std::sinh(d.argument)) > tol)) return false;
  return true;
}

double rel(Complex a, Complex b) { return relative_error(a, b); }

Complex z_brute(const ModelParams& p, const Context& ctx) {
  return z_bruteforce(p, ctx, kHardBruteCap).value;
}

Complex z_det(const ModelParams& p, const Context& ctx,
              DetNormalization norm = DetNormalization::Recursive) {
  return z_determinant(p, MForm::SumForm, norm, ctx).value;
}

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  if (n > 1 && std::is_sorted(perm.begin(), perm.end())) std::rotate(perm.begin(), perm.begin() + 1, perm.end());
  return perm;
}

template <class T>
std::vector<T> permuted(const std::vector<T>& v, const std::vector<std::size_t>& perm) {
  std::vector<T> out;
  for (const auto k : perm) out.push_back(v[k]);
  return out;
}

class Runner {
 public:
  Runner(const SuiteConfig& cfg, const Context& base, SuiteReport& report)
      : cfg_(cfg), report_(report) {
    ctx_.guard_tol = cfg.guard_tol;
    ctx_.weights = base.weights;
    ctx_.counters = base.counters;
  }

  const Context& ctx() const { return ctx_; }

  double tol(const std::string& name) const {
    auto it = cfg_.tolerances.find(name);
    if (it != cfg_.tolerances.end()) return it->second;
    return default_tolerances().at(name);
  }

  /// Runs body(params, rng) for every sample; body returns the residual.
  /// sample_n is the chain length drawn, record_n the one reported.
  template <class Body>
  void run(const std::string& name, std::size_t sample_n, std::size_t record_n, Body&& body) {
    const double t = tol(name);
    const std::uint64_t check_id = fnv1a(name);
    for (std::size_t s = 0; s < cfg_.samples_per_case; ++s) {
      CaseRecord rec;
      rec.n = record_n;
      bool done = false;
      for (std::size_t attempt = 0; attempt <= cfg_.max_rejections && !done; ++attempt) {
        const std::uint64_t draw = stream_seed(check_id, (sample_n << 32) | s, attempt);
        try {
          const ModelParams p = sample_params(cfg_, sample_n, draw);
          Rng rng(stream_seed(cfg_.seed, draw, 0x5eed));
          const double residual = body(p, rng);
          rec.report = make_report(name, residual, t, p);
          done = true;
        } catch (const NearSingular&) {
          ++report_.skipped;
        } catch (const Error&) {
          rec.report = make_report(name, std::numeric_limits<double>::infinity(), t);
          done = true;
        }
      }
      if (!done) {
        rec.report = make_report(name, std::numeric_limits<double>::infinity(), t);
      }
      rec.report.seed = cfg_.seed;
      (rec.report.passed ? report_.passed : report_.failed)++;
      report_.cases.push_back(std::move(rec));
    }
  }

  template <class Fn>
  void timed(const std::string& sub, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    report_.wall_ms[sub] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }

  const SuiteConfig& cfg() const { return cfg_; }

 private:
  const SuiteConfig& cfg_;
  SuiteReport& report_;
  Context ctx_;
};

void weights_suite(Runner& r) {
  const Context& ctx = r.ctx();
  r.run("dybe", 3, 0, [&](const ModelParams& p, Rng&) {
    return check_dybe(p.lambdas[0], p.lambdas[1], p.lambdas[2], p.theta, p.eta, 0.0, ctx).residual;
  });
  r.run("unitarity", 1, 0, [&](const ModelParams& p, Rng&) {
    return check_unitarity(p.lambdas[0], p.theta, p.eta, 0.0, ctx).residual;
  });
  r.run("reflection_equation", 2, 0, [&](const ModelParams& p, Rng&) {
    return check_reflection_equation(p.lambdas[0], p.lambdas[1], p.theta, p.eta, p.zeta, 0.0, ctx)
        .residual;
  });
  r.run("ice_rule", 1, 0, [&](const ModelParams& p, Rng&) {
    return check_ice_rule(p.lambdas[0], p.theta, p.eta, ctx).residual;
  });
  r.run("transposed_ice_rule", 1, 0, [&](const ModelParams& p, Rng&) {
    return check_transposed_ice_rule(p.lambdas[0], p.theta, p.eta, ctx).residual;
  });
  r.run("theta_reflection", 1, 0, [&](const ModelParams& p, Rng&) {
    return check_theta_reflection(p.lambdas[0], p.theta, p.eta, ctx).residual;
  });
}

void algebra_suite(Runner& r) {
  const Context& ctx = r.ctx();
  const ParamBox box = r.cfg().domain;
  for (const std::size_t n : r.cfg().n_values) {
    r.run("grading", n, n, [&](const ModelParams& p, Rng&) {
      const double bulk = check_grading(bulk_monodromy(p.lambdas[0], p, ctx), n).residual;
      const double dr = check_grading(double_row(p.lambdas[0], p, ctx), n).residual;
      return std::max(bulk, dr);
    });
    r.run("dyb_algebra", n, n, [&](const ModelParams& p, Rng& rng) {
      return check_dyb_algebra(p.lambdas[0], rng.in_box(box), p, 0.0, ctx).residual;
    });
    r.run("dynamical_reflection", n, n, [&](const ModelParams& p, Rng& rng) {
      return check_dynamical_reflection(p.lambdas[0], rng.in_box(box), p, 0.0, ctx).residual;
    });
    r.run("b_commutation", n, n, [&](const ModelParams& p, Rng& rng) {
      return check_b_commutation(p.lambdas[0], rng.in_box(box), p, 0.0, ctx).residual;
    });
    r.run("inverse_identity", n, n, [&](const ModelParams& p, Rng&) {
      return check_inverse_identity(p.lambdas[0], p, 0.0, ctx).residual;
    });
    r.run("b_crossing", n, n, [&](const ModelParams& p, Rng&) {
      return check_b_crossing(p.lambdas[0], p, 0.0, CrossingSign::Uniform, ctx).residual;
    });
    if (r.cfg().include_diagnostics) {
      r.run("diag_b_crossing_alternating", n, n, [&](const ModelParams& p, Rng&) {
        return check_b_crossing(p.lambdas[0], p, 0.0, CrossingSign::Alternating, ctx).residual;
      });
    }
  }
}

double degree_residual(const ModelParams& p, std::size_t i, ClearingFactor factor, Rng& rng,
                       const ParamBox& box, const Context& ctx) {
  const std::size_t points = 2 * p.n() + 4;
  std::vector<Complex> ws, ys;
  for (std::size_t k = 0; k < points; ++k) {
    ModelParams q = p;
    q.lambdas[i] = rng.in_box(box);
    ws.push_back(std::exp(2.0 * q.lambdas[i]));
    ys.push_back(normalized_z(q, i, z_brute(q, ctx), factor));
  }
  const std::span<const Complex> w(ws), y(ys);
  const Complex predicted = interpolate_at(w.first(points - 1), y.first(points - 1), ws.back());
  return rel(predicted, ys.back());
}

void partition_suite(Runner& r) {
  const Context& ctx = r.ctx();
  const ParamBox box = r.cfg().domain;
  const bool diag = r.cfg().include_diagnostics;
  for (const std::size_t n : r.cfg().n_values) {
    r.run("theorem", n, n, [&](const ModelParams& p, Rng&) { return rel(z_det(p, ctx), z_brute(p, ctx)); });
    if (n == 1) {
      r.run("n1_closed_form", 1, 1, [&](const ModelParams& p, Rng&) {
        const Complex closed = z_n1_closed(p.lambdas[0], p.xis[0], p.theta, p.eta, p.zeta, ctx);
        return std::max(rel(z_brute(p, ctx), closed), rel(z_det(p, ctx), closed));
      });
    }
    r.run("m_forms", n, n, [&](const ModelParams& p, Rng&) {
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          worst = std::max(worst, rel(m_entry(i, j, p, MForm::SumForm, ctx),
                                      m_entry(i, j, p, MForm::ProductForm, ctx)));
      return worst;
    });
    if (n > 1) {
      r.run("lambda_permutation", n, n, [&](const ModelParams& p, Rng& rng) {
        ModelParams q = p;
        q.lambdas = permuted(p.lambdas, random_permutation(n, rng));
        return std::max(rel(z_brute(p, ctx), z_brute(q, ctx)), rel(z_det(p, ctx), z_det(q, ctx)));
      });
      r.run("xi_permutation", n, n, [&](const ModelParams& p, Rng& rng) {
        ModelParams q = p;
        q.xis = permuted(p.xis, random_permutation(n, rng));
        return std::max(rel(z_brute(p, ctx), z_brute(q, ctx)), rel(z_det(p, ctx), z_det(q, ctx)));
      });
    }
    auto crossing = [&](bool use_det, CrossingConvention conv) {
      return [&, use_det, conv](const ModelParams& p, Rng& rng) {
        const std::size_t i = rng.below(n);
        ModelParams q = p;
        q.lambdas[i] = -p.lambdas[i] - p.eta;
        const Complex f = crossing_factor(p.lambdas[i], p, conv, ctx);
        if (use_det) return rel(z_det(q, ctx), f * z_det(p, ctx));
        return rel(z_brute(q, ctx), f * z_brute(p, ctx));
      };
    };
    r.run("crossing_brute", n, n, crossing(false, CrossingConvention::Uniform));
    r.run("crossing_det", n, n, crossing(true, CrossingConvention::Uniform));
    r.run("crossing_involution", n, n, [&](const ModelParams& p, Rng&) {
      const Complex l = p.lambdas[0];
      return rel(crossing_factor(l, p, CrossingConvention::Uniform, ctx) *
                     crossing_factor(-l - p.eta, p, CrossingConvention::Uniform, ctx),
                 1.0);
    });
    r.run("recursion_lower", n, n, [&](const ModelParams& p, Rng&) {
      ModelParams q = p;
      q.lambdas[0] = q.xis[0];
      const Complex prev = n > 1 ? z_brute(reduced_lower(q), ctx) : Complex(1.0);
      return rel(z_brute(q, ctx), recursion_rhs_lower(q, prev, ctx));
    });
    r.run("recursion_upper", n, n, [&](const ModelParams& p, Rng&) {
      ModelParams q = p;
      q.lambdas.back() = -q.xis[0];
      const Complex prev = n > 1 ? z_brute(reduced_upper(q), ctx) : Complex(1.0);
      return rel(z_brute(q, ctx), recursion_rhs_upper(q, prev, ctx));
    });
    r.run("degree_bound", n, n, [&](const ModelParams& p, Rng& rng) {
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, degree_residual(p, i, ClearingFactor::ZetaPole, rng, box, ctx));
      return worst;
    });
    if (diag) {
      r.run("diag_det_power_product", n, n, [&](const ModelParams& p, Rng&) {
        return rel(z_det(p, ctx, DetNormalization::PowerProduct), z_brute(p, ctx));
      });
      r.run("diag_crossing_alternating", n, n, crossing(false, CrossingConvention::Alternating));
      r.run("diag_degree_bound_theta_literal", n, n, [&](const ModelParams& p, Rng& rng) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          worst = std::max(worst, degree_residual(p, i, ClearingFactor::ThetaLiteral, rng, box, ctx));
        return worst;
      });
    }
  }
}

}  // namespace

std::map<std::string, double> default_tolerances() {
  return {
      {"dybe", 1e-10},
      {"unitarity", 1e-12},
      {"reflection_equation", 1e-11},
      {"ice_rule", 0.0},
      {"transposed_ice_rule", 0.0},
      {"theta_reflection", 0.0},
      {"grading", 0.0},
      {"dyb_algebra", 1e-9},
      {"dynamical_reflection", 1e-9},
      {"b_commutation", 1e-10},
      {"inverse_identity", 1e-10},
      {"b_crossing", 1e-9},
      {"diag_b_crossing_alternating", 1e-9},
      {"theorem", 1e-9},
      {"n1_closed_form", 1e-12},
      {"m_forms", 1e-11},
      {"lambda_permutation", 1e-10},
      {"xi_permutation", 1e-10},
      {"crossing_brute", 1e-9},
      {"crossing_det", 1e-10},
      {"crossing_involution", 1e-11},
      {"recursion_lower", 1e-9},
      {"recursion_upper", 1e-9},
      {"degree_bound", 1e-8},
      {"diag_det_power_product", 1e-9},
      {"diag_crossing_alternating", 1e-9},
      {"diag_degree_bound_theta_literal", 1e-8},
  };
}

SuiteConfig default_suite_config() {
  SuiteConfig cfg;
  cfg.tolerances = default_tolerances();
  return cfg;
}

void validate(const SuiteConfig& cfg) {
  if (cfg.samples_per_case == 0) throw InvariantViolation("samples_per_case must be >= 1");
  if (cfg.n_values.empty()) throw InvariantViolation("n_values is empty");
  for (const auto n : cfg.n_values)
    if (n == 0) throw InvariantViolation("n_values entries must be >= 1");
  for (const auto& [name, t] : cfg.tolerances) {
    // Structural checks are exact; everything else needs a positive tolerance.
    const bool exact = default_tolerances().count(name) && default_tolerances().at(name) == 0.0;
    if (!(t > 0.0) && !(exact && t == 0.0))
      throw InvariantViolation("tolerance for '" + name + "' must be > 0");
  }
  if (!(cfg.domain.re_min < cfg.domain.re_max) || !(cfg.domain.im_min < cfg.domain.im_max))
    throw InvariantViolation("parameter box is empty");
  if (!(cfg.guard_tol > 0.0)) throw InvariantViolation("guard_tol must be > 0");
}

std::vector<Denominator> sampler_extra_denominators(const ModelParams& p) {
  std::vector<Denominator> out;
  for (std::size_t i = 0; i < p.n(); ++i) {
    const Complex l = p.lambdas[i];
    out.push_back({"lambda-zeta+eta", l - p.zeta + p.eta});
    out.push_back({"lambda-theta-zeta+eta", l - p.theta - p.zeta + p.eta});
    out.push_back({"2*lambda+eta", 2.0 * l + p.eta});
  }
  return out;
}

ModelParams sample_params(const SuiteConfig& cfg, std::size_t n, std::uint64_t draw_index) {
  Rng rng(stream_seed(cfg.seed, n, draw_index));
  for (std::size_t attempt = 0; attempt <= cfg.max_rejections; ++attempt) {
    ModelParams p;
    p.eta = rng.in_box(cfg.domain);
    p.zeta = rng.in_box(cfg.domain);
    p.theta = rng.in_box(cfg.domain);
    for (std::size_t i = 0; i < n; ++i) p.lambdas.push_back(rng.in_box(cfg.domain));
    for (std::size_t i = 0; i < n; ++i) p.xis.push_back(rng.in_box(cfg.domain));
    if (passes_guards(p, cfg.guard_tol)) return p;
  }
  throw SamplingExhausted("no generic parameter set after " + std::to_string(cfg.max_rejections) +
                          " rejections; check the box against guard_tol");
}

Complex interpolate_at(std::span<const Complex> xs, std::span<const Complex> ys, Complex x) {
  Complex sum = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    Complex term = ys[k];
    for (std::size_t m = 0; m < xs.size(); ++m)
      if (m != k) term *= (x - xs[m]) / (xs[k] - xs[m]);
    sum += term;
  }
  return sum;
}

SuiteName parse_suite_name(const std::string& s) {
  if (s == "weights") return SuiteName::Weights;
  if (s == "algebra") return SuiteName::Algebra;
  if (s == "partition") return SuiteName::Partition;
  if (s == "all") return SuiteName::All;
  throw ParseError("unknown suite '" + s + "' (expected weights|algebra|partition|all)");
}

const char* to_string(SuiteName s) {
  switch (s) {
    case SuiteName::Weights: return "weights";
    case SuiteName::Algebra: return "algebra";
    case SuiteName::Partition: return "partition";
    case SuiteName::All: return "all";
  }
  return "?";
}

SuiteReport run_suite(SuiteName name, const SuiteConfig& cfg, const Context& ctx) {
  validate(cfg);
  SuiteReport report;
  report.suite = to_string(name);
  report.seed = cfg.seed;
  report.config = cfg;
  Runner runner(cfg, ctx, report);
  if (name == SuiteName::Weights || name == SuiteName::All)
    runner.timed("weights", [&] { weights_suite(runner); });
  if (name == SuiteName::Algebra || name == SuiteName::All)
    runner.timed("algebra", [&] { algebra_suite(runner); });
  if (name == SuiteName::Partition || name == SuiteName::All)
    runner.timed("partition", [&] { partition_suite(runner); });
  return report;
}

std::string to_json(const SuiteReport& report) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : report.cases) {
    cases.push_back({{"name", c.report.name},
                     {"n", c.n},
                     {"residual", c.report.residual},
                     {"tol", c.report.tol},
                     {"passed", c.report.passed}});
  }
  const nlohmann::json doc = {
      {"suite", report.suite},
      {"seed", report.seed},
      {"cases", std::move(cases)},
      {"summary", {{"passed", report.passed}, {"failed", report.failed}, {"skipped", report.skipped}}}};
  return doc.dump(2);
}

}  // namespace sos
