#include <gtest/gtest.h>

#include <set>

#include "json.hpp"
#include "sos/errors.hpp"
#include "sos/verify.hpp"
#include "sos/weights.hpp"

namespace sos {
namespace {

FaceWeightSet flipped_c_plus(Complex lambda, Complex theta, Complex eta, double tol) {
  FaceWeightSet w = face_weights(lambda, theta, eta, tol);
  w.c_plus = -w.c_plus;
  return w;
}

SuiteConfig small_config() {
  SuiteConfig cfg = default_suite_config();
  cfg.samples_per_case = 4;
  cfg.n_values = {1, 2};
  return cfg;
}

TEST(Sampler, DeterministicPerIndex) {
  const SuiteConfig cfg = default_suite_config();
  EXPECT_EQ(sample_params(cfg, 3, 7), sample_params(cfg, 3, 7));
  EXPECT_FALSE(sample_params(cfg, 3, 7) == sample_params(cfg, 3, 8));
  SuiteConfig other = cfg;
  other.seed = 43;
  EXPECT_FALSE(sample_params(cfg, 3, 7) == sample_params(other, 3, 7));
}

TEST(Sampler, DrawsAreGenericAndInsideTheBox) {
  const SuiteConfig cfg = default_suite_config();
  for (std::uint64_t k = 0; k < 50; ++k) {
    const ModelParams p = sample_params(cfg, 3, k);
    ASSERT_EQ(p.n(), 3u);
    EXPECT_FALSE(first_violation(p, cfg.guard_tol).has_value());
    for (const auto& d : sampler_extra_denominators(p))
      EXPECT_GT(std::abs(std::sinh(d.argument)), cfg.guard_tol) << d.label;
    for (Complex z : p.lambdas) {
      EXPECT_GE(z.real(), cfg.domain.re_min);
      EXPECT_LE(z.real(), cfg.domain.re_max);
      EXPECT_GE(z.imag(), cfg.domain.im_min);
      EXPECT_LE(z.imag(), cfg.domain.im_max);
    }
  }
}

TEST(Sampler, ExhaustionIsReported) {
  SuiteConfig cfg = default_suite_config();
  cfg.guard_tol = 1e6;
  cfg.max_rejections = 5;
  EXPECT_THROW(sample_params(cfg, 1, 0), SamplingExhausted);
}

TEST(SuiteConfig, Validation) {
  SuiteConfig cfg = default_suite_config();
  EXPECT_NO_THROW(validate(cfg));
  cfg.samples_per_case = 0;
  EXPECT_THROW(validate(cfg), InvariantViolation);
  cfg = default_suite_config();
  cfg.tolerances["dybe"] = -1.0;
  EXPECT_THROW(validate(cfg), InvariantViolation);
  cfg = default_suite_config();
  cfg.n_values.clear();
  EXPECT_THROW(validate(cfg), InvariantViolation);
}

TEST(Interpolation, ReproducesPolynomial) {
  auto f = [](Complex x) { return Complex(2, 1) * x * x * x - Complex(0, 3) * x + 1.0; };
  std::vector<Complex> xs{{0.1, 0}, {0.5, 0.2}, {-0.3, 0.4}, {1.1, -0.2}};
  std::vector<Complex> ys;
  for (Complex x : xs) ys.push_back(f(x));
  const Complex at{0.7, 0.9};
  EXPECT_LT(std::abs(interpolate_at(xs, ys, at) - f(at)), 1e-12);
}

TEST(SuiteNames, RoundTrip) {
  for (SuiteName s : {SuiteName::Weights, SuiteName::Algebra, SuiteName::Partition, SuiteName::All})
    EXPECT_EQ(parse_suite_name(to_string(s)), s);
  EXPECT_THROW(parse_suite_name("nope"), Error);
}

TEST(RunSuite, WeightsPassAndStayVertexLocal) {
  OpCounters counters;
  Context ctx;
  ctx.counters = &counters;
  const SuiteReport r = run_suite(SuiteName::Weights, small_config(), ctx);
  EXPECT_EQ(r.failed, 0u);
  EXPECT_GT(r.passed, 0u);
  EXPECT_GT(counters.r_matrices.load(), 0u);
  EXPECT_EQ(counters.chain_operators.load(), 0u);
  for (const auto& c : r.cases) EXPECT_EQ(c.n, 0u);
}

TEST(RunSuite, AlgebraAndPartitionPass) {
  for (SuiteName s : {SuiteName::Algebra, SuiteName::Partition}) {
    const SuiteReport r = run_suite(s, small_config());
    EXPECT_EQ(r.failed, 0u) << to_string(s);
    for (const auto& c : r.cases)
      EXPECT_TRUE(c.report.passed) << c.report.name << " n=" << c.n << " res=" << c.report.residual;
  }
}

TEST(RunSuite, DiagnosticsFlagAlternativeConventions) {
  SuiteConfig cfg = small_config();
  cfg.include_diagnostics = true;
  const SuiteReport r = run_suite(SuiteName::Partition, cfg);
  std::set<std::string> failing;
  for (const auto& c : r.cases)
    if (!c.report.passed) failing.insert(c.report.name);
  EXPECT_TRUE(failing.count("diag_det_power_product"));
  EXPECT_TRUE(failing.count("diag_crossing_alternating"));
  EXPECT_TRUE(failing.count("diag_degree_bound_theta_literal"));
  for (const auto& name : failing) EXPECT_EQ(name.rfind("diag_", 0), 0u) << name;
}

TEST(RunSuite, CorruptedWeightIsCaught) {
  Context ctx;
  ctx.weights = &flipped_c_plus;
  SuiteConfig cfg = small_config();
  const SuiteReport w = run_suite(SuiteName::Weights, cfg, ctx);
  bool dybe_failed = false;
  for (const auto& c : w.cases)
    if (c.report.name == "dybe" && !c.report.passed) dybe_failed = true;
  EXPECT_TRUE(dybe_failed);

  const SuiteReport p = run_suite(SuiteName::Partition, cfg, ctx);
  bool theorem_failed = false;
  for (const auto& c : p.cases)
    if (c.report.name == "theorem" && !c.report.passed) theorem_failed = true;
  EXPECT_TRUE(theorem_failed);
}

TEST(Json, ByteIdenticalAndWellFormed) {
  const SuiteConfig cfg = small_config();
  const std::string a = to_json(run_suite(SuiteName::All, cfg));
  const std::string b = to_json(run_suite(SuiteName::All, cfg));
  EXPECT_EQ(a, b);
  const auto doc = nlohmann::json::parse(a);
  EXPECT_EQ(doc.at("seed").get<std::uint64_t>(), 42u);
  EXPECT_EQ(doc.at("suite").get<std::string>(), "all");
  ASSERT_FALSE(doc.at("cases").empty());
  for (const auto& c : doc.at("cases")) {
    for (const char* key : {"name", "n", "residual", "tol", "passed"}) EXPECT_TRUE(c.contains(key)) << key;
  }
  for (const char* key : {"passed", "failed", "skipped"}) EXPECT_TRUE(doc.at("summary").contains(key));
}

}  // namespace
}  // namespace sos
