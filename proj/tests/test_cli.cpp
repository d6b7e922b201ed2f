#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sos/cli.hpp"
#include "sos/errors.hpp"
#include "sos/partition.hpp"
#include "sos/verify.hpp"

namespace sos::cli {
namespace {

using nlohmann::json;

const char* kN1 =
    R"({"eta":[0.7,0],"zeta":[1.1,0],"theta":[0.9,0],"lambdas":[[0.3,0]],"xis":[[0.2,0]]})";

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("sos_cli_test_" + name);
  std::ofstream(path) << text;
  return path;
}

int run_args(std::vector<std::string> args, std::string& out_text, std::string& err_text) {
  args.insert(args.begin(), "sos");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  out_text = out.str();
  err_text = err.str();
  return code;
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

TEST(ParseParams, AcceptsSchemaExample) {
  const ModelParams p = parse_params(kN1);
  EXPECT_EQ(p.n(), 1u);
  EXPECT_EQ(p.eta, Complex(0.7, 0));
  EXPECT_EQ(p.xis[0], Complex(0.2, 0));
}

TEST(ParseParams, RejectsLengthMismatch) {
  const std::string text =
      R"({"eta":[0.7,0],"zeta":[1.1,0],"theta":[0.9,0],"lambdas":[[0.3,0],[0.1,0.2]],"xis":[[0.2,0]]})";
  EXPECT_THROW(parse_params(text), InvariantViolation);
}

TEST(ParseParams, NamesTheFailedGuard) {
  const std::string text =
      R"({"eta":[0.7,0],"zeta":[1.1,0],"theta":[0.9,0],"lambdas":[[-1.1,0]],"xis":[[0.2,0]]})";
  try {
    parse_params(text);
    FAIL() << "expected InvariantViolation";
  } catch (const InvariantViolation& e) {
    EXPECT_NE(std::string(e.what()).find("zeta"), std::string::npos) << e.what();
  }
}

TEST(ParseParams, MalformedJsonReportsLocation) {
  try {
    parse_params("{\"eta\": [0.7, 0],\n \"zeta\": [1.1 0]}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_params(R"({"eta":"0.7","zeta":[1.1,0],"theta":[0.9,0],"lambdas":[],"xis":[]})"),
               ParseError);
  EXPECT_THROW(parse_params(R"({"eta":[0.7,0],"zeta":[1.1,0],"theta":[0.9,0],"lambdas":[[0.3,0]],"xis":[[0.2,0]],"extra":1})"),
               ParseError);
}

TEST(ParseParams, RoundTrip) {
  const ModelParams p = sample_params(default_suite_config(), 4, 11);
  EXPECT_EQ(parse_params(params_to_json(p)), p);
}

TEST(ParseComplexPair, Formats) {
  EXPECT_EQ(parse_complex_pair("0.5,-1.25"), Complex(0.5, -1.25));
  EXPECT_THROW(parse_complex_pair("0.5"), ParseError);
  EXPECT_THROW(parse_complex_pair("a,b"), ParseError);
}

TEST(Compute, BothAgreeAtNOne) {
  const json doc = json::parse(cmd_compute(parse_params(kN1), ComputeMethod::Both, 8));
  EXPECT_LT(doc.at("rel_diff").get<double>(), 1e-12);
  ASSERT_EQ(doc.at("results").size(), 2u);
  EXPECT_EQ(doc.at("results")[0].at("method").get<std::string>(), "det");
}

TEST(Compute, BothAgreeAtNThree) {
  const ModelParams p = sample_params(default_suite_config(), 3, 99);
  const json doc = json::parse(cmd_compute(p, ComputeMethod::Both, 8));
  EXPECT_LT(doc.at("rel_diff").get<double>(), 1e-9);
}

TEST(Compute, LargeNDeterminantOnly) {
  const ModelParams p = sample_params(default_suite_config(), 50, 0);
  const json doc = json::parse(cmd_compute(p, ComputeMethod::Det, 8));
  EXPECT_LT(doc.at("elapsed_ms").get<double>(), 100.0);
  EXPECT_EQ(doc.at("Z").size(), 2u);
  EXPECT_THROW(cmd_compute(p, ComputeMethod::Brute, 8), CapExceeded);
}

void expect_bench_rows(std::uint64_t seed, double tol) {
  const std::string csv = cmd_bench(6, seed, 8);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,t_det_ms,t_brute_ms,rel_diff");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    const double rel = std::stod(line.substr(line.rfind(',') + 1));
    EXPECT_LT(rel, tol) << "seed " << seed << ": " << line;
  }
  EXPECT_EQ(rows, 6u);
}

TEST(Bench, RowsAgree) {
  expect_bench_rows(1, 1e-9);
  // The seed-42 draw at n = 5 has |sinh theta| = 0.024 and |Z| ~ 1e33; the
  // brute-force sum cancels about seven digits there.
  expect_bench_rows(42, 1e-8);
}

TEST(Bench, BruteColumnsBlankAboveCap) {
  const std::string csv = cmd_bench(4, 42, 2);
  EXPECT_NE(csv.find("\n3,"), std::string::npos);
  EXPECT_NE(csv.find(",-,-\n"), std::string::npos);
}

TEST(Sweep, ShapeAndSkippedRows) {
  const ModelParams p = sample_params(default_suite_config(), 2, 3);
  const std::string csv = cmd_sweep(p, 1, {-0.4, 0.1}, {0.6, 0.3}, 10);
  EXPECT_EQ(count_lines(csv), 11u);
  EXPECT_EQ(csv.find("skipped"), std::string::npos);

  const std::string hit = cmd_sweep(p, 2, -p.zeta, -p.zeta, 1);
  EXPECT_NE(hit.find(",,skipped"), std::string::npos);
}

TEST(Sweep, GridFeedsDegreeCheck) {
  // Interpolating the normalized grid values predicts an extra point.
  const ModelParams p = sample_params(default_suite_config(), 2, 4);
  const std::size_t pts = 2 * p.n() + 4;
  std::vector<Complex> ws, ys;
  for (std::size_t k = 0; k < pts; ++k) {
    const Complex l(-0.8 + 0.15 * static_cast<double>(k), 0.5 - 0.09 * static_cast<double>(k));
    const std::string csv = cmd_sweep(p, 1, l, l, 1);
    const auto row = csv.substr(csv.find('\n') + 1);
    std::istringstream in(row);
    std::string f[5];
    for (auto& s : f) std::getline(in, s, ',');
    ASSERT_EQ(f[4].substr(0, 2), "ok");
    ModelParams q = p;
    q.lambdas[0] = l;
    ws.push_back(std::exp(2.0 * l));
    ys.push_back(normalized_z(q, 0, Complex(std::stod(f[2]), std::stod(f[3]))));
  }
  const Complex pred = interpolate_at(std::span<const Complex>(ws).first(pts - 1),
                                      std::span<const Complex>(ys).first(pts - 1), ws.back());
  EXPECT_LT(relative_error(pred, ys.back()), 1e-8);
}

TEST(Run, ExitCodes) {
  std::string out, err;
  const auto cfg = write_temp("n1.json", kN1).string();
  EXPECT_EQ(run_args({"compute", "--config", cfg, "--method", "both"}, out, err), 0);
  EXPECT_LT(json::parse(out).at("rel_diff").get<double>(), 1e-12);

  const auto big = write_temp("n9.json", params_to_json(sample_params(default_suite_config(), 9, 0))).string();
  EXPECT_EQ(run_args({"compute", "--config", big, "--method", "brute"}, out, err), 3);
  EXPECT_NE(err.find("cap"), std::string::npos);

  const auto bad = write_temp("bad.json", "{\"eta\": [0.7,").string();
  EXPECT_EQ(run_args({"compute", "--config", bad}, out, err), 2);
  EXPECT_EQ(run_args({"compute"}, out, err), 2);
  EXPECT_EQ(run_args({"frobnicate"}, out, err), 2);

  EXPECT_EQ(run_args({"verify", "--suite", "weights", "--samples", "3"}, out, err), 0);
  EXPECT_EQ(json::parse(out).at("summary").at("failed").get<int>(), 0);

  EXPECT_EQ(run_args({"sweep", "--config", cfg, "--vary", "1", "--from", "-1.1,0", "--to", "-1.1,0",
                      "--points", "1"},
                     out, err),
            1);
  EXPECT_EQ(run_args({"bench", "--max-n", "3"}, out, err), 0);
  EXPECT_EQ(count_lines(out), 4u);
}

TEST(Run, OutputFile) {
  std::string out, err;
  const auto cfg = write_temp("n1b.json", kN1).string();
  const auto dest = std::filesystem::temp_directory_path() / "sos_cli_test_out.json";
  std::filesystem::remove(dest);
  ASSERT_EQ(run_args({"compute", "--config", cfg, "--output", dest.string()}, out, err), 0);
  std::ifstream in(dest);
  const json doc = json::parse(in);
  EXPECT_EQ(doc.at("method").get<std::string>(), "det");
}

}  // namespace
}  // namespace sos::cli
