// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.
//
// End-to-end tests of the command line binary. The test runner exports
// NATCONN_CLI_BIN with the binary path; every invocation goes through
// std::system with stdout and stderr captured to scratch files.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "natconn/connections.hpp"
#include "natconn/metric.hpp"
#include "natconn/structure_gen.hpp"
#include "natconn/tensor_file.hpp"

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("NATCONN_CLI_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "NATCONN_CLI_BIN not set");
  const std::string cmd = std::string("\"") + bin + "\" " + args +
                          " > cli_stdout.tmp 2> cli_stderr.tmp";
  const int status = std::system(cmd.c_str());
  RunResult r;
  REQUIRE(WIFEXITED(status));
  r.exit_code = WEXITSTATUS(status);
  r.out = slurp("cli_stdout.tmp");
  r.err = slurp("cli_stderr.tmp");
  return r;
}

struct DiagFixture {
  int dim;
  natconn::Metric g;
  natconn::ProductStructure p;
  natconn::Covector theta;

  explicit DiagFixture(int d)
      : dim(d),
        g(Eigen::MatrixXd::Identity(d, d)),
        p(split_diag(d), g),
        theta(natconn::Covector::Zero(d)) {
    theta(0) = 1.0;
  }

  static Eigen::MatrixXd split_diag(int d) {
    Eigen::VectorXd v(d);
    v.head(d / 2).setOnes();
    v.tail(d / 2).setConstant(-1.0);
    return v.asDiagonal();
  }
};

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("classify reports the display class of a trace-form tensor") {
    const DiagFixture fx(4);
    natconn::TensorFile tf;
    tf.dim = fx.dim;
    tf.g = fx.g.components();
    tf.p = fx.p.components();
    tf.f = natconn::make_w1_f(fx.g, fx.p, fx.theta);
    natconn::write_tensor_file(tf, "cli_w1.json");

    const RunResult r = run_cli("classify --in cli_w1.json");
    CHECK(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("command") == "classify");
    CHECK(rep.at("report").at("verdict") == "W1");
    CHECK(rep.at("report").at("residual_w1").get<double>() < 1e-10);
    std::remove("cli_w1.json");
  }

  TEST_CASE("classify exit codes distinguish parse and value errors") {
    // non-symmetric g parses fine but fails metric validation: exit 3
    DiagFixture fx(4);
    natconn::TensorFile tf;
    tf.dim = fx.dim;
    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(4, 4);
    bad(0, 1) = 0.5;
    tf.g = bad;
    tf.p = fx.p.components();
    tf.f = natconn::Tensor3(4);
    natconn::write_tensor_file(tf, "cli_bad_g.json");
    CHECK(run_cli("classify --in cli_bad_g.json").exit_code == 3);
    std::remove("cli_bad_g.json");

    // malformed JSON: exit 2
    {
      std::ofstream out("cli_broken.json");
      out << "{ this is not json\n";
    }
    CHECK(run_cli("classify --in cli_broken.json").exit_code == 2);
    std::remove("cli_broken.json");

    // missing required flag and missing file: exit 2
    CHECK(run_cli("classify").exit_code == 2);
    CHECK(run_cli("classify --in cli_no_such_file.json").exit_code == 2);
  }

  TEST_CASE("decompose labels the canonical torsion as case A") {
    const DiagFixture fx(4);
    natconn::TensorFile tf;
    tf.dim = fx.dim;
    tf.g = fx.g.components();
    tf.p = fx.p.components();
    tf.t = natconn::w1_canonical_torsion(fx.g, fx.p, fx.theta);
    natconn::write_tensor_file(tf, "cli_canon.json");

    const RunResult r = run_cli("decompose --in cli_canon.json");
    CHECK(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("report").at("case") == "A");
    const auto norms = rep.at("report").at("component_norms");
    CHECK(norms[0].get<double>() > 0.1);
    CHECK(norms[1].get<double>() < 1e-12);
    CHECK(norms[2].get<double>() < 1e-12);
    CHECK(norms[3].get<double>() < 1e-12);
    std::remove("cli_canon.json");
  }

  TEST_CASE("decompose rejects a tensor without torsion antisymmetry") {
    const DiagFixture fx(4);
    natconn::TensorFile tf;
    tf.dim = fx.dim;
    tf.g = fx.g.components();
    tf.p = fx.p.components();
    tf.t = natconn::random_tensor3(4, 11);  // no antisymmetrization
    natconn::write_tensor_file(tf, "cli_bad_t.json");
    CHECK(run_cli("decompose --in cli_bad_t.json").exit_code == 3);
    std::remove("cli_bad_t.json");
  }

  TEST_CASE("family at generic parameters lands in case B") {
    const RunResult r = run_cli("family --lambda 1 --mu 0 --n 2");
    CHECK(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("report").at("natural") == true);
    CHECK(rep.at("report").at("decomposition").at("case") == "B");
  }

  TEST_CASE("family at the special parameters reproduces the canonical file") {
    const RunResult r = run_cli(
        "family --lambda 0 --mu -0.125 --n 2 --out cli_family_out.json");
    CHECK(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("report").at("decomposition").at("case") == "A");

    const DiagFixture fx(4);
    natconn::TensorFile ref;
    ref.dim = fx.dim;
    ref.g = fx.g.components();
    ref.p = fx.p.components();
    ref.theta = fx.theta;
    ref.t = natconn::w1_canonical_torsion(fx.g, fx.p, fx.theta);
    natconn::write_tensor_file(ref, "cli_family_ref.json");

    CHECK(slurp("cli_family_out.json") == slurp("cli_family_ref.json"));
    std::remove("cli_family_out.json");
    std::remove("cli_family_ref.json");
  }

  TEST_CASE("family with a zero covector degenerates to the zero torsion") {
    const RunResult r =
        run_cli("family --lambda 1 --mu 1 --n 2 --theta 0,0,0,0");
    CHECK(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("report").at("torsion_norm").get<double>() == 0.0);
    CHECK(rep.at("report").at("decomposition").at("case") == "other");
  }

  TEST_CASE("verify passes at practical tolerances and sizes") {
    const RunResult r = run_cli("verify --dims 4 --trials 3 --seed 1");
    CHECK(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("all_passed") == true);
    CHECK(rep.at("properties").size() > 20);
  }

  TEST_CASE("verify handles the degenerate minimal dimension") {
    const RunResult r = run_cli("verify --dims 2 --trials 2 --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out).at("all_passed") == true);
  }

  TEST_CASE("verify fails loudly at an unreachable tolerance") {
    const RunResult r =
        run_cli("verify --dims 4 --trials 1 --seed 1 --tol 1e-30");
    CHECK(r.exit_code == 1);
    const json rep = json::parse(r.out);
    CHECK(rep.at("all_passed") == false);
    CHECK(r.err.find("failing properties:") != std::string::npos);
  }

  TEST_CASE("verify rejects odd dimensions") {
    CHECK(run_cli("verify --dims 5").exit_code == 2);
  }

  TEST_CASE("chart verdicts for the three built-in charts") {
    const RunResult flat = run_cli("chart --chart flat_product");
    CHECK(flat.exit_code == 0);
    CHECK(json::parse(flat.out)
              .at("report")
              .at("classification")
              .at("verdict") == "W0");

    const RunResult conf = run_cli("chart --chart conformal_product");
    CHECK(conf.exit_code == 0);
    const json crep = json::parse(conf.out);
    CHECK(crep.at("report").at("classification").at("verdict") == "W1");
    const auto& fd = crep.at("report").at("natural_connection_fd");
    CHECK(fd.at("torsion") == "canonical");
    CHECK(fd.at("residual_g").get<double>() < 1e-4);
    CHECK(fd.at("residual_p").get<double>() < 1e-4);

    const RunResult rot = run_cli("chart --chart rotated_p");
    CHECK(rot.exit_code == 0);
    CHECK(json::parse(rot.out)
              .at("report")
              .at("classification")
              .at("verdict") == "outside W1+W2");

    CHECK(run_cli("chart --chart bogus").exit_code == 2);
    CHECK(run_cli("chart --chart flat_product --point 1,2").exit_code == 2);
  }

  TEST_CASE("chart --out writes a classifiable tensor file") {
    const RunResult r = run_cli(
        "chart --chart conformal_product --out cli_chart_f.json");
    CHECK(r.exit_code == 0);
    const RunResult c =
        run_cli("classify --in cli_chart_f.json --tol 1e-6");
    CHECK(c.exit_code == 0);
    CHECK(json::parse(c.out).at("report").at("verdict") == "W1");
    std::remove("cli_chart_f.json");
  }

  TEST_CASE("stdout is byte identical across reruns") {
    const std::string args = "family --lambda 0.25 --mu -0.5 --n 3";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());

    const RunResult v1 = run_cli("verify --dims 2,4 --trials 2 --seed 9");
    const RunResult v2 = run_cli("verify --dims 2,4 --trials 2 --seed 9");
    CHECK(v1.exit_code == 0);
    CHECK(v1.out == v2.out);
  }
}
