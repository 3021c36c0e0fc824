// Distributed under the Apache License, Version 2.0.
// See the accompanying file LICENSE for details.
//
// Command-line front end. Subcommands:
//   classify   class membership report for a structure tensor file
//   decompose  torsion component norms, completeness residual, case label
//   family     two-parameter torsion family member, decomposed
//   verify     full property suite at requested sizes
//   chart      finite-difference coordinate chart reports
//
// stdout carries exactly one JSON report; everything else goes to
// stderr. Exit codes: 0 success, 1 failed verification property,
// 2 usage or parse error, 3 mathematically invalid input.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "natconn/chart.hpp"
#include "natconn/classifier.hpp"
#include "natconn/common.hpp"
#include "natconn/connections.hpp"
#include "natconn/structure_gen.hpp"
#include "natconn/tensor_file.hpp"
#include "natconn/torsion_space.hpp"
#include "natconn/verify.hpp"

namespace {

using natconn::Covector;
using natconn::Tensor3;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalidInput = 3;

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw natconn::ParseError("cannot open '" + path + "'");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

natconn::TensorFile parse_tensor_file(const std::string& bytes,
                                      const std::string& path) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::exception& e) {
    throw natconn::ParseError("invalid JSON in '" + path + "': " + e.what());
  }
  return natconn::tensor_file_from_json(j);
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

json class_report_json(const natconn::ClassReport& rep) {
  return json{{"verdict", to_string(rep.verdict)},
              {"theta_norm", rep.theta_norm},
              {"residual_w0", rep.residual_w0},
              {"residual_w1", rep.residual_w1},
              {"residual_cyclic", rep.residual_cyclic},
              {"residual_w2", rep.residual_w2},
              {"nijenhuis_norm", rep.nijenhuis_norm}};
}

json decomposition_json(const natconn::TorsionDecomposition& dec) {
  const natconn::CaseLabel label = natconn::case_label(dec);
  return json{{"component_norms",
               {dec.norms[0], dec.norms[1], dec.norms[2], dec.norms[3]}},
              {"component_nonzero",
               {label.component_nonzero[0], label.component_nonzero[1],
                label.component_nonzero[2], label.component_nonzero[3]}},
              {"norm_total", dec.norm_total},
              {"completeness_residual", dec.completeness_residual},
              {"case", to_string(label.value)}};
}

// Flag-driven commands hash their canonical parameter JSON so reruns
// with the same inputs fingerprint identically.
std::string params_digest(const json& params) {
  return natconn::fnv1a_hex(params.dump());
}

struct Stopwatch {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  ~Stopwatch() {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    const double ms =
        std::chrono::duration<double, std::milli>(elapsed).count();
    std::cerr << "runtime_ms " << ms << "\n";
  }
};

// ------------------------------------------------------------------

int cmd_classify(const std::string& path, double tol) {
  const std::string bytes = read_bytes(path);
  const natconn::TensorFile tf = parse_tensor_file(bytes, path);
  if (!tf.f.has_value()) {
    throw natconn::ParseError("classify needs an F field in '" + path + "'");
  }
  const natconn::Metric g(tf.g);
  const natconn::ProductStructure p(tf.p, g);
  const natconn::ClassReport rep = natconn::classify(*tf.f, g, p, tol);
  json out{{"command", "classify"},
           {"inputs", json{{"file", path}, {"tol", tol}}},
           {"inputs_digest", natconn::fnv1a_hex(bytes)},
           {"report", class_report_json(rep)}};
  emit(out);
  return kExitOk;
}

int cmd_decompose(const std::string& path) {
  const std::string bytes = read_bytes(path);
  const natconn::TensorFile tf = parse_tensor_file(bytes, path);
  if (!tf.t.has_value()) {
    throw natconn::ParseError("decompose needs a T field in '" + path + "'");
  }
  const natconn::Metric g(tf.g);
  const natconn::ProductStructure p(tf.p, g);
  const natconn::TorsionDecomposition dec = natconn::decompose(*tf.t, g, p);
  json out{{"command", "decompose"},
           {"inputs", json{{"file", path}}},
           {"inputs_digest", natconn::fnv1a_hex(bytes)},
           {"report", decomposition_json(dec)}};
  emit(out);
  return kExitOk;
}

int cmd_family(int n_half, std::vector<double> theta_flag, double lambda,
               double mu, const std::string& g_path,
               const std::string& out_path) {
  natconn::TensorFile base;
  std::string g_digest = "builtin-identity";
  if (!g_path.empty()) {
    const std::string bytes = read_bytes(g_path);
    base = parse_tensor_file(bytes, g_path);
    g_digest = natconn::fnv1a_hex(bytes);
    if (n_half > 0 && base.dim != 2 * n_half) {
      throw natconn::ParseError("--n disagrees with the dimension in '" +
                                g_path + "'");
    }
  } else {
    if (n_half <= 0) {
      throw natconn::ParseError("--n must be a positive half-dimension");
    }
    const int dim = 2 * n_half;
    base.dim = dim;
    base.g = Eigen::MatrixXd::Identity(dim, dim);
    Eigen::VectorXd d(dim);
    d.head(n_half).setOnes();
    d.tail(n_half).setConstant(-1.0);
    base.p = d.asDiagonal();
  }
  const int dim = base.dim;

  Covector theta;
  if (!theta_flag.empty()) {
    if (static_cast<int>(theta_flag.size()) != dim) {
      throw natconn::ParseError("--theta needs exactly " +
                                std::to_string(dim) + " entries");
    }
    theta = Eigen::Map<const Covector>(theta_flag.data(), dim);
  } else if (base.theta.has_value()) {
    theta = *base.theta;
  } else {
    theta = Covector::Zero(dim);
    theta(0) = 1.0;
  }

  const natconn::Metric g(base.g);
  const natconn::ProductStructure p(base.p, g);
  const natconn::FamilyParams params{lambda, mu};
  const Tensor3 t = natconn::w1_family_torsion(g, p, theta, params);
  const Tensor3 f = natconn::make_w1_f(g, p, theta);
  const natconn::TorsionDecomposition dec = natconn::decompose(t, g, p);
  const natconn::NaturalityReport nat =
      natconn::is_natural(natconn::q_from_torsion(t), f, p);

  json params_json{{"command", "family"}, {"lambda", lambda},
                   {"mu", mu},            {"dim", dim},
                   {"g_digest", g_digest}};
  {
    std::vector<double> tv(theta.data(), theta.data() + dim);
    params_json["theta"] = tv;
  }

  if (!out_path.empty()) {
    natconn::TensorFile out_tf;
    out_tf.dim = dim;
    out_tf.g = base.g;
    out_tf.p = base.p;
    out_tf.theta = theta;
    out_tf.t = t;
    natconn::write_tensor_file(out_tf, out_path);
  }

  json out{{"command", "family"},
           {"inputs", json{{"lambda", lambda},
                           {"mu", mu},
                           {"n", dim / 2},
                           {"g", g_path.empty() ? "builtin" : g_path}}},
           {"inputs_digest", params_digest(params_json)},
           {"report",
            json{{"decomposition", decomposition_json(dec)},
                 {"natural", nat.natural},
                 {"residual_f", nat.residual_f},
                 {"residual_skew", nat.residual_skew},
                 {"torsion_norm", natconn::g_norm(t, g)}}}};
  emit(out);
  return kExitOk;
}

int cmd_verify(const std::vector<int>& dims, int trials, std::uint64_t seed,
               double tol) {
  natconn::VerifyConfig cfg;
  cfg.dims = dims;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.tol = tol;
  const std::vector<natconn::PropertyResult> results =
      natconn::run_verification(cfg);

  json rows = json::array();
  std::vector<std::string> failing;
  for (const auto& r : results) {
    rows.push_back(json{{"name", r.name},
                        {"passed", r.passed},
                        {"max_residual", r.max_residual},
                        {"threshold", r.threshold},
                        {"note", r.note}});
    std::cerr << (r.passed ? "pass " : "FAIL ") << r.name << "  residual "
              << r.max_residual << " vs " << r.threshold << "\n";
    if (!r.passed) {
      failing.push_back(r.name);
    }
  }
  json params_json{{"command", "verify"},
                   {"dims", dims},
                   {"trials", trials},
                   {"seed", seed},
                   {"tol", tol}};
  json out{{"command", "verify"},
           {"inputs", json{{"dims", dims},
                           {"trials", trials},
                           {"seed", seed},
                           {"tol", tol}}},
           {"inputs_digest", params_digest(params_json)},
           {"properties", rows},
           {"all_passed", failing.empty()}};
  emit(out);
  if (!failing.empty()) {
    std::cerr << "failing properties:";
    for (const auto& name : failing) {
      std::cerr << " " << name;
    }
    std::cerr << "\n";
    return kExitPropertyFailure;
  }
  return kExitOk;
}

int cmd_chart(const std::string& name, std::vector<double> point_flag,
              double h, double tol, const std::string& out_path) {
  natconn::Chart chart;
  if (name == "flat_product") {
    chart = natconn::flat_product_chart(2);
  } else if (name == "conformal_product") {
    chart = natconn::conformal_product_chart(2);
  } else if (name == "rotated_p") {
    chart = natconn::rotated_p_chart(0.5);
  } else {
    throw natconn::ParseError("unknown chart '" + name + "'");
  }
  Eigen::VectorXd point = Eigen::VectorXd::Zero(chart.dim);
  if (!point_flag.empty()) {
    if (static_cast<int>(point_flag.size()) != chart.dim) {
      throw natconn::ParseError("--point needs exactly " +
                                std::to_string(chart.dim) + " coordinates");
    }
    point = Eigen::Map<const Eigen::VectorXd>(point_flag.data(), chart.dim);
  }
  const natconn::FDConfig fd{h};
  const natconn::ChartTensors ct =
      natconn::structure_tensor_at(chart, point, fd);
  const natconn::ClassReport rep = natconn::classify(ct.f, ct.g, ct.p, tol,
                                                     /*sym_tol=*/1e-3);

  natconn::TensorFile tf;
  tf.dim = chart.dim;
  tf.g = ct.g.components();
  tf.p = ct.p.components();
  tf.f = ct.f;
  if (!out_path.empty()) {
    natconn::write_tensor_file(tf, out_path);
  }

  json fd_json;
  try {
    const Tensor3 tc = natconn::canonical_torsion(ct.f, ct.p);
    const natconn::FDCheck check =
        natconn::natural_connection_fd_check(chart, point, tc, fd);
    fd_json = json{{"torsion", "canonical"},
                   {"residual_g", check.residual_g},
                   {"residual_p", check.residual_p}};
  } catch (const natconn::InvalidInput& e) {
    fd_json = json{{"torsion", nullptr},
                   {"note", std::string("no canonical torsion here: ") +
                                e.what()}};
  }

  std::vector<double> pv(point.data(), point.data() + chart.dim);
  json params_json{{"command", "chart"},
                   {"chart", name},
                   {"point", pv},
                   {"h", h},
                   {"tol", tol}};
  json out{{"command", "chart"},
           {"inputs",
            json{{"chart", name}, {"point", pv}, {"h", h}, {"tol", tol}}},
           {"inputs_digest", params_digest(params_json)},
           {"tensors", natconn::tensor_file_to_json(tf)},
           {"report",
            json{{"classification", class_report_json(rep)},
                 {"symmetry_residual", ct.symmetry_residual},
                 {"natural_connection_fd", fd_json}}}};
  emit(out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Natural connections on Riemannian product manifolds: "
               "classification, torsion decomposition, and verification"};
  app.require_subcommand(1);

  std::string in_path;
  std::string g_path;
  std::string out_path;
  std::string chart_name;
  double tol = 1e-8;
  double lambda = 0.0;
  double mu = 0.0;
  double h = 1e-5;
  int n_half = 0;
  int trials = 20;
  std::uint64_t seed = 0;
  std::vector<int> dims{4, 6};
  std::vector<double> theta_flag;
  std::vector<double> point_flag;

  CLI::App* classify =
      app.add_subcommand("classify", "Class membership of a structure tensor");
  classify->add_option("--in", in_path, "TensorFile with g, P, F")->required();
  classify->add_option("--tol", tol, "classification tolerance");

  CLI::App* decompose =
      app.add_subcommand("decompose", "Torsion component norms and case label");
  decompose->add_option("--in", in_path, "TensorFile with g, P, T")->required();

  CLI::App* family = app.add_subcommand(
      "family", "Two-parameter torsion family member with decomposition");
  family->add_option("--n", n_half, "half dimension n (manifold dim is 2n)");
  family->add_option("--lambda", lambda, "first family parameter");
  family->add_option("--mu", mu, "second family parameter");
  family->add_option("--theta", theta_flag, "Lee covector entries")
      ->delimiter(',');
  family->add_option("--g", g_path, "optional TensorFile with g, P");
  family->add_option("--out", out_path, "write the torsion as a TensorFile");

  CLI::App* verify =
      app.add_subcommand("verify", "Run the full property suite");
  verify->add_option("--dims", dims, "full dimensions to test")
      ->delimiter(',')
      ->check(CLI::Range(2, 16));
  verify->add_option("--trials", trials, "trials per property")
      ->check(CLI::Range(1, 100000));
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--tol", tol, "algebraic residual tolerance")
      ->check(CLI::PositiveNumber);

  CLI::App* chart = app.add_subcommand(
      "chart", "Finite-difference structure tensor on a coordinate chart");
  // --h is the FD step here, so the help flag keeps only its long form
  chart->set_help_flag("--help", "print help and exit");
  chart
      ->add_option("--chart", chart_name,
                   "flat_product | conformal_product | rotated_p")
      ->required()
      ->check(CLI::IsMember({"flat_product", "conformal_product", "rotated_p"}));
  chart->add_option("--point", point_flag, "chart coordinates")
      ->delimiter(',');
  chart->add_option("--h", h, "finite-difference step")
      ->check(CLI::PositiveNumber);
  chart->add_option("--tol", tol, "classification tolerance");
  chart->add_option("--out", out_path, "write (g, P, F) as a TensorFile");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    Stopwatch watch;
    if (app.got_subcommand(classify)) {
      return cmd_classify(in_path, tol);
    }
    if (app.got_subcommand(decompose)) {
      return cmd_decompose(in_path);
    }
    if (app.got_subcommand(family)) {
      if (g_path.empty() && n_half == 0) {
        n_half = 2;
      }
      return cmd_family(n_half, theta_flag, lambda, mu, g_path, out_path);
    }
    if (app.got_subcommand(verify)) {
      for (int d : dims) {
        if (d % 2 != 0) {
          std::cerr << "--dims entries must be even (got " << d << ")\n";
          return kExitUsage;
        }
      }
      return cmd_verify(dims, trials, seed, tol);
    }
    if (app.got_subcommand(chart)) {
      return cmd_chart(chart_name, point_flag, h, tol, out_path);
    }
    std::cerr << "no subcommand selected\n";
    return kExitUsage;
  } catch (const natconn::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const natconn::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const natconn::InternalError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}
