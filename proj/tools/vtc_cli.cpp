// Command-line surface for the Toeplitz/Dirac and Hankel/canonical pipelines.
//
// Exit codes: 0 success, 2 schema error, 3 mathematical precondition violated,
// 4 reconstruction non-convergence.

#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vtc/json_io.hpp"
#include "vtc/moment_lft.hpp"

namespace {

using vtc::Complex;
using vtc::Matrix;
using vtc::io::Json;
namespace toe = vtc::toeplitz;
namespace hk = vtc::hankel;
namespace mo = vtc::moment;

constexpr int kExitSchema = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitReconstruction = 4;

double json_num(double v) { return v; }

// Accepts "a", "bi", "a+bi", "a-bi" and the tuple form "re,im".
Complex parse_complex_arg(const std::string& text) {
  const auto comma = text.find(',');
  if (comma != std::string::npos) {
    return Complex(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
  }
  std::string s = text;
  double re = 0.0, im = 0.0;
  if (!s.empty() && s.back() == 'i') {
    s.pop_back();
    // Split at the last +/- that is not an exponent sign or leading sign.
    size_t split = std::string::npos;
    for (size_t i = 1; i < s.size(); ++i) {
      if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
    }
    std::string im_text = (split == std::string::npos) ? s : s.substr(split);
    if (im_text.empty() || im_text == "+") im_text = "1";
    if (im_text == "-") im_text = "-1";
    im = std::stod(im_text);
    if (split != std::string::npos) re = std::stod(s.substr(0, split));
  } else {
    re = std::stod(s);
  }
  return Complex(re, im);
}

Json residual_entry(const std::string& name, double residual, double tol) {
  Json e;
  e["check"] = name;
  e["residual"] = json_num(residual);
  e["tolerance"] = json_num(tol);
  e["pass"] = residual <= tol;
  return e;
}

int report_and_exit(const Json& report) {
  std::cout << vtc::io::dump_deterministic(report);
  for (const Json& e : report.at("checks")) {
    if (!e.at("pass").get<bool>()) return kExitPrecondition;
  }
  return 0;
}

double spec_scale(const Matrix& M) { return 1.0 + M.norm(); }

// ---------------------------------------------------------------------------
// pipeline commands

int cmd_toeplitz_to_rho(const std::string& in, const std::string& out) {
  const toe::ToeplitzSpec spec = vtc::io::parse_toeplitz(vtc::io::load_json_file(in));
  const toe::DiracSystem D = toe::dirac_from_toeplitz(spec);
  const toe::VerblunskySeqT seq = toe::verblunsky_from_dirac(D);
  vtc::io::write_json_file(out, vtc::io::to_json(seq));
  for (const Matrix& rho : seq.rho) {
    std::cerr << "rho spectral norm " << vtc::matcore::spectral_norm(rho) << "\n";
  }
  return 0;
}

int cmd_rho_to_toeplitz(const std::string& in, const std::string& out) {
  const toe::VerblunskySeqT seq = vtc::io::parse_rho(vtc::io::load_json_file(in));
  const toe::ToeplitzSpec spec = toe::toeplitz_from_verblunsky(seq);
  vtc::io::write_json_file(out, vtc::io::to_json(spec));
  std::cerr << "identity residual " << toe::verify_identity(spec) << "\n";
  return 0;
}

int cmd_hankel_to_omega(const std::string& in, const std::string& out) {
  const hk::HankelSpec spec = vtc::io::parse_hankel(vtc::io::load_json_file(in));
  const hk::OmegaSeq os = hk::omega_from_hankel(spec);
  vtc::io::write_json_file(out, vtc::io::to_json(os));
  std::cerr << "identity residual " << hk::verify_hankel_identity(spec) << "\n";
  return 0;
}

int cmd_omega_to_hankel(const std::string& in, const std::string& out) {
  const hk::OmegaSeq os = vtc::io::parse_omega(vtc::io::load_json_file(in));
  const hk::HankelSpec spec = hk::hankel_from_omega(os);
  vtc::io::write_json_file(out, vtc::io::to_json(spec));
  std::cerr << "identity residual " << hk::verify_hankel_identity(spec) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify suites

void suite_identity(const Json& j, double tol, Json& checks) {
  const std::string kind = vtc::io::kind_of(j);
  if (kind == "toeplitz") {
    const toe::ToeplitzSpec spec = vtc::io::parse_toeplitz(j);
    const Matrix S = toe::assemble_toeplitz(spec);
    vtc::matcore::require_pd(S, "verify identity: S(n)");
    checks.push_back(residual_entry("toeplitz_identity", toe::verify_identity(spec),
                                    tol * spec_scale(S)));
  } else if (kind == "hankel") {
    const hk::HankelSpec spec = vtc::io::parse_hankel(j);
    const Matrix H = hk::assemble_hankel(spec);
    vtc::matcore::require_pd(H, "verify identity: H(n)");
    checks.push_back(residual_entry("hankel_identity", hk::verify_hankel_identity(spec),
                                    tol * spec_scale(H)));
  } else {
    throw vtc::SchemaError("identity suite needs a toeplitz or hankel input");
  }
}

void suite_roundtrip(const Json& j, double tol, Json& checks) {
  const std::string kind = vtc::io::kind_of(j);
  if (kind == "toeplitz") {
    const toe::ToeplitzSpec spec = vtc::io::parse_toeplitz(j);
    const toe::VerblunskySeqT seq =
        toe::verblunsky_from_dirac(toe::dirac_from_toeplitz(spec));
    const toe::ToeplitzSpec back = toe::toeplitz_from_verblunsky(seq);
    double err = (spec.nu - back.nu).norm();
    for (int k = 0; k < spec.n(); ++k) err = std::max(err, (spec.s[k] - back.s[k]).norm());
    checks.push_back(residual_entry("toeplitz_roundtrip", err, tol));
  } else if (kind == "hankel") {
    const hk::HankelSpec spec = vtc::io::parse_hankel(j);
    const hk::HankelSpec back = hk::hankel_from_omega(hk::omega_from_hankel(spec));
    double err = 0.0;
    for (size_t k = 0; k < spec.H.size(); ++k) {
      err = std::max(err, (spec.H[k] - back.H[k]).norm());
    }
    checks.push_back(residual_entry("hankel_roundtrip", err, tol));
  } else if (kind == "verblunsky_rho") {
    const toe::VerblunskySeqT seq = vtc::io::parse_rho(j);
    const toe::ToeplitzSpec spec = toe::toeplitz_from_verblunsky(seq);
    const toe::VerblunskySeqT back =
        toe::verblunsky_from_dirac(toe::dirac_from_toeplitz(spec));
    double err = 0.0;
    for (int k = 0; k < seq.n(); ++k) err = std::max(err, (seq.rho[k] - back.rho[k]).norm());
    checks.push_back(residual_entry("rho_roundtrip", err, tol));
  } else if (kind == "omega") {
    const hk::OmegaSeq os = vtc::io::parse_omega(j);
    const hk::OmegaSeq back = hk::omega_from_hankel(hk::hankel_from_omega(os));
    double err = 0.0;
    for (int k = 0; k < os.n(); ++k) err = std::max(err, (os.omega[k] - back.omega[k]).norm());
    checks.push_back(residual_entry("omega_roundtrip", err, tol));
  } else {
    throw vtc::SchemaError("roundtrip suite does not accept kind \"" + kind + "\"");
  }
}

void suite_moments(const Json& j, double tol, Json& checks) {
  const hk::HankelSpec spec = vtc::io::parse_hankel(j);
  const int n = spec.n();
  if (n < 2) {
    checks.push_back(residual_entry("moments_order1_trivial", 0.0, tol));
    return;
  }
  const hk::OmegaSeq os = hk::omega_from_hankel(spec);
  // The last coefficient is the equality-case parameter of the leading
  // section of one lower order.
  hk::HankelSpec section;
  section.p = spec.p;
  section.H.assign(spec.H.begin(), spec.H.begin() + (2 * (n - 1) - 1));
  const mo::MatrixPoly frak_a = mo::frakA(section, n - 1);
  const mo::RationalHerglotz phi =
      mo::lft_phi(frak_a, mo::QParam{os.omega.back().adjoint()});
  const hk::DiscreteMeasure measure = mo::extract_measure(phi);
  const mo::MomentReport report = mo::verify_moments(measure, section, tol);
  checks.push_back(residual_entry("moment_equality_gap", report.gap.norm(), tol));
}

void suite_isometry(const Json& j, double tol, Json& checks) {
  const hk::HankelSpec spec = vtc::io::parse_hankel(j);
  const int p = spec.p, n = spec.n();
  const hk::CanonicalSystem cs = hk::hamiltonian_from_hankel(spec);
  hk::DiscreteMeasure measure;
  int support = 0;
  if (n < 2) {
    measure.p = p;
    measure.atoms.push_back({0.0, spec.H[0]});
    support = 1;
  } else {
    const hk::OmegaSeq os = hk::omega_from_hankel(spec);
    hk::HankelSpec section;
    section.p = p;
    section.H.assign(spec.H.begin(), spec.H.begin() + (2 * (n - 1) - 1));
    const mo::RationalHerglotz phi = mo::lft_phi(
        mo::frakA(section, n - 1), mo::QParam{os.omega.back().adjoint()});
    measure = mo::extract_measure(phi);
    support = n - 1;
  }
  std::mt19937_64 rng(20240817);  // fixed seed keeps the report deterministic
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<vtc::Vector> h(support);
    for (auto& v : h) {
      v = vtc::Vector(2 * p);
      for (int i = 0; i < 2 * p; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    }
    const hk::IsometryCheck c = hk::spectral_transform_V(cs, h, measure);
    worst = std::max(worst, std::abs(c.lhs - c.rhs) / (1.0 + c.lhs));
  }
  checks.push_back(residual_entry("spectral_isometry", worst, tol));
}

int cmd_verify(const std::string& in, const std::string& suite, double tol) {
  const Json j = vtc::io::load_json_file(in);
  Json report;
  report["input"] = vtc::io::kind_of(j);
  report["suite"] = suite;
  Json checks = Json::array();
  const bool all = suite == "all";
  if (all || suite == "identity") suite_identity(j, tol, checks);
  if (all || suite == "roundtrip") suite_roundtrip(j, tol, checks);
  if ((all && vtc::io::kind_of(j) == "hankel") || suite == "moments") {
    suite_moments(j, tol, checks);
  }
  if ((all && vtc::io::kind_of(j) == "hankel") || suite == "isometry") {
    suite_isometry(j, tol, checks);
  }
  report["checks"] = std::move(checks);
  return report_and_exit(report);
}

// ---------------------------------------------------------------------------
// moments / weyl

int cmd_moments(const std::string& in, const std::string& kind, int n,
                const std::string& out) {
  const hk::DiscreteMeasure measure = vtc::io::parse_measure(vtc::io::load_json_file(in));
  Json result;
  if (kind == "hankel") {
    const hk::HankelSpec spec = hk::measure_to_hankel(measure, n);
    result = vtc::io::to_json(spec);
    Json pd = Json::array();
    for (int k = 1; k <= n; ++k) {
      hk::HankelSpec sub;
      sub.p = spec.p;
      sub.H.assign(spec.H.begin(), spec.H.begin() + (2 * k - 1));
      pd.push_back(vtc::matcore::is_positive_definite(hk::assemble_hankel(sub)).positive);
    }
    result["leading_sections_pd"] = std::move(pd);
  } else if (kind == "toeplitz") {
    // Trigonometric moments: s_{-k} = (1/2pi) sum_j e^{-i k t_j} w_j.
    toe::ToeplitzSpec spec;
    spec.p = measure.p;
    spec.nu = Matrix::Zero(measure.p, measure.p);
    for (int k = 0; k < n; ++k) {
      Matrix blk = Matrix::Zero(measure.p, measure.p);
      for (const hk::DiscreteMeasureAtom& atom : measure.atoms) {
        blk += std::exp(Complex(0.0, -k * atom.t)) * atom.w;
      }
      spec.s.push_back(blk / (2.0 * 3.14159265358979323846));
    }
    spec.s[0] = (spec.s[0] + spec.s[0].adjoint()) / 2.0;
    result = vtc::io::to_json(spec);
    Json pd = Json::array();
    for (int k = 1; k <= n; ++k) {
      toe::ToeplitzSpec sub = spec;
      sub.s.assign(spec.s.begin(), spec.s.begin() + k);
      pd.push_back(vtc::matcore::is_positive_definite(toe::assemble_toeplitz(sub)).positive);
    }
    result["leading_sections_pd"] = std::move(pd);
  } else {
    throw vtc::SchemaError("--kind must be hankel or toeplitz");
  }
  if (out.empty()) {
    std::cout << vtc::io::dump_deterministic(result);
  } else {
    vtc::io::write_json_file(out, result);
  }
  return 0;
}

int cmd_weyl(const std::string& in, int order, const std::vector<std::string>& evals) {
  const toe::ToeplitzSpec spec = vtc::io::parse_toeplitz(vtc::io::load_json_file(in));
  const int m = (order < 0) ? spec.n() - 1 : order;
  const toe::WeylSeries ws = toe::weyl_series(spec, m);
  Json result;
  result["kind"] = "weyl_series";
  result["p"] = ws.p;
  result["alpha0"] = vtc::io::matrix_to_json(ws.alpha0);
  Json tail = Json::array();
  for (const Matrix& blk : ws.tail) tail.push_back(vtc::io::matrix_to_json(blk));
  result["tail"] = std::move(tail);
  Json points = Json::array();
  for (const std::string& text : evals) {
    const Complex lambda = parse_complex_arg(text);
    Json e;
    e["lambda"] = vtc::io::complex_to_json(lambda);
    e["phi"] = vtc::io::matrix_to_json(toe::weyl_eval(ws, lambda));
    points.push_back(std::move(e));
  }
  result["evaluations"] = std::move(points);
  std::cout << vtc::io::dump_deterministic(result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verblunsky-type coefficients of block Toeplitz and Hankel matrices"};
  app.require_subcommand(1);

  std::string in_path, out_path, suite = "all", kind = "hankel";
  double tol = 1e-8;
  int order_n = 1, weyl_order = -1;
  std::vector<std::string> eval_points;

  auto* c1 = app.add_subcommand("toeplitz-to-rho", "Toeplitz spec -> rho coefficients");
  c1->add_option("input", in_path)->required();
  c1->add_option("output", out_path)->required();

  auto* c2 = app.add_subcommand("rho-to-toeplitz", "rho coefficients -> Toeplitz spec");
  c2->add_option("input", in_path)->required();
  c2->add_option("output", out_path)->required();

  auto* c3 = app.add_subcommand("hankel-to-omega", "Hankel spec -> omega coefficients");
  c3->add_option("input", in_path)->required();
  c3->add_option("output", out_path)->required();

  auto* c4 = app.add_subcommand("omega-to-hankel", "omega coefficients -> Hankel spec");
  c4->add_option("input", in_path)->required();
  c4->add_option("output", out_path)->required();

  auto* c5 = app.add_subcommand("verify", "run an invariant suite, print a JSON report");
  c5->add_option("input", in_path)->required();
  c5->add_option("--suite", suite)
      ->check(CLI::IsMember({"identity", "roundtrip", "moments", "isometry", "all"}));
  c5->add_option("--tol", tol);

  auto* c6 = app.add_subcommand("moments", "moment matrices of a discrete measure");
  c6->add_option("input", in_path)->required();
  c6->add_option("--kind", kind)->check(CLI::IsMember({"hankel", "toeplitz"}));
  c6->add_option("--n", order_n)->required();
  c6->add_option("--out", out_path);

  auto* c7 = app.add_subcommand("weyl", "Weyl series of a Toeplitz spec");
  c7->add_option("input", in_path)->required();
  c7->add_option("--order", weyl_order);
  c7->add_option("--eval", eval_points);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c1->parsed()) return cmd_toeplitz_to_rho(in_path, out_path);
    if (c2->parsed()) return cmd_rho_to_toeplitz(in_path, out_path);
    if (c3->parsed()) return cmd_hankel_to_omega(in_path, out_path);
    if (c4->parsed()) return cmd_omega_to_hankel(in_path, out_path);
    if (c5->parsed()) return cmd_verify(in_path, suite, tol);
    if (c6->parsed()) return cmd_moments(in_path, kind, order_n, out_path);
    if (c7->parsed()) return cmd_weyl(in_path, weyl_order, eval_points);
  } catch (const vtc::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const vtc::DimensionError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const vtc::ReconstructionError& e) {
    std::cerr << "reconstruction error: " << e.what() << "\n";
    return kExitReconstruction;
  } catch (const vtc::Error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  }
  return 0;
}
