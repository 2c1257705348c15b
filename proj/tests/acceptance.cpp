// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here and mirror the library contracts.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "vtc/json_io.hpp"
#include "vtc/moment_lft.hpp"

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using namespace vtc;
namespace toe = vtc::toeplitz;
namespace hk = vtc::hankel;
namespace mo = vtc::moment;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::printf("criterion %2d [%s] %s (%s)\n", index, pass ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

Matrix m1(Complex a) {
  Matrix M(1, 1);
  M << a;
  return M;
}

double rel(double err, double scale) { return err / (1.0 + scale); }

// ---------------------------------------------------------------------------

void criterion_1_and_2() {
  std::mt19937_64 rng(101);
  const auto start = std::chrono::steady_clock::now();
  double worst_identity = 0.0;
  double worst_cjc = 0.0;
  double worst_rho = 0.0;
  bool all_pd = true;
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 3);
    const int n = 1 + static_cast<int>(rng() % 6);
    const toe::ToeplitzSpec spec = testing::random_toeplitz_spec(rng, p, n);
    const Matrix S = toe::assemble_toeplitz(spec);
    worst_identity = std::max(worst_identity, rel(toe::verify_identity(spec), S.norm()));

    const toe::DiracSystem D = toe::dirac_from_toeplitz(spec);
    const Matrix j = toe::signature_j(p);
    for (const Matrix& C : D.C) {
      all_pd = all_pd && matcore::is_positive_definite(C).positive;
      worst_cjc = std::max(worst_cjc, (C * j * C - j).norm());
    }
    for (const Matrix& rho : toe::verblunsky_from_dirac(D).rho) {
      worst_rho = std::max(worst_rho, matcore::spectral_norm(rho));
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[160];
  std::snprintf(buf, sizeof(buf), "200 specs, worst residual %.2e, %.2f s",
                worst_identity, secs);
  report(1, "Toeplitz operator identity", worst_identity <= 1e-10 && secs < 5.0, buf);
  std::snprintf(buf, sizeof(buf), "worst ||CjC-j|| %.2e, max ||rho|| %.6f, PD %s",
                worst_cjc, worst_rho, all_pd ? "all" : "violated");
  report(2, "Dirac potential invariants",
         all_pd && worst_cjc <= 1e-9 && worst_rho < 1.0, buf);
}

void criterion_3() {
  std::mt19937_64 rng(103);
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 100 && ok; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 2);
    const int n = 1 + static_cast<int>(rng() % 5);
    const toe::ToeplitzSpec spec = testing::random_toeplitz_spec(rng, p, n);
    try {
      const toe::ToeplitzSpec back = toe::toeplitz_from_verblunsky(
          toe::verblunsky_from_dirac(toe::dirac_from_toeplitz(spec)));
      worst = std::max(worst, (back.nu - spec.nu).norm());
      for (int k = 0; k < n; ++k) {
        worst = std::max(worst, (back.s[k] - spec.s[k]).norm());
      }
    } catch (const ReconstructionError&) {
      ok = false;
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[160];
  std::snprintf(buf, sizeof(buf), "100 specs, worst block error %.2e, %.2f s", worst, secs);
  report(3, "Toeplitz round trip", ok && worst <= 1e-8 && secs < 30.0, buf);
}

void criterion_4() {
  toe::ToeplitzSpec one;
  one.p = 1;
  one.s = {m1(1.0)};
  one.nu = m1(0.0);
  Matrix want(2, 2);
  want << 1.25, -0.75, -0.75, 1.25;
  const Matrix C0 = toe::dirac_from_toeplitz(one).C[0];
  double err = (C0 - want).norm();
  toe::DiracSystem D;
  D.p = 1;
  D.C = {C0};
  err = std::max(err, (toe::verblunsky_from_dirac(D).rho[0] - m1(-0.6)).norm());

  toe::ToeplitzSpec two = one;
  two.s = {m1(2.0)};
  two.nu = m1(1.0);
  const Matrix rho = toe::verblunsky_from_dirac(toe::dirac_from_toeplitz(two)).rho[0];
  err = std::max(err, (rho - m1(Complex(1.0 / 3, 2.0 / 3))).norm());
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max deviation %.2e", err);
  report(4, "fixed-point anchors", err <= 1e-12, buf);
}

void criterion_5() {
  std::mt19937_64 rng(105);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 2);
    const int n = 1 + static_cast<int>(rng() % 4);
    const toe::ToeplitzSpec spec = testing::random_toeplitz_spec(rng, p, n);
    const toe::DiracSystem D = toe::dirac_from_toeplitz(spec);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int s = 0; s < 5; ++s) {
      const Complex lam(u(rng), u(rng) - 2.5);
      const Matrix direct = toe::transfer_wA(spec, lam);
      worst = std::max(worst,
                       rel((toe::transfer_product(spec, lam) - direct).norm(), direct.norm()));
      const Matrix rec = toe::fundamental_W(D, n, -2.0 * lam);
      worst = std::max(
          worst, rel((toe::fundamental_W_via_transfer(spec, n, -2.0 * lam) - rec).norm(),
                     rec.norm()));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "worst relative error %.2e", worst);
  report(5, "transfer matrix consistency", worst <= 1e-9, buf);
}

void criterion_6() {
  std::mt19937_64 rng(106);
  double worst_zero = 0.0;
  double worst_t = 0.0;
  bool pd = true;
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 3);
    const int n = 1 + static_cast<int>(rng() % 4);
    const hk::HankelSpec spec = testing::random_hankel_spec(rng, p, n);
    const hk::OmegaSeq os = hk::omega_from_hankel(spec);
    const Matrix J = toe::flip_J(p);
    worst_zero = std::max(worst_zero, os.omega[0].leftCols(p).norm());
    for (int k = 0; k < n; ++k) {
      worst_zero = std::max(worst_zero, (os.omega[k] * J * os.omega[k].adjoint()).norm());
      if (k > 0) {
        const Matrix t = Complex(0, 1) * os.omega[k] * J * os.omega[k - 1].adjoint();
        worst_t = std::max(
            worst_t, rel((t - hk::schur_t_hankel(spec, k + 1)).norm(), t.norm()));
        pd = pd && matcore::is_positive_definite((t + t.adjoint()) / 2.0).positive;
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "200 specs, worst J-form %.2e, worst t gap %.2e",
                worst_zero, worst_t);
  report(6, "Hankel coefficient invariants",
         worst_zero <= 1e-10 && worst_t <= 1e-9 && pd, buf);
}

void criterion_7() {
  std::mt19937_64 rng(107);
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 2);
    const int n = 1 + static_cast<int>(rng() % 5);
    const hk::HankelSpec spec = testing::random_hankel_spec(rng, p, n);
    const hk::HankelSpec back = hk::hankel_from_omega(hk::omega_from_hankel(spec));
    for (size_t k = 0; k < spec.H.size(); ++k) {
      worst = std::max(worst, (back.H[k] - spec.H[k]).norm());
    }
  }

  // Regression anchor with the intermediate rational function.
  hk::OmegaSeq os;
  os.p = 1;
  Matrix w0(1, 2), w1(1, 2);
  w0 << 0, 1;
  w1 << Complex(0, -1), 0;
  os.omega = {w0, w1};
  const mo::RationalHerglotz phi =
      mo::lft_phi(mo::frakA(hk::hankel_from_omega(hk::OmegaSeq{1, {w0}}), 1),
                  mo::QParam{w1.adjoint()});
  double anchor = 0.0;
  for (const Complex z : {Complex(0.9, 0.4), Complex(-1.4, 2.2)}) {
    anchor = std::max(anchor, (phi.eval(z) - m1(-1.0 / z)).norm());
  }
  const hk::HankelSpec rec = hk::hankel_from_omega(os);
  anchor = std::max(anchor, (rec.H[0] - m1(1.0)).norm());
  anchor = std::max(anchor, rec.H[1].norm());
  anchor = std::max(anchor, (rec.H[2] - m1(1.0)).norm());
  char buf[128];
  std::snprintf(buf, sizeof(buf), "worst block error %.2e, anchor %.2e", worst, anchor);
  report(7, "Hankel round trip", worst <= 1e-8 && anchor <= 1e-12, buf);
}

void criterion_8() {
  std::mt19937_64 rng(108);
  double worst = 0.0;
  bool all_pd = true;
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 2);
    const int n = 1 + static_cast<int>(rng() % 4);
    const hk::OmegaSeq chain = testing::random_omega_chain(rng, p, n);
    const hk::HankelSpec spec = hk::hankel_from_omega(chain);
    all_pd = all_pd && matcore::is_positive_definite(hk::assemble_hankel(spec)).positive;
    const hk::OmegaSeq back = hk::omega_from_hankel(spec);
    for (int k = 0; k < n; ++k) {
      worst = std::max(
          worst, rel((back.omega[k] - chain.omega[k]).norm(), chain.omega[k].norm()));
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "100 chains, PD %s, worst coefficient error %.2e",
                all_pd ? "all" : "violated", worst);
  report(8, "admissible chains close the loop", all_pd && worst <= 1e-8, buf);
}

void criterion_9() {
  std::mt19937_64 rng(109);
  double worst_match = 0.0;
  double worst_gap_eig = 0.0;
  double worst_equality_gap = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 6 && ok; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 2);
    const int n = 2 + static_cast<int>(rng() % 2);
    const hk::HankelSpec spec = testing::random_hankel_spec(rng, p, n);

    // Strict property-J constants: moments of the representing measure are
    // read off the exact expansion at infinity.
    for (int s = 0; s < 20; ++s) {
      const mo::RationalHerglotz phi = mo::lft_phi(
          mo::frakA(spec, n), mo::QParam{testing::random_strict_J_param(rng, p)});
      const std::vector<Matrix> mom = testing::asymptotic_moments(phi, 2 * n - 1);
      for (int k = 0; k <= 2 * n - 3; ++k) {
        worst_match =
            std::max(worst_match, rel((mom[k] - spec.H[k]).norm(), spec.H[k].norm()));
      }
      Matrix gap = spec.H[2 * n - 2] - mom[2 * n - 2];
      gap = (gap + gap.adjoint()) / 2.0;
      Eigen::SelfAdjointEigenSolver<Matrix> es(gap);
      worst_gap_eig = std::min(worst_gap_eig,
                               es.eigenvalues().minCoeff() / (1.0 + spec.H[2 * n - 2].norm()));
    }

    // Equality case: the last coefficient is the "next" coefficient of the
    // leading section one order down, and closes its top moment exactly.
    const hk::OmegaSeq os = hk::omega_from_hankel(spec);
    hk::HankelSpec section;
    section.p = p;
    section.H.assign(spec.H.begin(), spec.H.begin() + (2 * (n - 1) - 1));
    const mo::QParam param{os.omega.back().adjoint() * testing::random_unitary(rng, p)};
    if (!mo::equality_case_parameter(hk::omega_from_hankel(section), param)) {
      ok = false;
      break;
    }
    try {
      const mo::MomentReport rep = mo::verify_moments(
          mo::extract_measure(mo::lft_phi(mo::frakA(section, n - 1), param)), section);
      worst_equality_gap = std::max(
          worst_equality_gap, rep.gap.norm() / (1.0 + section.H.back().norm()));
    } catch (const Error&) {
      ok = false;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "match %.2e, gap min eig %.2e, equality-case gap %.2e", worst_match,
                worst_gap_eig, worst_equality_gap);
  report(9, "moment matching",
         ok && worst_match <= 1e-8 && worst_gap_eig >= -1e-8 &&
             worst_equality_gap <= 1e-8,
         buf);
}

void criterion_10() {
  std::mt19937_64 rng(110);
  double worst_eig = 0.0;
  double worst_herglotz = 0.0;
  double worst_resolvent = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 20 && ok; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 2);
    const int n = 2 + static_cast<int>(rng() % 2);
    const hk::DiscreteMeasure gen = testing::random_measure(rng, p, n * p + 1);
    const hk::HankelSpec spec = hk::measure_to_hankel(gen, n);
    if (!matcore::is_positive_definite(hk::assemble_hankel(spec)).positive) continue;
    try {
      // Generating measure: H_tau = H exactly.
      mo::RepresentationReport rep = mo::verify_representation(spec, gen);
      worst_eig = std::min(worst_eig, rep.h_tau_gap_min_eig);
      worst_herglotz = std::max(worst_herglotz, rep.herglotz_residual);
      worst_resolvent = std::max(worst_resolvent, rep.resolvent_residual);

      // Extracted equality-case measure: H - H_tau PSD with a small gap.
      const hk::OmegaSeq os = hk::omega_from_hankel(spec);
      hk::HankelSpec section;
      section.p = p;
      section.H.assign(spec.H.begin(), spec.H.begin() + (2 * (n - 1) - 1));
      const hk::DiscreteMeasure tau = mo::extract_measure(mo::lft_phi(
          mo::frakA(section, n - 1), mo::QParam{os.omega.back().adjoint()}));
      rep = mo::verify_representation(section, tau);
      worst_herglotz = std::max(worst_herglotz, rep.herglotz_residual);
      worst_resolvent = std::max(worst_resolvent, rep.resolvent_residual);

      // mu vanishes structurally in the decomposition.
      const mo::HerglotzDecomposition dec =
          mo::herglotz_decompose(mo::RationalHerglotz{}, tau);
      ok = ok && dec.mu.norm() == 0.0;
    } catch (const Error&) {
      ok = false;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "min eig(H-Htau) %.2e, herglotz residual %.2e, resolvent %.2e", worst_eig,
                worst_herglotz, worst_resolvent);
  report(10, "representation identities",
         ok && worst_eig >= -1e-9 && worst_herglotz <= 1e-9 && worst_resolvent <= 1e-9,
         buf);
}

void criterion_11() {
  std::mt19937_64 rng(111);
  double worst = 0.0;
  int done = 0;
  while (done < 50) {
    const int p = 1 + static_cast<int>(rng() % 2);
    const int n = 1 + static_cast<int>(rng() % 4);
    const hk::DiscreteMeasure measure = testing::random_measure(rng, p, n * p + 1);
    const hk::HankelSpec spec = hk::measure_to_hankel(measure, n);
    if (!matcore::is_positive_definite(hk::assemble_hankel(spec)).positive) continue;
    const hk::CanonicalSystem cs = hk::hamiltonian_from_hankel(spec);
    std::vector<Vector> h;
    for (int k = 0; k < n; ++k) h.push_back(testing::random_matrix(rng, 2 * p, 1));
    const hk::IsometryCheck c = hk::spectral_transform_V(cs, h, measure);
    worst = std::max(worst, std::abs(c.lhs - c.rhs) / (1.0 + c.lhs));
    ++done;
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "50 triples, worst relative defect %.2e", worst);
  report(11, "spectral transform isometry", worst <= 1e-9, buf);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(VTC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_12() {
  const fs::path d(VTC_WORK_DIR);
  fs::create_directories(d);
  bool ok = true;
  std::string detail = "round trip, exit codes, determinism";

  std::mt19937_64 rng(112);
  const toe::ToeplitzSpec spec = testing::random_toeplitz_spec(rng, 2, 3);
  io::write_json_file((d / "t.json").string(), io::to_json(spec));
  ok = ok && run_cli("toeplitz-to-rho " + (d / "t.json").string() + " " +
                     (d / "r.json").string()) == 0;
  ok = ok && run_cli("rho-to-toeplitz " + (d / "r.json").string() + " " +
                     (d / "t2.json").string()) == 0;
  if (ok) {
    const toe::ToeplitzSpec back =
        io::parse_toeplitz(io::load_json_file((d / "t2.json").string()));
    for (int k = 0; k < 3; ++k) {
      ok = ok && (back.s[k] - spec.s[k]).norm() <= 1e-8;
    }
    ok = ok && (back.nu - spec.nu).norm() <= 1e-8;
  }

  const hk::HankelSpec hspec = testing::random_hankel_spec(rng, 2, 3);
  io::write_json_file((d / "h.json").string(), io::to_json(hspec));
  ok = ok && run_cli("hankel-to-omega " + (d / "h.json").string() + " " +
                     (d / "o.json").string()) == 0;
  ok = ok && run_cli("omega-to-hankel " + (d / "o.json").string() + " " +
                     (d / "h2.json").string()) == 0;
  if (ok) {
    const hk::HankelSpec back =
        io::parse_hankel(io::load_json_file((d / "h2.json").string()));
    for (size_t k = 0; k < hspec.H.size(); ++k) {
      ok = ok && (back.H[k] - hspec.H[k]).norm() <= 1e-8 * (1.0 + hspec.H[k].norm());
    }
  }

  {
    std::ofstream bad((d / "bad.json").string());
    bad << "{\"kind\":\"verblunsky_rho\",\"p\":1,\"rho\":[[[2.0]]]}";
  }
  ok = ok && run_cli("rho-to-toeplitz " + (d / "bad.json").string() + " " +
                     (d / "x.json").string()) == 3;
  {
    std::ofstream bad((d / "garbage.json").string());
    bad << "not json at all";
  }
  ok = ok && run_cli("toeplitz-to-rho " + (d / "garbage.json").string() + " " +
                     (d / "x.json").string()) == 2;

  ok = ok && run_cli("hankel-to-omega " + (d / "h.json").string() + " " +
                     (d / "o_a.json").string()) == 0;
  ok = ok && run_cli("hankel-to-omega " + (d / "h.json").string() + " " +
                     (d / "o_b.json").string()) == 0;
  ok = ok && slurp(d / "o_a.json") == slurp(d / "o_b.json") &&
       !slurp(d / "o_a.json").empty();

  report(12, "CLI pipelines", ok, detail);
}

}  // namespace

int main() {
  criterion_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
