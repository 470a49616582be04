// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any
// selected criterion fails. Usage: acceptance [--only N]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "spinent/spinent.hpp"

namespace {

using namespace spinent;

// Tolerances, pinned.
constexpr double kGainTol = 0.01;
constexpr double kTableSeconds = 30.0;
constexpr double kFormulaTol = 1e-10;
constexpr double kExactTol = 1e-12;
constexpr double kPlanarHalfTol = 1e-8;
constexpr double kPlanarGoldenTol = 1e-6;
constexpr int kSoundTrials = 2000;
constexpr double kSoundMargin = -1e-8;
constexpr double kSoundSeconds = 300.0;
constexpr double kFockTol = 1e-4;
constexpr int kFockCutoff = 30;
constexpr double kCommTol = 1e-10;
constexpr double kHermTol = 1e-12;
constexpr double kCasimirTol = 1e-10;

struct Check {
  bool ok = true;
  std::ostringstream note;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << " [" << what << "]";
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      ok = false;
      note << " [" << what << ": got " << got << ", want " << want << " +- " << tol << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// 1. optimizer reproduces the tabulated gains.
Check gain_table() {
  Check c;
  struct Row {
    double r, gh, gg, eh, eg;
  };
  const std::vector<Row> rows{{0.0, 0.00, 0.00, 0.00, 0.00},  {0.25, 0.36, -0.27, 0.33, -0.33},
                              {0.5, 0.68, -0.40, 0.54, -0.54}, {0.75, 0.86, -0.46, 0.64, -0.64},
                              {1.0, 0.95, -0.49, 0.68, -0.68}, {1.5, 0.99, -0.50, 0.70, -0.70},
                              {2.0, 1.00, -0.50, 0.70, -0.70}};
  std::vector<double> rs;
  for (const auto& row : rows) rs.push_back(row.r);
  const auto t0 = std::chrono::steady_clock::now();
  const auto ghz = optimize::sweep(presets::moment_source("cv_ghz", {}), rs);
  const auto epr = optimize::sweep(presets::moment_source("cv_epr", {}), rs);
  const double elapsed = seconds_since(t0);
  optimize::OptimizerSpec prod;
  prod.objective = optimize::Objective::product_ratio;
  const auto ghz_p = optimize::sweep(presets::moment_source("cv_ghz", {}), rs, prod);
  const auto epr_p = optimize::sweep(presets::moment_source("cv_epr", {}), rs, prod);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string r = "r=" + fmt(rows[i].r);
    c.near(ghz.rows[i].h(), rows[i].gh, kGainTol, "ghz h " + r);
    c.near(ghz.rows[i].g(), rows[i].gg, kGainTol, "ghz g " + r);
    c.near(epr.rows[i].h(), rows[i].eh, kGainTol, "epr h " + r);
    c.near(epr.rows[i].g(), rows[i].eg, kGainTol, "epr g " + r);
    std::cout << "    " << r << "  ghz sum (" << fmt(ghz.rows[i].h()) << ", " << fmt(ghz.rows[i].g()) << ") product ("
              << fmt(ghz_p.rows[i].h()) << ", " << fmt(ghz_p.rows[i].g()) << ")  epr sum (" << fmt(epr.rows[i].h())
              << ", " << fmt(epr.rows[i].g()) << ") product (" << fmt(epr_p.rows[i].h()) << ", "
              << fmt(epr_p.rows[i].g()) << ")\n";
  }
  c.expect(elapsed < kTableSeconds, "runtime " + fmt(elapsed) + " s");
  c.note << " sum-objective sweep " << fmt(elapsed) << " s";
  return c;
}

/// Var(X_0 + h(X_1 + X_2)) and Var(P_0 + g(P_1 + P_2)) of the single-squeezed tripartite network.
std::pair<double, double> tripartite_variances(double r) {
  const MomentSet m = presets::make_preset("single_squeezed_tripartite", {{"r", io::format_number(r)}}).moments;
  return {m.variance_x(Eigen::Vector3d(1, -0.5, -0.5)), m.variance_y(Eigen::Vector3d(1, 0.5, 0.5))};
}

// 2. single-squeezed tripartite variances as tabulated, threshold ln(2)/2.
Check tripartite_formulas() {
  Check c;
  for (double r : {0.0, 0.25, 0.5, 1.0, 2.0}) {
    const auto [vx, vp] = tripartite_variances(r);
    c.near(vx, 1.5, kFormulaTol, "X r=" + fmt(r));
    c.near(vp, (2.0 / 3.0) * std::exp(-2 * r) + 1.0 / 6.0, kFormulaTol, "P r=" + fmt(r));
  }
  const double cut = std::log(2.0) / 2.0;
  for (double r : {cut - 0.01, cut + 0.01}) {
    const auto [vx, vp] = tripartite_variances(r);
    c.expect((vx + vp < 2.0) == (r > cut), "sum < 2 at r=" + fmt(r) + " is " + (vx + vp < 2.0 ? "true" : "false"));
  }
  return c;
}

// 3. single-squeezed four-partite variances, threshold ln 3.
Check fourpartite_formulas() {
  Check c;
  const double t = 1.0 / 3.0;
  const criteria::GainVector g{Eigen::Vector4d(1, -t, -t, -t), Eigen::Vector4d(1, t, t, t)};
  for (double r : {0.0, 0.25, 0.5, 1.0, 2.0}) {
    const MomentSet m = presets::make_preset("single_squeezed_fourpartite", {{"r", io::format_number(r)}}).moments;
    c.near(m.variance_x(g.h), 4.0 / 3.0, kFormulaTol, "X r=" + fmt(r));
    c.near(m.variance_y(g.g), std::exp(-2 * r) + 1.0 / 3.0, kFormulaTol, "P r=" + fmt(r));
  }
  const double cut = std::log(3.0);
  for (double r : {cut - 0.01, cut + 0.01}) {
    const MomentSet m = presets::make_preset("single_squeezed_fourpartite", {{"r", io::format_number(r)}}).moments;
    const auto res = criteria::cv_sum(m, g);
    c.near(res.rhs, 16.0 / 9.0, kFormulaTol, "bound");
    c.expect((res.verdict != Verdict::inconclusive) == (r > cut), "verdict at r=" + fmt(r));
  }
  return c;
}

double pauli_c() { return spin::planar_bound(0.5, spin::Units::pauli).value; }

// 4. GHZ inference criterion.
Check ghz_inference() {
  Check c;
  const auto r = qudit::criterion5_evaluate(qudit::ghz_state(3), qudit::ghz_strategy(), pauli_c());
  for (int k = 0; k < 3; ++k) c.near(r.b[static_cast<std::size_t>(k)], 0.0, kExactTol, "B_" + std::to_string(k + 1));
  c.near(r.sum(), 0.0, kExactTol, "sum");
  c.near(r.bound, 1.0, kPlanarHalfTol, "C");
  c.expect(r.genuine(), "genuine verdict");
  return c;
}

// 5. W inference criterion.
Check w_inference() {
  Check c;
  const auto r = qudit::criterion5_evaluate(qudit::w_state(3), qudit::w_strategy(), pauli_c());
  for (int k = 0; k < 3; ++k) c.near(r.b[static_cast<std::size_t>(k)], 0.5, kExactTol, "B_" + std::to_string(k + 1));
  c.expect(r.full_inseparability(), "full inseparability");
  c.expect(!r.genuine(), "genuine verdict must be false");
  return c;
}

std::map<double, double> planar_golden() {
  std::ifstream f(std::string(SPINENT_GOLDEN_DIR) + "/planar_bound.csv");
  std::map<double, double> out;
  std::string line;
  std::getline(f, line);
  while (std::getline(f, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    out[std::stod(line.substr(0, comma))] = std::stod(line.substr(comma + 1));
  }
  return out;
}

// 6. planar bound.
Check planar() {
  Check c;
  c.near(spin::planar_bound(0.5).value, 0.25, kPlanarHalfTol, "J=1/2");
  c.near(spin::planar_bound(0.5, spin::Units::pauli).value, 1.0, kPlanarHalfTol, "J=1/2 Pauli");
  const auto golden = planar_golden();
  for (double j : {1.0, 1.5, 2.0}) {
    const auto it = golden.find(j);
    if (it == golden.end()) {
      c.expect(false, "no golden value for J=" + fmt(j));
      continue;
    }
    c.near(spin::planar_bound(j).value, it->second, kPlanarGoldenTol, "J=" + fmt(j));
  }
  return c;
}

// 7. soundness on random biseparable states.
Check soundness() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& id : oracle::soundness_suite()) {
    const auto rep = oracle::soundness_scan(id, kSoundTrials, 1);
    std::cout << "    " << id << " worst margin " << rep.worst_margin << "\n";
    c.expect(rep.worst_margin >= kSoundMargin, id + " worst margin " + std::to_string(rep.worst_margin));
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < kSoundSeconds, "runtime " + fmt(elapsed) + " s");
  c.note << " " << oracle::soundness_suite().size() << " criteria x " << kSoundTrials << " trials in " << fmt(elapsed)
         << " s";
  return c;
}

// 8. coherent product saturates the sum and product bounds.
Check saturation() {
  Check c;
  const auto up = qudit::product_state(std::vector<VectorC>(3, qudit::basis_vector(2, 0)));
  const MomentSet m = qudit::site_moments(up, spin::spin_matrices(0.5));
  const criteria::GainVector g{VectorR::Ones(3), VectorR::Ones(3)};
  const auto s = criteria::criterion1_sum(m, g);
  const auto p = criteria::criterion3_product(m, g);
  c.near(s.lhs, 1.5, kExactTol, "sum lhs");
  c.near(s.rhs, 1.5, kExactTol, "sum rhs");
  c.near(p.lhs, 0.75, kExactTol, "product lhs");
  c.near(p.rhs, 0.75, kExactTol, "product rhs");
  return c;
}

// 9. Fock simulation agrees with the covariance simulator.
Check fock_equivalence() {
  Check c;
  std::ifstream f(std::string(SPINENT_SAMPLES_DIR) + "/fig4.net");
  std::stringstream ss;
  ss << f.rdbuf();
  const auto net = io::parse_network(ss.str(), 0.3);
  const auto fock = oracle::fock_simulate(net, kFockCutoff);
  const auto a = oracle::fock_quadrature_moments(fock.state);
  const auto b = gaussian::run_network(net);
  const double worst = (a.cov - b.cov).cwiseAbs().maxCoeff();
  c.expect(worst <= kFockTol, "max covariance deviation " + std::to_string(worst));
  c.note << " max deviation " << worst;
  return c;
}

// 10. operator algebra.
Check algebra() {
  Check c;
  for (int twice = 1; twice <= 20; ++twice) {
    const double j = twice / 2.0;
    const auto s = spin::spin_matrices(j);
    const std::string tag = "J=" + fmt(j);
    c.expect(spin::commutator_residual(s) < kCommTol, "commutator " + tag);
    c.expect(spin::hermiticity_residual(s) < kHermTol, "hermiticity " + tag);
    const MatrixC cas = s.x() * s.x() + s.y() * s.y() + s.z() * s.z();
    const double dev = (cas - MatrixC::Identity(s.dim(), s.dim()) * (j * (j + 1))).cwiseAbs().maxCoeff();
    c.expect(dev < kCasimirTol, "Casimir " + tag);
  }
  for (int n : {1, 2, 4, 10, 20, 30}) {
    const auto sch = spin::schwinger_operators(n);
    const auto sto = spin::stokes_operators(n);
    const std::string tag = "cutoff " + std::to_string(n);
    c.expect(spin::commutator_residual(sch) < kCommTol, "Schwinger commutator " + tag);
    c.expect(spin::hermiticity_residual(sch) < kHermTol, "Schwinger hermiticity " + tag);
    c.expect(spin::commutator_residual(sto) < kCommTol, "Stokes commutator " + tag);
    c.expect(spin::hermiticity_residual(sto) < kHermTol, "Stokes hermiticity " + tag);
    c.expect(sto.scale == 2.0, "Stokes scale " + tag);
    double diff = 0.0;
    for (int k = 0; k < 3; ++k) diff = std::max(diff, (sto.ops[k] - 2.0 * sch.ops[k]).cwiseAbs().maxCoeff());
    c.expect(diff < kHermTol, "Stokes factor of two " + tag);
  }
  return c;
}

struct Entry {
  int id;
  const char* title;
  std::function<Check()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only N]\n";
      return 2;
    }
  }
  const std::vector<Entry> entries{
      {1, "optimal gain table (cv_ghz, cv_epr)", gain_table},
      {2, "single-squeezed tripartite variances", tripartite_formulas},
      {3, "single-squeezed four-partite variances", fourpartite_formulas},
      {4, "GHZ inference criterion", ghz_inference},
      {5, "W inference criterion", w_inference},
      {6, "planar uncertainty bound", planar},
      {7, "soundness on biseparable states", soundness},
      {8, "coherent product saturation", saturation},
      {9, "Fock vs covariance simulation", fock_equivalence},
      {10, "operator algebra", algebra},
  };
  bool all = true, ran = false;
  for (const auto& e : entries) {
    if (only && e.id != only) continue;
    ran = true;
    Check c;
    try {
      c = e.run();
    } catch (const std::exception& ex) {
      c.ok = false;
      c.note << " exception: " << ex.what();
    }
    all = all && c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << e.id << " " << e.title << ":" << c.note.str() << std::endl;
  }
  if (!ran) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return all ? 0 : 1;
}
