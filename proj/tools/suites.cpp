#include "suites.hpp"

#include <cmath>
#include <cstdio>

#include "phasecone/corpus.hpp"
#include "phasecone/fock.hpp"
#include "phasecone/positivity.hpp"
#include "phasecone/rng.hpp"
#include "phasecone/semigroups.hpp"
#include "phasecone/transforms.hpp"
#include "phasecone/twisted.hpp"

namespace phasecone::suites {

namespace {

using config::RunConfig;
using positivity::PSDReport;
using positivity::SampleSet;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Scaled negative part matching the verdict rule min_eig >= -tol max(max_eig, 1).
double scaled_deficit(const PSDReport& r) {
  return std::max(0.0, -r.min_eig) / std::max(r.max_eig, 1.0);
}

Check psd_check(std::string name, const PSDReport& r) {
  return {std::move(name), scaled_deficit(r), r.tolerance_used, r.pass};
}

}  // namespace

std::vector<Check> multiplier_suite(const RunConfig& cfg) {
  const int dim = cfg.fock_dim;
  // Leading-half-block comparison, the project standard for truncation
  // sensitive assertions.  Radii stay below 1.8 so the truncated-product
  // tail sits far under the 1e-8 budget at the default dimension.
  const int inner = std::max(2, dim / 2);
  const std::vector<PhasePoint> pts = {
      {0.0, 0.0}, {1.8, 0.0}, {0.0, 1.8}, {1.2, -1.2}, {-0.8, 1.4}};
  double worst = 0.0;
  for (PhasePoint z : pts)
    for (PhasePoint w : pts) {
      fock::FockOperator lhs = fock::op_product(fock::displacement(z, dim),
                                                fock::displacement(w, dim));
      fock::FockOperator rhs = std::conj(weyl_multiplier(z, w)) *
                               fock::displacement(z + w, dim);
      worst = std::max(worst, (lhs.matrix() - rhs.matrix())
                                  .topLeftCorner(inner, inner)
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  return {{"multiplier-composition", worst, 1e-8, worst <= 1e-8}};
}

std::vector<Check> star_suite(const RunConfig& cfg, bool flip_sign) {
  const int dim = cfg.fock_dim;
  const PhaseGrid grid = config::grid_of(cfg);
  const int sign = flip_sign ? -1 : 1;
  const std::vector<std::pair<PhasePoint, PhasePoint>> pairs = {
      {{1.0, 0.5}, {-0.7, 0.3}},
      {{2.0, 0.0}, {0.0, 1.0}},
      {{0.5, -1.0}, {1.0, 1.0}}};
  std::vector<Check> checks;
  int idx = 0;
  for (const auto& [za, zb] : pairs) {
    ++idx;
    fock::DensityState rho =
        fock::state_coherent(fock::coherent_amplitude(za), dim);
    fock::DensityState sigma =
        fock::state_coherent(fock::coherent_amplitude(zb), dim);
    transforms::CharFunction product = transforms::dequantize(
        fock::op_product(rho.op(), sigma.op()), grid);
    transforms::CharFunction fa = transforms::dequantize(rho.op(), grid);
    transforms::CharFunction fb = transforms::dequantize(sigma.op(), grid);
    ComplexField star =
        twisted::twisted_convolve(fa.field(), fb.field(), sign);
    double dev = 0.0;
    const auto& got = star.values();
    const auto& want = product.field().values();
    for (std::size_t i = 0; i < got.size(); ++i)
      dev = std::max(dev, std::abs(got[i] - want[i]));
    checks.push_back({"star-vs-product pair " + std::to_string(idx), dev,
                      1e-3, dev <= 1e-3});
  }
  return checks;
}

std::vector<Check> bochner_suite(const RunConfig& cfg) {
  std::vector<Check> checks;
  const SampleSet lattice = SampleSet::lattice50();
  const SampleSet random = SampleSet::random50();
  for (const auto& named : corpus::standard_states(cfg.fock_dim)) {
    positivity::CharEval chi = transforms::char_evaluator(named.state.op());
    checks.push_back(psd_check(
        "quantum-gram " + named.name + " lattice",
        positivity::pd_test_quantum(chi, lattice, cfg.psd_tol_analytic)));
    checks.push_back(psd_check(
        "quantum-gram " + named.name + " random",
        positivity::pd_test_quantum(chi, random, cfg.psd_tol_analytic)));
  }
  Eigen::Vector2d mean(0.4, -0.3);
  Eigen::Matrix2d cov;
  cov << 0.6, 0.1, 0.1, 0.3;
  checks.push_back(psd_check(
      "classical-gram normal measure",
      positivity::bochner_roundtrip_classical(mean, cov, lattice,
                                              cfg.psd_tol_analytic)));
  checks.push_back(
      psd_check("classical-gram point mass",
                positivity::pd_test_classical(
                    positivity::point_mass_char({1.0, -2.0}), random,
                    cfg.psd_tol_analytic)));
  return checks;
}

std::vector<Check> schur_suite(const RunConfig& cfg) {
  Rng rng(cfg.seed);
  const auto states = corpus::standard_states(cfg.fock_dim);
  const SampleSet lattice = SampleSet::lattice50();
  double worst_deficit = 0.0;
  double worst_origin = 0.0;
  bool all_pass = true;
  for (int i = 0; i < 100; ++i) {
    positivity::CharEval classical;
    if (rng.uniform01() < 0.5) {
      classical = positivity::point_mass_char(
          {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
    } else {
      Eigen::Vector2d mean(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      double a = rng.uniform(0.1, 0.8);
      double b = rng.uniform(0.1, 0.8);
      double r = rng.uniform(-0.5, 0.5) * std::sqrt(a * b);
      Eigen::Matrix2d cov;
      cov << a, r, r, b;
      classical = positivity::gaussian_measure_char(mean, cov);
    }
    const auto& named = states[static_cast<std::size_t>(i) % states.size()];
    positivity::CharEval prod = positivity::product_evaluator(
        classical, transforms::char_evaluator(named.state.op()));
    PSDReport rep =
        positivity::pd_test_quantum(prod, lattice, cfg.psd_tol_analytic);
    all_pass = all_pass && rep.pass;
    worst_deficit = std::max(worst_deficit, scaled_deficit(rep));
    worst_origin = std::max(worst_origin, std::abs(prod({0.0, 0.0}) - 1.0));
  }
  return {{"product-closure 100 draws", worst_deficit, cfg.psd_tol_analytic,
           all_pass},
          {"product-closure origin", worst_origin, 1e-10,
           worst_origin <= 1e-10}};
}

std::vector<Check> intertwine_suite(const RunConfig& cfg) {
  const int dim = cfg.fock_dim;
  const PhaseGrid grid = config::grid_of(cfg);
  const semigroups::TwirlingQuadrature quad = config::quadrature_of(cfg);
  std::vector<std::pair<std::string, fock::DensityState>> states;
  states.emplace_back("vacuum", fock::state_vacuum(dim));
  states.emplace_back("cat(1.5)", fock::state_cat({1.5, 0.0}, dim));

  std::vector<Check> checks;
  semigroups::GaussianSemigroupParams diffusion;
  diffusion.covariance = 0.5 * Eigen::Matrix2d::Identity();
  for (double t : {0.25, 0.5})
    for (const auto& [name, state] : states) {
      double dev =
          semigroups::intertwine_verify(diffusion, t, state, quad, grid);
      checks.push_back({"evolution-routes " + name + " t=" + num(t), dev,
                        1e-3, dev <= 1e-3});
    }
  semigroups::GaussianSemigroupParams drift;
  drift.drift << 1.0, 0.0;
  for (const auto& [name, state] : states) {
    double dev = semigroups::intertwine_verify(drift, 1.0, state, quad, grid);
    checks.push_back(
        {"evolution-routes drift " + name, dev, 1e-6, dev <= 1e-6});
  }
  return checks;
}

std::vector<Check> run_suite(const std::string& name, const RunConfig& cfg,
                             bool flip_sign) {
  if (name == "multiplier") return multiplier_suite(cfg);
  if (name == "star") return star_suite(cfg, flip_sign);
  if (name == "bochner") return bochner_suite(cfg);
  if (name == "schur") return schur_suite(cfg);
  if (name == "intertwine") return intertwine_suite(cfg);
  if (name == "all") {
    std::vector<Check> all = multiplier_suite(cfg);
    for (auto&& c : star_suite(cfg, flip_sign)) all.push_back(std::move(c));
    for (auto&& c : bochner_suite(cfg)) all.push_back(std::move(c));
    for (auto&& c : schur_suite(cfg)) all.push_back(std::move(c));
    for (auto&& c : intertwine_suite(cfg)) all.push_back(std::move(c));
    return all;
  }
  throw ParseError("unknown verify suite \"" + name + "\"");
}

}  // namespace phasecone::suites
