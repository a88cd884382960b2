#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <limits>

#include "doctest.h"
#include "phasecone/fock.hpp"
#include "phasecone/positivity.hpp"
#include "phasecone/semigroups.hpp"
#include "phasecone/transforms.hpp"
#include "phasecone/warnings.hpp"

using namespace phasecone;
using namespace phasecone::semigroups;

namespace {

GaussianSemigroupParams isotropic(double sigma2) {
  GaussianSemigroupParams p;
  p.covariance = sigma2 * Eigen::Matrix2d::Identity();
  return p;
}

GaussianSemigroupParams drift_only(double vq, double vp) {
  GaussianSemigroupParams p;
  p.drift << vq, vp;
  return p;
}

GaussianSemigroupParams full_params() {
  GaussianSemigroupParams p;
  p.drift << 1.0, -0.5;
  p.covariance << 0.5, 0.2, 0.2, 0.8;
  return p;
}

const PhaseGrid kGrid(10.0, 128);

double interior_diff(const fock::FockOperator& a, const fock::FockOperator& b,
                     int block) {
  return (a.matrix().topLeftCorner(block, block) -
          b.matrix().topLeftCorner(block, block))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace

TEST_CASE("parameter and time validation") {
  GaussianSemigroupParams bad;
  bad.covariance << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(validate(bad), BadCovariance);
  bad.covariance << 1.0, 0.0, 0.0, -0.3;
  CHECK_THROWS_AS(validate(bad), BadCovariance);
  CHECK_NOTHROW(validate(isotropic(0.0)));

  CHECK_THROWS_AS(gaussian_char(isotropic(0.5), -1.0), NegativeTime);
  CHECK_THROWS_AS(
      gaussian_char(isotropic(0.5), std::numeric_limits<double>::quiet_NaN()),
      NegativeTime);
  CHECK_THROWS_AS(twirl_nodes(isotropic(0.5), -0.25,
                              TwirlingQuadrature::gauss_hermite()),
                  NegativeTime);
}

TEST_CASE("quadrature parameter floors") {
  CHECK_THROWS_AS(twirl_nodes(isotropic(0.5), 0.5,
                              TwirlingQuadrature::gauss_hermite(3)),
                  InvalidDimension);
  CHECK_THROWS_AS(
      twirl_nodes(isotropic(0.5), 0.5, TwirlingQuadrature::monte_carlo(500)),
      InvalidDimension);
}

TEST_CASE("tensorized nodes carry probability weights") {
  auto nodes = twirl_nodes(full_params(), 0.5,
                           TwirlingQuadrature::gauss_hermite(20));
  CHECK(nodes.size() == 400);
  double total = 0.0;
  for (const WeightedNode& n : nodes) {
    CHECK(n.weight > 0.0);
    total += n.weight;
  }
  CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("degenerate measures collapse to a single exact node") {
  auto at_zero = twirl_nodes(full_params(), 0.0,
                             TwirlingQuadrature::gauss_hermite());
  REQUIRE(at_zero.size() == 1);
  CHECK(at_zero[0].z.q == 0.0);
  CHECK(at_zero[0].z.p == 0.0);
  CHECK(at_zero[0].weight == 1.0);

  auto pure_drift = twirl_nodes(drift_only(2.0, 1.0), 0.5,
                                TwirlingQuadrature::monte_carlo());
  REQUIRE(pure_drift.size() == 1);
  CHECK(pure_drift[0].z.q == 1.0);
  CHECK(pure_drift[0].z.p == 0.5);
}

TEST_CASE("seeded draws are reproducible with uniform weights") {
  auto a = twirl_nodes(isotropic(0.5), 0.5,
                       TwirlingQuadrature::monte_carlo(2000, 99));
  auto b = twirl_nodes(isotropic(0.5), 0.5,
                       TwirlingQuadrature::monte_carlo(2000, 99));
  REQUIRE(a.size() == 2000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].z.q == b[i].z.q);
    CHECK(a[i].z.p == b[i].z.p);
    CHECK(a[i].weight == 1.0 / 2000.0);
  }
}

TEST_CASE("time-t multiplier: normalization, bound, closed form") {
  positivity::CharEval mult = gaussian_char(isotropic(0.5), 0.5);
  CHECK(std::abs(mult({0.0, 0.0}) - cdouble{1.0, 0.0}) < 1e-15);
  for (PhasePoint z :
       {PhasePoint{1.0, 0.0}, PhasePoint{-2.0, 3.0}, PhasePoint{0.3, -4.0}}) {
    CHECK(std::abs(mult(z)) <= 1.0 + 1e-15);
    double want = std::exp(-0.5 * 0.5 * 0.5 * norm_sq(z));
    CHECK(std::abs(mult(z) - cdouble{want, 0.0}) < 1e-14);
  }

  positivity::CharEval frozen = gaussian_char(full_params(), 0.0);
  CHECK(std::abs(frozen({1.7, -0.4}) - cdouble{1.0, 0.0}) < 1e-15);
}

TEST_CASE("multipliers compose in time node-wise") {
  GaussianSemigroupParams p = full_params();
  positivity::CharEval m1 = gaussian_char(p, 0.3);
  positivity::CharEval m2 = gaussian_char(p, 0.7);
  positivity::CharEval m3 = gaussian_char(p, 1.0);
  for (PhasePoint z :
       {PhasePoint{0.0, 0.0}, PhasePoint{1.3, 0.4}, PhasePoint{-2.1, 1.8}}) {
    CHECK(std::abs(m1(z) * m2(z) - m3(z)) < 1e-12);
  }
}

TEST_CASE("table-side evolution composes and contracts") {
  transforms::CharFunction chi =
      transforms::dequantize(fock::state_vacuum(64).op(), kGrid);
  GaussianSemigroupParams p = isotropic(0.5);

  transforms::CharFunction two_steps = cq_apply(p, 0.25, cq_apply(p, 0.25, chi));
  transforms::CharFunction one_step = cq_apply(p, 0.5, chi);
  double worst = 0.0;
  for (std::size_t i = 0; i < chi.field().values().size(); ++i)
    worst = std::max(worst, std::abs(two_steps.field().values()[i] -
                                     one_step.field().values()[i]));
  CHECK(worst < 1e-12);

  double before = purity_from_char(chi);
  double after = purity_from_char(one_step);
  double later = purity_from_char(cq_apply(p, 1.0, chi));
  CHECK(after <= before + 1e-12);
  CHECK(later < after);
  CHECK(std::abs(before - 1.0) < 1e-4);
}

TEST_CASE("operator-side evolution satisfies the semigroup law") {
  fock::DensityState vac = fock::state_vacuum(64);
  GaussianSemigroupParams p = isotropic(0.5);
  TwirlingQuadrature quad = TwirlingQuadrature::gauss_hermite(20);
  fock::DensityState two =
      twirl_apply(p, 0.25, twirl_apply(p, 0.25, vac, quad), quad);
  fock::DensityState one = twirl_apply(p, 0.5, vac, quad);
  CHECK(interior_diff(two.op(), one.op(), 32) < 1e-3);
}

TEST_CASE("averaging preserves trace and reports its evidence") {
  warn::Capture capture;
  TwirlReport report = twirl_apply_detailed(
      isotropic(0.5), 0.25, fock::state_thermal(1.0, 64),
      TwirlingQuadrature::gauss_hermite(20));
  CHECK(report.node_count == 400);
  CHECK(report.trace_drift <= 1e-6);
  CHECK(report.out_of_trust_weight == 0.0);
  CHECK_FALSE(capture.has(warn::Code::truncation));
}

TEST_CASE("far-spread quadratures leak weight and warn, short ones do not") {
  // At t = 1 the widest tensor nodes poke past the displacement trust
  // radius with weight around 1e-13, absorbed by renormalization.
  warn::Capture capture;
  TwirlReport report =
      twirl_apply_detailed(isotropic(0.5), 1.0, fock::state_vacuum(64),
                           TwirlingQuadrature::gauss_hermite(20));
  CHECK(report.out_of_trust_weight > 0.0);
  CHECK(report.out_of_trust_weight < 1e-6);
  CHECK(capture.has(warn::Code::truncation));
}

TEST_CASE("quadrature mass outside the trust region is an error") {
  CHECK_THROWS_AS(twirl_apply(drift_only(10.0, 0.0), 1.0,
                              fock::state_vacuum(64),
                              TwirlingQuadrature::gauss_hermite(20)),
                  TruncationError);
}

TEST_CASE("noise widens the vacuum at the published purity rate") {
  GaussianSemigroupParams p = isotropic(0.5);
  TwirlingQuadrature quad = TwirlingQuadrature::gauss_hermite(20);
  fock::DensityState vac = fock::state_vacuum(64);
  double previous = 2.0;
  for (double t : {0.25, 0.5, 1.0}) {
    fock::DensityState evolved = twirl_apply(p, t, vac, quad);
    double want = 1.0 / (1.0 + 2.0 * t * 0.5);
    double op_route = fock::purity(evolved);
    double char_route =
        purity_from_char(transforms::dequantize(evolved.op(), kGrid));
    CHECK(std::abs(op_route - want) < 1e-3);
    CHECK(std::abs(char_route - want) < 1e-3);
    CHECK(op_route < previous);
    previous = op_route;
  }
}

TEST_CASE("evolved states stay inside the positivity cone") {
  fock::DensityState evolved =
      twirl_apply(isotropic(0.5), 0.5, fock::state_vacuum(64),
                  TwirlingQuadrature::gauss_hermite(20));
  transforms::CharFunction chi = transforms::dequantize(evolved.op(), kGrid);
  CHECK(std::abs(chi.field().sample({0.0, 0.0}) - cdouble{1.0, 0.0}) < 1e-8);
  positivity::PSDReport r = positivity::pd_test_quantum(
      transforms::char_evaluator(evolved.op()), positivity::SampleSet::lattice50());
  CHECK(r.pass);
}

TEST_CASE("deterministic and sampled averaging agree") {
  GaussianSemigroupParams p = isotropic(0.5);
  fock::DensityState vac = fock::state_vacuum(64);
  fock::DensityState gh =
      twirl_apply(p, 0.5, vac, TwirlingQuadrature::gauss_hermite(20));
  fock::DensityState mc =
      twirl_apply(p, 0.5, vac, TwirlingQuadrature::monte_carlo(100000));
  ComplexField chi_gh = transforms::dequantize(gh.op(), kGrid).field();
  ComplexField chi_mc = transforms::dequantize(mc.op(), kGrid).field();
  double worst = 0.0;
  for (std::size_t i = 0; i < chi_gh.values().size(); ++i)
    worst = std::max(worst, std::abs(chi_gh.values()[i] - chi_mc.values()[i]));
  CHECK(worst < 3e-2);
}

TEST_CASE("the two evolution routes intertwine through dequantization") {
  TwirlingQuadrature quad = TwirlingQuadrature::gauss_hermite(20);
  fock::DensityState vac = fock::state_vacuum(64);

  CHECK(intertwine_verify(isotropic(0.5), 0.0, vac, quad, kGrid) <= 1e-10);
  CHECK(intertwine_verify(drift_only(1.0, 0.0), 1.0, vac, quad, kGrid) <=
        1e-6);
  CHECK(intertwine_verify(isotropic(0.5), 0.5, vac, quad, kGrid) <= 1e-3);
}
