#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "phasecone/fock.hpp"
#include "phasecone/rng.hpp"
#include "phasecone/transforms.hpp"
#include "phasecone/twisted.hpp"

using namespace phasecone;

namespace {

constexpr double kPi = std::numbers::pi;

double max_node_diff(const ComplexField& a, const ComplexField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  return worst;
}

ComplexField gaussian_envelope_field(const PhaseGrid& grid,
                                     std::uint64_t seed) {
  Rng rng(seed);
  PhasePoint shift{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  double wq = rng.uniform(-1.5, 1.5), wp = rng.uniform(-1.5, 1.5);
  cdouble amp{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return ComplexField::tabulate(grid, [=](PhasePoint z) {
    return amp * std::polar(1.0, wq * z.q + wp * z.p) *
           std::exp(-0.35 * norm_sq(z - shift));
  });
}

const PhaseGrid kGrid(10.0, 128);

ComplexField vacuum_char(const PhaseGrid& grid) {
  return ComplexField::tabulate(grid, [](PhasePoint z) {
    return cdouble{std::exp(-0.25 * norm_sq(z)), 0.0};
  });
}

}  // namespace

TEST_CASE("vacuum characteristic table is star-idempotent") {
  ComplexField chi = vacuum_char(kGrid);
  ComplexField prod = twisted::twisted_convolve(chi, chi);
  CHECK(max_node_diff(prod, chi) < 1e-4);
}

TEST_CASE("star with the zero field vanishes") {
  ComplexField f = gaussian_envelope_field(kGrid, 5);
  ComplexField zero(kGrid);
  CHECK(twisted::twisted_convolve(f, zero).max_abs() == 0.0);
  CHECK(twisted::twisted_convolve(zero, f).max_abs() == 0.0);
}

TEST_CASE("star product tracks the operator product") {
  const int dim = 64;
  fock::DensityState a = fock::state_coherent({0.8, 0.2}, dim);
  fock::DensityState b = fock::state_coherent({-0.4, 0.9}, dim);
  ComplexField fa = transforms::dequantize(a.op(), kGrid).field();
  ComplexField fb = transforms::dequantize(b.op(), kGrid).field();
  ComplexField star = twisted::twisted_convolve(fa, fb);
  ComplexField opside =
      transforms::dequantize(fock::op_product(a.op(), b.op()), kGrid).field();
  CHECK(max_node_diff(star, opside) < 1e-3);
}

TEST_CASE("fast star path agrees with the direct quadrature") {
  PhaseGrid grid(6.0, 48);
  ComplexField f = gaussian_envelope_field(grid, 31);
  ComplexField g = gaussian_envelope_field(grid, 32);
  CHECK(max_node_diff(twisted::twisted_convolve(f, g),
                      twisted::twisted_convolve_direct(f, g)) < 1e-6);
  CHECK(max_node_diff(twisted::classical_convolve(f, g),
                      twisted::classical_convolve_direct(f, g)) < 1e-8);
}

TEST_CASE("star products on mismatched grids are rejected") {
  ComplexField f(PhaseGrid(6.0, 48));
  ComplexField g(PhaseGrid(6.0, 64));
  CHECK_THROWS_AS(twisted::twisted_convolve(f, g), GridMismatch);
  CHECK_THROWS_AS(twisted::classical_convolve(f, g), GridMismatch);
}

TEST_CASE("star product is associative on samples") {
  ComplexField f = gaussian_envelope_field(kGrid, 41);
  ComplexField g = gaussian_envelope_field(kGrid, 42);
  ComplexField h = gaussian_envelope_field(kGrid, 43);
  ComplexField left =
      twisted::twisted_convolve(twisted::twisted_convolve(f, g), h);
  ComplexField right =
      twisted::twisted_convolve(f, twisted::twisted_convolve(g, h));
  CHECK(max_node_diff(left, right) < 1e-4);
}

TEST_CASE("star product is genuinely noncommutative") {
  ComplexField f = ComplexField::tabulate(kGrid, [](PhasePoint z) {
    return cdouble{std::exp(-0.5 * norm_sq(z - PhasePoint{1.0, 0.0})), 0.0};
  });
  ComplexField g = ComplexField::tabulate(kGrid, [](PhasePoint z) {
    return cdouble{std::exp(-0.5 * norm_sq(z - PhasePoint{0.0, 1.0})), 0.0};
  });
  ComplexField fg = twisted::twisted_convolve(f, g);
  ComplexField gf = twisted::twisted_convolve(g, f);
  CHECK(max_node_diff(fg, gf) > 1e-2);

  // Flipping the multiplier orientation swaps the operand order exactly,
  // which is what the debug flag in the identity suites relies on.
  ComplexField flipped = twisted::twisted_convolve(f, g, -1);
  CHECK(max_node_diff(flipped, gf) < 1e-12);
}

TEST_CASE("involution is an antihomomorphism of the star algebra") {
  ComplexField f = gaussian_envelope_field(kGrid, 51);
  ComplexField g = gaussian_envelope_field(kGrid, 52);
  ComplexField lhs = twisted::involution_quantum(twisted::twisted_convolve(f, g));
  ComplexField rhs = twisted::twisted_convolve(twisted::involution_quantum(g),
                                               twisted::involution_quantum(f));
  CHECK(max_node_diff(lhs, rhs) < 1e-6);
}

TEST_CASE("involution is idempotent and fixes Hermitian-source tables") {
  ComplexField f = gaussian_envelope_field(kGrid, 61);
  CHECK(max_node_diff(twisted::involution_quantum(twisted::involution_quantum(f)),
                      f) == 0.0);
  CHECK(max_node_diff(
            twisted::involution_classical(twisted::involution_classical(f)),
            f) == 0.0);

  ComplexField chi =
      transforms::dequantize(fock::state_cat({1.5, 0.0}, 64).op(), kGrid)
          .field();
  CHECK(max_node_diff(twisted::involution_quantum(chi), chi) < 1e-8);
}

TEST_CASE("plain convolution of Gaussians matches the closed form") {
  ComplexField g = ComplexField::tabulate(kGrid, [](PhasePoint z) {
    return cdouble{std::exp(-0.5 * norm_sq(z)), 0.0};
  });
  ComplexField conv = twisted::classical_convolve(g, g);
  ComplexField want = ComplexField::tabulate(kGrid, [](PhasePoint z) {
    return cdouble{kPi * std::exp(-0.25 * norm_sq(z)), 0.0};
  });
  CHECK(max_node_diff(conv, want) < 1e-6);
}

TEST_CASE("plain convolution is commutative and positivity-preserving") {
  ComplexField f = ComplexField::tabulate(kGrid, [](PhasePoint z) {
    return cdouble{std::exp(-0.4 * norm_sq(z - PhasePoint{0.7, -0.2})), 0.0};
  });
  ComplexField g = ComplexField::tabulate(kGrid, [](PhasePoint z) {
    return cdouble{std::exp(-0.6 * norm_sq(z - PhasePoint{-0.5, 0.4})), 0.0};
  });
  ComplexField fg = twisted::classical_convolve(f, g);
  ComplexField gf = twisted::classical_convolve(g, f);
  CHECK(max_node_diff(fg, gf) < 1e-8);
  double lowest = 0.0;
  for (const cdouble& v : fg.values()) lowest = std::min(lowest, v.real());
  CHECK(lowest >= -1e-12);
}

TEST_CASE("bilinear pairing: linearity anchors and realness") {
  ComplexField zero(kGrid);
  ComplexField chi = vacuum_char(kGrid);
  CHECK(twisted::pairing(zero, chi) == cdouble{0.0, 0.0});

  ComplexField phi = ComplexField::tabulate(kGrid, [](PhasePoint z) {
    return cdouble{std::exp(-0.8 * norm_sq(z)), 0.0};
  });
  ComplexField one_on_support = ComplexField::tabulate(
      kGrid, [](PhasePoint) { return cdouble{1.0, 0.0}; });
  cdouble total = twisted::pairing(phi, one_on_support);
  CHECK(std::abs(total - grid_integral(phi, Weight::lebesgue)) < 1e-12);

  // Selfadjoint phi (mirror-conjugate symmetric) against a real even chi.
  ComplexField selfadj = ComplexField::tabulate(kGrid, [](PhasePoint z) {
    return std::polar(1.0, 0.9 * z.q - 0.3 * z.p) *
           std::exp(-0.5 * norm_sq(z));
  });
  CHECK(std::abs(twisted::pairing(selfadj, chi).imag()) < 1e-8);
}
