#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "phasecone/core.hpp"
#include "phasecone/fock.hpp"
#include "phasecone/positivity.hpp"
#include "phasecone/transforms.hpp"

namespace phasecone::semigroups {

// Published seed for the Monte-Carlo averaging default.
inline constexpr std::uint64_t kTwirlSeed = 20240903;

// Drift velocity and diffusion per unit time of the Gaussian noise family.
struct GaussianSemigroupParams {
  Eigen::Vector2d drift = Eigen::Vector2d::Zero();
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
};

// Throws BadCovariance unless covariance is symmetric PSD (1e-12 slack).
void validate(const GaussianSemigroupParams& params);

// Discretization rule for averaging over Normal(t drift, t covariance).
struct TwirlingQuadrature {
  enum class Scheme { gauss_hermite, monte_carlo };

  static TwirlingQuadrature gauss_hermite(int order = 20);
  static TwirlingQuadrature monte_carlo(int samples = 100000,
                                        std::uint64_t seed = kTwirlSeed);

  Scheme scheme = Scheme::gauss_hermite;
  int order = 20;        // nodes per axis, >= 4
  int samples = 100000;  // draws, >= 1000
  std::uint64_t seed = kTwirlSeed;
};

struct WeightedNode {
  PhasePoint z;
  double weight = 0.0;
};

// Nodes and weights integrating against Normal(t drift, t covariance):
// tensorized Gauss-Hermite nodes pushed through the symmetric square root
// of the covariance, or seeded draws with uniform weights.  A degenerate
// measure (t = 0 or zero covariance) collapses to the single node t drift
// with weight 1, which the conjugation below then applies exactly.
std::vector<WeightedNode> twirl_nodes(const GaussianSemigroupParams& params,
                                      double t,
                                      const TwirlingQuadrature& quad);

// Time-t multiplier: the transform of Normal(t drift, t covariance) under
// the antisymmetric kernel.  Unit value at the origin, modulus <= 1
// everywhere, multiplicative in t node-wise.  Throws NegativeTime.
positivity::CharEval gaussian_char(const GaussianSemigroupParams& params,
                                   double t);
ComplexField gaussian_char_field(const GaussianSemigroupParams& params,
                                 double t, const PhaseGrid& grid);

// Node-wise product with the time-t multiplier.  The multiplier carries
// the mirror symmetry exactly, so the input's certificate survives.
transforms::CharFunction cq_apply(const GaussianSemigroupParams& params,
                                  double t,
                                  const transforms::CharFunction& chi);

// One averaging step together with its quality evidence.
struct TwirlReport {
  fock::DensityState state;
  double trace_drift = 0.0;          // |trace - 1| before re-pinning
  double out_of_trust_weight = 0.0;  // weight on nodes with |z|^2 > dim/2
  int node_count = 0;
};

// Averaged conjugation sum_k w_k U(z_k) rho U(z_k)^dagger, re-certified.
// The sum is an explicit Kraus form, so complete positivity holds by
// construction.  Throws TruncationError when more than 1e-6 of the
// quadrature weight sits outside the displacement trust region (any
// nonzero leakage below that emits a truncation warning and is absorbed
// by the renormalization), CertificationError when the trace drifts
// further than 1e-4.
TwirlReport twirl_apply_detailed(const GaussianSemigroupParams& params,
                                 double t, const fock::DensityState& rho,
                                 const TwirlingQuadrature& quad);
fock::DensityState twirl_apply(const GaussianSemigroupParams& params, double t,
                               const fock::DensityState& rho,
                               const TwirlingQuadrature& quad);

// Largest node deviation between the transform of the averaged state and
// the multiplier times the transform of the input: the same evolution
// computed along two independent routes, one on operators, one on tables.
double intertwine_verify(const GaussianSemigroupParams& params, double t,
                         const fock::DensityState& rho,
                         const TwirlingQuadrature& quad,
                         const PhaseGrid& grid);

// Normalized squared mass of a characteristic table; equals the purity of
// the represented state when the table decays inside the grid.
double purity_from_char(const transforms::CharFunction& chi);

}  // namespace phasecone::semigroups
