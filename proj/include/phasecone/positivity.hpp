#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "phasecone/core.hpp"

namespace phasecone::positivity {

// Default verdict tolerances: analytic evaluators are limited only by
// round-off; grid-interpolated fields carry bilinear-interpolation noise
// into the Gram entries and get a looser budget.
inline constexpr double kAnalyticTol = 1e-9;
inline constexpr double kFieldTol = 1e-6;

// Published seeds for the standard sample sets.
inline constexpr std::uint64_t kLatticeSeed = 20240901;
inline constexpr std::uint64_t kRandomSeed = 20240902;

// Finite collection of phase points used to sample positivity structure.
class SampleSet {
 public:
  // 7x7 origin-centered lattice of spacing 0.7 plus one seeded random point
  // in [-3,3]^2 (50 points).  Lattices expose periodic-multiplier
  // degeneracies that random sets miss.
  static SampleSet lattice50(std::uint64_t seed = kLatticeSeed);
  // 50 seeded random points in [-3,3]^2.
  static SampleSet random50(std::uint64_t seed = kRandomSeed);
  // 4x4 origin-centered lattice of spacing 3.2 plus one seeded random point
  // (17 points).  Wide spacing keeps the vacuum-kernel Gram well conditioned
  // (min eigenvalue ~0.3), so grid-interpolated evaluations get a verdict on
  // the function itself rather than on interpolation noise.
  static SampleSet sparse17(std::uint64_t seed = kLatticeSeed);
  static SampleSet random_box(int count, double half_width,
                              std::uint64_t seed);
  static SampleSet from_points(std::vector<PhasePoint> points,
                               std::string provenance = "user");

  const std::vector<PhasePoint>& points() const { return points_; }
  int size() const { return static_cast<int>(points_.size()); }
  const std::string& provenance() const { return provenance_; }
  std::uint64_t seed() const { return seed_; }

 private:
  SampleSet(std::vector<PhasePoint> points, std::string provenance,
            std::uint64_t seed);

  std::vector<PhasePoint> points_;
  std::string provenance_;
  std::uint64_t seed_;
};

// Eigenvalue evidence of a positivity test.
struct PSDReport {
  int gram_dim = 0;
  double min_eig = 0.0;
  double max_eig = 0.0;
  double hermiticity_defect = 0.0;
  bool pass = false;
  double tolerance_used = 0.0;
};

using CharEval = std::function<cdouble(PhasePoint)>;

// Evaluator over a tabulated field (bilinear off-node); throws OutOfGrid
// when asked outside the tabulated square.  Copies the field.
CharEval field_evaluator(ComplexField f);

// G[j,k] = chi(z_k - z_j).
Eigen::MatrixXcd classical_gram(const CharEval& chi, const SampleSet& s);

// G[j,k] = chi(z_k - z_j) * exp(i w(z_j, z_k) / 2): the multiplier-weighted
// kernel whose quadratic form is an operator expectation and hence
// nonnegative exactly when chi is of quantum positive type.
Eigen::MatrixXcd quantum_gram(const CharEval& chi, const SampleSet& s);

// Hermitizes (G + G^dagger)/2 recording the defect, solves eigenvalues,
// verdict pass iff min_eig >= -tol * max(max_eig, 1).
PSDReport psd_verdict(const Eigen::MatrixXcd& gram, double tol);

PSDReport pd_test_classical(const CharEval& chi, const SampleSet& s,
                            double tol = kAnalyticTol);
PSDReport pd_test_quantum(const CharEval& chi, const SampleSet& s,
                          double tol = kAnalyticTol);

// Double-quadrature forms; `value` must be >= -tol for positive-type chi.
struct IntegralFormResult {
  double value = 0.0;
  double imag_residue = 0.0;
};

// integral integral conj(phi(z)) phi(z') chi(z - z') dz dz'.
IntegralFormResult integral_form_test_classical(const ComplexField& chi,
                                                const ComplexField& phi);

// Same with the multiplier exp(i w(z', z) / 2) under the integral.
IntegralFormResult integral_form_test_quantum(const ComplexField& chi,
                                              const ComplexField& phi);

// Node-wise product; closure device: classical-positive times
// quantum-positive stays quantum-positive.
ComplexField hadamard_product(const ComplexField& f, const ComplexField& g);

// Point-wise product of evaluators.
CharEval product_evaluator(CharEval a, CharEval b);

// Closed-form transform of the Normal(mean, cov) measure under the
// antisymmetric kernel, exp(i w(z, mean) - q(z)/2) with
// q(z) = <Jz, cov Jz>, Jz = (p, -q).  Throws BadCovariance unless cov is
// symmetric PSD (1e-12 slack).
CharEval gaussian_measure_char(const Eigen::Vector2d& mean,
                               const Eigen::Matrix2d& cov);

// Transform of the point mass at v: z -> exp(i w(z, v)).
CharEval point_mass_char(PhasePoint v);

// Evaluates the closed-form transform of Normal(mean, cov) and runs the
// classical tester; Bochner direction says it must pass.
PSDReport bochner_roundtrip_classical(const Eigen::Vector2d& mean,
                                      const Eigen::Matrix2d& cov,
                                      const SampleSet& s,
                                      double tol = kAnalyticTol);

// Same round-trip with the transform estimated from seeded Monte-Carlo
// draws of the measure; tolerance sized to sampling noise.
PSDReport bochner_roundtrip_empirical(const Eigen::Vector2d& mean,
                                      const Eigen::Matrix2d& cov,
                                      const SampleSet& s, int draws,
                                      std::uint64_t seed, double tol = 1e-2);

}  // namespace phasecone::positivity
