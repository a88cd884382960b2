#include "phasecone/positivity.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <utility>

#include "phasecone/parallel.hpp"
#include "phasecone/rng.hpp"
#include "phasecone/twisted.hpp"

namespace phasecone::positivity {

namespace {

constexpr double kMinSeparation = 1e-6;

bool far_from_all(PhasePoint z, const std::vector<PhasePoint>& points) {
  for (PhasePoint w : points)
    if (std::sqrt(norm_sq(z - w)) < kMinSeparation) return false;
  return true;
}

Eigen::Matrix2d symmetric_sqrt(const Eigen::Matrix2d& cov) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(cov);
  Eigen::Vector2d clipped = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * clipped.asDiagonal() *
         solver.eigenvectors().transpose();
}

void check_covariance(const Eigen::Matrix2d& cov) {
  if (std::abs(cov(0, 1) - cov(1, 0)) > 1e-12)
    throw BadCovariance("covariance asymmetry " +
                        std::to_string(std::abs(cov(0, 1) - cov(1, 0))));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(
      0.5 * (cov + cov.transpose()), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-12)
    throw BadCovariance("covariance eigenvalue " +
                        std::to_string(solver.eigenvalues().minCoeff()));
}

Eigen::MatrixXcd build_gram(const CharEval& chi, const SampleSet& s,
                            bool with_multiplier) {
  const auto& pts = s.points();
  const int m = s.size();
  Eigen::MatrixXcd g(m, m);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j)
      for (int k = 0; k < m; ++k) {
        cdouble v = chi(pts[k] - pts[static_cast<int>(j)]);
        if (with_multiplier)
          v *= weyl_multiplier(pts[static_cast<int>(j)], pts[k]);
        g(static_cast<int>(j), k) = v;
      }
  });
  return g;
}

}  // namespace

SampleSet::SampleSet(std::vector<PhasePoint> points, std::string provenance,
                     std::uint64_t seed)
    : points_(std::move(points)),
      provenance_(std::move(provenance)),
      seed_(seed) {
  const int m = static_cast<int>(points_.size());
  if (m < 2 || m > 512)
    throw InvalidDimension("sample set needs between 2 and 512 points, got " +
                           std::to_string(m));
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k)
      if (std::sqrt(norm_sq(points_[j] - points_[k])) < kMinSeparation)
        throw InvalidDimension("sample points " + std::to_string(j) + " and " +
                               std::to_string(k) + " nearly coincide");
}

SampleSet SampleSet::lattice50(std::uint64_t seed) {
  std::vector<PhasePoint> pts;
  pts.reserve(50);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      pts.push_back({0.7 * (i - 3), 0.7 * (j - 3)});
  Rng rng(seed);
  for (;;) {
    PhasePoint z{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    if (far_from_all(z, pts)) {
      pts.push_back(z);
      break;
    }
  }
  return SampleSet(std::move(pts), "lattice", seed);
}

SampleSet SampleSet::random50(std::uint64_t seed) {
  return random_box(50, 3.0, seed);
}

SampleSet SampleSet::sparse17(std::uint64_t seed) {
  std::vector<PhasePoint> pts;
  pts.reserve(17);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      pts.push_back({3.2 * (i - 1.5), 3.2 * (j - 1.5)});
  Rng rng(seed);
  for (;;) {
    PhasePoint z{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    if (far_from_all(z, pts)) {
      pts.push_back(z);
      break;
    }
  }
  return SampleSet(std::move(pts), "lattice", seed);
}

SampleSet SampleSet::random_box(int count, double half_width,
                                std::uint64_t seed) {
  std::vector<PhasePoint> pts;
  pts.reserve(count);
  Rng rng(seed);
  while (static_cast<int>(pts.size()) < count) {
    PhasePoint z{rng.uniform(-half_width, half_width),
                 rng.uniform(-half_width, half_width)};
    if (far_from_all(z, pts)) pts.push_back(z);
  }
  return SampleSet(std::move(pts), "random", seed);
}

SampleSet SampleSet::from_points(std::vector<PhasePoint> points,
                                 std::string provenance) {
  return SampleSet(std::move(points), std::move(provenance), 0);
}

CharEval field_evaluator(ComplexField f) {
  auto held = std::make_shared<const ComplexField>(std::move(f));
  return [held](PhasePoint z) {
    if (!held->grid().contains(z))
      throw OutOfGrid("evaluation point (" + std::to_string(z.q) + ", " +
                      std::to_string(z.p) + ") outside the tabulated square");
    return held->sample(z);
  };
}

Eigen::MatrixXcd classical_gram(const CharEval& chi, const SampleSet& s) {
  return build_gram(chi, s, false);
}

Eigen::MatrixXcd quantum_gram(const CharEval& chi, const SampleSet& s) {
  return build_gram(chi, s, true);
}

PSDReport psd_verdict(const Eigen::MatrixXcd& gram, double tol) {
  PSDReport report;
  report.gram_dim = static_cast<int>(gram.rows());
  report.tolerance_used = tol;
  report.hermiticity_defect =
      (gram - gram.adjoint()).cwiseAbs().maxCoeff();
  Eigen::MatrixXcd h = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      h, Eigen::EigenvaluesOnly);
  report.min_eig = solver.eigenvalues().minCoeff();
  report.max_eig = solver.eigenvalues().maxCoeff();
  report.pass = report.min_eig >= -tol * std::max(report.max_eig, 1.0);
  return report;
}

PSDReport pd_test_classical(const CharEval& chi, const SampleSet& s,
                            double tol) {
  return psd_verdict(classical_gram(chi, s), tol);
}

PSDReport pd_test_quantum(const CharEval& chi, const SampleSet& s,
                          double tol) {
  return psd_verdict(quantum_gram(chi, s), tol);
}

IntegralFormResult integral_form_test_classical(const ComplexField& chi,
                                                const ComplexField& phi) {
  if (!(chi.grid() == phi.grid()))
    throw GridMismatch("integral form needs a shared grid");
  // Mirror of the kernel argument (no conjugation): chi(z' - z) is the
  // kernel sampled at node differences b - a.
  const int m = chi.points();
  ComplexField mirror(chi.grid());
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      mirror.at(j, k) = chi.at((m - j) % m, (m - k) % m);
  ComplexField inner = twisted::classical_convolve(phi, mirror);
  cdouble total{0.0, 0.0};
  for (std::size_t i = 0; i < inner.values().size(); ++i)
    total += std::conj(phi.values()[i]) * inner.values()[i];
  double h = chi.grid().spacing();
  total *= h * h;
  return {total.real(), std::abs(total.imag())};
}

IntegralFormResult integral_form_test_quantum(const ComplexField& chi,
                                              const ComplexField& phi) {
  if (!(chi.grid() == phi.grid()))
    throw GridMismatch("integral form needs a shared grid");
  // The multiplier-weighted form equals 2 pi <conj(phi), phi * chi> with the
  // reversed-orientation star product.
  ComplexField inner = twisted::twisted_convolve(phi, chi, -1);
  cdouble total{0.0, 0.0};
  for (std::size_t i = 0; i < inner.values().size(); ++i)
    total += std::conj(phi.values()[i]) * inner.values()[i];
  double h = chi.grid().spacing();
  total *= 2.0 * std::numbers::pi * h * h;
  return {total.real(), std::abs(total.imag())};
}

ComplexField hadamard_product(const ComplexField& f, const ComplexField& g) {
  if (!(f.grid() == g.grid()))
    throw GridMismatch("node-wise product needs a shared grid");
  ComplexField out(f.grid());
  for (std::size_t i = 0; i < out.values().size(); ++i)
    out.values()[i] = f.values()[i] * g.values()[i];
  return out;
}

CharEval product_evaluator(CharEval a, CharEval b) {
  return [a = std::move(a), b = std::move(b)](PhasePoint z) {
    return a(z) * b(z);
  };
}

CharEval gaussian_measure_char(const Eigen::Vector2d& mean,
                               const Eigen::Matrix2d& cov) {
  check_covariance(cov);
  const double mq = mean(0), mp = mean(1);
  const double cqq = cov(0, 0), cqp = 0.5 * (cov(0, 1) + cov(1, 0)),
               cpp = cov(1, 1);
  return [mq, mp, cqq, cqp, cpp](PhasePoint z) {
    double drift = z.q * mp - z.p * mq;
    double quad = cqq * z.p * z.p - 2.0 * cqp * z.q * z.p + cpp * z.q * z.q;
    double mag = std::exp(-0.5 * quad);
    return cdouble{mag * std::cos(drift), mag * std::sin(drift)};
  };
}

CharEval point_mass_char(PhasePoint v) {
  return [v](PhasePoint z) {
    double drift = symplectic_form(z, v);
    return cdouble{std::cos(drift), std::sin(drift)};
  };
}

PSDReport bochner_roundtrip_classical(const Eigen::Vector2d& mean,
                                      const Eigen::Matrix2d& cov,
                                      const SampleSet& s, double tol) {
  return pd_test_classical(gaussian_measure_char(mean, cov), s, tol);
}

PSDReport bochner_roundtrip_empirical(const Eigen::Vector2d& mean,
                                      const Eigen::Matrix2d& cov,
                                      const SampleSet& s, int draws,
                                      std::uint64_t seed, double tol) {
  check_covariance(cov);
  if (draws < 1) throw InvalidDimension("empirical transform needs draws >= 1");
  Eigen::Matrix2d root = symmetric_sqrt(0.5 * (cov + cov.transpose()));
  auto samples = std::make_shared<std::vector<PhasePoint>>();
  samples->reserve(draws);
  Rng rng(seed);
  for (int i = 0; i < draws; ++i) {
    double g1 = rng.gaussian();
    double g2 = rng.gaussian();
    samples->push_back({mean(0) + root(0, 0) * g1 + root(0, 1) * g2,
                        mean(1) + root(1, 0) * g1 + root(1, 1) * g2});
  }
  CharEval empirical = [samples](PhasePoint z) {
    double re = 0.0, im = 0.0;
    for (PhasePoint w : *samples) {
      double phase = symplectic_form(z, w);
      re += std::cos(phase);
      im += std::sin(phase);
    }
    double inv = 1.0 / static_cast<double>(samples->size());
    return cdouble{re * inv, im * inv};
  };
  return pd_test_classical(empirical, s, tol);
}

}  // namespace phasecone::positivity
