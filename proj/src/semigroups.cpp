#include "phasecone/semigroups.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>

#include "displace.hpp"
#include "phasecone/parallel.hpp"
#include "phasecone/rng.hpp"
#include "phasecone/warnings.hpp"

namespace phasecone::semigroups {

namespace {

using fock::Matrix;

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Eigen::Matrix2d symmetrized(const Eigen::Matrix2d& m) {
  return 0.5 * (m + m.transpose());
}

Eigen::Matrix2d symmetric_sqrt(const Eigen::Matrix2d& cov) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(cov);
  Eigen::Vector2d clipped = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * clipped.asDiagonal() *
         solver.eigenvectors().transpose();
}

void check_time(double t) {
  if (!(t >= 0.0))
    throw NegativeTime("evolution time " + short_num(t) + " is negative");
}

// Nodes and probability weights of the order-point rule for the standard
// normal, by spectral decomposition of the recurrence matrix: each node is
// an eigenvalue, its weight the squared first eigenvector component.
struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

AxisRule normal_rule(int order) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    double b = std::sqrt(0.5 * k);
    jacobi(k - 1, k) = b;
    jacobi(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  AxisRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = std::numbers::sqrt2 * solver.eigenvalues()(i);
    double c = solver.eigenvectors()(0, i);
    rule.weights[i] = c * c;
  }
  return rule;
}

}  // namespace

void validate(const GaussianSemigroupParams& params) {
  const Eigen::Matrix2d& cov = params.covariance;
  if (std::abs(cov(0, 1) - cov(1, 0)) > 1e-12)
    throw BadCovariance("diffusion matrix asymmetry " +
                        short_num(std::abs(cov(0, 1) - cov(1, 0))));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(symmetrized(cov),
                                                        Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-12)
    throw BadCovariance("diffusion matrix eigenvalue " +
                        short_num(solver.eigenvalues().minCoeff()));
}

TwirlingQuadrature TwirlingQuadrature::gauss_hermite(int order) {
  TwirlingQuadrature q;
  q.scheme = Scheme::gauss_hermite;
  q.order = order;
  return q;
}

TwirlingQuadrature TwirlingQuadrature::monte_carlo(int samples,
                                                   std::uint64_t seed) {
  TwirlingQuadrature q;
  q.scheme = Scheme::monte_carlo;
  q.samples = samples;
  q.seed = seed;
  return q;
}

std::vector<WeightedNode> twirl_nodes(const GaussianSemigroupParams& params,
                                      double t,
                                      const TwirlingQuadrature& quad) {
  validate(params);
  check_time(t);
  const PhasePoint mean{t * params.drift(0), t * params.drift(1)};
  const Eigen::Matrix2d cov = t * symmetrized(params.covariance);
  if (cov.cwiseAbs().maxCoeff() == 0.0) return {{mean, 1.0}};
  const Eigen::Matrix2d root = symmetric_sqrt(cov);
  std::vector<WeightedNode> nodes;
  if (quad.scheme == TwirlingQuadrature::Scheme::gauss_hermite) {
    if (quad.order < 4)
      throw InvalidDimension("quadrature order " + std::to_string(quad.order) +
                             " is below the minimum of 4");
    AxisRule rule = normal_rule(quad.order);
    nodes.reserve(static_cast<std::size_t>(quad.order) * quad.order);
    for (int i = 0; i < quad.order; ++i)
      for (int j = 0; j < quad.order; ++j) {
        double x = rule.nodes[i], y = rule.nodes[j];
        nodes.push_back({{mean.q + root(0, 0) * x + root(0, 1) * y,
                          mean.p + root(1, 0) * x + root(1, 1) * y},
                         rule.weights[i] * rule.weights[j]});
      }
    return nodes;
  }
  if (quad.samples < 1000)
    throw InvalidDimension("sample count " + std::to_string(quad.samples) +
                           " is below the minimum of 1000");
  Rng rng(quad.seed);
  nodes.reserve(static_cast<std::size_t>(quad.samples));
  const double w = 1.0 / static_cast<double>(quad.samples);
  for (int i = 0; i < quad.samples; ++i) {
    double g1 = rng.gaussian();
    double g2 = rng.gaussian();
    nodes.push_back({{mean.q + root(0, 0) * g1 + root(0, 1) * g2,
                      mean.p + root(1, 0) * g1 + root(1, 1) * g2},
                     w});
  }
  return nodes;
}

positivity::CharEval gaussian_char(const GaussianSemigroupParams& params,
                                   double t) {
  validate(params);
  check_time(t);
  return positivity::gaussian_measure_char(t * params.drift,
                                           t * symmetrized(params.covariance));
}

ComplexField gaussian_char_field(const GaussianSemigroupParams& params,
                                 double t, const PhaseGrid& grid) {
  return ComplexField::tabulate(grid, gaussian_char(params, t));
}

transforms::CharFunction cq_apply(const GaussianSemigroupParams& params,
                                  double t,
                                  const transforms::CharFunction& chi) {
  positivity::CharEval mult = gaussian_char(params, t);
  const PhaseGrid& grid = chi.grid();
  const int m = grid.points();
  ComplexField out(grid);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j)
      for (int k = 0; k < m; ++k)
        out.at(static_cast<int>(j), k) =
            chi.field().at(static_cast<int>(j), k) *
            mult(grid.node(static_cast<int>(j), k));
  });
  if (chi.symmetry_defect() <= 1e-8)
    return transforms::CharFunction::certified(std::move(out),
                                               chi.source_dim());
  return transforms::CharFunction::measured(std::move(out), chi.source_dim());
}

TwirlReport twirl_apply_detailed(const GaussianSemigroupParams& params,
                                 double t, const fock::DensityState& rho,
                                 const TwirlingQuadrature& quad) {
  const std::vector<WeightedNode> nodes = twirl_nodes(params, t, quad);
  const int dim = rho.dim();
  double out_weight = 0.0;
  for (const WeightedNode& n : nodes)
    if (norm_sq(n.z) > 0.5 * dim) out_weight += n.weight;
  if (out_weight > 1e-6)
    throw TruncationError("quadrature weight " + short_num(out_weight) +
                          " sits outside the displacement trust region of "
                          "dimension " +
                          std::to_string(dim));
  if (out_weight > 0.0)
    warn::emit(warn::Code::truncation,
               "quadrature weight " + short_num(out_weight) +
                   " leaks outside the trust region; absorbed by "
                   "renormalization");

  const Matrix& r = rho.op().matrix();
  const auto sqrtn = detail::sqrt_table(dim);
  const auto ranges = fixed_partition(nodes.size());
  std::vector<Matrix> partial(ranges.size());
  run_chunks(ranges.size(), [&](std::size_t c) {
    Matrix d(dim, dim);
    Matrix acc = Matrix::Zero(dim, dim);
    for (std::size_t i = ranges[c].first; i < ranges[c].second; ++i) {
      detail::fill_displacement(nodes[i].z, d, sqrtn);
      acc.noalias() += nodes[i].weight * (d * r * d.adjoint());
    }
    partial[c] = std::move(acc);
  });
  Matrix total = Matrix::Zero(dim, dim);
  for (const Matrix& p : partial) total += p;

  const double tr = total.trace().real();
  const double drift_mag = std::abs(tr - 1.0);
  if (drift_mag > 1e-4)
    throw CertificationError("averaged state trace is off by " +
                             short_num(drift_mag) +
                             "; truncation leakage too large to absorb");
  total /= tr;
  fock::DensityState state =
      fock::DensityState::certify(fock::FockOperator(std::move(total)));
  return {std::move(state), drift_mag, out_weight,
          static_cast<int>(nodes.size())};
}

fock::DensityState twirl_apply(const GaussianSemigroupParams& params, double t,
                               const fock::DensityState& rho,
                               const TwirlingQuadrature& quad) {
  return twirl_apply_detailed(params, t, rho, quad).state;
}

double intertwine_verify(const GaussianSemigroupParams& params, double t,
                         const fock::DensityState& rho,
                         const TwirlingQuadrature& quad,
                         const PhaseGrid& grid) {
  const fock::DensityState evolved = twirl_apply(params, t, rho, quad);
  const transforms::CharFunction after =
      transforms::dequantize(evolved.op(), grid);
  const transforms::CharFunction before =
      transforms::dequantize(rho.op(), grid);
  const positivity::CharEval mult = gaussian_char(params, t);
  const int m = grid.points();
  double worst = 0.0;
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      cdouble expected = mult(grid.node(j, k)) * before.field().at(j, k);
      worst = std::max(worst, std::abs(after.field().at(j, k) - expected));
    }
  return worst;
}

double purity_from_char(const transforms::CharFunction& chi) {
  ComplexField sq(chi.grid());
  const std::vector<cdouble>& v = chi.field().values();
  for (std::size_t i = 0; i < v.size(); ++i) sq.values()[i] = std::norm(v[i]);
  return grid_integral(sq, Weight::haar).real();
}

}  // namespace phasecone::semigroups
