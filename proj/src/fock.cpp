#include "phasecone/fock.hpp"

#include <cmath>
#include <string>

#include "displace.hpp"
#include "phasecone/warnings.hpp"

namespace phasecone::fock {

namespace {

constexpr cdouble kI{0.0, 1.0};

void check_same_dim(const FockOperator& a, const FockOperator& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("operator dimensions " + std::to_string(a.dim()) +
                            " and " + std::to_string(b.dim()) + " differ");
}

double max_entry_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix hermitized(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// Number-basis coefficients of the coherent vector |alpha>, truncated.
Eigen::VectorXcd coherent_vector(cdouble alpha, int dim) {
  Eigen::VectorXcd v(dim);
  cdouble c = std::exp(-0.5 * std::norm(alpha));
  v(0) = c;
  for (int n = 1; n < dim; ++n) {
    c *= alpha / std::sqrt(static_cast<double>(n));
    v(n) = c;
  }
  return v;
}

DensityState pure_state(Eigen::VectorXcd psi) {
  psi.normalize();
  Matrix rho = psi * psi.adjoint();
  return DensityState::certify(FockOperator(std::move(rho)));
}

}  // namespace

FockOperator::FockOperator(Matrix m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols())
    throw InvalidDimension("operator matrix must be square");
  if (mat_.rows() < 2)
    throw InvalidDimension("operator dimension must be at least 2");
}

FockOperator FockOperator::zero(int dim) {
  return FockOperator(Matrix::Zero(dim, dim));
}

FockOperator FockOperator::identity(int dim) {
  return FockOperator(Matrix::Identity(dim, dim));
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  check_same_dim(a, b);
  return FockOperator(a.mat_ + b.mat_);
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  check_same_dim(a, b);
  return FockOperator(a.mat_ - b.mat_);
}

FockOperator operator*(cdouble s, const FockOperator& a) {
  return FockOperator(s * a.mat_);
}

FockOperator op_product(const FockOperator& a, const FockOperator& b) {
  check_same_dim(a, b);
  return FockOperator(a.matrix() * b.matrix());
}

FockOperator op_adjoint(const FockOperator& a) { return a.adjoint(); }

cdouble op_trace(const FockOperator& a) { return a.matrix().trace(); }

cdouble hs_inner(const FockOperator& a, const FockOperator& b) {
  check_same_dim(a, b);
  return (a.matrix().adjoint() * b.matrix()).trace();
}

double max_hermiticity_defect(const FockOperator& a) {
  return max_entry_abs(a.matrix() - a.matrix().adjoint());
}

double min_eigenvalue_hermitian(const FockOperator& a) {
  double defect = max_hermiticity_defect(a);
  double scale = std::max(1.0, max_entry_abs(a.matrix()));
  if (defect > 1e-10 * scale)
    throw NotHermitian("hermiticity defect " + std::to_string(defect));
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitized(a.matrix()),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

std::pair<FockOperator, FockOperator> ladder_matrices(int dim) {
  Matrix lower = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n)
    lower(n - 1, n) = std::sqrt(static_cast<double>(n));
  Matrix raise = lower.adjoint();
  return {FockOperator(std::move(lower)), FockOperator(std::move(raise))};
}

FockOperator position_op(int dim) {
  auto [a, adag] = ladder_matrices(dim);
  return FockOperator((a.matrix() + adag.matrix()) / std::sqrt(2.0));
}

FockOperator momentum_op(int dim) {
  auto [a, adag] = ladder_matrices(dim);
  return FockOperator((a.matrix() - adag.matrix()) / (kI * std::sqrt(2.0)));
}

FockOperator number_op(int dim) {
  auto [a, adag] = ladder_matrices(dim);
  return FockOperator(adag.matrix() * a.matrix());
}

cdouble coherent_amplitude(PhasePoint z) {
  return cdouble{z.q, z.p} / std::sqrt(2.0);
}

FockOperator displacement(PhasePoint z, int dim) {
  if (dim < 2) throw InvalidDimension("displacement needs dimension >= 2");
  double asq = std::norm(coherent_amplitude(z));
  if (asq > 0.25 * dim)
    warn::emit(warn::Code::truncation,
               "displacement amplitude " + std::to_string(asq) +
                   " exceeds trusted quarter-dimension bound");
  Matrix d(dim, dim);
  detail::fill_displacement(z, d, detail::sqrt_table(dim));
  return FockOperator(std::move(d));
}

FockOperator displacement_via_generator(PhasePoint z, int dim) {
  Matrix gen =
      z.p * position_op(dim).matrix() - z.q * momentum_op(dim).matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitized(gen));
  Eigen::VectorXcd phases = (kI * solver.eigenvalues().array()).exp();
  Matrix u = solver.eigenvectors() * phases.asDiagonal() *
             solver.eigenvectors().adjoint();
  return FockOperator(std::move(u));
}

DensityState DensityState::certify(const FockOperator& op, double psd_tol,
                                   double trace_tol) {
  const Matrix& m = op.matrix();
  double herm_defect = max_entry_abs(m - m.adjoint());
  double scale = std::max(1.0, max_entry_abs(m));
  if (herm_defect > 1e-10 * scale)
    throw CertificationError("density candidate is not Hermitian, defect " +
                             std::to_string(herm_defect));
  Matrix h = hermitized(m);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -psd_tol)
    throw CertificationError("density candidate has eigenvalue " +
                             std::to_string(min_eig));
  double tr = h.trace().real();
  double trace_defect = std::abs(tr - 1.0);
  if (trace_defect > trace_tol)
    throw CertificationError("density candidate trace is off by " +
                             std::to_string(trace_defect));
  h /= tr;
  return DensityState(FockOperator(std::move(h)), min_eig / tr, herm_defect,
                      trace_defect);
}

DensityState state_vacuum(int dim) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  psi(0) = 1.0;
  return pure_state(std::move(psi));
}

namespace {
void warn_if_uncomfortable(double amplitude_sq, int dim) {
  if (amplitude_sq > 0.25 * dim)
    warn::emit(warn::Code::truncation,
               "state amplitude " + std::to_string(amplitude_sq) +
                   " exceeds the trusted quarter-dimension bound");
}
}  // namespace

DensityState state_coherent(cdouble alpha, int dim) {
  warn_if_uncomfortable(std::norm(alpha), dim);
  return pure_state(coherent_vector(alpha, dim));
}

DensityState state_fock(int level, int dim) {
  if (level < 0 || level >= dim)
    throw TruncationError("number level " + std::to_string(level) +
                          " not representable in dimension " +
                          std::to_string(dim));
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  psi(level) = 1.0;
  return pure_state(std::move(psi));
}

DensityState state_thermal(double nbar, int dim) {
  if (!(nbar >= 0.0))
    throw InvalidDimension("thermal occupation must be nonnegative");
  if (nbar > dim / 8.0)
    warn::emit(warn::Code::truncation,
               "thermal occupation " + std::to_string(nbar) +
                   " exceeds the trusted eighth-dimension bound");
  double ratio = nbar / (nbar + 1.0);
  Eigen::VectorXd weights(dim);
  double w = 1.0;
  for (int n = 0; n < dim; ++n) {
    weights(n) = w;
    w *= ratio;
  }
  weights /= weights.sum();
  Matrix rho = weights.cast<cdouble>().asDiagonal();
  return DensityState::certify(FockOperator(std::move(rho)));
}

DensityState state_cat(cdouble alpha, int dim) {
  warn_if_uncomfortable(std::norm(alpha), dim);
  Eigen::VectorXcd psi = coherent_vector(alpha, dim);
  for (int n = 1; n < dim; n += 2) psi(n) = 0.0;
  return pure_state(std::move(psi));
}

double purity(const DensityState& rho) {
  return hs_inner(rho.op(), rho.op()).real();
}

}  // namespace phasecone::fock
