#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "phasecone/core.hpp"
#include "phasecone/errors.hpp"

namespace phasecone::fock {

using Matrix = Eigen::MatrixXcd;

// Operator on the truncated number basis {|0>, ..., |N-1>}, N >= 2.
class FockOperator {
 public:
  explicit FockOperator(Matrix m);
  static FockOperator zero(int dim);
  static FockOperator identity(int dim);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }
  Matrix& matrix() { return mat_; }

  FockOperator adjoint() const { return FockOperator(mat_.adjoint()); }

  friend FockOperator operator+(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator-(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator*(cdouble s, const FockOperator& a);

 private:
  Matrix mat_;
};

FockOperator op_product(const FockOperator& a, const FockOperator& b);
FockOperator op_adjoint(const FockOperator& a);
cdouble op_trace(const FockOperator& a);
// Hilbert-Schmidt inner product tr(a^dagger b).
cdouble hs_inner(const FockOperator& a, const FockOperator& b);

// Largest entry modulus of a - a^dagger.
double max_hermiticity_defect(const FockOperator& a);

// Smallest eigenvalue; requires hermiticity within 1e-10 relative to the
// largest entry modulus.
double min_eigenvalue_hermitian(const FockOperator& a);

// Lowering and raising matrices (a, a^dagger) in the truncated basis.
std::pair<FockOperator, FockOperator> ladder_matrices(int dim);
FockOperator position_op(int dim);   // (a + a^dagger) / sqrt(2)
FockOperator momentum_op(int dim);   // (a - a^dagger) / (i sqrt(2))
FockOperator number_op(int dim);

// Coherent amplitude of a phase point, alpha = (q + i p) / sqrt(2).
cdouble coherent_amplitude(PhasePoint z);

// Phase-plane unitary U(q, p) = exp(i (p Q - q P)) as a truncated matrix,
// built by a stable column recurrence in O(dim^2).  Emits a truncation
// warning when |alpha|^2 > dim / 4, where the truncated matrix stops being
// trustworthy.
FockOperator displacement(PhasePoint z, int dim);

// Same unitary through eigendecomposition of the truncated generator
// p Q - q P.  Slower and differently truncated; kept as a cross-check.
FockOperator displacement_via_generator(PhasePoint z, int dim);

// Density operator certified positive semidefinite with unit trace.
class DensityState {
 public:
  // Throws CertificationError unless op is Hermitian, has min eigenvalue
  // >= -psd_tol and |trace - 1| <= trace_tol.  The trace is then pinned to
  // exactly 1 by rescaling and the matrix Hermitized.
  static DensityState certify(const FockOperator& op, double psd_tol = 1e-9,
                              double trace_tol = 1e-8);

  const FockOperator& op() const { return op_; }
  int dim() const { return op_.dim(); }
  double min_eig() const { return min_eig_; }
  double hermiticity_defect() const { return herm_defect_; }
  double trace_defect() const { return trace_defect_; }

 private:
  DensityState(FockOperator op, double min_eig, double herm_defect,
               double trace_defect)
      : op_(std::move(op)),
        min_eig_(min_eig),
        herm_defect_(herm_defect),
        trace_defect_(trace_defect) {}

  FockOperator op_;
  double min_eig_;
  double herm_defect_;
  double trace_defect_;
};

DensityState state_vacuum(int dim);
DensityState state_coherent(cdouble alpha, int dim);
DensityState state_fock(int level, int dim);
DensityState state_thermal(double nbar, int dim);
// Even superposition (|alpha> + |-alpha>) / norm.
DensityState state_cat(cdouble alpha, int dim);

double purity(const DensityState& rho);

}  // namespace phasecone::fock
