#pragma once

#include <functional>

#include "phasecone/core.hpp"
#include "phasecone/fock.hpp"

namespace phasecone::transforms {

// Largest deviation from the mirror symmetry f(-z) = conj(f(z)) over node
// pairs that have an exact mirror on the grid.
double hermitian_symmetry_defect(const ComplexField& f);

// Characteristic-side table.  A certified instance carries the mirror
// symmetry f(-z) = conj(f(z)) within 1e-8; a measured instance records the
// defect without enforcing it (needed for tables of non-Hermitian sources,
// e.g. operator products).
class CharFunction {
 public:
  static CharFunction certified(ComplexField field, int source_dim = 0);
  static CharFunction measured(ComplexField field, int source_dim = 0);

  const ComplexField& field() const { return field_; }
  const PhaseGrid& grid() const { return field_.grid(); }
  int source_dim() const { return source_dim_; }
  double symmetry_defect() const { return symmetry_defect_; }

 private:
  CharFunction(ComplexField field, int source_dim, double defect)
      : field_(std::move(field)),
        source_dim_(source_dim),
        symmetry_defect_(defect) {}

  ComplexField field_;
  int source_dim_;
  double symmetry_defect_;
};

// Phase-space quasi-distribution table; certified instances carry values
// real within 1e-8 (the case for a Hermitian source whose characteristic
// table decays below 1e-8 at the grid edge).
class WignerField {
 public:
  static WignerField certified(ComplexField field);
  static WignerField measured(ComplexField field);

  const ComplexField& field() const { return field_; }
  const PhaseGrid& grid() const { return field_.grid(); }
  double imag_residue() const { return imag_residue_; }

 private:
  WignerField(ComplexField field, double residue)
      : field_(std::move(field)), imag_residue_(residue) {}

  ComplexField field_;
  double imag_residue_;
};

// Point evaluation of the operator's phase-plane transform tr(U(z)^dagger a).
// Outside the trust disk |z|^2 <= 2 dim the truncated matrix elements carry
// no information about the untruncated operator, so the value reported there
// is exactly zero.
cdouble dequantize_at(const fock::FockOperator& a, PhasePoint z);

// Thread-safe closure over a copy of the operator evaluating dequantize_at.
std::function<cdouble(PhasePoint)> char_evaluator(fock::FockOperator a);

// Tabulated transform of an operator.  Nodes outside the trust disk are
// zeroed as in dequantize_at.  For a Hermitian source the mirror symmetry
// f(-z) = conj(f(z)) is an exact identity, so only half the nodes are
// evaluated and the rest filled by reflection; the certificate then holds by
// construction.  Non-Hermitian sources are evaluated in full and yield a
// measured instance.  Emits a decay warning when the table fails to vanish
// at the grid edge, plus a truncation warning when that happens with the
// grid reaching outside the trusted region of the finite matrix.
CharFunction dequantize(const fock::FockOperator& a, const PhaseGrid& grid);

// Inverse direction: (h^2 / 2 pi) sum f[j,k] U(node), truncated to dim.
// Skips nodes outside the trust disk, so the pair quantize / dequantize is
// mutually adjoint over exactly the nodes both sides keep.
fock::FockOperator quantize(const ComplexField& f, int dim);
fock::FockOperator quantize(const CharFunction& f, int dim);

// Phase-space Fourier transform with the antisymmetric-kernel convention
// (2 pi)^{-1} integral f(z') exp(i (q p' - p q')) dq' dp', as grid quadrature.
// Applied twice it reproduces the input up to discretization error.  Throws
// GridTooCoarse when h > pi / L.  Fast path; O(M^2 log M).
ComplexField symplectic_fourier(const ComplexField& f);

// Literal quadrature of the same sum, O(M^4).  Reference for the fast path.
ComplexField symplectic_fourier_direct(const ComplexField& f);

// Quasi-distribution of an operator: (2 pi)^{-1} times the transform of its
// characteristic table; for a density matrix it integrates to 1 with the
// plain measure.  Certified when the source is Hermitian and its table
// decays at the grid edge; measured otherwise, with the defect recorded and
// a decay warning already emitted for the table.
WignerField wigner_from_state(const fock::FockOperator& rho,
                              const PhaseGrid& grid);

// tr(a rho) through the phase-plane pairing of the observable's symbol with
// the state's quasi-distribution.  Requires Hermitian a.
cdouble expectation(const fock::FockOperator& a, const fock::DensityState& rho,
                    const PhaseGrid& grid);

}  // namespace phasecone::transforms
