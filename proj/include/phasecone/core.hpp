#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "phasecone/errors.hpp"

namespace phasecone {

using cdouble = std::complex<double>;

// Point of the phase plane, position first.
struct PhasePoint {
  double q = 0.0;
  double p = 0.0;

  friend PhasePoint operator+(PhasePoint a, PhasePoint b) {
    return {a.q + b.q, a.p + b.p};
  }
  friend PhasePoint operator-(PhasePoint a, PhasePoint b) {
    return {a.q - b.q, a.p - b.p};
  }
  friend PhasePoint operator-(PhasePoint a) { return {-a.q, -a.p}; }
  friend PhasePoint operator*(double s, PhasePoint a) {
    return {s * a.q, s * a.p};
  }
  friend bool operator==(PhasePoint a, PhasePoint b) {
    return a.q == b.q && a.p == b.p;
  }
};

double norm_sq(PhasePoint z);

// Standard symplectic form, antisymmetric and bilinear.
double symplectic_form(PhasePoint z, PhasePoint w);

// Unimodular composition multiplier of the projective phase-plane
// representation: multiplier(z, w) * U(z) * U(w) reproduces U(z + w).
cdouble weyl_multiplier(PhasePoint z, PhasePoint w);

// Uniform square grid [-L, L)^2 with M nodes per axis, h = 2L/M.  M is even,
// so the origin is the node with both indices M/2.  Node coordinates are
// exact multiples of h; differences of nodes are again nodes (modulo range).
class PhaseGrid {
 public:
  PhaseGrid(double half_extent, int points_per_axis);

  double half_extent() const { return half_extent_; }
  int points() const { return points_; }
  double spacing() const { return spacing_; }
  int origin_index() const { return points_ / 2; }

  double coord(int idx) const {
    return spacing_ * static_cast<double>(idx - points_ / 2);
  }
  PhasePoint node(int j, int k) const { return {coord(j), coord(k)}; }
  bool contains(PhasePoint z) const;

  friend bool operator==(const PhaseGrid& a, const PhaseGrid& b) {
    return a.half_extent_ == b.half_extent_ && a.points_ == b.points_;
  }

 private:
  double half_extent_;
  int points_;
  double spacing_;
};

// Complex-valued function tabulated on a PhaseGrid.  Index pair (j, k) maps
// to the node (coord(j), coord(k)); storage is row-major in j.
class ComplexField {
 public:
  explicit ComplexField(const PhaseGrid& grid);

  static ComplexField tabulate(const PhaseGrid& grid,
                               const std::function<cdouble(PhasePoint)>& f);

  const PhaseGrid& grid() const { return grid_; }
  int points() const { return grid_.points(); }

  cdouble& at(int j, int k) { return values_[index(j, k)]; }
  cdouble at(int j, int k) const { return values_[index(j, k)]; }
  const std::vector<cdouble>& values() const { return values_; }
  std::vector<cdouble>& values() { return values_; }

  // Bilinear interpolation; zero outside the tabulated square.
  cdouble sample(PhasePoint z) const;

  // Largest modulus on the outermost index ring.
  double boundary_max() const;

  double max_abs() const;

 private:
  std::size_t index(int j, int k) const {
    return static_cast<std::size_t>(j) * grid_.points() +
           static_cast<std::size_t>(k);
  }

  PhaseGrid grid_;
  std::vector<cdouble> values_;
};

enum class Weight {
  lebesgue,  // dq dp
  haar,      // dq dp / (2*pi)
};

// Quadrature h^2 * sum of node values, scaled by the chosen weight.  Emits a
// decay warning when the boundary ring exceeds 1e-12 in modulus.
cdouble grid_integral(const ComplexField& f, Weight weight);

}  // namespace phasecone
