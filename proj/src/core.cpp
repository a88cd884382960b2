#include "phasecone/core.hpp"

#include <cmath>
#include <numbers>

#include "phasecone/parallel.hpp"
#include "phasecone/warnings.hpp"

namespace phasecone {

double norm_sq(PhasePoint z) { return z.q * z.q + z.p * z.p; }

double symplectic_form(PhasePoint z, PhasePoint w) {
  return z.q * w.p - z.p * w.q;
}

cdouble weyl_multiplier(PhasePoint z, PhasePoint w) {
  double half = 0.5 * symplectic_form(z, w);
  return {std::cos(half), std::sin(half)};
}

PhaseGrid::PhaseGrid(double half_extent, int points_per_axis)
    : half_extent_(half_extent), points_(points_per_axis) {
  if (!std::isfinite(half_extent) || half_extent <= 0.0)
    throw InvalidDimension("grid half extent must be positive and finite");
  if (points_per_axis < 8 || points_per_axis % 2 != 0)
    throw InvalidDimension("grid needs an even point count of at least 8");
  spacing_ = 2.0 * half_extent_ / static_cast<double>(points_);
}

bool PhaseGrid::contains(PhasePoint z) const {
  double lo = coord(0);
  double hi = coord(points_ - 1);
  return z.q >= lo && z.q <= hi && z.p >= lo && z.p <= hi;
}

ComplexField::ComplexField(const PhaseGrid& grid)
    : grid_(grid),
      values_(static_cast<std::size_t>(grid.points()) * grid.points()) {}

ComplexField ComplexField::tabulate(
    const PhaseGrid& grid, const std::function<cdouble(PhasePoint)>& f) {
  ComplexField out(grid);
  int m = grid.points();
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j)
      for (int k = 0; k < m; ++k)
        out.at(static_cast<int>(j), k) = f(grid.node(static_cast<int>(j), k));
  });
  return out;
}

cdouble ComplexField::sample(PhasePoint z) const {
  if (!grid_.contains(z)) return {0.0, 0.0};
  int m = grid_.points();
  double h = grid_.spacing();
  double x = (z.q - grid_.coord(0)) / h;
  double y = (z.p - grid_.coord(0)) / h;
  int j = static_cast<int>(std::floor(x));
  int k = static_cast<int>(std::floor(y));
  if (j > m - 2) j = m - 2;
  if (k > m - 2) k = m - 2;
  if (j < 0) j = 0;
  if (k < 0) k = 0;
  double fq = x - j;
  double fp = y - k;
  return (1.0 - fq) * (1.0 - fp) * at(j, k) + fq * (1.0 - fp) * at(j + 1, k) +
         (1.0 - fq) * fp * at(j, k + 1) + fq * fp * at(j + 1, k + 1);
}

double ComplexField::boundary_max() const {
  int m = grid_.points();
  double peak = 0.0;
  for (int k = 0; k < m; ++k) {
    peak = std::max(peak, std::abs(at(0, k)));
    peak = std::max(peak, std::abs(at(m - 1, k)));
  }
  for (int j = 0; j < m; ++j) {
    peak = std::max(peak, std::abs(at(j, 0)));
    peak = std::max(peak, std::abs(at(j, m - 1)));
  }
  return peak;
}

double ComplexField::max_abs() const {
  double peak = 0.0;
  for (const cdouble& v : values_) peak = std::max(peak, std::abs(v));
  return peak;
}

cdouble grid_integral(const ComplexField& f, Weight weight) {
  double edge = f.boundary_max();
  if (edge > 1e-12)
    warn::emit(warn::Code::decay,
               "integrand boundary modulus " + std::to_string(edge));
  cdouble total{0.0, 0.0};
  for (const cdouble& v : f.values()) total += v;
  double h = f.grid().spacing();
  double scale = h * h;
  if (weight == Weight::haar) scale /= 2.0 * std::numbers::pi;
  return scale * total;
}

}  // namespace phasecone
