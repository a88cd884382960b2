#include "phasecone/transforms.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "displace.hpp"
#include "fft.hpp"
#include "phasecone/parallel.hpp"
#include "phasecone/warnings.hpp"

namespace phasecone::transforms {

namespace {

using fock::FockOperator;
using fock::Matrix;

constexpr double kEdgeTol = 1e-8;

using detail::fill_displacement;
using detail::sqrt_table;

cdouble trace_against(const Matrix& d, const Matrix& a) {
  return d.conjugate().cwiseProduct(a).sum();
}

// Beyond this radius the truncated displacement says nothing about the
// untruncated operator, and its entry recurrence degrades; the transform
// pair treats the table as zero there.
double trust_limit_sq(int dim) { return 2.0 * static_cast<double>(dim); }

// theta = +h^2 transforms the second axis, -h^2 the first; see
// symplectic_fourier below.
void chirp_rows(std::vector<cdouble>& data, int m,
                const detail::ChirpTransform& chirp) {
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t lo, std::size_t hi) {
    std::vector<cdouble> row(m);
    for (std::size_t r = lo; r < hi; ++r) {
      cdouble* base = data.data() + r * static_cast<std::size_t>(m);
      chirp.apply(base, row.data());
      std::copy(row.begin(), row.end(), base);
    }
  });
}

std::vector<cdouble> transposed(const std::vector<cdouble>& data, int m) {
  std::vector<cdouble> out(data.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      out[static_cast<std::size_t>(j) * m + i] =
          data[static_cast<std::size_t>(i) * m + j];
  return out;
}

void check_transform_grid(const PhaseGrid& grid) {
  double limit = std::numbers::pi / grid.half_extent();
  if (grid.spacing() > limit * (1.0 + 1e-12))
    throw GridTooCoarse("spacing " + std::to_string(grid.spacing()) +
                        " exceeds " + std::to_string(limit));
}

}  // namespace

double hermitian_symmetry_defect(const ComplexField& f) {
  int m = f.points();
  double defect = 0.0;
  for (int j = 1; j < m; ++j)
    for (int k = 1; k < m; ++k) {
      double d = std::abs(f.at(j, k) - std::conj(f.at(m - j, m - k)));
      defect = std::max(defect, d);
    }
  return defect;
}

CharFunction CharFunction::certified(ComplexField field, int source_dim) {
  double defect = hermitian_symmetry_defect(field);
  if (defect > 1e-8)
    throw NotHermitian("characteristic table mirror defect " +
                       std::to_string(defect));
  return CharFunction(std::move(field), source_dim, defect);
}

CharFunction CharFunction::measured(ComplexField field, int source_dim) {
  double defect = hermitian_symmetry_defect(field);
  return CharFunction(std::move(field), source_dim, defect);
}

WignerField WignerField::certified(ComplexField field) {
  double residue = 0.0;
  for (const cdouble& v : field.values())
    residue = std::max(residue, std::abs(v.imag()));
  if (residue > 1e-8)
    throw NotHermitian("quasi-distribution imaginary residue " +
                       std::to_string(residue));
  return WignerField(std::move(field), residue);
}

WignerField WignerField::measured(ComplexField field) {
  double residue = 0.0;
  for (const cdouble& v : field.values())
    residue = std::max(residue, std::abs(v.imag()));
  return WignerField(std::move(field), residue);
}

cdouble dequantize_at(const FockOperator& a, PhasePoint z) {
  const int dim = a.dim();
  if (norm_sq(z) > trust_limit_sq(dim)) return cdouble{0.0, 0.0};
  Matrix d(dim, dim);
  fill_displacement(z, d, sqrt_table(dim));
  return trace_against(d, a.matrix());
}

std::function<cdouble(PhasePoint)> char_evaluator(FockOperator a) {
  auto held = std::make_shared<FockOperator>(std::move(a));
  return [held](PhasePoint z) { return dequantize_at(*held, z); };
}

CharFunction dequantize(const FockOperator& a, const PhaseGrid& grid) {
  const int dim = a.dim();
  const int m = grid.points();
  const auto sqrtn = sqrt_table(dim);
  const Matrix& mat = a.matrix();
  const double trust = trust_limit_sq(dim);
  double herm = fock::max_hermiticity_defect(a);
  const bool hermitian_source =
      herm <= 1e-10 * std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
  // For a Hermitian source f(-z) = conj(f(z)) is exact, so only canonical
  // nodes are evaluated and the rest filled by reflection.  Interior nodes
  // pair as (j,k) <-> (m-j,m-k); row and column 0 have no partner.
  auto canonical = [m](int j, int k) {
    if (j == 0 || k == 0) return true;
    return j < m - j || (j == m - j && k <= m - k);
  };
  ComplexField out(grid);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t lo, std::size_t hi) {
    Matrix d(dim, dim);
    for (std::size_t j = lo; j < hi; ++j)
      for (int k = 0; k < m; ++k) {
        if (hermitian_source && !canonical(static_cast<int>(j), k)) continue;
        PhasePoint z = grid.node(static_cast<int>(j), k);
        if (norm_sq(z) > trust) continue;
        fill_displacement(z, d, sqrtn);
        out.at(static_cast<int>(j), k) = trace_against(d, mat);
      }
  });
  if (hermitian_source)
    for (int j = 1; j < m; ++j)
      for (int k = 1; k < m; ++k)
        if (!canonical(j, k)) out.at(j, k) = std::conj(out.at(m - j, m - k));
  double edge = out.boundary_max();
  if (edge > kEdgeTol) {
    warn::emit(warn::Code::decay, "transform table boundary modulus " +
                                      std::to_string(edge));
    double corner = 2.0 * grid.half_extent() * grid.half_extent();
    if (corner > 0.5 * dim)
      warn::emit(warn::Code::truncation,
                 "grid corners leave the trusted region of dimension " +
                     std::to_string(dim));
  }
  if (hermitian_source) return CharFunction::certified(std::move(out), dim);
  return CharFunction::measured(std::move(out), dim);
}

FockOperator quantize(const ComplexField& f, int dim) {
  if (dim < 2) throw DimensionMismatch("truncation dimension must be >= 2");
  if (f.boundary_max() > kEdgeTol)
    warn::emit(warn::Code::decay, "quantization input boundary modulus " +
                                      std::to_string(f.boundary_max()));
  const int m = f.points();
  const auto sqrtn = sqrt_table(dim);
  const PhaseGrid& grid = f.grid();
  const double trust = trust_limit_sq(dim);
  const auto ranges = fixed_partition(static_cast<std::size_t>(m));
  std::vector<Matrix> partial(ranges.size());
  run_chunks(ranges.size(), [&](std::size_t c) {
    Matrix acc = Matrix::Zero(dim, dim);
    Matrix d(dim, dim);
    for (std::size_t j = ranges[c].first; j < ranges[c].second; ++j)
      for (int k = 0; k < m; ++k) {
        PhasePoint z = grid.node(static_cast<int>(j), k);
        if (norm_sq(z) > trust) continue;
        fill_displacement(z, d, sqrtn);
        acc += f.at(static_cast<int>(j), k) * d;
      }
    partial[c] = std::move(acc);
  });
  Matrix total = Matrix::Zero(dim, dim);
  for (const Matrix& p : partial) total += p;
  double h = grid.spacing();
  total *= h * h / (2.0 * std::numbers::pi);
  return FockOperator(std::move(total));
}

ComplexField symplectic_fourier(const ComplexField& f) {
  const PhaseGrid& grid = f.grid();
  check_transform_grid(grid);
  const int m = grid.points();
  const double hh = grid.spacing() * grid.spacing();
  detail::ChirpTransform minus(m, -hh);
  detail::ChirpTransform plus(m, +hh);
  // Split the kernel exp(i(q p' - p q')) into two single-axis passes; each
  // pass is a chirp transform along rows of the transposed buffer.
  std::vector<cdouble> buf = transposed(f.values(), m);
  chirp_rows(buf, m, minus);
  buf = transposed(buf, m);
  chirp_rows(buf, m, plus);
  buf = transposed(buf, m);
  ComplexField out(grid);
  double scale = hh / (2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < buf.size(); ++i)
    out.values()[i] = buf[i] * scale;
  return out;
}

ComplexField symplectic_fourier_direct(const ComplexField& f) {
  const PhaseGrid& grid = f.grid();
  check_transform_grid(grid);
  const int m = grid.points();
  ComplexField out(grid);
  double scale =
      grid.spacing() * grid.spacing() / (2.0 * std::numbers::pi);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j) {
      double q = grid.coord(static_cast<int>(j));
      for (int k = 0; k < m; ++k) {
        double p = grid.coord(k);
        cdouble acc{0.0, 0.0};
        for (int jj = 0; jj < m; ++jj) {
          double qq = grid.coord(jj);
          for (int kk = 0; kk < m; ++kk) {
            double pp = grid.coord(kk);
            double phase = q * pp - p * qq;
            acc += f.at(jj, kk) * cdouble{std::cos(phase), std::sin(phase)};
          }
        }
        out.at(static_cast<int>(j), k) = scale * acc;
      }
    }
  });
  return out;
}

fock::FockOperator quantize(const CharFunction& f, int dim) {
  return quantize(f.field(), dim);
}

WignerField wigner_from_state(const FockOperator& rho, const PhaseGrid& grid) {
  CharFunction chi = dequantize(rho, grid);
  ComplexField w = symplectic_fourier(chi.field());
  double scale = 1.0 / (2.0 * std::numbers::pi);
  for (cdouble& v : w.values()) v *= scale;
  double herm = fock::max_hermiticity_defect(rho);
  // Realness of the transform rests on the mirror symmetry of the table;
  // the edge rows have no mirror partner, so the certificate additionally
  // needs the table to have decayed there.
  if (herm <= 1e-10 * std::max(1.0, rho.matrix().cwiseAbs().maxCoeff()) &&
      chi.field().boundary_max() <= kEdgeTol)
    return WignerField::certified(std::move(w));
  return WignerField::measured(std::move(w));
}

cdouble expectation(const FockOperator& a, const fock::DensityState& rho,
                    const PhaseGrid& grid) {
  double defect = fock::max_hermiticity_defect(a);
  if (defect > 1e-10 * std::max(1.0, a.matrix().cwiseAbs().maxCoeff()))
    throw NotHermitian("observable hermiticity defect " +
                       std::to_string(defect));
  ComplexField symbol = symplectic_fourier(dequantize(a, grid).field());
  WignerField w = wigner_from_state(rho.op(), grid);
  ComplexField product(grid);
  for (std::size_t i = 0; i < product.values().size(); ++i)
    product.values()[i] = symbol.values()[i] * w.field().values()[i];
  return grid_integral(product, Weight::lebesgue);
}

}  // namespace phasecone::transforms
