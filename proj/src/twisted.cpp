#include "phasecone/twisted.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fft.hpp"
#include "phasecone/parallel.hpp"
#include "phasecone/warnings.hpp"

namespace phasecone::twisted {

namespace {

constexpr double kEdgeTol = 1e-8;

void check_grids(const ComplexField& f, const ComplexField& g) {
  if (!(f.grid() == g.grid()))
    throw GridMismatch("convolution operands live on different grids");
}

void check_decay(const ComplexField& f, const ComplexField& g) {
  double edge = std::max(f.boundary_max(), g.boundary_max());
  if (edge > kEdgeTol)
    warn::emit(warn::Code::decay,
               "convolution operand boundary modulus " + std::to_string(edge));
}

// Half-multiplier table P[a][b] = exp(i s h^2 (a - c)(b - c) / 2).  The full
// twisted kernel at nodes is P[j][k'] * conj(P[j'][k]).
std::vector<cdouble> half_phase_table(const PhaseGrid& grid, int sign) {
  int m = grid.points();
  int c = m / 2;
  double hh = grid.spacing() * grid.spacing();
  std::vector<cdouble> table(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      double phase =
          0.5 * sign * hh * static_cast<double>(a - c) * (b - c);
      table[static_cast<std::size_t>(a) * m + b] = {std::cos(phase),
                                                    std::sin(phase)};
    }
  return table;
}

}  // namespace

ComplexField twisted_convolve(const ComplexField& f, const ComplexField& g,
                              int multiplier_sign) {
  check_grids(f, g);
  check_decay(f, g);
  const PhaseGrid& grid = f.grid();
  const int m = grid.points();
  const int c = m / 2;
  const auto phase = half_phase_table(grid, multiplier_sign);
  const detail::LinearConvolver conv(m);

  // Spectra of the rows of g, reused across all output rows.
  std::vector<std::vector<cdouble>> g_rows(m);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r)
      conv.forward(&g.values()[r * static_cast<std::size_t>(m)], g_rows[r]);
  });

  ComplexField out(grid);
  const double scale =
      grid.spacing() * grid.spacing() / (2.0 * std::numbers::pi);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t lo, std::size_t hi) {
    std::vector<cdouble> u(m), spec, lag;
    std::vector<cdouble> acc(m);
    for (std::size_t j = lo; j < hi; ++j) {
      std::fill(acc.begin(), acc.end(), cdouble{0.0, 0.0});
      const cdouble* mod_j = &phase[j * static_cast<std::size_t>(m)];
      int jp_lo = std::max(0, static_cast<int>(j) + c - (m - 1));
      int jp_hi = std::min(m - 1, static_cast<int>(j) + c);
      for (int jp = jp_lo; jp <= jp_hi; ++jp) {
        int gr = static_cast<int>(j) - jp + c;
        const cdouble* f_row = &f.values()[static_cast<std::size_t>(jp) * m];
        for (int kp = 0; kp < m; ++kp) u[kp] = f_row[kp] * mod_j[kp];
        conv.forward(u.data(), spec);
        conv.convolve_spectra(spec, g_rows[gr], lag);
        const cdouble* mod_jp = &phase[static_cast<std::size_t>(jp) * m];
        for (int k = 0; k < m; ++k)
          acc[k] += std::conj(mod_jp[k]) * lag[k + c];
      }
      for (int k = 0; k < m; ++k)
        out.at(static_cast<int>(j), k) = scale * acc[k];
    }
  });
  return out;
}

ComplexField twisted_convolve_direct(const ComplexField& f,
                                     const ComplexField& g,
                                     int multiplier_sign) {
  check_grids(f, g);
  check_decay(f, g);
  const PhaseGrid& grid = f.grid();
  const int m = grid.points();
  const int c = m / 2;
  const auto phase = half_phase_table(grid, multiplier_sign);
  ComplexField out(grid);
  const double scale =
      grid.spacing() * grid.spacing() / (2.0 * std::numbers::pi);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j) {
      const cdouble* mod_j = &phase[j * static_cast<std::size_t>(m)];
      for (int k = 0; k < m; ++k) {
        cdouble sum{0.0, 0.0};
        for (int jp = 0; jp < m; ++jp) {
          int gj = static_cast<int>(j) - jp + c;
          if (gj < 0 || gj >= m) continue;
          const cdouble* f_row = &f.values()[static_cast<std::size_t>(jp) * m];
          const cdouble outer = std::conj(phase[static_cast<std::size_t>(jp) * m + k]);
          for (int kp = 0; kp < m; ++kp) {
            int gk = k - kp + c;
            if (gk < 0 || gk >= m) continue;
            sum += f_row[kp] * g.at(gj, gk) * mod_j[kp] * outer;
          }
        }
        out.at(static_cast<int>(j), k) = scale * sum;
      }
    }
  });
  return out;
}

ComplexField involution_quantum(const ComplexField& f) {
  const int m = f.points();
  ComplexField out(f.grid());
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      out.at(j, k) = std::conj(f.at((m - j) % m, (m - k) % m));
  return out;
}

ComplexField involution_classical(const ComplexField& f) {
  return involution_quantum(f);
}

ComplexField classical_convolve(const ComplexField& f, const ComplexField& g) {
  check_grids(f, g);
  check_decay(f, g);
  const int m = f.points();
  const int c = m / 2;
  const std::size_t pad = detail::next_pow2(2 * static_cast<std::size_t>(m) - 1);
  std::vector<cdouble> fa(pad * pad, cdouble{0.0, 0.0});
  std::vector<cdouble> ga(pad * pad, cdouble{0.0, 0.0});
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      fa[static_cast<std::size_t>(j) * pad + k] = f.at(j, k);
      ga[static_cast<std::size_t>(j) * pad + k] = g.at(j, k);
    }
  detail::fft2_inplace(fa, static_cast<int>(pad), static_cast<int>(pad), false);
  detail::fft2_inplace(ga, static_cast<int>(pad), static_cast<int>(pad), false);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= ga[i];
  detail::fft2_inplace(fa, static_cast<int>(pad), static_cast<int>(pad), true);
  const double h = f.grid().spacing();
  const double scale = h * h / (static_cast<double>(pad) * pad);
  ComplexField out(f.grid());
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      out.at(j, k) =
          scale * fa[static_cast<std::size_t>(j + c) * pad + (k + c)];
  return out;
}

ComplexField classical_convolve_direct(const ComplexField& f,
                                       const ComplexField& g) {
  check_grids(f, g);
  check_decay(f, g);
  const int m = f.points();
  const int c = m / 2;
  const double h = f.grid().spacing();
  const double scale = h * h;
  ComplexField out(f.grid());
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j)
      for (int k = 0; k < m; ++k) {
        cdouble sum{0.0, 0.0};
        for (int jp = 0; jp < m; ++jp) {
          int gj = static_cast<int>(j) - jp + c;
          if (gj < 0 || gj >= m) continue;
          for (int kp = 0; kp < m; ++kp) {
            int gk = k - kp + c;
            if (gk < 0 || gk >= m) continue;
            sum += f.at(jp, kp) * g.at(gj, gk);
          }
        }
        out.at(static_cast<int>(j), k) = scale * sum;
      }
  });
  return out;
}

cdouble pairing(const ComplexField& f, const ComplexField& g) {
  check_grids(f, g);
  ComplexField product(f.grid());
  for (std::size_t i = 0; i < product.values().size(); ++i)
    product.values()[i] = f.values()[i] * g.values()[i];
  return grid_integral(product, Weight::lebesgue);
}

}  // namespace phasecone::twisted
