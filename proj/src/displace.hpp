#pragma once

#include <cmath>
#include <vector>

#include "phasecone/core.hpp"
#include "phasecone/fock.hpp"

// Warning-free displacement-matrix fill shared by the grid sweeps.  The
// public fock::displacement wraps the same fill with trust-region
// reporting; sweeps over many nodes report once, at the call site.

namespace phasecone::detail {

inline std::vector<double> sqrt_table(int dim) {
  std::vector<double> t(dim);
  for (int n = 0; n < dim; ++n) t[n] = std::sqrt(static_cast<double>(n));
  return t;
}

// Entries along each diagonal m - n = k in closed form,
//   <n+k|U|n> = P(n,k) L_n^(k)(x),  x = |alpha|^2,
//   P(n,k) = e^{-x/2} alpha^k sqrt(n!/(n+k)!),
// with L advanced by its three-term degree recurrence and P by one ratio
// per step; the upper triangle reuses the same L values with
// alpha -> -conj(alpha).  Row-by-row schemes amplify rounding noise at
// rate |alpha|/sqrt(row) and are useless in the high rows once
// |alpha|^2 approaches the dimension; the degree direction stays bounded
// through the whole oscillatory region, so every entry here is accurate
// wherever it is meaningful at all.
inline void fill_displacement(PhasePoint z, fock::Matrix& d,
                              const std::vector<double>& sqrtn) {
  const int dim = static_cast<int>(sqrtn.size());
  const cdouble alpha = fock::coherent_amplitude(z);
  if (alpha == cdouble{0.0, 0.0}) {
    // Exact identity at the origin; the origin node of every grid sweep
    // lands here.
    d.setIdentity();
    return;
  }
  const double x = std::norm(alpha);
  const cdouble flip = -std::conj(alpha);
  cdouble head_lo{std::exp(-0.5 * x), 0.0};
  cdouble head_hi = head_lo;
  for (int k = 0; k < dim; ++k) {
    double lprev = 0.0;
    double lcur = 1.0;
    cdouble p = head_lo;
    cdouble ph = head_hi;
    for (int n = 0; n + k < dim; ++n) {
      d(n + k, n) = p * lcur;
      if (k > 0) d(n, n + k) = ph * lcur;
      if (n + 1 + k < dim) {
        double s = sqrtn[n + 1] / sqrtn[n + 1 + k];
        p *= s;
        ph *= s;
        double lnext =
            ((2.0 * n + k + 1.0 - x) * lcur - (n + k) * lprev) / (n + 1.0);
        lprev = lcur;
        lcur = lnext;
      }
    }
    if (k + 1 < dim) {
      head_lo *= alpha / sqrtn[k + 1];
      head_hi *= flip / sqrtn[k + 1];
    }
  }
}

}  // namespace phasecone::detail
