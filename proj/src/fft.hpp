#pragma once

// Internal FFT utilities on top of FFTW.  Not installed; include only from
// library sources.

#include <cstddef>
#include <vector>

#include "phasecone/core.hpp"

namespace phasecone::detail {

std::size_t next_pow2(std::size_t n);

// In-place unnormalized complex DFT of length data.size() (any size FFTW
// accepts; callers here stick to powers of two).  Thread-safe; plans are
// cached per (size, direction) and created under a lock with FFTW_UNALIGNED
// so execution works on any caller buffer.
void fft_inplace(std::vector<cdouble>& data, bool inverse);

// In-place unnormalized 2D complex DFT on a rows x cols row-major buffer.
void fft2_inplace(std::vector<cdouble>& data, int rows, int cols,
                  bool inverse);

// y[t] = sum_j x[j] exp(i * theta * (j - c) * (t - c)), j, t in [0, m),
// c = m / 2, via chirp factorization and power-of-two FFTs.  apply() is
// thread-safe and reusable.
class ChirpTransform {
 public:
  ChirpTransform(int m, double theta);

  void apply(const cdouble* x, cdouble* y) const;

 private:
  int m_;
  std::size_t pad_;
  std::vector<cdouble> chirp_;       // exp(i theta (idx - c)^2 / 2)
  std::vector<cdouble> kernel_fft_;  // DFT of exp(-i theta n^2 / 2) lags
};

// Zero-padded power-of-two machinery for linear convolution of two length-m
// sequences; results are exact lags 0 .. 2m-2 of sum_u a[u] b[r-u].
class LinearConvolver {
 public:
  explicit LinearConvolver(int m);

  std::size_t pad() const { return pad_; }

  // X := DFT of x zero-padded to pad().
  void forward(const cdouble* x, std::vector<cdouble>& X) const;

  // out := inverse DFT of X .* Y, normalized, so out[r] is the linear
  // convolution at lag r for r < 2m-1.
  void convolve_spectra(const std::vector<cdouble>& X,
                        const std::vector<cdouble>& Y,
                        std::vector<cdouble>& out) const;

 private:
  int m_;
  std::size_t pad_;
};

}  // namespace phasecone::detail
