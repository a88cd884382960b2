#include "fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <utility>

namespace phasecone::detail {

namespace {

std::mutex g_plan_mutex;

// FFTW planning is not thread-safe; new-array execution is.  Plans carry
// FFTW_UNALIGNED so any heap buffer works.
fftw_plan plan_1d(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cdouble> scratch(n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

fftw_plan plan_2d(int rows, int cols, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_tuple(rows, cols, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cdouble> scratch(static_cast<std::size_t>(rows) * cols);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_dft_2d(rows, cols, buf, buf, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft_inplace(std::vector<cdouble>& data, bool inverse) {
  fftw_plan plan = plan_1d(data.size(), inverse ? FFTW_BACKWARD : FFTW_FORWARD);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

void fft2_inplace(std::vector<cdouble>& data, int rows, int cols,
                  bool inverse) {
  fftw_plan plan = plan_2d(rows, cols, inverse ? FFTW_BACKWARD : FFTW_FORWARD);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

ChirpTransform::ChirpTransform(int m, double theta) : m_(m) {
  pad_ = next_pow2(2 * static_cast<std::size_t>(m) - 1);
  int c = m / 2;
  chirp_.resize(m);
  for (int idx = 0; idx < m; ++idx) {
    double n = static_cast<double>(idx - c);
    double phase = 0.5 * theta * n * n;
    chirp_[idx] = {std::cos(phase), std::sin(phase)};
  }
  // (j - c)(t - c) = [(j-c)^2 + (t-c)^2 - (t-j)^2] / 2, so the lag kernel is
  // exp(-i theta n^2 / 2) for n = t - j in (-m, m); it is even in n.
  kernel_fft_.assign(pad_, cdouble{0.0, 0.0});
  for (int n = 0; n < m; ++n) {
    double phase = -0.5 * theta * static_cast<double>(n) * n;
    cdouble v{std::cos(phase), std::sin(phase)};
    kernel_fft_[n] = v;
    if (n > 0) kernel_fft_[pad_ - n] = v;
  }
  fft_inplace(kernel_fft_, false);
}

void ChirpTransform::apply(const cdouble* x, cdouble* y) const {
  std::vector<cdouble> work(pad_, cdouble{0.0, 0.0});
  for (int j = 0; j < m_; ++j) work[j] = x[j] * chirp_[j];
  fft_inplace(work, false);
  for (std::size_t i = 0; i < pad_; ++i) work[i] *= kernel_fft_[i];
  fft_inplace(work, true);
  double inv = 1.0 / static_cast<double>(pad_);
  for (int t = 0; t < m_; ++t) y[t] = work[t] * chirp_[t] * inv;
}

LinearConvolver::LinearConvolver(int m) : m_(m) {
  pad_ = next_pow2(2 * static_cast<std::size_t>(m) - 1);
}

void LinearConvolver::forward(const cdouble* x, std::vector<cdouble>& X) const {
  X.assign(pad_, cdouble{0.0, 0.0});
  for (int i = 0; i < m_; ++i) X[i] = x[i];
  fft_inplace(X, false);
}

void LinearConvolver::convolve_spectra(const std::vector<cdouble>& X,
                                       const std::vector<cdouble>& Y,
                                       std::vector<cdouble>& out) const {
  out.resize(pad_);
  for (std::size_t i = 0; i < pad_; ++i) out[i] = X[i] * Y[i];
  fft_inplace(out, true);
  double inv = 1.0 / static_cast<double>(pad_);
  for (auto& v : out) v *= inv;
}

}  // namespace phasecone::detail
