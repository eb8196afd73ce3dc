#include "camel_lab/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>

#include "camel_lab/errors.hpp"

namespace camel::spectral {
namespace {

struct Plans {
  fftw_plan forward = nullptr;   // r2c
  fftw_plan backward = nullptr;  // c2r
};

// FFTW planning is not thread-safe; execution with new-array interfaces is.
// Plans live for the whole process.
const Plans& plans_for(std::size_t m) {
  static std::mutex mutex;
  static std::map<std::size_t, Plans> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  const int n = static_cast<int>(m);
  std::vector<double> real(m);
  std::vector<std::complex<double>> spec(m / 2 + 1);
  auto* cplx = reinterpret_cast<fftw_complex*>(spec.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  Plans p;
  p.forward = fftw_plan_dft_r2c_1d(n, real.data(), cplx, flags);
  // c2r destroys its input; callers always pass scratch copies.
  p.backward = fftw_plan_dft_c2r_1d(n, cplx, real.data(), flags);
  return cache.emplace(m, p).first->second;
}

}  // namespace

double basis_function(int j, double x) {
  if (j > 0) return std::numbers::sqrt2 * std::sin(j * x);
  if (j < 0) return std::numbers::sqrt2 * std::cos(j * x);
  return 1.0;
}

std::vector<double> synthesize(std::span<const double> c, std::size_t m) {
  if (c.size() % 2 != 1) throw ValidationError("synthesize: coefficient count must be odd");
  const int n = static_cast<int>(c.size() / 2);
  if (m < static_cast<std::size_t>(2 * n + 2)) {
    throw ValidationError("synthesize: grid too small for truncation order");
  }
  std::vector<std::complex<double>> spec(m / 2 + 1, {0.0, 0.0});
  spec[0] = c[n];
  const double s = std::numbers::sqrt2 / 2.0;
  for (int k = 1; k <= n; ++k) {
    const double cos_part = c[n - k];  // j = -k
    const double sin_part = c[n + k];  // j = +k
    spec[k] = {s * cos_part, -s * sin_part};
  }
  std::vector<double> out(m);
  fftw_execute_dft_c2r(plans_for(m).backward, reinterpret_cast<fftw_complex*>(spec.data()),
                       out.data());
  return out;
}

std::vector<double> analyze(std::span<const double> samples, int n) {
  const std::size_t m = samples.size();
  if (n < 0 || m < static_cast<std::size_t>(2 * n + 2)) {
    throw ValidationError("analyze: grid too small for truncation order");
  }
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<std::complex<double>> spec(m / 2 + 1);
  fftw_execute_dft_r2c(plans_for(m).forward, in.data(),
                       reinterpret_cast<fftw_complex*>(spec.data()));
  std::vector<double> c(2 * n + 1);
  const double inv_m = 1.0 / static_cast<double>(m);
  c[n] = spec[0].real() * inv_m;
  const double s = std::numbers::sqrt2 * inv_m;
  for (int k = 1; k <= n; ++k) {
    c[n - k] = s * spec[k].real();
    c[n + k] = -s * spec[k].imag();
  }
  return c;
}

}  // namespace camel::spectral
