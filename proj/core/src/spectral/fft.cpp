#include "driftlab/spectral/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace driftlab {
namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;

    const int ni = static_cast<int>(n);
    std::vector<double> real(n * n);
    std::vector<std::complex<double>> cplx(n * (n / 2 + 1));
    auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.r2c = fftw_plan_dft_r2c_2d(ni, ni, real.data(), c, flags);
    p.c2r = fftw_plan_dft_c2r_2d(ni, ni, c, real.data(), flags);
    plans_.emplace(n, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.r2c);
      fftw_destroy_plan(p.c2r);
    }
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

// (-1)^(m1 + m2) shifts the transform origin from sample (0,0) to the box centre.
double centre_phase(const Grid& g, std::size_t i, std::size_t j) {
  return ((g.mode_number(i) + static_cast<long>(j)) & 1L) ? -1.0 : 1.0;
}

}  // namespace

Spectrum forward(const Field& f) {
  const Grid& g = f.grid();
  Spectrum out(g);
  auto plan = PlanCache::instance().get(g.n());
  // r2c with FFTW_ESTIMATE leaves the input untouched.
  fftw_execute_dft_r2c(plan.r2c, const_cast<double*>(f.values().data()),
                       reinterpret_cast<fftw_complex*>(out.coeffs().data()));
  return out;
}

Field inverse(const Spectrum& s) {
  const Grid& g = s.grid();
  std::vector<std::complex<double>> scratch(s.coeffs().begin(), s.coeffs().end());
  std::vector<double> real(g.size());
  auto plan = PlanCache::instance().get(g.n());
  fftw_execute_dft_c2r(plan.c2r, reinterpret_cast<fftw_complex*>(scratch.data()), real.data());
  const double scale = 1.0 / static_cast<double>(g.size());
  for (double& v : real) v *= scale;
  return Field(g, std::move(real));
}

Spectrum forward_continuous(const Field& f) {
  Spectrum s = forward(f);
  const Grid& g = f.grid();
  const double w = g.dx() * g.dx();
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (std::size_t j = 0; j < g.spectral_cols(); ++j) s(i, j) *= w * centre_phase(g, i, j);
  }
  return s;
}

Field inverse_continuous(const Spectrum& s) {
  const Grid& g = s.grid();
  Spectrum raw(g);
  const double w = static_cast<double>(g.size()) / (g.length() * g.length());
  for (std::size_t i = 0; i < g.n(); ++i) {
    for (std::size_t j = 0; j < g.spectral_cols(); ++j) raw(i, j) = s(i, j) * (w * centre_phase(g, i, j));
  }
  return inverse(raw);
}

}  // namespace driftlab
