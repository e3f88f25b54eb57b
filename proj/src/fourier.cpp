#include "modscat/fourier.hpp"

#include "modscat/kernels.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace modscat {

namespace {

// Plan cache. Plans are created once per (dim, n, direction) with
// FFTW_UNALIGNED so they can execute on any buffer; fftw_execute_dft is
// thread-safe, creation is serialized.
class PlanCache {
public:
  fftw_plan get(int dim, int n, int sign) {
    std::scoped_lock lock(mu_);
    auto key = std::make_tuple(dim, n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end())
      return it->second;
    std::vector<cplx> a(dim == 1 ? n : static_cast<std::size_t>(n) * n);
    std::vector<cplx> b(a.size());
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = reinterpret_cast<fftw_complex*>(b.data());
    fftw_plan p = dim == 1
                      ? fftw_plan_dft_1d(n, pa, pb, sign,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED)
                      : fftw_plan_dft_2d(n, n, pa, pb, sign,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

  void clear() {
    std::scoped_lock lock(mu_);
    for (auto& [k, p] : plans_)
      fftw_destroy_plan(p);
    plans_.clear();
  }

  ~PlanCache() { clear(); }

private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

// (-1)^{j1+...+jdim} per flat index; multiplied by an overall factor.
void checkerboard(const Grid& g, std::vector<cplx>& v, double factor) {
  const int n = g.n;
  if (g.dim == 1) {
    for (int i = 0; i < n; ++i)
      v[i] *= ((i & 1) ? -factor : factor);
  } else {
    const int nt = kernels::thread_cap();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt) if (nt > 1)
#endif
    for (int a = 0; a < n; ++a) {
      cplx* row = v.data() + static_cast<std::size_t>(a) * n;
      for (int b = 0; b < n; ++b)
        row[b] *= (((a + b) & 1) ? -factor : factor);
    }
  }
}

ComplexField transform(const ComplexField& f, int sign, Space out_space,
                       double scale) {
  const Grid& g = f.grid;
  ComplexField out;
  out.grid = g;
  out.space = out_space;
  std::vector<cplx> tmp = f.values;
  checkerboard(g, tmp, 1.0);
  out.values.resize(g.size());
  fftw_plan p = cache().get(g.dim, g.n, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                   reinterpret_cast<fftw_complex*>(out.values.data()));
  checkerboard(g, out.values, scale);
  return out;
}

} // namespace

ComplexField forward_fourier(const ComplexField& f) {
  require_space(f, Space::physical, "forward_fourier");
  const Grid& g = f.grid;
  const double scale =
      std::pow(g.dx / std::sqrt(2.0 * pi), static_cast<double>(g.dim));
  return transform(f, FFTW_FORWARD, Space::frequency, scale);
}

ComplexField inverse_fourier(const ComplexField& f) {
  require_space(f, Space::frequency, "inverse_fourier");
  const Grid& g = f.grid;
  const double scale =
      std::pow(g.dxi / std::sqrt(2.0 * pi), static_cast<double>(g.dim));
  return transform(f, FFTW_BACKWARD, Space::physical, scale);
}

void clear_fourier_plans() { cache().clear(); }

namespace detail {

std::vector<cplx> centered_dft(const std::vector<cplx>& v, int dim, int n,
                               int sign) {
  Grid g;
  g.dim = dim;
  g.n = n;
  std::vector<cplx> tmp = v;
  checkerboard(g, tmp, 1.0);
  std::vector<cplx> out(v.size());
  fftw_plan p = cache().get(dim, n, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  checkerboard(g, out, 1.0);
  return out;
}

} // namespace detail

} // namespace modscat
