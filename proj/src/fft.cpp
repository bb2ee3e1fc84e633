#include "levykit/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace levykit {
namespace {

struct PlanKey {
  int dim, n;
  bool forward;
  bool operator<(const PlanKey& o) const {
    if (dim != o.dim) return dim < o.dim;
    if (n != o.n) return n < o.n;
    return forward < o.forward;
  }
};

// fftw_execute_dft on fresh buffers requires alignment matching the plan; planning with
// FFTW_UNALIGNED removes that requirement so std::vector storage is always usable.
fftw_plan get_plan(const FrequencyGrid& grid, bool forward) {
  static std::mutex mutex;
  static std::map<PlanKey, fftw_plan> cache;

  std::lock_guard<std::mutex> lock(mutex);
  const PlanKey key{grid.dim, grid.n, forward};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<std::complex<double>> scratch(grid.size());
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const int sign = forward ? FFTW_FORWARD : FFTW_BACKWARD;
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fftw_plan plan = grid.dim == 1 ? fftw_plan_dft_1d(grid.n, buf, buf, sign, flags)
                                 : fftw_plan_dft_2d(grid.n, grid.n, buf, buf, sign, flags);
  cache.emplace(key, plan);
  return plan;
}

}  // namespace

void fft_inplace(const FrequencyGrid& grid, std::complex<double>* data, bool forward) {
  fftw_plan plan = get_plan(grid, forward);
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace levykit
