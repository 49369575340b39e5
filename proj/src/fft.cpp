#include "twistlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace twistlab::fft {
namespace {

struct PlanCache {
  std::mutex mutex;
  std::map<std::tuple<int, int, int, int, int>, fftw_plan> plans;

  // Plans are made on scratch storage and executed with the new-array API,
  // which FFTW guarantees to be thread-safe.
  fftw_plan get(int n, int count, int stride, int dist, int sign) {
    std::lock_guard lock(mutex);
    auto key = std::make_tuple(n, count, stride, dist, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    std::size_t extent = static_cast<std::size_t>(count - 1) * dist +
                         static_cast<std::size_t>(n - 1) * stride + 1;
    auto* scratch = fftw_alloc_complex(extent);
    fftw_plan p = fftw_plan_many_dft(1, &n, count, scratch, nullptr, stride, dist, scratch,
                                     nullptr, stride, dist, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (!p) throw Error("fftw planning failed");
    plans.emplace(key, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [k, p] : plans) fftw_destroy_plan(p);
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void dft_many(cplx* data, int n, int count, int stride, int dist, int sign) {
  if (n <= 1 || count <= 0) return;
  fftw_plan p = cache().get(n, count, stride, dist, sign);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, d, d);
}

void dft(cplx* data, int n, int sign) { dft_many(data, n, 1, 1, n, sign); }

}  // namespace twistlab::fft
