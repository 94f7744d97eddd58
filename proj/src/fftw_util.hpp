#pragma once

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "vixbns/errors.hpp"

namespace vixbns::detail {

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

inline FftwBuffer make_buffer(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (!p) throw std::bad_alloc();
  return FftwBuffer(p);
}

// In-place forward plans by length. FFTW's planner is not thread-safe; execution is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, plan] : plans_) fftw_destroy_plan(plan);
  }
  fftw_plan get(long n) {
    std::lock_guard lock(mu_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    auto scratch = make_buffer(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), scratch.get(), scratch.get(),
                                      FFTW_FORWARD, FFTW_ESTIMATE);
    if (!plan) throw NumericalError("fft: planner failed for n = " + std::to_string(n));
    plans_.emplace(n, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<long, fftw_plan> plans_;
};

inline PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace vixbns::detail
