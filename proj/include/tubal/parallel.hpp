#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#include <omp.h>

namespace tubal {

/// Sets the OpenMP team size used by every slice- and trial-parallel loop.
void set_num_threads(int n);
int num_threads();

/// Restores the previous team size on destruction.
class ThreadScope {
 public:
  explicit ThreadScope(int n) : saved_(num_threads()) { set_num_threads(n); }
  ~ThreadScope() { set_num_threads(saved_); }
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  int saved_;
};

/// Runs body(i) for i in [0, count) on the OpenMP team. Each index is handled by
/// exactly one thread, so results that depend only on i are schedule independent.
/// The first exception thrown by any iteration is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t count, Body&& body, bool dynamic = false) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<long long>(count);
  auto guarded = [&](long long i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (dynamic) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < n; ++i) guarded(i);
  } else {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) guarded(i);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace tubal
