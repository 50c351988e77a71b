#ifndef POLYCIRC_KERNELS_HPP
#define POLYCIRC_KERNELS_HPP

// Enumeration kernels shared by eval, verify and learn. Each kernel has an
// OpenMP-parallel path and a plain serial path; the serial path is the
// reference the parallel one is tested against, and both must produce
// bit-identical results.

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <span>

#include "polycirc/element.hpp"

namespace polycirc {

enum class Exec { Serial, Parallel };

/// k^width, or nullopt when the product exceeds `limit`.
std::optional<std::uint64_t> checked_power(std::uint64_t k, std::size_t width, std::uint64_t limit);

/// Writes the index-th tuple of {0..k-1}^width in lexicographic order (the
/// first coordinate is the most significant digit).
inline void decode_index(std::uint64_t index, std::uint64_t k, std::span<Element> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = Element{index % k};
    index /= k;
  }
}

namespace detail {

class ExceptionSlot {
 public:
  void capture() {
    std::lock_guard<std::mutex> lock(mu_);
    if (!first_) first_ = std::current_exception();
  }
  void rethrow() const {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr first_;
};

}  // namespace detail

/// Calls body(state, i) for every i in [0, total). make_state() builds one
/// per-thread scratch state.
template <class MakeState, class Body>
void for_each_index(std::uint64_t total, Exec exec, MakeState&& make_state, Body&& body) {
  if (exec == Exec::Serial) {
    auto state = make_state();
    for (std::uint64_t i = 0; i < total; ++i) body(state, i);
    return;
  }
  detail::ExceptionSlot error;
  const auto n = static_cast<std::int64_t>(total);
#pragma omp parallel
  {
    try {
      auto state = make_state();
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < n; ++i) {
        try {
          body(state, static_cast<std::uint64_t>(i));
        } catch (...) {
          error.capture();
        }
      }
    } catch (...) {
      error.capture();
    }
  }
  error.rethrow();
}

/// Smallest i in [0, total) with fails(state, i), or nullopt. The parallel
/// path returns the same index as the serial scan.
template <class MakeState, class Pred>
std::optional<std::uint64_t> first_failure(std::uint64_t total, Exec exec, MakeState&& make_state,
                                           Pred&& fails) {
  if (exec == Exec::Serial) {
    auto state = make_state();
    for (std::uint64_t i = 0; i < total; ++i) {
      if (fails(state, i)) return i;
    }
    return std::nullopt;
  }
  std::atomic<std::uint64_t> best{total};
  detail::ExceptionSlot error;
  const auto n = static_cast<std::int64_t>(total);
#pragma omp parallel
  {
    try {
      auto state = make_state();
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        if (idx > best.load(std::memory_order_relaxed)) continue;
        try {
          if (fails(state, idx)) {
            auto cur = best.load(std::memory_order_relaxed);
            while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
            }
          }
        } catch (...) {
          error.capture();
        }
      }
    } catch (...) {
      error.capture();
    }
  }
  error.rethrow();
  const auto b = best.load();
  if (b == total) return std::nullopt;
  return b;
}

}  // namespace polycirc

#endif  // POLYCIRC_KERNELS_HPP
