#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wpc {

/// 0 means all hardware threads.
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

// Runs fn(worker) on `workers` threads and rethrows the first exception.
template <class Fn>
void run_workers(unsigned workers, Fn&& fn) {
  if (workers <= 1) {
    fn(0u);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        fn(w);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Commutative-monoid reduction over chunks [0, n_chunks). Each worker owns one
/// accumulator (a copy of `identity`), claims chunks dynamically, and the
/// accumulators are merged in worker order at the end. With a commutative,
/// associative merge the result does not depend on the worker count.
template <class Acc, class Body, class Merge>
Acc reduce_chunks(std::size_t n_chunks, unsigned threads, const Acc& identity, Body&& body, Merge&& merge) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n_chunks, 1)));
  std::vector<Acc> partial(workers, identity);
  std::atomic<std::size_t> next{0};
  detail::run_workers(workers, [&](unsigned w) {
    for (std::size_t c; (c = next.fetch_add(1, std::memory_order_relaxed)) < n_chunks;) body(c, partial[w]);
  });
  Acc out = identity;
  for (auto& p : partial) merge(out, p);
  return out;
}

/// Ordered streaming: chunks are produced in parallel, one batch at a time, and
/// emitted strictly in chunk order, so the emitted sequence is independent of
/// the thread count. produce(chunk, std::vector<T>&) appends; emit(const T&).
template <class T, class Produce, class Emit>
void ordered_chunks(std::size_t n_chunks, unsigned threads, Produce&& produce, Emit&& emit) {
  const unsigned workers = resolve_threads(threads);
  if (workers <= 1) {
    std::vector<T> buf;
    for (std::size_t c = 0; c < n_chunks; ++c) {
      buf.clear();
      produce(c, buf);
      for (const T& item : buf) emit(item);
    }
    return;
  }
  const std::size_t batch = std::size_t{workers} * 4;
  std::vector<std::vector<T>> bufs(batch);
  for (std::size_t start = 0; start < n_chunks; start += batch) {
    const std::size_t count = std::min(batch, n_chunks - start);
    std::atomic<std::size_t> next{0};
    detail::run_workers(std::min<unsigned>(workers, static_cast<unsigned>(count)), [&](unsigned) {
      for (std::size_t i; (i = next.fetch_add(1, std::memory_order_relaxed)) < count;) {
        bufs[i].clear();
        produce(start + i, bufs[i]);
      }
    });
    for (std::size_t i = 0; i < count; ++i) {
      for (const T& item : bufs[i]) emit(item);
    }
  }
}

}  // namespace wpc
