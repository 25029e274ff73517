#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace demplast {

/// Worker count from DEMPLAST_THREADS, falling back to 1.
unsigned default_thread_count();

/// Runs body(block_index, begin, end) over fixed-size blocks of [0, n).
/// Block boundaries depend only on n and block_size, so callers that reduce
/// per-block results in block order get results independent of `threads`.
template <class Body>
void for_each_block(std::size_t n, std::size_t block_size, unsigned threads, Body&& body) {
  const std::size_t blocks = (n + block_size - 1) / block_size;
  auto run_block = [&](std::size_t b) {
    const std::size_t begin = b * block_size;
    body(b, begin, std::min(n, begin + block_size));
  };
  if (threads <= 1 || blocks <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, blocks));
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t b = w; b < blocks; b += workers) run_block(b);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace demplast
