#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <limits>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace rnstab {

/// Evaluates fn(i) for i in [0, count) on up to `threads` workers and returns
/// the results in index order. If any call throws, the exception from the
/// lowest failing index is rethrown, independent of scheduling.
template <class Fn>
auto parallel_map(std::size_t count, unsigned threads, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<std::optional<R>> slots(count);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));

  std::vector<std::size_t> failed_at(workers, std::numeric_limits<std::size_t>::max());
  std::vector<std::exception_ptr> errors(workers);

  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < count; i += workers) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        failed_at[w] = i;
        errors[w] = std::current_exception();
        return;
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  const auto first = std::min_element(failed_at.begin(), failed_at.end());
  if (*first != std::numeric_limits<std::size_t>::max()) {
    std::rethrow_exception(errors[static_cast<std::size_t>(first - failed_at.begin())]);
  }

  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace rnstab
