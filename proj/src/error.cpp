#include "nilkit/error.hpp"

#include <atomic>

namespace nilkit {

namespace {
std::atomic<std::uint64_t> g_guard{std::uint64_t{1} << 24};
}

std::uint64_t size_guard() noexcept { return g_guard.load(std::memory_order_relaxed); }

void set_size_guard(std::uint64_t limit) noexcept {
  g_guard.store(limit, std::memory_order_relaxed);
}

void check_guard(const std::string& what, std::uint64_t count) {
  if (count > size_guard()) throw GuardError(what, count, size_guard());
}

}  // namespace nilkit
