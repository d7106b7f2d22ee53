#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nilkit {

/// Base class of every error raised by the library. The code is
/// module-qualified, e.g. "group.NotAGroup" or "cubespace.InvalidCorner".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Malformed or inconsistent input (bad tables, dimension mismatch, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured size guard.
class GuardError : public Error {
 public:
  GuardError(const std::string& what, std::uint64_t requested, std::uint64_t limit)
      : Error("guard.Exceeded", what + " needs " + std::to_string(requested) +
                                    " items, guard is " + std::to_string(limit)),
        requested_(requested),
        limit_(limit) {}

  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t requested_;
  std::uint64_t limit_;
};

// Global enumeration guard. Defaults to 2^24 items.
std::uint64_t size_guard() noexcept;
void set_size_guard(std::uint64_t limit) noexcept;

// Throws GuardError when count > size_guard().
void check_guard(const std::string& what, std::uint64_t count);

/// RAII override of the size guard, restored on scope exit.
class ScopedGuard {
 public:
  explicit ScopedGuard(std::uint64_t limit) : saved_(size_guard()) { set_size_guard(limit); }
  ~ScopedGuard() { set_size_guard(saved_); }
  ScopedGuard(const ScopedGuard&) = delete;
  ScopedGuard& operator=(const ScopedGuard&) = delete;

 private:
  std::uint64_t saved_;
};

}  // namespace nilkit
