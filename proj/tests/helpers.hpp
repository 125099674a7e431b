#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "error.hpp"

namespace qtest {

// Error code raised by the callable, or nullopt when it returns normally.
template <typename F>
std::optional<qent::ErrorCode> raised(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const qent::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline bool near(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol;
}

}  // namespace qtest
