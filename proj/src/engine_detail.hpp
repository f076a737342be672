#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "fpump/model.hpp"

namespace fpump::detail {

/// Exact cycle-detection key: the integral point restricted to the active
/// coordinates, rounded to integers.
inline std::vector<long long> integral_key(const Point& p, const std::vector<std::size_t>& active) {
  std::vector<long long> key;
  key.reserve(active.size());
  for (std::size_t i : active) key.push_back(static_cast<long long>(round_to_int(p[i])));
  return key;
}

struct KeyHash {
  std::size_t operator()(const std::vector<long long>& key) const {
    std::size_t h = 1469598103934665603ULL;
    for (long long v : key) {
      h ^= static_cast<std::size_t>(v);
      h *= 1099511628211ULL;
    }
    return h;
  }
};

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace fpump::detail
