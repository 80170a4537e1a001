#include <bit>

#include "fullproj/trace.hpp"

namespace fullproj {

std::int64_t euler_totient(std::int64_t i) {
  if (i < 1) throw Error("totient needs i >= 1");
  std::int64_t result = i;
  for (std::int64_t p = 2; p * p <= i; ++p) {
    if (i % p != 0) continue;
    while (i % p == 0) i /= p;
    result -= result / p;
  }
  if (i > 1) result -= result / i;
  return result;
}

std::int64_t count_balanced_words(int m) {
  if (m < 0) throw Error("word length must be >= 0");
  std::int64_t total = 1;
  for (int i = 1; i <= m; ++i) total += static_cast<std::int64_t>(m + 1 - i) * euler_totient(i);
  return total;
}

bool is_balanced(std::uint64_t word, int m) {
  for (int len = 1; len < m; ++len) {
    const std::uint64_t window = (std::uint64_t{1} << len) - 1;
    int lo = len, hi = 0;
    for (int start = 0; start + len <= m; ++start) {
      const int ups = std::popcount((word >> start) & window);
      lo = std::min(lo, ups);
      hi = std::max(hi, ups);
      if (hi - lo > 1) return false;
    }
  }
  return true;
}

std::int64_t balanced_brute(int m) {
  if (m < 0 || m > 30) throw Error("word length out of range for brute force");
  std::int64_t count = 0;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << m); ++w) count += is_balanced(w, m) ? 1 : 0;
  return count;
}

}  // namespace fullproj
