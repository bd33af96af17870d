#include "skinlab/util.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <thread>
#include <vector>

namespace skinlab {

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("SKINLAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) hw = std::min(hw, cap);
  }
  return std::min(hw, 8);
}

void parallel_chunks(int n, int chunks, const std::function<void(int, int, int)>& body) {
  if (n <= 0) return;
  chunks = std::max(1, std::min(chunks, n));
  if (chunks == 1) {
    body(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  for (int c = 0; c < chunks; ++c) {
    const int begin = static_cast<int>(static_cast<long long>(n) * c / chunks);
    const int end = static_cast<int>(static_cast<long long>(n) * (c + 1) / chunks);
    pool.emplace_back([&body, c, begin, end] { body(c, begin, end); });
  }
  for (auto& t : pool) t.join();
}

void parallel_for(int n, const std::function<void(int)>& body) {
  parallel_chunks(n, worker_count(), [&](int, int begin, int end) {
    for (int i = begin; i < end; ++i) body(i);
  });
}

uint64_t fnv1a(const void* data, size_t size, uint64_t seed) {
  const unsigned char* bytes = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace skinlab
