#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace skinlab {

// Worker cap: min(hardware, SKINLAB_THREADS when set). At least 1.
int worker_count();

// Deterministic parallel loop: [0, n) split into contiguous chunks; results
// must be written to disjoint slots (or merged with commutative exact ops).
void parallel_for(int n, const std::function<void(int)>& body);

// Chunked variant: body(chunk_id, begin, end) over a contiguous partition.
void parallel_chunks(int n, int chunks, const std::function<void(int, int, int)>& body);

// FNV-1a over bytes; stable across platforms, used for artifact content hashes.
uint64_t fnv1a(const void* data, size_t size, uint64_t seed = 1469598103934665603ull);
std::string hex64(uint64_t v);

}  // namespace skinlab
