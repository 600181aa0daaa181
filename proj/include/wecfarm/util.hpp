#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace wecfarm {

// Runs fn(i) for i in [0, n). With threads <= 1 runs inline; otherwise uses a
// block partition over `threads` workers. fn must write only to slot i so the
// result is independent of the thread count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

int resolve_threads(int requested);  // 0 -> hardware concurrency

// FNV-1a 64-bit digest of a buffer / file, as fixed-width hex.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string hex_digest(std::uint64_t h);
std::string file_digest(const std::string& path);

// splitmix64 step; used to derive independent RNG streams from one seed.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace wecfarm
