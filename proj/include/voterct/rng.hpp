#pragma once

#include <cstdint>
#include <random>

namespace voterct {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Independent stream for (seed, replica); replicas can run in any order or in
// parallel without affecting each other's draws.
inline std::mt19937_64 replica_stream(std::uint64_t seed, std::uint64_t replica) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(replica)));
}

}  // namespace voterct
