#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace fdrthresh {

using Engine = std::mt19937_64;

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Independent engine for replicate `index` of a run rooted at `seed`. The
/// stream depends only on (seed, stream_tag, index), never on scheduling.
Engine replicate_engine(std::uint64_t seed, std::uint64_t index, std::uint64_t stream_tag = 0);

/// 64-bit FNV-1a of a canonical configuration string, as 16 hex digits.
std::string fingerprint(const std::string& canonical);

}  // namespace fdrthresh
