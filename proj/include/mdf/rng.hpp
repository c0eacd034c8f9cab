#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mdf {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent generator from a base seed and a path of stream
/// indices, e.g. substream(seed, {replicate}) or substream(seed, {cell, run}).
/// The result depends only on its arguments, never on call order.
Rng substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

/// Child seed for the same path, for APIs that take a seed rather than an Rng.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

}  // namespace mdf
