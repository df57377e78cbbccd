#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace gausvol {

using Engine = std::mt19937_64;

// SplitMix64 finalizer; used to derive well-separated engine seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed of replication `stream` under `base_seed`. Independent of how
// replications are scheduled across workers.
std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t stream);

Engine make_engine(std::uint64_t seed);

void fill_standard_normal(Engine& engine, std::span<double> out);

}  // namespace gausvol
