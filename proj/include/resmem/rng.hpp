#pragma once

#include <cstdint>
#include <random>

namespace resmem {

using rng_t = std::mt19937_64;

/// One step of the splitmix64 sequence; used to mix seeds.
inline std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derive an independent stream seed from a base seed and a stream index.
///
/// Grid points, samples and probes each get their own derived stream so that
/// results do not depend on evaluation order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream)
{
    std::uint64_t s = base;
    splitmix64(s);
    s ^= 0xd6e8feb86659fd93ULL * (stream + 1);
    splitmix64(s);
    return splitmix64(s);
}

inline rng_t make_rng(std::uint64_t seed)
{
    return rng_t{seed};
}

}  // namespace resmem
