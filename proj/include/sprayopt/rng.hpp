#ifndef SPRAYOPT_RNG_HPP
#define SPRAYOPT_RNG_HPP

#include <cstdint>
#include <random>

namespace sprayopt {

/// Seeded random stream. Raw draws come from std::mt19937_64 (whose output
/// sequence is fixed by the standard); the double conversions are done here
/// so results do not depend on library-specific distribution internals.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform index in [0, n). Modulo bias is negligible for the n used here.
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

    bool coin() { return (next_u64() & 1u) != 0; }

    /// Deterministic sub-stream, independent of draws taken from this one.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        // splitmix64 finalizer over (seed, stream)
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace sprayopt

#endif  // SPRAYOPT_RNG_HPP
