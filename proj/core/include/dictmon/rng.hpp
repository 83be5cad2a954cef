#ifndef DICTMON_RNG_HPP
#define DICTMON_RNG_HPP

#include <cmath>
#include <cstdint>

namespace dictmon {

// splitmix64 finalizer; the mixing constants are Steele & Vigna's.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Counter-based pseudo-random stream. Every draw is a pure function of
/// (seed, stream, counter), so any position in the stream can be computed
/// without replaying earlier draws. This is what makes windows addressable
/// by ordinal and runs resumable from a snapshot.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(splitmix64(seed ^ splitmix64(stream * 0x9e3779b97f4a7c15ull + 1))) {}

    std::uint64_t next_u64() { return splitmix64(base_ + counter_++ * 0x2545f4914f6cdd1dull); }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Lemire-style multiply-shift; the modulo
    /// bias at n << 2^64 is far below anything observable here.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Standard normal via Box-Muller. Draws two uniforms per call; the
    /// second variate is deliberately discarded to keep every draw a pure
    /// function of the counter position.
    double next_normal() {
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    void skip_to(std::uint64_t counter) { counter_ = counter; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

} // namespace dictmon

#endif
