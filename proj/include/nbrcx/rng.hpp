#ifndef NBRCX_RNG_HPP
#define NBRCX_RNG_HPP

#include <cstdint>

namespace nbrcx {

/**
 * Identifies one random stream. The pair (master, trial_index) fully
 * determines every draw, so trials can run in any order on any thread.
 */
struct Seed {
    std::uint64_t master = 0;
    std::uint64_t trial_index = 0;
};

/** SplitMix64 finalizer. */
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * Counter-based SplitMix64 stream. The i-th output is
 * mix64(key + (i + 1) * 0x9e3779b97f4a7c15), with
 * key = mix64(master ^ mix64(trial_index + 0x632be59bd9b4e019)).
 * Both constants and the mixing are part of the reproducibility contract.
 */
class Rng {
public:
    explicit Rng(Seed seed) noexcept
        : key_(mix64(seed.master ^ mix64(seed.trial_index + 0x632be59bd9b4e019ULL)))
    {}

    std::uint64_t next() noexcept
    {
        ++counter_;
        return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
    }

    /** Uniform double in [0, 1) with 53 random bits. */
    double uniform() noexcept
    {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /** One Bernoulli draw; exactly one counter step regardless of prob. */
    bool bernoulli(double prob) noexcept { return uniform() < prob; }

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace nbrcx

#endif
