#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace awva {

/// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
///
/// The output at position k depends only on (key, stream, k), so
/// independent streams for Monte Carlo trials are obtained by deriving
/// per-trial keys with derive_seed(); workers may draw from disjoint
/// streams in any order and still reproduce a serial run bit for bit.
class Philox4x32 {
public:
    using result_type = std::uint64_t;

    explicit Philox4x32(std::uint64_t key, std::uint64_t stream = 0)
        : key0_(static_cast<std::uint32_t>(key)),
          key1_(static_cast<std::uint32_t>(key >> 32)),
          ctr_hi_(stream), ctr_lo_(0), pos_(4) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    /// Next 64 random bits (two lanes of the 4x32 block).
    result_type operator()() {
        if (pos_ >= 4) {
            gen_block();
            pos_ = 0;
        }
        result_type lo = block_[pos_];
        result_type hi = block_[pos_ + 1];
        pos_ += 2;
        return lo | (hi << 32);
    }

    /// Uniform double in (0, 1]; never returns 0 so log() stays finite.
    double uniform01() {
        return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
    }

    /// One-block key derivation: a cheap splittable stream id for
    /// (base seed, counter) pairs such as per-trial noise channels.
    static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter) {
        Philox4x32 g(base, counter);
        return g();
    }

private:
    static constexpr std::uint32_t kW32A = 0x9E3779B9u;
    static constexpr std::uint32_t kW32B = 0xBB67AE85u;
    static constexpr std::uint32_t kM4x32A = 0xD2511F53u;
    static constexpr std::uint32_t kM4x32B = 0xCD9E8D57u;

    static void mul_hilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
        std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        lo = static_cast<std::uint32_t>(p);
        hi = static_cast<std::uint32_t>(p >> 32);
    }

    void gen_block() {
        std::uint32_t c0 = static_cast<std::uint32_t>(ctr_lo_);
        std::uint32_t c1 = static_cast<std::uint32_t>(ctr_lo_ >> 32);
        std::uint32_t c2 = static_cast<std::uint32_t>(ctr_hi_);
        std::uint32_t c3 = static_cast<std::uint32_t>(ctr_hi_ >> 32);
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            std::uint32_t lo0, hi0, lo1, hi1;
            mul_hilo(kM4x32A, c0, lo0, hi0);
            mul_hilo(kM4x32B, c2, lo1, hi1);
            std::uint32_t n0 = hi1 ^ c1 ^ k0;
            std::uint32_t n1 = lo1;
            std::uint32_t n2 = hi0 ^ c3 ^ k1;
            std::uint32_t n3 = lo0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += kW32A;
            k1 += kW32B;
        }
        block_[0] = c0; block_[1] = c1; block_[2] = c2; block_[3] = c3;
        ++ctr_lo_; // 2^64 blocks per stream is plenty; no carry into stream id
    }

    std::uint32_t key0_, key1_;
    std::uint64_t ctr_hi_, ctr_lo_;
    std::uint32_t block_[4] = {0, 0, 0, 0};
    int pos_;
};

/// Standard-normal stream via Box-Muller over Philox uniforms.
/// Fully determined by the engine seed; no libstdc++ distribution
/// internals involved, so sequences are stable across toolchains.
class GaussianStream {
public:
    explicit GaussianStream(Philox4x32 engine) : eng_(engine) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = eng_.uniform01();
        double u2 = eng_.uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    Philox4x32 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace awva
