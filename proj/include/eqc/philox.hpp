#pragma once

#include <cstdint>

namespace eqc {

// Philox-4x32-10 counter-based generator (Salmon et al., SC'11,
// "Parallel random numbers: as easy as 1, 2, 3").
//
// Every draw is a pure function of (key, counter), so a bond-copy outcome
// can be reconstructed in isolation from (master_seed, trial, edge, copy)
// without replaying any stream. This is what makes trials order-free and
// bit-reproducible across thread counts and platforms.
class Philox4x32 {
 public:
  struct Block {
    std::uint32_t x[4];
  };

  static Block generate(std::uint64_t key64, std::uint32_t c0, std::uint32_t c1,
                        std::uint32_t c2, std::uint32_t c3) {
    std::uint32_t ctr[4] = {c0, c1, c2, c3};
    std::uint32_t key[2] = {static_cast<std::uint32_t>(key64),
                            static_cast<std::uint32_t>(key64 >> 32)};
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kW32A;
        key[1] += kW32B;
      }
      single_round(ctr, key);
    }
    return Block{{ctr[0], ctr[1], ctr[2], ctr[3]}};
  }

 private:
  static constexpr std::uint32_t kW32A = 0x9E3779B9u;
  static constexpr std::uint32_t kW32B = 0xBB67AE85u;
  static constexpr std::uint32_t kM0 = 0xD2511F53u;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57u;

  static void single_round(std::uint32_t* ctr, const std::uint32_t* key) {
    const std::uint64_t prod0 = static_cast<std::uint64_t>(kM0) * ctr[0];
    const std::uint64_t prod1 = static_cast<std::uint64_t>(kM1) * ctr[2];
    const std::uint32_t lo0 = static_cast<std::uint32_t>(prod0);
    const std::uint32_t hi0 = static_cast<std::uint32_t>(prod0 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(prod1);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(prod1 >> 32);
    const std::uint32_t n0 = hi1 ^ ctr[1] ^ key[0];
    const std::uint32_t n2 = hi0 ^ ctr[3] ^ key[1];
    ctr[0] = n0;
    ctr[1] = lo1;
    ctr[2] = n2;
    ctr[3] = lo0;
  }
};

// Uniform in [0,1); 2^-32 grid is plenty for Bernoulli thresholds.
inline double to_uniform01(std::uint32_t w) { return w * 0x1p-32; }

// Uniform for bond copy `copy` of edge `edge` in trial `trial`.
inline double bond_uniform(std::uint64_t master_seed, std::uint64_t trial,
                           std::uint32_t edge, std::uint32_t copy) {
  const auto block = Philox4x32::generate(
      master_seed, static_cast<std::uint32_t>(trial),
      static_cast<std::uint32_t>(trial >> 32), edge, copy);
  return to_uniform01(block.x[0]);
}

// Deterministic sub-seed for independent streams (one per curve point etc).
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag) {
  const auto block = Philox4x32::generate(
      master_seed, static_cast<std::uint32_t>(tag),
      static_cast<std::uint32_t>(tag >> 32), 0x5eedu, 0xb00c5u);
  return (static_cast<std::uint64_t>(block.x[1]) << 32) | block.x[0];
}

}  // namespace eqc
