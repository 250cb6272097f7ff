#pragma once

// Sample-based cross-check of the exact Gaussian information measures.

#include <array>
#include <cstdint>

#include "helpernet/gauss_oracle.hpp"

namespace helpernet {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

struct MCEstimate {
  double estimate = 0.0;  // bits
  double stderr_bits = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kMinMonteCarloSamples = 1000;
inline constexpr int kJackknifeBlocks = 20;

/// Plug-in estimate of I(A;B|C): draws n i.i.d. samples of the variables in
/// A, B, C, forms their empirical second-moment matrix and evaluates the
/// Gaussian formula on it. The standard error is a delete-one-block
/// jackknife over 20 contiguous blocks. Sample i uses Philox counter i, so
/// the result depends only on (g, sets, n, seed).
MCEstimate mc_estimate_mi(const JointGaussian<double>& g, const LabelSet& a, const LabelSet& b, std::uint64_t n_samples,
                          std::uint64_t seed, const LabelSet& c = {});

}  // namespace helpernet
