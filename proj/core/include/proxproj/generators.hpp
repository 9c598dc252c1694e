#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "proxproj/bp.hpp"
#include "proxproj/emd.hpp"
#include "proxproj/smc.hpp"
#include "proxproj/spcp.hpp"

namespace proxproj {

/// xoshiro256** seeded through SplitMix64.
///
/// The four state words are the first four SplitMix64 outputs for the seed.
/// uniform() is (next() >> 11) * 2^-53. normal() draws u1 = 1 - uniform()
/// and u2 = uniform() and returns sqrt(-2 ln u1) cos(2 pi u2); the sine half
/// of the pair is discarded. bounded(n) rejects draws above the largest
/// multiple of n to stay unbiased.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  double uniform();
  double normal();
  std::uint64_t bounded(std::uint64_t n);

 private:
  std::array<std::uint64_t, 4> s_{};
};

struct BpInstance {
  BpProblem problem;
  Vector planted;
};

/// A is m x n with N(0, 1/m) entries drawn row by row; each entry of x* is
/// nonzero with probability p_nonzero (uniform < p) and then N(0, 1);
/// b = A x*.
BpInstance gen_bp(Index m, Index n, double p_nonzero, std::uint64_t seed);

struct SmcInstance {
  SmcProblem problem;
  Matrix planted;
};

/// M = M_L M_R^T with n x r standard normal factors (M_L then M_R, row by
/// row). omega holds s = round(oversample * r(2n - r)) entries drawn by a
/// partial Fisher-Yates shuffle of the row-major indices. Noise N(0,
/// noise_sigma^2) is added on omega in sorted order; eps = ||P_omega(N)||_F
/// and the residual scale is ||M||_F. Throws ConfigError when s > n^2.
SmcInstance gen_smc(Index n, Index r, double oversample, double noise_sigma,
                    std::uint64_t seed);

/// Noise standard deviation giving eps / ||P_omega(M)||_F close to `ratio`
/// for gen_smc instances (entries of M have variance r).
double smc_noise_sigma(Index r, double ratio);

struct SpcpInstance {
  SpcpProblem problem;
  Matrix low_rank;
  Matrix sparse;
  Matrix noise;
};

/// L* = U V^T with n1 x r and n2 x r standard normal factors; each entry of
/// S* is nonzero with probability sparse_frac, with value uniform on
/// [-5, 5] scaled by sqrt(max(r, 1)); N has N(0, noise_sigma^2) entries.
/// M = L* + S* + N, eps = ||N||_F, lambda = 1/sqrt(n1).
SpcpInstance gen_spcp(Index n1, Index n2, Index r, double sparse_frac,
                      double noise_sigma, std::uint64_t seed);

enum class EmdPairKind { point_masses, loaded_pgm, blobs };

struct EmdPairParams {
  /// (row0, col0, row1, col1); drawn from the seed when unset.
  std::optional<std::array<Index, 4>> points;
  int blob_count = 3;
  /// Blob standard deviation as a fraction of n.
  double blob_width = 0.08;
  /// Images for loaded_pgm, intensities in [0, 1].
  Matrix image0;
  Matrix image1;
  /// Use 1 - intensity so dark pixels carry mass.
  bool invert = true;
  /// Entries below this (after inversion) are zeroed.
  double threshold = 0.5;
  double eps = 1e-10;
  double h = 1.0;
};

/// Both densities normalized to unit mass. Throws IllPosedError when a
/// density has no mass.
EmdProblem gen_emd_pair(EmdPairKind kind, Index n, const EmdPairParams& params,
                        std::uint64_t seed);

}  // namespace proxproj
