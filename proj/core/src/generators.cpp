#include "proxproj/generators.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

namespace proxproj {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

Matrix normal_matrix(Rng& rng, Index rows, Index cols, double scale = 1.0) {
  Matrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) a(i, j) = scale * rng.normal();
  }
  return a;
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& w : s_) w = splitmix64(x);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::bounded(std::uint64_t n) {
  if (n == 0) throw ConfigError("Rng::bounded: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % n;
}

BpInstance gen_bp(Index m, Index n, double p_nonzero, std::uint64_t seed) {
  if (m < 1 || n < 1 || m > n) {
    throw ConfigError("gen_bp: need 1 <= m <= n");
  }
  if (!(p_nonzero > 0.0 && p_nonzero <= 1.0)) {
    throw ConfigError("gen_bp: p_nonzero must lie in (0, 1]");
  }
  Rng rng(seed);
  BpInstance out;
  out.problem.a = normal_matrix(rng, m, n, 1.0 / std::sqrt(double(m)));
  out.planted = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    if (rng.uniform() < p_nonzero) out.planted(i) = rng.normal();
  }
  out.problem.b = out.problem.a * out.planted;
  return out;
}

SmcInstance gen_smc(Index n, Index r, double oversample, double noise_sigma,
                    std::uint64_t seed) {
  if (n < 1 || r < 0 || r > n) throw ConfigError("gen_smc: need 0 <= r <= n");
  if (!(oversample > 0.0) || !(noise_sigma >= 0.0)) {
    throw ConfigError("gen_smc: oversample must be > 0 and noise_sigma >= 0");
  }
  const double s_real = std::round(oversample * smc_degrees_of_freedom(n, r));
  const double total = static_cast<double>(n) * static_cast<double>(n);
  if (s_real > total) {
    throw ConfigError("gen_smc: " + std::to_string(s_real) +
                      " samples requested but the matrix has only " +
                      std::to_string(n * n) + " entries");
  }
  const auto s = static_cast<std::uint64_t>(s_real);
  Rng rng(seed);
  const Matrix ml = normal_matrix(rng, n, r);
  const Matrix mr = normal_matrix(rng, n, r);
  SmcInstance out;
  out.planted = ml * mr.transpose();

  const auto nn = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  std::vector<std::uint64_t> idx(nn);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::uint64_t i = 0; i < s; ++i) {
    const std::uint64_t j = i + rng.bounded(nn - i);
    std::swap(idx[i], idx[j]);
  }
  std::vector<std::pair<Index, Index>> entries;
  entries.reserve(s);
  for (std::uint64_t i = 0; i < s; ++i) {
    entries.emplace_back(static_cast<Index>(idx[i] / n),
                         static_cast<Index>(idx[i] % n));
  }
  SmcProblem& p = out.problem;
  p.omega = ObservationMask(n, n, std::move(entries));
  p.m_observed = Matrix::Zero(n, n);
  double noise_sq = 0.0;
  for (const auto& [i, j] : p.omega.entries()) {
    const double e = noise_sigma * rng.normal();
    noise_sq += e * e;
    p.m_observed(i, j) = out.planted(i, j) + e;
  }
  p.eps = std::sqrt(noise_sq);
  p.scale = out.planted.norm();
  return out;
}

double smc_noise_sigma(Index r, double ratio) {
  return ratio * std::sqrt(static_cast<double>(r));
}

SpcpInstance gen_spcp(Index n1, Index n2, Index r, double sparse_frac,
                      double noise_sigma, std::uint64_t seed) {
  if (n1 < 1 || n2 < 1 || r < 0 || r > std::min(n1, n2)) {
    throw ConfigError("gen_spcp: need 0 <= r <= min(n1, n2)");
  }
  if (!(sparse_frac >= 0.0 && sparse_frac <= 1.0) || !(noise_sigma >= 0.0)) {
    throw ConfigError("gen_spcp: bad sparse fraction or noise level");
  }
  Rng rng(seed);
  SpcpInstance out;
  const Matrix u = normal_matrix(rng, n1, r);
  const Matrix v = normal_matrix(rng, n2, r);
  out.low_rank = r > 0 ? Matrix(u * v.transpose()) : Matrix::Zero(n1, n2);
  out.sparse = Matrix::Zero(n1, n2);
  const double amp = 5.0 * std::sqrt(static_cast<double>(std::max<Index>(r, 1)));
  for (Index i = 0; i < n1; ++i) {
    for (Index j = 0; j < n2; ++j) {
      if (rng.uniform() < sparse_frac) {
        out.sparse(i, j) = amp * (2.0 * rng.uniform() - 1.0);
      }
    }
  }
  out.noise = normal_matrix(rng, n1, n2, noise_sigma);
  out.problem.m = out.low_rank + out.sparse + out.noise;
  out.problem.eps = out.noise.norm();
  out.problem.lambda = SpcpProblem::default_lambda(n1);
  return out;
}

EmdProblem gen_emd_pair(EmdPairKind kind, Index n, const EmdPairParams& params,
                        std::uint64_t seed) {
  Rng rng(seed);
  Matrix rho0;
  Matrix rho1;
  switch (kind) {
    case EmdPairKind::point_masses: {
      if (n < 2) throw ConfigError("gen_emd_pair: n must be >= 2");
      std::array<Index, 4> pts{};
      if (params.points) {
        pts = *params.points;
      } else {
        for (auto& v : pts) v = static_cast<Index>(rng.bounded(n));
      }
      for (Index v : pts) {
        if (v < 0 || v >= n) throw ShapeError("gen_emd_pair: point off grid");
      }
      rho0 = Matrix::Zero(n, n);
      rho1 = Matrix::Zero(n, n);
      rho0(pts[0], pts[1]) = 1.0;
      rho1(pts[2], pts[3]) = 1.0;
      break;
    }
    case EmdPairKind::blobs: {
      if (n < 2) throw ConfigError("gen_emd_pair: n must be >= 2");
      if (params.blob_count < 1 || !(params.blob_width > 0.0)) {
        throw ConfigError("gen_emd_pair: need blob_count >= 1, width > 0");
      }
      const double w = params.blob_width * static_cast<double>(n);
      for (Matrix* rho : {&rho0, &rho1}) {
        *rho = Matrix::Zero(n, n);
        for (int b = 0; b < params.blob_count; ++b) {
          const double ci = rng.uniform() * static_cast<double>(n - 1);
          const double cj = rng.uniform() * static_cast<double>(n - 1);
          const double weight = 0.5 + rng.uniform();
          for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) {
              const double di = (static_cast<double>(i) - ci) / w;
              const double dj = (static_cast<double>(j) - cj) / w;
              (*rho)(i, j) += weight * std::exp(-0.5 * (di * di + dj * dj));
            }
          }
        }
      }
      break;
    }
    case EmdPairKind::loaded_pgm: {
      const Matrix* imgs[] = {&params.image0, &params.image1};
      for (const Matrix* img : imgs) {
        if (img->rows() != n || img->cols() != n) {
          throw ShapeError("gen_emd_pair: images must be " + std::to_string(n) +
                           "x" + std::to_string(n));
        }
      }
      auto density = [&](const Matrix& img) {
        Matrix d = params.invert ? Matrix(1.0 - img.array()) : img;
        for (Index j = 0; j < d.cols(); ++j) {
          for (Index i = 0; i < d.rows(); ++i) {
            if (d(i, j) < params.threshold) d(i, j) = 0.0;
          }
        }
        return d;
      };
      rho0 = density(params.image0);
      rho1 = density(params.image1);
      break;
    }
  }
  return EmdProblem::create(std::move(rho0), std::move(rho1), params.eps,
                            params.h, true);
}

}  // namespace proxproj
