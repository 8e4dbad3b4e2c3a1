#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>

namespace ivord {

/// xoshiro256** generator keyed by (seed, stream id). Identical keys give
/// identical sequences on every platform; independent work items should use
/// `split` rather than sharing one stream.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Unbiased integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n) noexcept;
  /// Standard normal via the polar method.
  double normal() noexcept;

  /// Child stream derived from this stream's key and `sub`; does not advance
  /// this generator.
  RngStream split(std::uint64_t sub) const noexcept;
  RngStream split(std::string_view name) const noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::array<std::uint64_t, 4> state_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// FNV-1a, used to turn method names into stream ids.
std::uint64_t stable_hash(std::string_view text) noexcept;

/// One draw from N(mean, [[s1^2, rho s1 s2], [rho s1 s2, s2^2]]) through the
/// Cholesky factor. Throws InvalidParameter unless s1, s2 > 0 and |rho| < 1.
std::pair<double, double> mvn_sample(RngStream& rng, std::pair<double, double> mean,
                                     double sigma1, double sigma2, double rho);

}  // namespace ivord
