#include "ivord/rng.hpp"

#include <cmath>

#include "ivord/error.hpp"

namespace ivord {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) noexcept {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t x = a ^ (b * 0xD6E8FEB86659FD93ULL);
  return splitmix64(x);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
  std::uint64_t x = mix(seed, stream) ^ stream;
  for (auto& s : state_) s = splitmix64(x);
}

std::uint64_t RngStream::next_u64() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_index(std::uint64_t n) noexcept {
  // Lemire's multiply-and-reject
  __extension__ using u128 = unsigned __int128;
  u128 m = static_cast<u128>(next_u64()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<u128>(next_u64()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double RngStream::normal() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

RngStream RngStream::split(std::uint64_t sub) const noexcept {
  return RngStream(seed_, mix(stream_ + 0x632BE59BD9B4E019ULL, sub));
}

RngStream RngStream::split(std::string_view name) const noexcept {
  return split(stable_hash(name));
}

std::uint64_t stable_hash(std::string_view text) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::pair<double, double> mvn_sample(RngStream& rng, std::pair<double, double> mean,
                                     double sigma1, double sigma2, double rho) {
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0) || !(std::abs(rho) < 1.0)) {
    fail(ErrorCode::InvalidParameter, "need sigma1, sigma2 > 0 and |rho| < 1");
  }
  const double z1 = rng.normal();
  const double z2 = rng.normal();
  // L = [[s1, 0], [rho s2, s2 sqrt(1 - rho^2)]]
  return {mean.first + sigma1 * z1,
          mean.second + sigma2 * (rho * z1 + std::sqrt(1.0 - rho * rho) * z2)};
}

}  // namespace ivord
