#include "mmbb84/random.hpp"

#include <cmath>
#include <stdexcept>

namespace mmbb84 {

std::uint64_t RandomStream::next_below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("RandomStream::next_below: bound must be positive");
  }
  // Fixed-point multiply; the modulo bias is < 2^-64 per draw, far below
  // anything the statistical tests can resolve, and it is branch-free and
  // replay-stable.
  const unsigned __int128 wide =
      static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(bound);
  return static_cast<std::uint64_t>(wide >> 64);
}

double RandomStream::next_gaussian() {
  // Box-Muller, cosine branch only. u1 is kept away from zero so the log is
  // finite.
  const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ (a + 0x9e3779b97f4a7c15ULL));
  h = splitmix64(h ^ (b + 0x7f4a7c159e3779b9ULL));
  return h;
}

}  // namespace mmbb84
