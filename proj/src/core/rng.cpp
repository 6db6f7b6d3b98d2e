#include "wmlab/core/rng.hpp"

#include "wmlab/core/errors.hpp"

namespace wmlab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngSeed RngSeed::derive(std::uint64_t tag) const {
  return RngSeed{splitmix64(master ^ splitmix64(stream_id + 0x632be59bd9b4e019ULL)), tag};
}

namespace {

std::mt19937_64 make_engine(const RngSeed& seed) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed.master), hi(seed.master), lo(seed.stream_id), hi(seed.stream_id)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(const RngSeed& seed) : engine_(make_engine(seed)) {}

double Rng::uniform_open() {
  double u = 0.0;
  do {
    u = unit_(engine_);
  } while (u <= 0.0);
  return u;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("Rng::below: empty range");
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
}

Eigen::VectorXd sample_std_gauss(Eigen::Index d, Rng& rng) {
  if (d < 1) throw InvalidArgument("sample_std_gauss: invalid dimension " + std::to_string(d));
  Eigen::VectorXd x(d);
  for (Eigen::Index i = 0; i < d; ++i) x[i] = rng.gaussian();
  return x;
}

Eigen::VectorXd sample_std_gauss(Eigen::Index d, const RngSeed& seed) {
  Rng rng(seed);
  return sample_std_gauss(d, rng);
}

}  // namespace wmlab
