#include "wmlab/defense/transform_io.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace wmlab {

namespace {

constexpr char kMagic[4] = {'W', 'M', 'L', 'Q'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "transform container I/O assumes a little-endian host");

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw InvalidArgument("transform container: truncated input");
  }
  return v;
}

}  // namespace

void save_transform(std::ostream& os, const OrthonormalTransform<double>& t) {
  os.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(os, kVersion);
  put<std::uint64_t>(os, static_cast<std::uint64_t>(t.dim()));
  const auto& q = t.matrix();
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    for (Eigen::Index j = 0; j < q.cols(); ++j) put<double>(os, q(i, j));
  }
  if (!os) throw InvalidArgument("transform container: write failed");
}

OrthonormalTransform<double> load_transform(std::istream& is) {
  char magic[4];
  if (!is.read(magic, sizeof(magic)) || !std::equal(magic, magic + 4, kMagic)) {
    throw InvalidArgument("transform container: bad magic");
  }
  const auto version = get<std::uint32_t>(is);
  if (version != kVersion) {
    throw InvalidArgument("transform container: unsupported version " + std::to_string(version));
  }
  const auto d = get<std::uint64_t>(is);
  if (d == 0 || d > (1U << 20)) throw InvalidArgument("transform container: bad dimension");
  const auto n = static_cast<Eigen::Index>(d);
  OrthonormalTransform<double>::Matrix q(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) q(i, j) = get<double>(is);
  }
  return OrthonormalTransform<double>(std::move(q));
}

void save_transform(const std::string& path, const OrthonormalTransform<double>& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("cannot open " + path + " for writing");
  save_transform(os, t);
}

OrthonormalTransform<double> load_transform(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidArgument("cannot open " + path);
  return load_transform(is);
}

}  // namespace wmlab
