#include "wmlab/core/bitstring.hpp"

#include <algorithm>
#include <numeric>

#include "wmlab/core/errors.hpp"

namespace wmlab {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    if (b > 1) throw InvalidArgument("BitString: values must be 0 or 1");
  }
}

std::size_t BitString::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::size_t BitString::hamming(const BitString& other) const {
  require_same_dim(static_cast<long long>(size()), static_cast<long long>(other.size()),
                   "BitString::hamming");
  return std::inner_product(bits_.begin(), bits_.end(), other.bits_.begin(), std::size_t{0},
                            std::plus<>(),
                            [](std::uint8_t a, std::uint8_t b) -> std::size_t { return a != b; });
}

BitString& BitString::operator^=(const BitString& other) {
  require_same_dim(static_cast<long long>(size()), static_cast<long long>(other.size()),
                   "BitString xor");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= other.bits_[i];
  return *this;
}

BitString BitString::operator~() const {
  BitString out(*this);
  for (auto& b : out.bits_) b ^= 1;
  return out;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve((bits_.size() + 3) / 4);
  for (std::size_t k = 0; k < bits_.size(); k += 4) {
    int nibble = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      nibble <<= 1;
      if (k + j < bits_.size()) nibble |= bits_[k + j];
    }
    out.push_back(kDigits[nibble]);
  }
  return out;
}

BitString BitString::from_hex(std::string_view hex, std::size_t n) {
  if (hex.size() != (n + 3) / 4) {
    throw InvalidArgument("BitString::from_hex: expected " + std::to_string((n + 3) / 4) +
                          " hex digits for " + std::to_string(n) + " bits, got " +
                          std::to_string(hex.size()));
  }
  BitString out(n);
  for (std::size_t k = 0; k < hex.size(); ++k) {
    const char c = hex[k];
    int nibble = 0;
    if (c >= '0' && c <= '9') {
      nibble = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      nibble = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      nibble = c - 'A' + 10;
    } else {
      throw InvalidArgument(std::string("BitString::from_hex: bad digit '") + c + "'");
    }
    for (int j = 0; j < 4; ++j) {
      const std::size_t i = 4 * k + static_cast<std::size_t>(j);
      const bool bit = (nibble >> (3 - j)) & 1;
      if (i < n) {
        out.set(i, bit);
      } else if (bit) {
        throw InvalidArgument("BitString::from_hex: nonzero padding bits");
      }
    }
  }
  return out;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = bits_[i] ? '1' : '0';
  return s;
}

}  // namespace wmlab
