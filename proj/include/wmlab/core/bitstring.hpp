#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wmlab {

/// Fixed-length binary sequence: codewords, sign projections, keystreams.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0) {}
  explicit BitString(std::vector<std::uint8_t> bits);

  [[nodiscard]] std::size_t size() const { return bits_.size(); }
  [[nodiscard]] bool empty() const { return bits_.empty(); }
  [[nodiscard]] bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1; }

  [[nodiscard]] std::size_t count() const;
  [[nodiscard]] std::size_t hamming(const BitString& other) const;

  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }
  BitString operator~() const;
  friend bool operator==(const BitString&, const BitString&) = default;

  /// MSB-first nibble packing; the final nibble is zero-padded.
  [[nodiscard]] std::string to_hex() const;
  static BitString from_hex(std::string_view hex, std::size_t n);
  /// "0110..." for diagnostics.
  [[nodiscard]] std::string to_string() const;

  [[nodiscard]] const std::vector<std::uint8_t>& bits() const { return bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace wmlab
