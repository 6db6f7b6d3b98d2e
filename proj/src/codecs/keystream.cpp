#include "wmlab/codecs/keystream.hpp"

#include <sodium.h>

#include <vector>

#include "wmlab/core/errors.hpp"

namespace wmlab {

namespace {

void ensure_sodium() {
  static const int status = sodium_init();
  if (status < 0) throw InternalError("libsodium initialisation failed");
}

}  // namespace

BitString keystream(const KeyMaterial& key, std::size_t length, std::uint64_t label) {
  if (length == 0) throw InvalidArgument("keystream: length must be >= 1");
  ensure_sodium();
  std::array<unsigned char, crypto_stream_chacha20_ietf_NONCEBYTES> nonce{};
  for (std::size_t i = 0; i < 8; ++i) nonce[i] = static_cast<unsigned char>(label >> (8 * i));
  std::vector<unsigned char> bytes((length + 7) / 8);
  crypto_stream_chacha20_ietf(bytes.data(), bytes.size(), nonce.data(), key.data());
  BitString out(length);
  for (std::size_t i = 0; i < length; ++i) out.set(i, (bytes[i / 8] >> (i % 8)) & 1);
  return out;
}

KeyMaterial key_material_from(const RngSeed& seed) {
  Rng rng(seed);
  KeyMaterial key{};
  for (std::size_t i = 0; i < key.size(); i += 8) {
    const std::uint64_t v = rng.next_u64();
    for (std::size_t j = 0; j < 8; ++j) key[i + j] = static_cast<std::uint8_t>(v >> (8 * j));
  }
  return key;
}

}  // namespace wmlab
