#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "wmlab/core/bitstring.hpp"
#include "wmlab/core/rng.hpp"

namespace wmlab {

using KeyMaterial = std::array<std::uint8_t, 32>;

/// ChaCha20 keystream as bits (LSB-first within each byte). `label`
/// selects an independent stream under the same key.
BitString keystream(const KeyMaterial& key, std::size_t length, std::uint64_t label = 0);

/// Fresh 256-bit secret drawn from the seeded generator.
KeyMaterial key_material_from(const RngSeed& seed);

}  // namespace wmlab
