#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "wmlab/codecs/gaussian_shading.hpp"
#include "wmlab/codecs/prc.hpp"

namespace wmlab {

// Keys are stored as self-describing JSON records:
//   {"scheme": "prc", "d": .., "t": .., "w": .., "alpha": ..,
//    "parity_rows": [[i, j, k], ...], "syndrome": "<hex>", "pad": "<hex>"}
//   {"scheme": "gs", "d": .., "m": .., "alpha": ..,
//    "stream_key": "<64 hex digits>", "message": "<hex>"}
// Bit strings use BitString::to_hex (MSB-first nibbles).

using AnyKey = std::variant<PrcKey, GsKey>;

std::string serialize_key(const PrcKey& key);
std::string serialize_key(const GsKey& key);
AnyKey parse_key(const std::string& text);

void write_key(std::ostream& os, const AnyKey& key);
AnyKey read_key(std::istream& is);

}  // namespace wmlab
