#include "wmlab/codecs/key_io.hpp"

#include <istream>
#include <iterator>
#include <ostream>

#include <json.hpp>

#include "wmlab/core/errors.hpp"

namespace wmlab {

namespace {

using nlohmann::json;

std::string bytes_to_hex(const KeyMaterial& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

KeyMaterial hex_to_bytes(const std::string& hex) {
  KeyMaterial out{};
  if (hex.size() != 2 * out.size()) throw InvalidArgument("key record: stream_key must be 64 hex digits");
  const BitString bits = BitString::from_hex(hex, 4 * hex.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint8_t v = 0;
    for (std::size_t j = 0; j < 8; ++j) v = static_cast<std::uint8_t>((v << 1) | bits[8 * i + j]);
    out[i] = v;
  }
  return out;
}

}  // namespace

std::string serialize_key(const PrcKey& key) {
  json j;
  j["scheme"] = "prc";
  j["d"] = key.d();
  j["t"] = key.t();
  j["w"] = key.w();
  j["alpha"] = key.alpha();
  j["parity_rows"] = key.parity_rows();
  j["syndrome"] = key.syndrome().to_hex();
  j["pad"] = key.pad().to_hex();
  return j.dump(1);
}

std::string serialize_key(const GsKey& key) {
  json j;
  j["scheme"] = "gs";
  j["d"] = key.d();
  j["m"] = key.m();
  j["alpha"] = key.alpha();
  j["stream_key"] = bytes_to_hex(key.stream_key());
  j["message"] = key.message().to_hex();
  return j.dump(1);
}

AnyKey parse_key(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
    const auto scheme = j.at("scheme").get<std::string>();
    if (scheme == "prc") {
      PrcParams p{j.at("d").get<int>(), j.at("t").get<int>(), j.at("w").get<int>(),
                  j.at("alpha").get<double>()};
      p.validate();
      auto rows = j.at("parity_rows").get<std::vector<PrcKey::Row>>();
      auto syndrome = BitString::from_hex(j.at("syndrome").get<std::string>(),
                                          static_cast<std::size_t>(p.t));
      auto pad = BitString::from_hex(j.at("pad").get<std::string>(), static_cast<std::size_t>(p.d));
      return PrcKey::from_parts(p, std::move(rows), std::move(syndrome), std::move(pad));
    }
    if (scheme == "gs") {
      GsParams p{j.at("d").get<int>(), j.at("m").get<int>(), j.at("alpha").get<double>()};
      p.validate();
      auto message = BitString::from_hex(j.at("message").get<std::string>(),
                                         static_cast<std::size_t>(p.m));
      return GsKey::from_parts(p, hex_to_bytes(j.at("stream_key").get<std::string>()),
                               std::move(message));
    }
    throw InvalidArgument("key record: unknown scheme '" + scheme + "'");
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("key record: ") + e.what());
  }
}

void write_key(std::ostream& os, const AnyKey& key) {
  std::visit([&](const auto& k) { os << serialize_key(k) << '\n'; }, key);
}

AnyKey read_key(std::istream& is) {
  const std::string text{std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
  return parse_key(text);
}

}  // namespace wmlab
