#pragma once

#include <iosfwd>
#include <string>

#include "wmlab/defense/orthonormal_transform.hpp"

namespace wmlab {

// Binary container, little-endian:
//   bytes 0..3   magic "WMLQ"
//   bytes 4..7   uint32 format version (1)
//   bytes 8..15  uint64 dimension d
//   then d*d IEEE-754 float64 entries, row-major
// Reloading reproduces the matrix bit-exactly, so apply() is bit-exact too.

void save_transform(std::ostream& os, const OrthonormalTransform<double>& t);
OrthonormalTransform<double> load_transform(std::istream& is);

void save_transform(const std::string& path, const OrthonormalTransform<double>& t);
OrthonormalTransform<double> load_transform(const std::string& path);

}  // namespace wmlab
