#pragma once

#include <cstdint>
#include <vector>

#include "wmlab/core/bitstring.hpp"
#include "wmlab/core/rng.hpp"

namespace wmlab {

/// Linear system A c = rhs over GF(2), reduced once to row echelon form
/// so that uniform solutions can be drawn cheaply.
class Gf2System {
 public:
  /// `rows[r]` lists the column indices set in row r.
  Gf2System(std::size_t num_vars, const std::vector<std::vector<std::uint32_t>>& rows,
            const BitString& rhs);

  [[nodiscard]] bool consistent() const { return consistent_; }
  [[nodiscard]] std::size_t rank() const { return pivots_.size(); }
  [[nodiscard]] std::size_t num_vars() const { return num_vars_; }

  /// Uniform draw from the affine solution space. Throws InternalError
  /// if the system is inconsistent.
  [[nodiscard]] BitString sample_solution(Rng& rng) const;

 private:
  using Word = std::uint64_t;
  [[nodiscard]] bool get(const std::vector<Word>& row, std::size_t col) const {
    return (row[col / 64] >> (col % 64)) & 1;
  }

  std::size_t num_vars_ = 0;
  std::size_t words_ = 0;
  bool consistent_ = true;
  std::vector<std::vector<Word>> reduced_;  // one per pivot, fully reduced
  std::vector<std::uint8_t> reduced_rhs_;
  std::vector<std::size_t> pivots_;
  std::vector<std::uint8_t> is_pivot_;
};

}  // namespace wmlab
