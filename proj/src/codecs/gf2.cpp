#include "wmlab/codecs/gf2.hpp"

#include <bit>

#include "wmlab/core/errors.hpp"

namespace wmlab {

Gf2System::Gf2System(std::size_t num_vars, const std::vector<std::vector<std::uint32_t>>& rows,
                     const BitString& rhs)
    : num_vars_(num_vars), words_((num_vars + 63) / 64), is_pivot_(num_vars, 0) {
  require_same_dim(static_cast<long long>(rows.size()), static_cast<long long>(rhs.size()),
                   "Gf2System rhs");
  std::vector<std::vector<Word>> m(rows.size(), std::vector<Word>(words_, 0));
  std::vector<std::uint8_t> b(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (auto col : rows[r]) {
      if (col >= num_vars) throw InvalidArgument("Gf2System: column index out of range");
      m[r][col / 64] ^= Word{1} << (col % 64);
    }
    b[r] = rhs[r] ? 1 : 0;
  }

  // Gauss-Jordan elimination.
  std::size_t next = 0;
  for (std::size_t col = 0; col < num_vars && next < m.size(); ++col) {
    std::size_t sel = next;
    while (sel < m.size() && !get(m[sel], col)) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[next]);
    std::swap(b[sel], b[next]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != next && get(m[r], col)) {
        for (std::size_t w = 0; w < words_; ++w) m[r][w] ^= m[next][w];
        b[r] ^= b[next];
      }
    }
    pivots_.push_back(col);
    is_pivot_[col] = 1;
    ++next;
  }
  for (std::size_t r = next; r < m.size(); ++r) {
    if (b[r]) consistent_ = false;
  }
  m.resize(next);
  b.resize(next);
  reduced_ = std::move(m);
  reduced_rhs_ = std::move(b);
}

BitString Gf2System::sample_solution(Rng& rng) const {
  if (!consistent_) throw InternalError("Gf2System: inconsistent system has no solution");
  std::vector<Word> x(words_, 0);
  for (std::size_t col = 0; col < num_vars_; ++col) {
    if (!is_pivot_[col] && rng.coin()) x[col / 64] |= Word{1} << (col % 64);
  }
  // Each reduced row touches exactly one pivot, so pivots are independent.
  for (std::size_t r = 0; r < reduced_.size(); ++r) {
    unsigned parity = reduced_rhs_[r];
    for (std::size_t w = 0; w < words_; ++w) {
      parity ^= static_cast<unsigned>(std::popcount(reduced_[r][w] & x[w]) & 1);
    }
    if (parity) x[pivots_[r] / 64] |= Word{1} << (pivots_[r] % 64);
  }
  BitString out(num_vars_);
  for (std::size_t col = 0; col < num_vars_; ++col) out.set(col, get(x, col));
  return out;
}

}  // namespace wmlab
