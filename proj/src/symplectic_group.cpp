#include <algorithm>
#include <array>
#include <bit>
#include <mutex>
#include <unordered_set>

#include "toy/dynamics.hpp"

namespace toy {

namespace {

using Key = std::uint64_t;

struct Packing {
  Index n;
  int width;  // bits per column
  std::uint64_t col_mask;
  std::uint64_t even;

  explicit Packing(Index n_) : n(n_), width(static_cast<int>(2 * n_)) {
    col_mask = (std::uint64_t{1} << width) - 1;
    even = 0;
    for (int i = 0; i < width; i += 2) even |= std::uint64_t{1} << i;
  }

  std::uint64_t column(Key k, Index j) const { return (k >> (width * j)) & col_mask; }

  // [x, t] over Z_2 is the parity of x AND (t with q/p bits exchanged)
  bool bracket(std::uint64_t x, std::uint64_t t) const {
    const std::uint64_t swapped = ((t & even) << 1) | ((t >> 1) & even);
    return std::popcount(x & swapped) & 1;
  }

  Key transvect(Key k, std::uint64_t t) const {
    Key out = 0;
    for (Index j = 0; j < 2 * n; ++j) {
      auto x = column(k, j);
      if (bracket(x, t)) x ^= t;
      out |= x << (width * j);
    }
    return out;
  }

  Key identity() const {
    Key k = 0;
    for (Index j = 0; j < 2 * n; ++j) k |= (std::uint64_t{1} << j) << (width * j);
    return k;
  }
};

std::vector<Key> enumerate_group(Index n) {
  const Packing pk(n);
  std::unordered_set<Key> seen;
  std::vector<Key> frontier{pk.identity()};
  seen.insert(frontier.front());
  std::vector<Key> all = frontier;
  while (!frontier.empty()) {
    std::vector<Key> next;
    for (auto k : frontier)
      for (std::uint64_t t = 1; t <= pk.col_mask; ++t) {
        const auto m = pk.transvect(k, t);
        if (seen.insert(m).second) {
          next.push_back(m);
          all.push_back(m);
        }
      }
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

const std::vector<std::uint64_t>& symplectic_group_z2(Index n) {
  if (n < 1 || n > 3)
    throw Error(ErrorKind::CapExceeded, "Sp(2n, Z_2) enumeration is limited to n <= 3 (asked for n = " +
                                            std::to_string(n) + ")");
  static std::array<std::vector<Key>, 4> cache;
  static std::array<std::once_flag, 4> once;
  const auto i = static_cast<std::size_t>(n);
  std::call_once(once[i], [&] { cache[i] = enumerate_group(n); });
  return cache[i];
}

Mat<Zp> unpack_symplectic_z2(std::uint64_t key, Index n) {
  const Packing pk(n);
  const Field<Zp> f{2};
  Mat<Zp> m(2 * n, 2 * n);
  for (Index j = 0; j < 2 * n; ++j) {
    const auto col = pk.column(key, j);
    for (Index i = 0; i < 2 * n; ++i) m(i, j) = f(static_cast<std::int64_t>((col >> i) & 1));
  }
  return m;
}

}  // namespace toy
