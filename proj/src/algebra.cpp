#include "toy/algebra.hpp"

namespace toy {

void for_each_subspace(const Field<Zp>& field, Index n, Index k,
                       const std::function<void(const Subspace<Zp>&)>& f) {
  if (k < 0 || k > n) return;
  const auto p = field.order();
  std::vector<Index> pivots(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) pivots[static_cast<std::size_t>(i)] = i;

  while (true) {
    // free slots: row i, columns after its pivot that are not pivots themselves
    std::vector<std::pair<Index, Index>> slots;
    for (Index i = 0; i < k; ++i)
      for (Index c = pivots[static_cast<std::size_t>(i)] + 1; c < n; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) slots.emplace_back(i, c);

    std::vector<std::uint64_t> digits(slots.size(), 0);
    while (true) {
      Mat<Zp> m = zero_matrix(field, k, n);
      for (Index i = 0; i < k; ++i) m(i, pivots[static_cast<std::size_t>(i)]) = field.one();
      for (std::size_t s = 0; s < slots.size(); ++s) m(slots[s].first, slots[s].second) = field.element(digits[s]);
      f(Subspace<Zp>::span(field, n, m));
      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == p) digits[pos++] = 0;
      if (pos == digits.size()) break;
    }

    // next pivot set in lexicographic order
    Index i = k - 1;
    while (i >= 0 && pivots[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++pivots[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j) pivots[static_cast<std::size_t>(j)] = pivots[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace toy
