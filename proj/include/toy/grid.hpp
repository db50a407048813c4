#pragma once

// ASCII grid pictures for one or two toy bits (d = 2).
//
// Box numbering per toy bit: box = 1 + 2q + p, so boxes 1..4 are the ontic
// states (q,p) = (0,0), (0,1), (1,0), (1,1). One toy bit is drawn as a row of
// boxes 1..4; two toy bits as a 4x4 grid whose rows are the first system's
// boxes 4,3,2,1 (top to bottom) and whose columns are the second system's
// boxes 1..4 (left to right).

#include <optional>
#include <string>
#include <vector>

#include "toy/states.hpp"

namespace toy {

struct GridDiagram {
  int rows = 0;
  int cols = 0;
  std::vector<bool> filled;  // row-major
  /// Optional cell classes (e.g. measurement outcome index); cells of
  /// different classes get '|' / '-' separators between them.
  std::vector<int> classes;

  bool at(int r, int c) const { return filled[static_cast<std::size_t>(r * cols + c)]; }
  int count() const;
  std::string to_text() const;
};

inline int box_number(std::int64_t q, std::int64_t p) { return static_cast<int>(1 + 2 * q + p); }

/// Ontic code (as produced by pack) shown in grid cell (row, col).
std::uint64_t cell_code(int systems, int row, int col);

GridDiagram render_grid(const OnticSupport& sup);
GridDiagram render_grid(const EpistemicState<Zp>& s);

/// Overlay of a partition: each cell is tagged with the index of the part
/// that contains it.
GridDiagram render_partition(const std::vector<OnticSupport>& parts, const std::optional<OnticSupport>& fill = {});

}  // namespace toy
