#include "toy/grid.hpp"

namespace toy {

namespace {

void check_drawable(const PhaseSpace<Zp>& space) {
  if (space.field.p != 2 || space.systems < 1 || space.systems > 2)
    throw Error(ErrorKind::InvalidArgument, "grid pictures exist only for one or two toy bits (d = 2)");
}

// (q,p) of a box number 1..4
std::uint64_t box_code(int box) { return static_cast<std::uint64_t>(box - 1); }

}  // namespace

std::uint64_t cell_code(int systems, int row, int col) {
  if (systems == 1) return box_code(col + 1);
  const int box_a = 4 - row;
  const int box_b = col + 1;
  return box_code(box_a) * 4 + box_code(box_b);
}

int GridDiagram::count() const {
  int n = 0;
  for (bool b : filled) n += b ? 1 : 0;
  return n;
}

std::string GridDiagram::to_text() const {
  const bool overlay = !classes.empty();
  auto cls = [&](int r, int c) { return classes[static_cast<std::size_t>(r * cols + c)]; };
  std::string out;
  for (int r = 0; r < rows; ++r) {
    if (overlay && r > 0) {
      std::string sep;
      bool any = false;
      for (int c = 0; c < cols; ++c) {
        if (c > 0) sep += ' ';
        const bool cut = cls(r, c) != cls(r - 1, c);
        any = any || cut;
        sep += cut ? '-' : ' ';
      }
      if (any) out += sep + "\n";
    }
    for (int c = 0; c < cols; ++c) {
      if (c > 0) out += (overlay && cls(r, c) != cls(r, c - 1)) ? '|' : ' ';
      out += at(r, c) ? '#' : '.';
    }
    out += '\n';
  }
  return out;
}

GridDiagram render_grid(const OnticSupport& sup) {
  check_drawable(sup.space);
  GridDiagram g;
  const int n = static_cast<int>(sup.space.systems);
  g.rows = n == 1 ? 1 : 4;
  g.cols = 4;
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c) g.filled.push_back(sup.contains(cell_code(n, r, c)));
  return g;
}

GridDiagram render_grid(const EpistemicState<Zp>& s) { return render_grid(ontic_support(s)); }

GridDiagram render_partition(const std::vector<OnticSupport>& parts, const std::optional<OnticSupport>& fill) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "empty partition");
  GridDiagram g = fill ? render_grid(*fill) : render_grid(parts[0]);
  if (!fill) std::fill(g.filled.begin(), g.filled.end(), false);
  const int n = static_cast<int>(parts[0].space.systems);
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c) {
      int k = -1;
      for (std::size_t i = 0; i < parts.size(); ++i)
        if (parts[i].contains(cell_code(n, r, c))) k = static_cast<int>(i);
      g.classes.push_back(k);
    }
  return g;
}

}  // namespace toy
