#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "tilehom/error.hpp"
#include "tilehom/symmetry.hpp"

namespace tilehom {

/// Dense 0-based index into a grid's cell table.
struct CellId {
  std::uint32_t value{0};

  constexpr auto operator<=>(const CellId&) const = default;
};

/// Human-facing cell address: rows counted 1-based from the top, columns
/// 1-based from the left, within a named patch.
struct CellLabel {
  std::string patch;
  int row{0};
  int col{0};

  auto operator<=>(const CellLabel&) const = default;
};

enum class Chirality : std::uint8_t { preserving, reversing };

/// Result of crossing a glued edge: the target cell and the side of the target
/// through which one enters.
struct Transition {
  CellId target;
  Direction entry{Direction::N};
  Chirality chirality{Chirality::preserving};

  auto operator<=>(const Transition&) const = default;
};

/// Frame transport across a crossed edge: the unique square symmetry g with
/// g(exit) = opposite(entry) whose orientation character matches the chirality.
constexpr Symmetry frame_map(Direction exit, const Transition& t) noexcept {
  return Symmetry::mapping(exit, opposite(t.entry), t.chirality == Chirality::preserving);
}

struct Patch {
  std::string id;
  int rows{0};
  int cols{0};
  std::uint32_t first_cell{0};

  bool operator==(const Patch&) const = default;
};

/// Finite square grid on a surface, held as a quotient cell complex.
///
/// Every cell side is either a Boundary (std::nullopt) or a Transition to some
/// cell side. Removed cells are a mask: they keep their labels and gluings but
/// take no part in tiling.
class SurfaceGrid {
 public:
  SurfaceGrid() = default;
  explicit SurfaceGrid(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Appends an nrows x ncols patch with planar adjacency between its cells.
  std::size_t add_patch(const std::string& id, int rows, int cols) {
    if (rows < 1 || cols < 1) throw UsageError("patch '" + id + "' must have positive size");
    if (find_patch(id)) throw GridError("duplicate patch '" + id + "'");
    const auto first = static_cast<std::uint32_t>(labels_.size());
    patches_.push_back({id, rows, cols, first});
    for (int r = 1; r <= rows; ++r) {
      for (int c = 1; c <= cols; ++c) {
        labels_.push_back({id, r, c});
        links_.push_back({});
        removed_.push_back(false);
      }
    }
    const Patch& p = patches_.back();
    for (int r = 1; r <= rows; ++r) {
      for (int c = 1; c <= cols; ++c) {
        const CellId here = cell_in_patch(p, r, c);
        if (c < cols) link(here, Direction::E, cell_in_patch(p, r, c + 1), Direction::W,
                           Chirality::preserving);
        if (r < rows) link(here, Direction::S, cell_in_patch(p, r + 1, c), Direction::N,
                           Chirality::preserving);
      }
    }
    return patches_.size() - 1;
  }

  /// Glues side `da` of `a` to side `db` of `b`. Both sides must be unglued.
  void glue(CellId a, Direction da, CellId b, Direction db, Chirality chirality) {
    check(a);
    check(b);
    if (a == b && da == db) {
      throw GridError("edge " + describe_side(a, da) + " cannot be glued to itself");
    }
    for (auto [c, d] : {std::pair{a, da}, std::pair{b, db}}) {
      if (links_[c.value][index_of(d)]) {
        throw GridError("edge " + describe_side(c, d) + " is already glued");
      }
    }
    link(a, da, b, db, chirality);
  }

  void remove(CellId c) {
    check(c);
    removed_[c.value] = true;
  }

  std::size_t cell_count() const noexcept { return labels_.size(); }
  const std::vector<Patch>& patches() const noexcept { return patches_; }

  const CellLabel& label(CellId c) const {
    check(c);
    return labels_[c.value];
  }

  std::optional<CellId> find(const std::string& patch, int row, int col) const {
    const auto p = find_patch(patch);
    if (!p || row < 1 || col < 1 || row > p->rows || col > p->cols) return std::nullopt;
    return cell_in_patch(*p, row, col);
  }

  const Patch* find_patch(const std::string& id) const {
    auto it = std::find_if(patches_.begin(), patches_.end(),
                           [&](const Patch& p) { return p.id == id; });
    return it == patches_.end() ? nullptr : &*it;
  }

  /// Stored transition across side `dir` of `cell`; std::nullopt is Boundary.
  std::optional<Transition> neighbor(CellId cell, Direction dir) const {
    check(cell);
    return links_[cell.value][index_of(dir)];
  }

  bool is_removed(CellId c) const {
    check(c);
    return removed_[c.value];
  }

  /// Cells that take part in tiling, in CellId order.
  std::vector<CellId> active_cells() const {
    std::vector<CellId> out;
    for (std::uint32_t i = 0; i < labels_.size(); ++i) {
      if (!removed_[i]) out.push_back(CellId{i});
    }
    return out;
  }

  std::vector<CellId> removed_cells() const {
    std::vector<CellId> out;
    for (std::uint32_t i = 0; i < labels_.size(); ++i) {
      if (removed_[i]) out.push_back(CellId{i});
    }
    return out;
  }

  std::string describe_cell(CellId c) const {
    const CellLabel& l = label(c);
    return l.patch + "(" + std::to_string(l.row) + "," + std::to_string(l.col) + ")";
  }

  std::string describe_side(CellId c, Direction d) const {
    return describe_cell(c) + "." + to_char(d);
  }

  /// Checks the involution invariant on every glued edge. Throws GridError
  /// naming the offending edge pair.
  void validate() const {
    for (std::uint32_t i = 0; i < labels_.size(); ++i) {
      for (Direction d : kDirections) {
        const auto& t = links_[i][index_of(d)];
        if (!t) continue;
        const CellId here{i};
        if (t->target.value >= labels_.size()) {
          throw GridError("edge " + describe_side(here, d) + " points outside the grid");
        }
        if (t->target == here && t->entry == d) {
          throw GridError("edge " + describe_side(here, d) + " is glued to itself");
        }
        const auto& back = links_[t->target.value][index_of(t->entry)];
        if (!back || back->target != here || back->entry != d || back->chirality != t->chirality) {
          throw GridError("inconsistent gluing between " + describe_side(here, d) + " and " +
                          describe_side(t->target, t->entry));
        }
      }
    }
  }

  /// Non-fatal diagnostics: currently only disconnection of the active cells.
  std::vector<std::string> warnings() const {
    std::vector<std::string> out;
    const auto active = active_cells();
    if (active.empty()) return out;
    std::vector<bool> seen(labels_.size(), false);
    std::queue<CellId> todo;
    todo.push(active.front());
    seen[active.front().value] = true;
    std::size_t reached = 1;
    while (!todo.empty()) {
      const CellId c = todo.front();
      todo.pop();
      for (const auto& t : links_[c.value]) {
        if (t && !removed_[t->target.value] && !seen[t->target.value]) {
          seen[t->target.value] = true;
          ++reached;
          todo.push(t->target);
        }
      }
    }
    if (reached != active.size()) {
      out.push_back("active cells are not edge-connected (" + std::to_string(reached) + " of " +
                    std::to_string(active.size()) + " reachable)");
    }
    return out;
  }

  bool operator==(const SurfaceGrid&) const = default;

 private:
  static CellId cell_in_patch(const Patch& p, int row, int col) {
    return CellId{p.first_cell + static_cast<std::uint32_t>((row - 1) * p.cols + (col - 1))};
  }

  void check(CellId c) const {
    if (c.value >= labels_.size()) {
      throw UsageError("unknown cell id " + std::to_string(c.value));
    }
  }

  void link(CellId a, Direction da, CellId b, Direction db, Chirality chirality) {
    links_[a.value][index_of(da)] = Transition{b, db, chirality};
    links_[b.value][index_of(db)] = Transition{a, da, chirality};
  }

  std::string name_;
  std::vector<Patch> patches_;
  std::vector<CellLabel> labels_;
  std::vector<std::array<std::optional<Transition>, 4>> links_;
  std::vector<bool> removed_;
};

// ---------------------------------------------------------------------------
// Topology of the quotient complex
// ---------------------------------------------------------------------------

/// Corner of a unit cell, clockwise from the north-west corner.
enum class Corner : std::uint8_t { NW = 0, NE = 1, SE = 2, SW = 3 };

struct ConePoint {
  std::size_t vertex{0};
  int incident_squares{0};
  CellId cell;  // one cell touching the vertex
  Corner corner{Corner::NW};
};

struct TopologyReport {
  std::size_t vertices{0};
  std::size_t edges{0};
  std::size_t faces{0};
  long euler{0};
  bool orientable{true};
  std::size_t boundary_components{0};
  long genus{0};
  std::size_t components{0};
  std::vector<ConePoint> cone_points;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Direction along which a side's segment order runs.
constexpr Direction side_tangent(Direction side) noexcept {
  return (side == Direction::N || side == Direction::S) ? Direction::E : Direction::S;
}

/// Endpoints of a side listed in tangent order.
constexpr std::array<Corner, 2> side_corners(Direction side) noexcept {
  switch (side) {
    case Direction::N: return {Corner::NW, Corner::NE};
    case Direction::E: return {Corner::NE, Corner::SE};
    case Direction::S: return {Corner::SW, Corner::SE};
    case Direction::W: return {Corner::NW, Corner::SW};
  }
  return {Corner::NW, Corner::NE};
}

inline std::size_t corner_slot(CellId c, Corner k) {
  return 4 * static_cast<std::size_t>(c.value) + static_cast<std::size_t>(k);
}

}  // namespace detail

/// Topological invariants of the grid's quotient complex.
///
/// By default the full complex is used, removed cells included. With
/// `masked = true` removed cells are deleted first, so their sides become
/// boundary of the remaining cells. Genus is summed over connected components.
inline TopologyReport topology(const SurfaceGrid& grid, bool masked = false) {
  using detail::corner_slot;
  grid.validate();
  const std::size_t n = grid.cell_count();
  auto included = [&](CellId c) { return !masked || !grid.is_removed(c); };

  detail::DisjointSets corners(4 * n);
  detail::DisjointSets cells(n);
  std::vector<std::array<bool, 4>> boundary(n, {false, false, false, false});
  std::size_t glued_sides = 0;
  std::size_t boundary_sides = 0;

  for (std::uint32_t i = 0; i < n; ++i) {
    const CellId c{i};
    if (!included(c)) continue;
    for (Direction d : kDirections) {
      const auto t = grid.neighbor(c, d);
      if (!t || !included(t->target)) {
        boundary[i][index_of(d)] = true;
        ++boundary_sides;
        continue;
      }
      ++glued_sides;
      cells.unite(i, t->target.value);
      const Symmetry g = frame_map(d, *t);
      const bool aligned = g.apply(detail::side_tangent(d)) == detail::side_tangent(t->entry);
      const auto here = detail::side_corners(d);
      auto there = detail::side_corners(t->entry);
      if (!aligned) std::swap(there[0], there[1]);
      corners.unite(corner_slot(c, here[0]), corner_slot(t->target, there[0]));
      corners.unite(corner_slot(c, here[1]), corner_slot(t->target, there[1]));
    }
  }

  // Dense vertex numbering in order of first corner appearance.
  std::vector<std::size_t> vertex_of(4 * n, SIZE_MAX);
  std::vector<std::size_t> root_to_vertex(4 * n, SIZE_MAX);
  std::vector<int> incident;
  std::vector<std::size_t> vertex_component;
  std::vector<std::size_t> first_slot;
  for (std::size_t slot = 0; slot < 4 * n; ++slot) {
    const CellId c{static_cast<std::uint32_t>(slot / 4)};
    if (!included(c)) continue;
    const std::size_t root = corners.find(slot);
    if (root_to_vertex[root] == SIZE_MAX) {
      root_to_vertex[root] = incident.size();
      incident.push_back(0);
      vertex_component.push_back(cells.find(c.value));
      first_slot.push_back(slot);
    }
    vertex_of[slot] = root_to_vertex[root];
    ++incident[vertex_of[slot]];
  }
  const std::size_t vertex_count = incident.size();

  // Boundary vertices and boundary cycles.
  std::vector<bool> on_boundary(vertex_count, false);
  detail::DisjointSets boundary_links(vertex_count);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (Direction d : kDirections) {
      if (!boundary[i][index_of(d)]) continue;
      const auto ends = detail::side_corners(d);
      const std::size_t a = vertex_of[corner_slot(CellId{i}, ends[0])];
      const std::size_t b = vertex_of[corner_slot(CellId{i}, ends[1])];
      on_boundary[a] = on_boundary[b] = true;
      boundary_links.unite(a, b);
    }
  }

  // Orientation propagation per component.
  std::vector<int> orient(n, -1);
  std::vector<bool> component_orientable(n, true);
  for (std::uint32_t start = 0; start < n; ++start) {
    if (!included(CellId{start}) || orient[start] != -1) continue;
    orient[start] = 0;
    std::queue<std::uint32_t> todo;
    todo.push(start);
    while (!todo.empty()) {
      const std::uint32_t i = todo.front();
      todo.pop();
      for (Direction d : kDirections) {
        const auto t = grid.neighbor(CellId{i}, d);
        if (!t || !included(t->target)) continue;
        const int expect = orient[i] ^ (t->chirality == Chirality::reversing ? 1 : 0);
        int& other = orient[t->target.value];
        if (other == -1) {
          other = expect;
          todo.push(t->target.value);
        } else if (other != expect) {
          component_orientable[cells.find(i)] = false;
        }
      }
    }
  }

  struct Tally {
    long v{0}, e2{0}, f{0};
    std::size_t boundary{0};
  };
  std::vector<Tally> tally(n);
  std::vector<bool> is_component(n, false);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!included(CellId{i})) continue;
    const std::size_t comp = cells.find(i);
    is_component[comp] = true;
    tally[comp].f += 1;
    for (Direction d : kDirections) tally[comp].e2 += boundary[i][index_of(d)] ? 2 : 1;
  }
  std::vector<bool> counted_cycle(vertex_count, false);
  for (std::size_t v = 0; v < vertex_count; ++v) {
    tally[vertex_component[v]].v += 1;
    if (on_boundary[v]) {
      const std::size_t r = boundary_links.find(v);
      if (!counted_cycle[r]) {
        counted_cycle[r] = true;
        tally[vertex_component[v]].boundary += 1;
      }
    }
  }

  TopologyReport report;
  report.vertices = vertex_count;
  report.edges = boundary_sides + glued_sides / 2;
  report.faces = 0;
  for (std::uint32_t i = 0; i < n; ++i) report.faces += included(CellId{i}) ? 1 : 0;
  report.euler = static_cast<long>(report.vertices) - static_cast<long>(report.edges) +
                 static_cast<long>(report.faces);
  for (std::size_t comp = 0; comp < n; ++comp) {
    if (!is_component[comp]) continue;
    const Tally& t = tally[comp];
    const long chi = t.v - t.e2 / 2 + t.f;
    const long b = static_cast<long>(t.boundary);
    ++report.components;
    report.boundary_components += t.boundary;
    if (component_orientable[comp]) {
      report.genus += (2 - chi - b) / 2;
    } else {
      report.orientable = false;
      report.genus += 2 - chi - b;
    }
  }
  for (std::size_t v = 0; v < vertex_count; ++v) {
    if (on_boundary[v] || incident[v] == 4) continue;
    const std::size_t slot = first_slot[v];
    report.cone_points.push_back({v, incident[v], CellId{static_cast<std::uint32_t>(slot / 4)},
                                  static_cast<Corner>(slot % 4)});
  }
  return report;
}

}  // namespace tilehom
