#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "tilehom/grid.hpp"
#include "tilehom/polyomino.hpp"

namespace tilehom {

/// One developed copy of a prototile on a grid.
///
/// `cells` is the sorted cell set (the identity of the placement). `image` and
/// `frames` are aligned with `shape.cells()` and record where each tile cell
/// landed and which square symmetry carries tile directions to grid directions
/// there.
struct Placement {
  std::vector<CellId> cells;
  std::size_t tile{0};
  std::string tile_name;
  CellId anchor;
  std::size_t orientation{0};
  std::vector<CellId> image;
  std::vector<Symmetry> frames;

  bool covers(CellId c) const { return std::binary_search(cells.begin(), cells.end(), c); }
};

namespace detail {

struct Development {
  std::vector<CellId> image;
  std::vector<Symmetry> frames;
};

enum class TreeOrder { breadth_first, depth_first };

/// Develops `p` from tile cell `root` placed at `root_cell` with `root_frame`,
/// growing a spanning tree of the tile's adjacency graph. Then checks closure
/// over every tile adjacency and pairwise distinctness of the reached cells.
inline std::optional<Development> develop_tree(const SurfaceGrid& grid, const Polyomino& p,
                                               std::size_t root, CellId root_cell,
                                               Symmetry root_frame, TreeOrder order) {
  const auto& shape = p.cells();
  const std::size_t n = shape.size();
  if (grid.is_removed(root_cell)) return std::nullopt;

  auto index_of_offset = [&](Offset o) -> std::optional<std::size_t> {
    auto it = std::lower_bound(shape.begin(), shape.end(), o);
    if (it == shape.end() || *it != o) return std::nullopt;
    return static_cast<std::size_t>(it - shape.begin());
  };

  Development dev;
  dev.image.assign(n, CellId{});
  dev.frames.assign(n, Symmetry::identity());
  std::vector<bool> placed(n, false);
  std::vector<std::size_t> frontier{root};
  dev.image[root] = root_cell;
  dev.frames[root] = root_frame;
  placed[root] = true;

  const bool bfs = order == TreeOrder::breadth_first;
  std::size_t head = 0;
  while (bfs ? head < frontier.size() : !frontier.empty()) {
    std::size_t u = 0;
    if (bfs) {
      u = frontier[head++];
    } else {
      u = frontier.back();
      frontier.pop_back();
    }
    for (Direction local : kDirections) {
      const auto v = index_of_offset(shape[u] + unit_step(local));
      if (!v || placed[*v]) continue;
      const Direction exit = dev.frames[u].apply(local);
      const auto t = grid.neighbor(dev.image[u], exit);
      if (!t || grid.is_removed(t->target)) return std::nullopt;
      dev.image[*v] = t->target;
      dev.frames[*v] = frame_map(exit, *t).compose(dev.frames[u]);
      placed[*v] = true;
      frontier.push_back(*v);
    }
  }

  // Closure: every tile adjacency must be realized by the matching grid edge
  // with consistent frames.
  for (std::size_t u = 0; u < n; ++u) {
    for (Direction local : kDirections) {
      const auto v = index_of_offset(shape[u] + unit_step(local));
      if (!v) continue;
      const Direction exit = dev.frames[u].apply(local);
      const auto t = grid.neighbor(dev.image[u], exit);
      if (!t || t->target != dev.image[*v]) return std::nullopt;
      if (frame_map(exit, *t).compose(dev.frames[u]) != dev.frames[*v]) return std::nullopt;
    }
  }

  std::vector<CellId> sorted = dev.image;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
  return dev;
}

}  // namespace detail

/// Develops `p` with its first cell (lexicographically smallest offset) on
/// `anchor`, tile directions carried to grid directions by `frame`. Returns
/// std::nullopt (Reject) when the development hits a boundary or removed
/// cell, fails closure, or revisits a cell.
inline std::optional<Placement> develop(const SurfaceGrid& grid, CellId anchor, Symmetry frame,
                                        const Polyomino& p) {
  auto dev = detail::develop_tree(grid, p, 0, anchor, frame, detail::TreeOrder::breadth_first);
  if (!dev) return std::nullopt;
  Placement out;
  out.cells = dev->image;
  std::sort(out.cells.begin(), out.cells.end());
  out.tile_name = p.name();
  out.anchor = anchor;
  out.image = std::move(dev->image);
  out.frames = std::move(dev->frames);
  return out;
}

/// Re-develops a placement depth-first from its last tile cell and checks the
/// same cell set comes out. Independent of the tree used by `develop`.
inline bool recheck_placement(const SurfaceGrid& grid, const Polyomino& shape, const Placement& pl) {
  if (pl.image.size() != shape.size() || pl.frames.size() != shape.size()) return false;
  const std::size_t root = shape.size() - 1;
  auto dev = detail::develop_tree(grid, shape, root, pl.image[root], pl.frames[root],
                                  detail::TreeOrder::depth_first);
  if (!dev) return false;
  std::sort(dev->image.begin(), dev->image.end());
  return dev->image == pl.cells;
}

/// All placements of the given tiles, deduplicated by cell set and sorted by
/// cell set. When several (tile, orientation, anchor) triples give the same
/// cell set the first in that order is kept. `jobs > 1` splits anchors across
/// worker threads; output is identical.
inline std::vector<Placement> enumerate_placements(const SurfaceGrid& grid,
                                                   const std::vector<Tile>& tiles,
                                                   unsigned jobs = 1) {
  grid.validate();
  const std::vector<CellId> anchors = grid.active_cells();

  struct Job {
    std::size_t tile;
    std::size_t orientation;
    Polyomino shape;
  };
  std::vector<Job> work;
  for (std::size_t ti = 0; ti < tiles.size(); ++ti) {
    const auto orients = orientations(tiles[ti].shape, tiles[ti].policy);
    for (std::size_t oi = 0; oi < orients.size(); ++oi) {
      Polyomino shape = orients[oi];
      shape.set_name(tiles[ti].shape.name());
      work.push_back({ti, oi, std::move(shape)});
    }
  }

  auto run = [&](std::size_t begin, std::size_t end, std::vector<Placement>& out) {
    for (const Job& job : work) {
      for (std::size_t a = begin; a < end; ++a) {
        auto pl = develop(grid, anchors[a], Symmetry::identity(), job.shape);
        if (!pl) continue;
        pl->tile = job.tile;
        pl->orientation = job.orientation;
        out.push_back(std::move(*pl));
      }
    }
  };

  std::vector<Placement> all;
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(anchors.size(), 1))));
  if (jobs == 1) {
    run(0, anchors.size(), all);
  } else {
    std::vector<std::vector<Placement>> parts(jobs);
    std::vector<std::thread> threads;
    const std::size_t chunk = (anchors.size() + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      const std::size_t begin = std::min(anchors.size(), j * chunk);
      const std::size_t end = std::min(anchors.size(), begin + chunk);
      threads.emplace_back([&, begin, end, j] { run(begin, end, parts[j]); });
    }
    for (auto& t : threads) t.join();
    for (auto& part : parts) {
      all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
  }

  std::sort(all.begin(), all.end(), [](const Placement& a, const Placement& b) {
    return std::tie(a.cells, a.tile, a.orientation, a.anchor) <
           std::tie(b.cells, b.tile, b.orientation, b.anchor);
  });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const Placement& a, const Placement& b) { return a.cells == b.cells; }),
            all.end());
  return all;
}

}  // namespace tilehom
