#pragma once

// Exact-cover search for genuine tilings (Algorithm X over dancing links).

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <future>
#include <limits>
#include <optional>
#include <vector>

#include "tilehom/grid.hpp"
#include "tilehom/placement.hpp"

namespace tilehom {

enum class SearchStatus { found, exhausted, budget_exceeded };

inline const char* status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::exhausted: return "exhausted";
    case SearchStatus::budget_exceeded: return "budget_exceeded";
  }
  return "?";
}

/// Placements (indices into the searched list) partitioning the active cells.
struct Tiling {
  std::vector<std::size_t> placements;
};

struct SearchOptions {
  std::uint64_t node_budget{10'000'000};
  unsigned jobs{1};
};

struct SearchResult {
  SearchStatus status{SearchStatus::exhausted};
  std::optional<Tiling> tiling;
  std::uint64_t nodes{0};
};

struct CountResult {
  std::uint64_t count{0};
  bool complete{true};  // false if the cap or the node budget stopped the search early
  bool budget_exceeded{false};
  std::uint64_t nodes{0};
};

/// Disjointness and coverage of the active cells.
inline bool verify_tiling(const SurfaceGrid& grid, const std::vector<Placement>& placements,
                          const Tiling& tiling) {
  std::vector<int> cover(grid.cell_count(), 0);
  for (std::size_t j : tiling.placements) {
    if (j >= placements.size()) return false;
    for (CellId c : placements[j].cells) {
      if (grid.is_removed(c) || ++cover[c.value] > 1) return false;
    }
  }
  for (CellId c : grid.active_cells()) {
    if (cover[c.value] != 1) return false;
  }
  return true;
}

namespace detail {

/// Dancing-links exact cover matrix. Node 0 is the root; nodes 1..columns
/// are column headers.
class DancingLinks {
 public:
  DancingLinks(std::size_t columns, const std::vector<std::vector<std::size_t>>& rows)
      : columns_(columns) {
    const std::size_t headers = columns + 1;
    left_.resize(headers);
    right_.resize(headers);
    up_.resize(headers);
    down_.resize(headers);
    col_.resize(headers);
    row_.assign(headers, npos);
    size_.assign(headers, 0);
    for (std::size_t i = 0; i < headers; ++i) {
      left_[i] = (i + headers - 1) % headers;
      right_[i] = (i + 1) % headers;
      up_[i] = down_[i] = col_[i] = i;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::size_t first = npos;
      for (std::size_t c : rows[r]) {
        const std::size_t h = c + 1;
        const std::size_t n = left_.size();
        left_.push_back(n);
        right_.push_back(n);
        up_.push_back(up_[h]);
        down_.push_back(h);
        col_.push_back(h);
        row_.push_back(r);
        size_.push_back(0);
        down_[up_[h]] = n;
        up_[h] = n;
        ++size_[h];
        if (first == npos) {
          first = n;
        } else {
          left_[n] = left_[first];
          right_[n] = first;
          right_[left_[first]] = n;
          left_[first] = n;
        }
      }
    }
  }

  /// Column with fewest remaining rows; npos when all columns are covered.
  std::size_t choose_column() const {
    std::size_t best = npos;
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    for (std::size_t c = right_[0]; c != 0; c = right_[c]) {
      if (size_[c] < best_size) {
        best = c;
        best_size = size_[c];
      }
    }
    return best;
  }

  std::vector<std::size_t> rows_in(std::size_t header) const {
    std::vector<std::size_t> out;
    for (std::size_t n = down_[header]; n != header; n = down_[n]) out.push_back(n);
    return out;
  }

  std::size_t row_of(std::size_t node) const { return row_[node]; }

  void cover(std::size_t c) {
    right_[left_[c]] = right_[c];
    left_[right_[c]] = left_[c];
    for (std::size_t i = down_[c]; i != c; i = down_[i]) {
      for (std::size_t j = right_[i]; j != i; j = right_[j]) {
        down_[up_[j]] = down_[j];
        up_[down_[j]] = up_[j];
        --size_[col_[j]];
      }
    }
  }

  void uncover(std::size_t c) {
    for (std::size_t i = up_[c]; i != c; i = up_[i]) {
      for (std::size_t j = left_[i]; j != i; j = left_[j]) {
        ++size_[col_[j]];
        down_[up_[j]] = j;
        up_[down_[j]] = j;
      }
    }
    right_[left_[c]] = c;
    left_[right_[c]] = c;
  }

  void select(std::size_t node) {
    for (std::size_t j = right_[node]; j != node; j = right_[j]) cover(col_[j]);
  }
  void unselect(std::size_t node) {
    for (std::size_t j = left_[node]; j != node; j = left_[j]) uncover(col_[j]);
  }

  std::size_t column_of(std::size_t node) const { return col_[node]; }

  /// Calls `on_solution(rows)` for each exact cover; stops when it returns
  /// false. Returns false if the node budget ran out.
  template <class OnSolution>
  bool search(OnSolution&& on_solution, std::atomic<std::uint64_t>& nodes, std::uint64_t budget) {
    bool stop = false;
    return recurse(on_solution, nodes, budget, stop);
  }

  std::vector<std::size_t> partial;

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  template <class OnSolution>
  bool recurse(OnSolution& on_solution, std::atomic<std::uint64_t>& nodes, std::uint64_t budget,
               bool& stop) {
    if (nodes.fetch_add(1, std::memory_order_relaxed) >= budget) return false;
    const std::size_t c = choose_column();
    if (c == npos) {
      if (!on_solution(partial)) stop = true;
      return true;
    }
    if (size_[c] == 0) return true;
    cover(c);
    for (std::size_t r = down_[c]; r != c && !stop; r = down_[r]) {
      partial.push_back(row_[r]);
      select(r);
      const bool ok = recurse(on_solution, nodes, budget, stop);
      unselect(r);
      partial.pop_back();
      if (!ok) {
        uncover(c);
        return false;
      }
    }
    uncover(c);
    return true;
  }

  std::size_t columns_;
  std::vector<std::size_t> left_, right_, up_, down_, col_, row_, size_;
};

inline DancingLinks build_cover(const SurfaceGrid& grid, const std::vector<Placement>& placements) {
  std::vector<long> column_of(grid.cell_count(), -1);
  const auto active = grid.active_cells();
  for (std::size_t i = 0; i < active.size(); ++i) column_of[active[i].value] = static_cast<long>(i);
  std::vector<std::vector<std::size_t>> rows;
  rows.reserve(placements.size());
  for (const Placement& p : placements) {
    std::vector<std::size_t> row;
    for (CellId c : p.cells) row.push_back(static_cast<std::size_t>(column_of[c.value]));
    rows.push_back(std::move(row));
  }
  return DancingLinks(active.size(), rows);
}

}  // namespace detail

/// Searches for a genuine tiling. `exhausted` proves none exists.
///
/// With `jobs > 1` the first branching level is split across workers; the
/// reported tiling is the one from the lowest branch that has one, so the
/// result matches the sequential search whenever neither hits the budget.
inline SearchResult find_tiling(const SurfaceGrid& grid, const std::vector<Placement>& placements,
                                const SearchOptions& opts = {}) {
  SearchResult result;
  std::atomic<std::uint64_t> nodes{0};
  auto finish = [&](std::optional<std::vector<std::size_t>> rows, bool budget_hit) {
    result.nodes = nodes.load();
    if (rows) {
      Tiling t{std::move(*rows)};
      std::sort(t.placements.begin(), t.placements.end());
      if (!verify_tiling(grid, placements, t)) throw SelfCheckError("found tiling failed re-verification");
      result.status = SearchStatus::found;
      result.tiling = std::move(t);
    } else {
      result.status = budget_hit ? SearchStatus::budget_exceeded : SearchStatus::exhausted;
    }
    return result;
  };

  detail::DancingLinks dlx = detail::build_cover(grid, placements);
  const std::size_t first = dlx.choose_column();
  if (opts.jobs <= 1 || first == detail::DancingLinks::npos) {
    std::optional<std::vector<std::size_t>> found;
    const bool ok = dlx.search(
        [&](const std::vector<std::size_t>& rows) {
          found = rows;
          return false;
        },
        nodes, opts.node_budget);
    return finish(std::move(found), !ok && !found);
  }

  const std::vector<std::size_t> branches = dlx.rows_in(first);
  struct Branch {
    std::optional<std::vector<std::size_t>> rows;
    bool budget_hit{false};
  };
  std::vector<Branch> outcome(branches.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    detail::DancingLinks local = detail::build_cover(grid, placements);
    for (std::size_t b = next.fetch_add(1); b < branches.size(); b = next.fetch_add(1)) {
      const std::size_t node = branches[b];
      const std::size_t c = local.column_of(node);
      local.cover(c);
      local.select(node);
      local.partial.assign(1, local.row_of(node));
      std::optional<std::vector<std::size_t>> found;
      const bool ok = local.search(
          [&](const std::vector<std::size_t>& rows) {
            found = rows;
            return false;
          },
          nodes, opts.node_budget);
      local.unselect(node);
      local.uncover(c);
      outcome[b].budget_hit = !ok && !found;
      outcome[b].rows = std::move(found);
    }
  };
  std::vector<std::future<void>> tasks;
  for (unsigned j = 0; j < opts.jobs; ++j) tasks.push_back(std::async(std::launch::async, worker));
  for (auto& t : tasks) t.get();
  bool budget_hit = false;
  for (auto& b : outcome) {
    if (b.rows) return finish(std::move(b.rows), false);
    budget_hit = budget_hit || b.budget_hit;
  }
  return finish(std::nullopt, budget_hit);
}

inline SearchResult find_tiling(const SurfaceGrid& grid, const std::vector<Tile>& tiles,
                                const SearchOptions& opts = {}) {
  return find_tiling(grid, enumerate_placements(grid, tiles, opts.jobs), opts);
}

/// Counts tilings exactly up to `cap` (early exit once the cap is reached).
inline CountResult count_tilings(const SurfaceGrid& grid, const std::vector<Placement>& placements,
                                 std::uint64_t cap, std::uint64_t node_budget = 10'000'000) {
  CountResult out;
  std::atomic<std::uint64_t> nodes{0};
  detail::DancingLinks dlx = detail::build_cover(grid, placements);
  const bool ok = dlx.search(
      [&](const std::vector<std::size_t>&) {
        ++out.count;
        return out.count < cap;
      },
      nodes, node_budget);
  out.nodes = nodes.load();
  out.budget_exceeded = !ok;
  out.complete = ok && out.count < cap;
  return out;
}

inline CountResult count_tilings(const SurfaceGrid& grid, const std::vector<Tile>& tiles,
                                 std::uint64_t cap, std::uint64_t node_budget = 10'000'000) {
  return count_tilings(grid, enumerate_placements(grid, tiles), cap, node_budget);
}

}  // namespace tilehom
