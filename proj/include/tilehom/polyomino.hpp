#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tilehom/error.hpp"
#include "tilehom/symmetry.hpp"

namespace tilehom {

enum class SymmetryPolicy { free, one_sided, fixed };

inline std::string_view policy_name(SymmetryPolicy p) {
  switch (p) {
    case SymmetryPolicy::free: return "free";
    case SymmetryPolicy::one_sided: return "one-sided";
    case SymmetryPolicy::fixed: return "fixed";
  }
  return "?";
}

inline std::optional<SymmetryPolicy> policy_from_name(std::string_view s) {
  if (s == "free") return SymmetryPolicy::free;
  if (s == "one-sided") return SymmetryPolicy::one_sided;
  if (s == "fixed") return SymmetryPolicy::fixed;
  return std::nullopt;
}

/// The square symmetries a policy admits.
inline std::vector<Symmetry> policy_group(SymmetryPolicy p) {
  std::vector<Symmetry> out;
  for (Symmetry g : Symmetry::all()) {
    if (p == SymmetryPolicy::free || (p == SymmetryPolicy::one_sided && !g.reflected()) ||
        g == Symmetry::identity()) {
      out.push_back(g);
    }
  }
  return out;
}

/// Nonempty edge-connected set of lattice cells, translated so that the
/// minimum row and minimum column are both 0. Cells are kept sorted.
class Polyomino {
 public:
  /// Normalizes `cells`. Throws UsageError if empty or not edge-connected.
  explicit Polyomino(std::vector<Offset> cells, std::string name = {}) : name_(std::move(name)) {
    if (cells.empty()) throw UsageError("polyomino must have at least one cell");
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    int min_row = cells.front().row;
    int min_col = cells.front().col;
    for (const Offset& c : cells) {
      min_row = std::min(min_row, c.row);
      min_col = std::min(min_col, c.col);
    }
    for (Offset& c : cells) c = c - Offset{min_row, min_col};
    std::sort(cells.begin(), cells.end());
    cells_ = std::move(cells);
    if (!connected(cells_)) throw UsageError("polyomino cells are disconnected");
  }

  const std::vector<Offset>& cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Image under a square symmetry, renormalized; keeps the name.
  Polyomino transformed(Symmetry g) const {
    std::vector<Offset> out;
    out.reserve(cells_.size());
    for (const Offset& c : cells_) out.push_back(g.apply(c));
    return Polyomino(std::move(out), name_);
  }

  bool contains(Offset o) const { return std::binary_search(cells_.begin(), cells_.end(), o); }

  /// Equality compares shapes only.
  bool operator==(const Polyomino& other) const { return cells_ == other.cells_; }

 private:
  static bool connected(const std::vector<Offset>& cells) {
    std::set<Offset> pending(cells.begin(), cells.end());
    std::queue<Offset> todo;
    todo.push(cells.front());
    pending.erase(cells.front());
    while (!todo.empty()) {
      const Offset c = todo.front();
      todo.pop();
      for (Direction d : kDirections) {
        auto it = pending.find(c + unit_step(d));
        if (it != pending.end()) {
          todo.push(*it);
          pending.erase(it);
        }
      }
    }
    return pending.empty();
  }

  std::vector<Offset> cells_;
  std::string name_;
};

inline Polyomino normalize(std::vector<Offset> cells) { return Polyomino(std::move(cells)); }

/// Distinct normalized images of `p` under the policy's group, in first-seen
/// order over the group elements (identity first).
inline std::vector<Polyomino> orientations(const Polyomino& p,
                                           SymmetryPolicy policy = SymmetryPolicy::free) {
  std::vector<Polyomino> out;
  for (Symmetry g : policy_group(policy)) {
    Polyomino q = p.transformed(g);
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(std::move(q));
  }
  return out;
}

/// A prototile together with the symmetries allowed when placing it.
struct Tile {
  Polyomino shape;
  SymmetryPolicy policy{SymmetryPolicy::free};
};

namespace detail {

inline Polyomino from_rows(std::initializer_list<std::string_view> rows, std::string name) {
  std::vector<Offset> cells;
  int r = 0;
  for (std::string_view row : rows) {
    for (int c = 0; c < static_cast<int>(row.size()); ++c) {
      if (row[static_cast<std::size_t>(c)] == '#') cells.push_back({r, c});
    }
    ++r;
  }
  return Polyomino(std::move(cells), std::move(name));
}

inline const std::map<std::string, Polyomino, std::less<>>& named_tiles() {
  static const std::map<std::string, Polyomino, std::less<>> table = [] {
    std::map<std::string, Polyomino, std::less<>> t;
    auto add = [&](std::string name, std::initializer_list<std::string_view> rows) {
      t.emplace(name, from_rows(rows, name));
    };
    add("L3", {"#.", "##"});
    add("O4", {"##", "##"});
    add("T4", {"###", ".#."});
    add("L4", {"#.", "#.", "##"});
    add("J4", {".#", ".#", "##"});
    add("S4", {".#", "##", "#."});
    add("Z4", {"#.", "##", ".#"});
    // Pentominoes.
    add("F5", {".##", "##.", ".#."});
    add("L5", {"#.", "#.", "#.", "##"});
    add("N5", {".#", "##", "#.", "#."});
    add("P5", {"##", "##", "#."});
    add("T5", {"###", ".#.", ".#."});
    add("U5", {"#.#", "###"});
    add("V5", {"#..", "#..", "###"});
    add("W5", {"#..", "##.", ".##"});
    add("X5", {".#.", "###", ".#."});
    add("Y5", {".#", "##", ".#", ".#"});
    add("Z5", {"##.", ".#.", ".##"});
    // Long-armed cross.
    add("X6", {".#..", "####", ".#.."});
    return t;
  }();
  return table;
}

}  // namespace detail

/// Named prototiles: I<n> bars (I1 = monomino, I2 = domino), L3, the five
/// tetrominoes (plus mirror images J4, S4), twelve pentominoes and the
/// X-hexomino X6. Aliases: monomino, domino.
inline Polyomino catalog(std::string_view name) {
  if (name == "monomino") return catalog("I1");
  if (name == "domino") {
    Polyomino p = catalog("I2");
    p.set_name("domino");
    return p;
  }
  if (name.size() >= 2 && name[0] == 'I' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    if (name.size() > 5) throw UsageError("bar length out of range: " + std::string(name));
    const int n = std::stoi(std::string(name.substr(1)));
    if (n < 1) throw UsageError("bar length must be positive");
    std::vector<Offset> cells;
    for (int c = 0; c < n; ++c) cells.push_back({0, c});
    return Polyomino(std::move(cells), std::string(name));
  }
  const auto& table = detail::named_tiles();
  if (auto it = table.find(name); it != table.end()) return it->second;
  throw UsageError("unknown tile '" + std::string(name) + "'");
}

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> out{"monomino", "domino", "I<n>"};
  for (const auto& [name, _] : detail::named_tiles()) out.push_back(name);
  return out;
}

// ---------------------------------------------------------------------------
// `.tiles` files
//
//   tile <name>
//   cells (r,c) (r,c) ...
//   symmetry free|one-sided|fixed      # optional, default free
// ---------------------------------------------------------------------------

inline std::vector<Tile> parse_tiles(std::string_view text) {
  struct Pending {
    std::string name;
    std::size_t line{0};
    std::optional<std::vector<Offset>> cells;
    SymmetryPolicy policy{SymmetryPolicy::free};
  };
  std::vector<Tile> out;
  std::optional<Pending> cur;
  auto flush = [&]() {
    if (!cur) return;
    if (!cur->cells) throw ParseError(cur->line, 0, "tile '" + cur->name + "' has no cells line");
    try {
      out.push_back({Polyomino(std::move(*cur->cells), cur->name), cur->policy});
    } catch (const UsageError& e) {
      throw ParseError(cur->line, 0, "tile '" + cur->name + "': " + e.what());
    }
    cur.reset();
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::string keyword;
    if (!(words >> keyword)) continue;
    const std::size_t col = raw.find(keyword) + 1;
    if (keyword == "tile") {
      flush();
      std::string name;
      if (!(words >> name)) throw ParseError(line_no, col, "expected tile name");
      cur = Pending{name, line_no, std::nullopt, SymmetryPolicy::free};
    } else if (keyword == "cells") {
      if (!cur) throw ParseError(line_no, col, "'cells' before any 'tile'");
      std::string rest;
      std::getline(words, rest);
      std::vector<Offset> cells;
      std::size_t i = 0;
      auto skip = [&] {
        while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
      };
      auto number = [&]() -> int {
        skip();
        const std::size_t start = i;
        if (i < rest.size() && (rest[i] == '-' || rest[i] == '+')) ++i;
        while (i < rest.size() && std::isdigit(static_cast<unsigned char>(rest[i]))) ++i;
        if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(rest[start])))) {
          throw ParseError(line_no, 0, "expected integer in cell list");
        }
        return std::stoi(rest.substr(start, i - start));
      };
      auto expect = [&](char ch) {
        skip();
        if (i >= rest.size() || rest[i] != ch) {
          throw ParseError(line_no, 0, std::string("expected '") + ch + "' in cell list");
        }
        ++i;
      };
      for (skip(); i < rest.size(); skip()) {
        expect('(');
        const int r = number();
        expect(',');
        const int c = number();
        expect(')');
        cells.push_back({r, c});
      }
      if (cells.empty()) throw ParseError(line_no, col, "empty cell list");
      cur->cells = std::move(cells);
    } else if (keyword == "symmetry") {
      if (!cur) throw ParseError(line_no, col, "'symmetry' before any 'tile'");
      std::string value;
      words >> value;
      const auto p = policy_from_name(value);
      if (!p) throw ParseError(line_no, col, "unknown symmetry policy '" + value + "'");
      cur->policy = *p;
    } else {
      throw ParseError(line_no, col, "unknown statement '" + keyword + "'");
    }
  }
  flush();
  return out;
}

inline std::string print_tiles(const std::vector<Tile>& tiles) {
  std::ostringstream out;
  for (const Tile& t : tiles) {
    out << "tile " << (t.shape.name().empty() ? "unnamed" : t.shape.name()) << "\ncells";
    for (const Offset& c : t.shape.cells()) out << " (" << c.row << ',' << c.col << ')';
    out << "\nsymmetry " << policy_name(t.policy) << '\n';
  }
  return out.str();
}

}  // namespace tilehom
