#pragma once

// Line-oriented surface description format (`.srf`):
//
//   # comment
//   grid <id>
//   patch <id> <nrows> <ncols>
//   glue <patch>.<side>[<a>..<b>] <patch>.<side>[<a>..<b>] [reversed]
//   remove <patch> (<r>,<c>)
//
// side is one of top, bottom, left, right; indices are 1-based and inclusive.
// top/bottom segments run left to right, left/right segments top to bottom.

#include <cctype>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "tilehom/error.hpp"
#include "tilehom/grid.hpp"

namespace tilehom {

enum class Side { top, bottom, left, right };

constexpr Direction side_direction(Side s) noexcept {
  switch (s) {
    case Side::top: return Direction::N;
    case Side::bottom: return Direction::S;
    case Side::left: return Direction::W;
    case Side::right: return Direction::E;
  }
  return Direction::N;
}

inline std::string_view side_name(Side s) {
  switch (s) {
    case Side::top: return "top";
    case Side::bottom: return "bottom";
    case Side::left: return "left";
    case Side::right: return "right";
  }
  return "?";
}

/// Source position, kept for diagnostics only (ignored by ==).
struct SourcePos {
  std::size_t line{0};
  std::size_t column{0};
  bool operator==(const SourcePos&) const { return true; }
};

struct PatchDecl {
  std::string id;
  int rows{0};
  int cols{0};
  SourcePos pos;
  bool operator==(const PatchDecl&) const = default;
};

struct Segment {
  std::string patch;
  Side side{Side::top};
  int first{1};
  int last{1};
  bool operator==(const Segment&) const = default;

  int length() const noexcept { return last - first + 1; }
};

struct GlueDecl {
  Segment a;
  Segment b;
  bool reversed{false};
  SourcePos pos;
  bool operator==(const GlueDecl&) const = default;
};

struct RemoveDecl {
  std::string patch;
  int row{0};
  int col{0};
  SourcePos pos;
  bool operator==(const RemoveDecl&) const = default;
};

struct SurfaceSpecAst {
  std::string name;
  std::vector<PatchDecl> patches;
  std::vector<GlueDecl> glues;
  std::vector<RemoveDecl> removes;
  bool operator==(const SurfaceSpecAst&) const = default;
};

namespace detail {

class LineScanner {
 public:
  LineScanner(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  std::size_t column() const noexcept { return pos_ + 1; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, column(), msg); }

  std::string identifier(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    auto ok = [](char c, bool first) {
      const auto u = static_cast<unsigned char>(c);
      return std::isalpha(u) || c == '_' || (!first && (std::isdigit(u) || c == '-'));
    };
    if (pos_ >= text_.size() || !ok(text_[pos_], true)) fail(std::string("expected ") + what);
    while (pos_ < text_.size() && ok(text_[pos_], false)) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    if (pos_ - start > 6) {
      pos_ = start;
      fail(std::string(what) + " out of range");
    }
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  void expect(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) fail("expected '" + std::string(token) + "'");
    pos_ += token.size();
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void finish() {
    if (!at_end()) fail("unexpected trailing input");
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_{0};
};

inline Segment parse_segment(LineScanner& in) {
  Segment seg;
  seg.patch = in.identifier("patch id");
  in.expect(".");
  const std::string side = in.identifier("side keyword");
  if (side == "top") seg.side = Side::top;
  else if (side == "bottom") seg.side = Side::bottom;
  else if (side == "left") seg.side = Side::left;
  else if (side == "right") seg.side = Side::right;
  else in.fail("unknown side keyword '" + side + "' (expected top, bottom, left or right)");
  in.expect("[");
  seg.first = in.integer("range start");
  in.expect("..");
  seg.last = in.integer("range end");
  in.expect("]");
  if (seg.first < 1 || seg.last < seg.first) in.fail("malformed range");
  return seg;
}

inline int side_length(const PatchDecl& p, Side s) {
  return (s == Side::top || s == Side::bottom) ? p.cols : p.rows;
}

/// Static checks that need the whole document: known patches, in-range
/// segments, equal lengths, and no unit edge used twice.
inline void check_static(const SurfaceSpecAst& ast) {
  auto find = [&](const std::string& id) -> const PatchDecl* {
    for (const auto& p : ast.patches) {
      if (p.id == id) return &p;
    }
    return nullptr;
  };
  std::set<std::tuple<std::string, int, int>> used;  // (patch, side, index)
  for (const GlueDecl& g : ast.glues) {
    for (const Segment* s : {&g.a, &g.b}) {
      const PatchDecl* p = find(s->patch);
      if (!p) throw ParseError(g.pos.line, g.pos.column, "unknown patch '" + s->patch + "'");
      if (s->last > side_length(*p, s->side)) {
        throw ParseError(g.pos.line, g.pos.column,
                         "malformed range: " + s->patch + "." + std::string(side_name(s->side)) +
                             " has length " + std::to_string(side_length(*p, s->side)));
      }
    }
    if (g.a.length() != g.b.length()) {
      throw ParseError(g.pos.line, g.pos.column,
                       "segment length mismatch (" + std::to_string(g.a.length()) + " vs " +
                           std::to_string(g.b.length()) + ")");
    }
    for (const Segment* s : {&g.a, &g.b}) {
      for (int k = s->first; k <= s->last; ++k) {
        if (!used.insert({s->patch, static_cast<int>(s->side), k}).second) {
          throw ParseError(g.pos.line, g.pos.column,
                           "overlapping segment: unit edge " + s->patch + "." +
                               std::string(side_name(s->side)) + "[" + std::to_string(k) +
                               "] is glued more than once");
        }
      }
    }
  }
}

}  // namespace detail

/// Parses `.srf` text. Accepts LF or CRLF line endings.
inline SurfaceSpecAst parse_surface(std::string_view text) {
  SurfaceSpecAst ast;
  bool have_name = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    detail::LineScanner in(line, line_no);
    if (in.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    const SourcePos pos{line_no, in.column()};
    const std::string keyword = in.identifier("statement keyword");
    if (keyword == "grid") {
      if (have_name) in.fail("duplicate 'grid' statement");
      ast.name = in.identifier("grid name");
      have_name = true;
    } else if (keyword == "patch") {
      PatchDecl p;
      p.pos = pos;
      p.id = in.identifier("patch id");
      p.rows = in.integer("row count");
      p.cols = in.integer("column count");
      if (p.rows < 1 || p.cols < 1) in.fail("patch dimensions must be positive");
      for (const auto& other : ast.patches) {
        if (other.id == p.id) in.fail("duplicate patch '" + p.id + "'");
      }
      ast.patches.push_back(std::move(p));
    } else if (keyword == "glue") {
      GlueDecl g;
      g.pos = pos;
      g.a = detail::parse_segment(in);
      g.b = detail::parse_segment(in);
      if (!in.at_end()) {
        const std::string flag = in.identifier("'reversed'");
        if (flag != "reversed") in.fail("expected 'reversed', got '" + flag + "'");
        g.reversed = true;
      }
      ast.glues.push_back(std::move(g));
    } else if (keyword == "remove") {
      RemoveDecl r;
      r.pos = pos;
      r.patch = in.identifier("patch id");
      in.expect("(");
      r.row = in.integer("row");
      in.expect(",");
      r.col = in.integer("column");
      in.expect(")");
      ast.removes.push_back(std::move(r));
    } else {
      throw ParseError(pos.line, pos.column, "unknown statement '" + keyword + "'");
    }
    in.finish();
    if (end == text.size()) break;
  }
  detail::check_static(ast);
  return ast;
}

/// Canonical text for an AST: grid, patches, glues, removes, one per line.
inline std::string print_surface(const SurfaceSpecAst& ast) {
  std::ostringstream out;
  if (!ast.name.empty()) out << "grid " << ast.name << '\n';
  for (const auto& p : ast.patches) out << "patch " << p.id << ' ' << p.rows << ' ' << p.cols << '\n';
  auto seg = [&](const Segment& s) {
    out << s.patch << '.' << side_name(s.side) << '[' << s.first << ".." << s.last << ']';
  };
  for (const auto& g : ast.glues) {
    out << "glue ";
    seg(g.a);
    out << ' ';
    seg(g.b);
    if (g.reversed) out << " reversed";
    out << '\n';
  }
  for (const auto& r : ast.removes) out << "remove " << r.patch << " (" << r.row << ',' << r.col << ")\n";
  return out.str();
}

namespace detail {

/// Cell and side of the k-th (0-based) unit edge of a segment.
inline std::pair<CellId, Direction> segment_unit(const SurfaceGrid& grid, const Segment& s, int k) {
  const Patch* p = grid.find_patch(s.patch);
  const int idx = s.first + k;
  int row = 0;
  int col = 0;
  switch (s.side) {
    case Side::top: row = 1, col = idx; break;
    case Side::bottom: row = p->rows, col = idx; break;
    case Side::left: row = idx, col = 1; break;
    case Side::right: row = idx, col = p->cols; break;
  }
  return {*grid.find(s.patch, row, col), side_direction(s.side)};
}

/// Chirality of gluing side `from` to side `to` when the tangent of `from`
/// is carried onto the tangent of `to` (or onto its reverse).
inline Chirality glue_chirality(Direction from, Direction to, bool reversed) {
  const Direction want = reversed ? opposite(side_tangent(to)) : side_tangent(to);
  const Symmetry rotation = Symmetry::mapping(from, opposite(to), true);
  return rotation.apply(side_tangent(from)) == want ? Chirality::preserving : Chirality::reversing;
}

}  // namespace detail

/// Builds the quotient cell complex described by an AST.
inline SurfaceGrid elaborate(const SurfaceSpecAst& ast) {
  detail::check_static(ast);
  SurfaceGrid grid(ast.name);
  for (const auto& p : ast.patches) grid.add_patch(p.id, p.rows, p.cols);
  for (const auto& g : ast.glues) {
    const int len = g.a.length();
    for (int k = 0; k < len; ++k) {
      const auto [ca, da] = detail::segment_unit(grid, g.a, k);
      const auto [cb, db] = detail::segment_unit(grid, g.b, g.reversed ? len - 1 - k : k);
      try {
        grid.glue(ca, da, cb, db, detail::glue_chirality(da, db, g.reversed));
      } catch (const GridError& e) {
        throw ParseError(g.pos.line, g.pos.column, e.what());
      }
    }
  }
  for (const auto& r : ast.removes) {
    const auto c = grid.find(r.patch, r.row, r.col);
    if (!c) {
      throw ParseError(r.pos.line, r.pos.column,
                       "removal of nonexistent cell " + r.patch + "(" + std::to_string(r.row) + "," +
                           std::to_string(r.col) + ")");
    }
    grid.remove(*c);
  }
  grid.validate();
  return grid;
}

inline SurfaceGrid load_surface(std::string_view text) { return elaborate(parse_surface(text)); }

// ---------------------------------------------------------------------------
// Standard models
// ---------------------------------------------------------------------------

enum class ModelKind { torus, klein, rect, cylinder };

struct Model {
  ModelKind kind{ModelKind::torus};
  int rows{0};
  int cols{0};
};

inline std::string_view model_name(ModelKind k) {
  switch (k) {
    case ModelKind::torus: return "torus";
    case ModelKind::klein: return "klein";
    case ModelKind::rect: return "rect";
    case ModelKind::cylinder: return "cylinder";
  }
  return "?";
}

/// Canonical AST of a standard model on a single patch `P`; removals are (row, col).
inline SurfaceSpecAst model_ast(const Model& m, const std::vector<std::pair<int, int>>& removes = {}) {
  if (m.rows < 1 || m.cols < 1) throw UsageError("model dimensions must be at least 1");
  SurfaceSpecAst ast;
  ast.name = std::string(model_name(m.kind)) + "_" + std::to_string(m.rows) + "x" +
             std::to_string(m.cols);
  ast.patches.push_back({"P", m.rows, m.cols, {}});
  const GlueDecl top_bottom{{"P", Side::top, 1, m.cols}, {"P", Side::bottom, 1, m.cols}, false, {}};
  const GlueDecl left_right{{"P", Side::left, 1, m.rows}, {"P", Side::right, 1, m.rows}, false, {}};
  switch (m.kind) {
    case ModelKind::torus:
      ast.glues = {top_bottom, left_right};
      break;
    case ModelKind::klein: {
      GlueDecl twisted = left_right;
      twisted.reversed = true;
      ast.glues = {top_bottom, twisted};
      break;
    }
    case ModelKind::rect:
      break;
    case ModelKind::cylinder:
      ast.glues = {left_right};
      break;
  }
  for (auto [r, c] : removes) ast.removes.push_back({"P", r, c, {}});
  return ast;
}

inline std::string model_text(const Model& m, const std::vector<std::pair<int, int>>& removes = {}) {
  return print_surface(model_ast(m, removes));
}

inline SurfaceGrid generate(const Model& m, const std::vector<std::pair<int, int>>& removes = {}) {
  return elaborate(model_ast(m, removes));
}

inline std::vector<std::string> model_warnings(const Model& m) {
  std::vector<std::string> out;
  if ((m.kind == ModelKind::torus || m.kind == ModelKind::klein) && (m.rows < 3 || m.cols < 3)) {
    out.push_back(std::string(model_name(m.kind)) +
                  " with a side shorter than 3 is not a simple grid (cells touch themselves)");
  }
  return out;
}

}  // namespace tilehom
