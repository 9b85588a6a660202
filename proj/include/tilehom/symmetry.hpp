#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>

namespace tilehom {

/// Local edge label on a unit cell. Numbered clockwise from north, rows grow
/// southwards and columns grow eastwards.
enum class Direction : std::uint8_t { N = 0, E = 1, S = 2, W = 3 };

inline constexpr std::array<Direction, 4> kDirections{Direction::N, Direction::E, Direction::S,
                                                      Direction::W};

constexpr int index_of(Direction d) noexcept { return static_cast<int>(d); }

constexpr Direction direction_from_index(int i) noexcept {
  return static_cast<Direction>(((i % 4) + 4) % 4);
}

constexpr Direction opposite(Direction d) noexcept { return direction_from_index(index_of(d) + 2); }

/// Quarter turn clockwise.
constexpr Direction rot90(Direction d) noexcept { return direction_from_index(index_of(d) + 1); }

constexpr char to_char(Direction d) noexcept {
  constexpr std::array<char, 4> names{'N', 'E', 'S', 'W'};
  return names[static_cast<std::size_t>(index_of(d))];
}

constexpr std::optional<Direction> direction_from_char(char c) noexcept {
  switch (c) {
    case 'N': return Direction::N;
    case 'E': return Direction::E;
    case 'S': return Direction::S;
    case 'W': return Direction::W;
    default: return std::nullopt;
  }
}

/// Integer (row, col) offset on the square lattice.
struct Offset {
  int row{0};
  int col{0};

  constexpr Offset operator+(Offset o) const noexcept { return {row + o.row, col + o.col}; }
  constexpr Offset operator-(Offset o) const noexcept { return {row - o.row, col - o.col}; }
  constexpr auto operator<=>(const Offset&) const = default;
};

constexpr Offset unit_step(Direction d) noexcept {
  switch (d) {
    case Direction::N: return {-1, 0};
    case Direction::E: return {0, 1};
    case Direction::S: return {1, 0};
    case Direction::W: return {0, -1};
  }
  return {};
}

constexpr std::optional<Direction> step_direction(Offset step) noexcept {
  for (Direction d : kDirections) {
    if (unit_step(d) == step) return d;
  }
  return std::nullopt;
}

/// Element of the 8-element symmetry group of the square.
///
/// Acts on directions as d -> shift + d (rotation) or d -> shift - d
/// (reflection), with directions read as residues mod 4.
class Symmetry {
 public:
  constexpr Symmetry() = default;

  static constexpr Symmetry identity() noexcept { return {}; }
  static constexpr Symmetry rotation(int quarter_turns) noexcept {
    return Symmetry(quarter_turns, false);
  }
  /// Reflection d -> shift - d. shift 0 swaps E/W, shift 2 swaps N/S.
  static constexpr Symmetry reflection(int shift) noexcept { return Symmetry(shift, true); }

  static constexpr std::array<Symmetry, 8> all() noexcept {
    return {rotation(0),   rotation(1),   rotation(2),   rotation(3),
            reflection(0), reflection(1), reflection(2), reflection(3)};
  }

  /// The unique element with g(from) = to and the requested orientation character.
  static constexpr Symmetry mapping(Direction from, Direction to, bool preserving) noexcept {
    return preserving ? rotation(index_of(to) - index_of(from))
                      : reflection(index_of(to) + index_of(from));
  }

  constexpr int shift() const noexcept { return shift_; }
  constexpr bool reflected() const noexcept { return reflected_; }
  constexpr bool preserves_orientation() const noexcept { return !reflected_; }

  constexpr Direction apply(Direction d) const noexcept {
    return direction_from_index(reflected_ ? shift_ - index_of(d) : shift_ + index_of(d));
  }

  constexpr Offset apply(Offset o) const noexcept {
    const Offset s = unit_step(apply(Direction::S));
    const Offset e = unit_step(apply(Direction::E));
    return {o.row * s.row + o.col * e.row, o.row * s.col + o.col * e.col};
  }

  /// this ∘ other
  constexpr Symmetry compose(Symmetry other) const noexcept {
    if (!reflected_) return Symmetry(shift_ + other.shift_, other.reflected_);
    return Symmetry(shift_ - other.shift_, !other.reflected_);
  }

  constexpr Symmetry inverse() const noexcept {
    return reflected_ ? *this : Symmetry(-shift_, false);
  }

  constexpr bool operator==(const Symmetry&) const = default;

 private:
  constexpr Symmetry(int shift, bool reflected) noexcept
      : shift_(((shift % 4) + 4) % 4), reflected_(reflected) {}

  int shift_{0};
  bool reflected_{false};
};

inline std::string_view describe(Symmetry g) {
  constexpr std::array<std::string_view, 8> names{
      "identity", "rot90",       "rot180",      "rot270",
      "flip-EW",  "flip-diag-NE", "flip-NS",    "flip-diag-NW"};
  return names[static_cast<std::size_t>(g.shift() + (g.reflected() ? 4 : 0))];
}

}  // namespace tilehom
