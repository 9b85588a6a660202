#pragma once

// Tiling homology: the cokernel of the cell-by-placement incidence matrix,
// the class of the all-ones element in it, rational coloring certificates
// and signed-tiling witnesses.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tilehom/error.hpp"
#include "tilehom/grid.hpp"
#include "tilehom/placement.hpp"
#include "tilehom/zlinalg.hpp"

namespace tilehom {

/// One row per active cell (CellId order), one column per placement
/// (enumeration order); M(i, j) = 1 iff placement j covers cell i.
struct RelationMatrix {
  IntMatrix matrix;
  std::vector<CellId> row_cells;
  std::vector<Placement> placements;
  std::vector<long> row_of;  // indexed by CellId, -1 for removed cells

  std::size_t cell_count() const noexcept { return row_cells.size(); }
  std::size_t placement_count() const noexcept { return placements.size(); }
};

inline RelationMatrix relation_matrix(const SurfaceGrid& grid, std::vector<Placement> placements) {
  RelationMatrix rm;
  rm.row_cells = grid.active_cells();
  rm.row_of.assign(grid.cell_count(), -1);
  for (std::size_t i = 0; i < rm.row_cells.size(); ++i) rm.row_of[rm.row_cells[i].value] = static_cast<long>(i);
  rm.matrix = IntMatrix(rm.row_cells.size(), placements.size());
  for (std::size_t j = 0; j < placements.size(); ++j) {
    for (CellId c : placements[j].cells) {
      const long row = rm.row_of[c.value];
      if (row < 0) throw SelfCheckError("placement covers removed cell " + grid.describe_cell(c));
      rm.matrix(static_cast<std::size_t>(row), j) = 1;
    }
  }
  rm.placements = std::move(placements);
  return rm;
}

inline RelationMatrix relation_matrix(const SurfaceGrid& grid, const std::vector<Tile>& tiles,
                                      unsigned jobs = 1) {
  return relation_matrix(grid, enumerate_placements(grid, tiles, jobs));
}

/// Finitely generated abelian group ℤ^free_rank ⊕ ⨁ ℤ/dᵢ with d₁ | d₂ | ….
struct HomologyGroup {
  IntVector torsion;
  std::size_t free_rank{0};
  std::size_t trivial_factors_suppressed{0};

  bool trivial() const noexcept { return torsion.empty() && free_rank == 0; }

  /// e.g. "Z + Z2^3", "Z8", "0".
  std::string describe() const {
    std::vector<std::string> parts;
    if (free_rank == 1) parts.push_back("Z");
    else if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
    for (std::size_t i = 0; i < torsion.size();) {
      std::size_t j = i;
      while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
      std::string term = "Z" + torsion[i].get_str();
      if (j - i > 1) term += "^" + std::to_string(j - i);
      parts.push_back(term);
      i = j;
    }
    if (parts.empty()) return "0";
    std::string out = parts.front();
    for (std::size_t k = 1; k < parts.size(); ++k) out += " + " + parts[k];
    return out;
  }
};

inline HomologyGroup homology_group(const SmithDecomposition& snf) {
  HomologyGroup g;
  for (std::size_t i = 0; i < snf.rank; ++i) {
    if (snf.D(i, i) == 1) ++g.trivial_factors_suppressed;
    else g.torsion.push_back(snf.D(i, i));
  }
  g.free_rank = snf.D.rows() - snf.rank;
  return g;
}

inline HomologyGroup homology_group(const RelationMatrix& rm) {
  return homology_group(smith_normal_form(rm.matrix));
}

/// Class of Θ = Σ (all active cells) in the cokernel.
struct ThetaReport {
  IntVector theta;
  IntVector coords;                // U·θ
  std::optional<Integer> order;    // std::nullopt = infinite order
  bool trivial{false};
};

inline ThetaReport theta_report(const RelationMatrix& rm, const SmithDecomposition& snf) {
  ThetaReport t;
  t.theta.assign(rm.cell_count(), Integer(1));
  t.coords = snf.U * t.theta;
  Integer order = 1;
  bool infinite = false;
  for (std::size_t i = 0; i < t.coords.size(); ++i) {
    if (i < snf.rank) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), snf.D(i, i).get_mpz_t(), t.coords[i].get_mpz_t());
      const Integer part = snf.D(i, i) / g;
      mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), part.get_mpz_t());
    } else if (sgn(t.coords[i]) != 0) {
      infinite = true;
    }
  }
  if (!infinite) t.order = order;
  t.trivial = !infinite && order == 1;
  return t;
}

inline ThetaReport theta_report(const RelationMatrix& rm) {
  return theta_report(rm, smith_normal_form(rm.matrix));
}

/// Integer multiplicities per placement (only nonzero entries kept) whose
/// signed sum of indicator vectors is Θ.
struct SignedTilingWitness {
  std::vector<std::pair<std::size_t, Integer>> coefficients;  // (placement index, multiplicity)
};

inline bool verify_witness(const RelationMatrix& rm, const SignedTilingWitness& w) {
  IntVector sum(rm.cell_count());
  for (const auto& [j, k] : w.coefficients) {
    if (j >= rm.placement_count()) return false;
    for (CellId c : rm.placements[j].cells) sum[static_cast<std::size_t>(rm.row_of[c.value])] += k;
  }
  return std::all_of(sum.begin(), sum.end(), [](const Integer& v) { return v == 1; });
}

inline std::optional<SignedTilingWitness> signed_tiling_witness(const RelationMatrix& rm,
                                                                const SmithDecomposition& snf) {
  const auto x = solve_integer(snf, IntVector(rm.cell_count(), Integer(1)));
  if (!x) return std::nullopt;
  SignedTilingWitness w;
  for (std::size_t j = 0; j < x->size(); ++j) {
    if (sgn((*x)[j]) != 0) w.coefficients.emplace_back(j, (*x)[j]);
  }
  if (!verify_witness(rm, w)) throw SelfCheckError("signed tiling witness failed re-verification");
  return w;
}

inline std::optional<SignedTilingWitness> signed_tiling_witness(const RelationMatrix& rm) {
  return signed_tiling_witness(rm, smith_normal_form(rm.matrix));
}

/// Rational weight per active cell such that every placement covers an
/// integral total while all active cells together do not.
struct Certificate {
  std::map<CellId, Rational> weights;
};

namespace detail {

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

/// Representative of q mod 1 in (-1/2, 1/2].
inline Rational centered_fraction(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational f = q - Rational(fl);
  if (f > Rational(1, 2)) f -= 1;
  f.canonicalize();
  return f;
}

inline Rational weight_of(const Certificate& w, CellId c, const SurfaceGrid* grid) {
  auto it = w.weights.find(c);
  if (it == w.weights.end()) {
    throw UsageError("certificate has no weight for cell " +
                     (grid ? grid->describe_cell(c) : std::to_string(c.value)));
  }
  return it->second;
}

}  // namespace detail

/// True iff every placement sums to an integer and the active total does not.
inline bool verify_certificate(const SurfaceGrid& grid, const std::vector<Placement>& placements,
                               const Certificate& w) {
  Rational total = 0;
  for (CellId c : grid.active_cells()) total += detail::weight_of(w, c, &grid);
  if (detail::is_integral(total)) return false;
  for (const Placement& p : placements) {
    Rational sum = 0;
    for (CellId c : p.cells) sum += detail::weight_of(w, c, &grid);
    if (!detail::is_integral(sum)) return false;
  }
  return true;
}

/// Enumerates the placements itself, so it does not trust any caller-side matrix.
inline bool verify_certificate(const SurfaceGrid& grid, const std::vector<Tile>& tiles,
                               const Certificate& w) {
  return verify_certificate(grid, enumerate_placements(grid, tiles), w);
}

/// Builds a certificate from the Smith transform, or std::nullopt when Θ is
/// trivial. Uses the lowest-index obstructing coordinate: a coordinate beyond
/// the rank with yᵢ ≠ 0 gives row i of U scaled by 1/(2yᵢ); otherwise a
/// coordinate with dᵢ ∤ yᵢ gives row i of U scaled by 1/dᵢ. Weights are then
/// reduced mod 1 into (-1/2, 1/2]. The result is verified before return.
inline std::optional<Certificate> certificate(const SurfaceGrid& grid, const RelationMatrix& rm,
                                              const SmithDecomposition& snf, const ThetaReport& theta) {
  if (theta.trivial) return std::nullopt;
  std::optional<std::size_t> row;
  Integer scale;
  for (std::size_t i = snf.rank; i < theta.coords.size() && !row; ++i) {
    if (sgn(theta.coords[i]) != 0) row = i, scale = 2 * theta.coords[i];
  }
  for (std::size_t i = 0; i < snf.rank && !row; ++i) {
    if (!mpz_divisible_p(theta.coords[i].get_mpz_t(), snf.D(i, i).get_mpz_t())) {
      row = i, scale = snf.D(i, i);
    }
  }
  if (!row) throw SelfCheckError("theta is nontrivial but no obstructing coordinate was found");
  Certificate w;
  for (std::size_t k = 0; k < rm.cell_count(); ++k) {
    Rational q(snf.U(*row, k), scale);
    q.canonicalize();
    w.weights.emplace(rm.row_cells[k], detail::centered_fraction(q));
  }
  if (!verify_certificate(grid, rm.placements, w)) {
    throw SelfCheckError("constructed certificate failed verification");
  }
  return w;
}

inline std::optional<Certificate> certificate(const SurfaceGrid& grid, const RelationMatrix& rm) {
  const SmithDecomposition snf = smith_normal_form(rm.matrix);
  return certificate(grid, rm, snf, theta_report(rm, snf));
}

/// Everything the analysis pipeline derives from one relation matrix.
struct HomologyAnalysis {
  RelationMatrix relations;
  SmithDecomposition snf;
  HomologyGroup group;
  ThetaReport theta;
  std::optional<Certificate> certificate;
  std::optional<SignedTilingWitness> witness;
};

inline HomologyAnalysis analyze_homology(const SurfaceGrid& grid, RelationMatrix rm) {
  HomologyAnalysis a{std::move(rm), {}, {}, {}, std::nullopt, std::nullopt};
  a.snf = smith_normal_form(a.relations.matrix);
  a.group = homology_group(a.snf);
  a.theta = theta_report(a.relations, a.snf);
  a.certificate = certificate(grid, a.relations, a.snf, a.theta);
  a.witness = signed_tiling_witness(a.relations, a.snf);
  if (a.theta.trivial != a.witness.has_value() || a.theta.trivial == a.certificate.has_value()) {
    throw SelfCheckError("theta triviality, witness existence and certificate absence disagree");
  }
  return a;
}

inline std::string describe_order(const ThetaReport& t) {
  return t.order ? t.order->get_str() : std::string("infinite");
}

}  // namespace tilehom
