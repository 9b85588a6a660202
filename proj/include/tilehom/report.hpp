#pragma once

// End-to-end analysis pipeline plus its JSON and SVG renderings. The CLI is a
// thin shell around these functions.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tilehom/grid.hpp"
#include "tilehom/homology.hpp"
#include "tilehom/placement.hpp"
#include "tilehom/polyomino.hpp"
#include "tilehom/search.hpp"

namespace tilehom {

using Json = nlohmann::ordered_json;

inline constexpr const char* kAnalysisSchema = "tilehom.analysis/1";
inline constexpr const char* kTopologySchema = "tilehom.topology/1";
inline constexpr const char* kCertificateSchema = "tilehom.certificate/1";
inline constexpr const char* kPlacementsSchema = "tilehom.placements/1";
inline constexpr const char* kSearchSchema = "tilehom.search/1";

enum class Verdict { obstructed, signed_tilable, tiled };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::obstructed: return "OBSTRUCTED";
    case Verdict::signed_tilable: return "SIGNED-TILABLE";
    case Verdict::tiled: return "TILED";
  }
  return "?";
}

struct AnalysisOptions {
  bool run_search{false};
  SearchOptions search;
  unsigned jobs{1};
};

struct AnalysisReport {
  TopologyReport topology;
  std::size_t cells{0};
  std::size_t removed{0};
  std::vector<Tile> tiles;
  HomologyAnalysis homology;
  std::optional<SearchResult> search;
  Verdict verdict{Verdict::signed_tilable};
  std::map<std::string, double> timings_ms;
};

inline AnalysisReport analyze(const SurfaceGrid& grid, const std::vector<Tile>& tiles,
                              const AnalysisOptions& opts = {}) {
  using Clock = std::chrono::steady_clock;
  AnalysisReport r;
  auto stamp = [&](const char* key, Clock::time_point since) {
    r.timings_ms[key] = std::chrono::duration<double, std::milli>(Clock::now() - since).count();
  };
  auto t0 = Clock::now();
  r.topology = topology(grid);
  r.cells = grid.cell_count();
  r.removed = grid.removed_cells().size();
  r.tiles = tiles;
  stamp("topology", t0);

  t0 = Clock::now();
  auto placements = enumerate_placements(grid, tiles, opts.jobs);
  stamp("placements", t0);

  t0 = Clock::now();
  r.homology = analyze_homology(grid, relation_matrix(grid, std::move(placements)));
  stamp("homology", t0);

  r.verdict = r.homology.theta.trivial ? Verdict::signed_tilable : Verdict::obstructed;
  if (opts.run_search) {
    t0 = Clock::now();
    SearchOptions so = opts.search;
    so.jobs = std::max(so.jobs, opts.jobs);
    r.search = find_tiling(grid, r.homology.relations.placements, so);
    stamp("search", t0);
    if (r.search->status == SearchStatus::found) {
      if (!r.homology.theta.trivial) {
        throw SelfCheckError("search found a tiling although theta is nontrivial");
      }
      r.verdict = Verdict::tiled;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline Json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

inline Json label_json(const SurfaceGrid& grid, CellId c) {
  const CellLabel& l = grid.label(c);
  return Json{{"patch", l.patch}, {"row", l.row}, {"col", l.col}};
}

inline const char* corner_name(Corner k) {
  switch (k) {
    case Corner::NW: return "NW";
    case Corner::NE: return "NE";
    case Corner::SE: return "SE";
    case Corner::SW: return "SW";
  }
  return "?";
}

inline Json topology_json(const SurfaceGrid& grid, const TopologyReport& t) {
  Json cones = Json::array();
  for (const ConePoint& c : t.cone_points) {
    cones.push_back({{"vertex", c.vertex},
                     {"incident_squares", c.incident_squares},
                     {"cell", label_json(grid, c.cell)},
                     {"corner", corner_name(c.corner)}});
  }
  return Json{{"vertices", t.vertices},
              {"edges", t.edges},
              {"faces", t.faces},
              {"euler", t.euler},
              {"orientable", t.orientable},
              {"genus", t.genus},
              {"boundary_components", t.boundary_components},
              {"components", t.components},
              {"cone_points", cones}};
}

inline Json tile_json(const Tile& t) {
  Json cells = Json::array();
  for (const Offset& o : t.shape.cells()) cells.push_back({o.row, o.col});
  return Json{{"name", t.shape.name()}, {"cells", cells}, {"symmetry", policy_name(t.policy)}};
}

inline Json placement_json(const SurfaceGrid& grid, const Placement& p) {
  Json cells = Json::array();
  for (CellId c : p.cells) cells.push_back(label_json(grid, c));
  return Json{{"tile", p.tile_name}, {"cells", cells}};
}

inline Json group_json(const HomologyGroup& g) {
  Json torsion = Json::array();
  for (const Integer& d : g.torsion) torsion.push_back(integer_json(d));
  return Json{{"group", g.describe()},
              {"torsion", torsion},
              {"free_rank", g.free_rank},
              {"trivial_factors_suppressed", g.trivial_factors_suppressed}};
}

inline Json theta_json(const ThetaReport& t) {
  return Json{{"trivial", t.trivial}, {"order", t.order ? integer_json(*t.order) : Json("infinite")}};
}

inline Json certificate_json(const SurfaceGrid& grid, const Certificate& w) {
  Json weights = Json::array();
  Integer denominator = 1;
  Rational total = 0;
  for (const auto& [cell, q] : w.weights) {
    weights.push_back({{"cell", label_json(grid, cell)}, {"weight", q.get_str()}});
    mpz_lcm(denominator.get_mpz_t(), denominator.get_mpz_t(), q.get_den_mpz_t());
    total += q;
  }
  return Json{{"denominator", integer_json(denominator)}, {"total", total.get_str()}, {"weights", weights}};
}

inline Json witness_json(const SurfaceGrid& grid, const RelationMatrix& rm, const SignedTilingWitness& w) {
  Json out = Json::array();
  for (const auto& [j, k] : w.coefficients) {
    Json entry = placement_json(grid, rm.placements[j]);
    entry["coefficient"] = integer_json(k);
    out.push_back(std::move(entry));
  }
  return out;
}

inline Json search_json(const SurfaceGrid& grid, const std::vector<Placement>& placements,
                        const SearchResult& s) {
  Json out{{"status", status_name(s.status)}, {"nodes", s.nodes}};
  if (s.tiling) {
    Json tiling = Json::array();
    for (std::size_t j : s.tiling->placements) tiling.push_back(placement_json(grid, placements[j]));
    out["tiling"] = std::move(tiling);
  }
  return out;
}

inline Json analysis_json(const SurfaceGrid& grid, const AnalysisReport& r, bool with_timings = false) {
  Json tiles = Json::array();
  for (const Tile& t : r.tiles) tiles.push_back(tile_json(t));
  const HomologyAnalysis& h = r.homology;
  Json out{{"schema", kAnalysisSchema},
           {"grid",
            {{"name", grid.name()},
             {"cells", r.cells},
             {"removed", r.removed},
             {"active", r.cells - r.removed},
             {"topology", topology_json(grid, r.topology)}}},
           {"tiles", tiles},
           {"placements", h.relations.placement_count()},
           {"homology", group_json(h.group)},
           {"theta", theta_json(h.theta)},
           {"verdict", verdict_name(r.verdict)}};
  if (h.certificate) out["certificate"] = certificate_json(grid, *h.certificate);
  if (h.witness) out["witness"] = witness_json(grid, h.relations, *h.witness);
  if (r.search) out["search"] = search_json(grid, h.relations.placements, *r.search);
  if (with_timings) {
    Json t = Json::object();
    for (const auto& [k, v] : r.timings_ms) t[k] = v;
    out["timings_ms"] = t;
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG (presentation only)
// ---------------------------------------------------------------------------

namespace detail {

inline std::string palette(std::size_t i) {
  static const char* colors[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                                 "#b3de69", "#fccde5", "#bc80bd", "#ccebc5", "#ffed6f", "#d9d9d9"};
  return colors[i % (sizeof(colors) / sizeof(colors[0]))];
}

/// Draws every patch side by side; `fill` and `text` give per-cell styling.
template <class Fill, class Text>
std::string render_cells(const SurfaceGrid& grid, Fill fill, Text text) {
  constexpr int cell = 40;
  constexpr int gap = 20;
  int width = gap;
  int height = 0;
  for (const Patch& p : grid.patches()) {
    width += p.cols * cell + gap;
    height = std::max(height, p.rows * cell + 2 * gap);
  }
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"monospace\" font-size=\"10\">\n";
  int x0 = gap;
  for (const Patch& p : grid.patches()) {
    svg << "<text x=\"" << x0 << "\" y=\"" << gap - 6 << "\">" << p.id << "</text>\n";
    for (int r = 1; r <= p.rows; ++r) {
      for (int c = 1; c <= p.cols; ++c) {
        const CellId id = *grid.find(p.id, r, c);
        const int x = x0 + (c - 1) * cell;
        const int y = gap + (r - 1) * cell;
        svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
            << "\" fill=\"" << (grid.is_removed(id) ? std::string("#555555") : fill(id))
            << "\" stroke=\"#333\" stroke-width=\"0.5\"/>\n";
        if (!grid.is_removed(id)) {
          svg << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 3
              << "\" text-anchor=\"middle\">" << text(id) << "</text>\n";
        }
      }
    }
    x0 += p.cols * cell + gap;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace detail

inline std::string certificate_svg(const SurfaceGrid& grid, const Certificate& w) {
  std::map<Rational, std::size_t> colour;
  for (const auto& [c, q] : w.weights) colour.emplace(q, 0);
  std::size_t k = 0;
  for (auto& [q, idx] : colour) idx = k++;
  return detail::render_cells(
      grid, [&](CellId c) { return detail::palette(colour.at(w.weights.at(c))); },
      [&](CellId c) { return w.weights.at(c).get_str(); });
}

inline std::string tiling_svg(const SurfaceGrid& grid, const std::vector<Placement>& placements,
                              const Tiling& tiling) {
  std::map<CellId, std::size_t> owner;
  for (std::size_t k = 0; k < tiling.placements.size(); ++k) {
    for (CellId c : placements[tiling.placements[k]].cells) owner[c] = k;
  }
  return detail::render_cells(
      grid, [&](CellId c) { return detail::palette(owner.at(c)); },
      [&](CellId c) { return std::to_string(owner.at(c)); });
}

}  // namespace tilehom
