// tilehom: command-line front end for the tiling homology engine.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tilehom/report.hpp"
#include "tilehom/surface_dsl.hpp"
#include "tilehom/tilehom.hpp"

namespace {

using namespace tilehom;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSelfCheck = 3;
constexpr int kExitNoArtifact = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

SurfaceGrid load_grid(const std::string& path) {
  try {
    SurfaceGrid grid = load_surface(read_file(path));
    for (const auto& w : grid.warnings()) std::cerr << "warning: " << path << ": " << w << '\n';
    return grid;
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path + ": " + e.what());
  }
}

struct TileArgs {
  std::vector<std::string> names;
  std::string file;
  std::string symmetry{"free"};

  void attach(CLI::App* cmd) {
    cmd->add_option("--tile", names, "catalog tile name (repeatable), e.g. I4, T4, X6, domino");
    cmd->add_option("--tiles", file, ".tiles file with custom prototiles");
    cmd->add_option("--symmetry", symmetry, "policy for catalog tiles: free, one-sided, fixed")
        ->check(CLI::IsMember({"free", "one-sided", "fixed"}));
  }

  std::vector<Tile> resolve() const {
    std::vector<Tile> tiles;
    const SymmetryPolicy policy = *policy_from_name(symmetry);
    for (const auto& n : names) tiles.push_back({catalog(n), policy});
    if (!file.empty()) {
      auto more = parse_tiles(read_file(file));
      tiles.insert(tiles.end(), more.begin(), more.end());
    }
    if (tiles.empty()) throw UsageError("no tiles given (use --tile or --tiles)");
    return tiles;
  }
};

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tiling homology engine for square grids on surfaces"};
  app.require_subcommand(1);

  // topology
  auto* topo = app.add_subcommand("topology", "report V, E, F, Euler characteristic, genus, cone points");
  std::string surface;
  bool masked = false;
  topo->add_option("surface", surface, ".srf file")->required();
  topo->add_flag("--masked", masked, "delete removed cells before computing");

  // analyze
  auto* an = app.add_subcommand("analyze", "homology group, theta, certificate or signed tiling");
  TileArgs an_tiles;
  bool an_search = false;
  bool an_timings = false;
  std::uint64_t budget = 10'000'000;
  unsigned jobs = 1;
  std::string svg_path;
  an->add_option("surface", surface, ".srf file")->required();
  an_tiles.attach(an);
  an->add_flag("--search", an_search, "also search for a genuine tiling");
  an->add_option("--budget", budget, "search node budget");
  an->add_option("--jobs", jobs, "worker threads for enumeration and search");
  an->add_option("--svg", svg_path, "write certificate or tiling picture");
  an->add_flag("--timings", an_timings, "include wall-clock timings in the report");

  // certificate
  auto* cert = app.add_subcommand("certificate", "rational coloring certificate (exit 4 if none)");
  TileArgs cert_tiles;
  cert->add_option("surface", surface, ".srf file")->required();
  cert_tiles.attach(cert);
  cert->add_option("--svg", svg_path, "write the weighted planar model");

  // placements
  auto* pl = app.add_subcommand("placements", "enumerate tile placements");
  TileArgs pl_tiles;
  bool list = false;
  pl->add_option("surface", surface, ".srf file")->required();
  pl_tiles.attach(pl);
  pl->add_flag("--list", list, "include every placement");
  pl->add_option("--jobs", jobs, "worker threads");

  // search
  auto* se = app.add_subcommand("search", "exact-cover search for a genuine tiling");
  TileArgs se_tiles;
  std::uint64_t count_cap = 0;
  se->add_option("surface", surface, ".srf file")->required();
  se_tiles.attach(se);
  se->add_option("--budget", budget, "node budget");
  se->add_option("--jobs", jobs, "worker threads for the first branching level");
  se->add_option("--count", count_cap, "count tilings up to this cap instead");
  se->add_option("--svg", svg_path, "write the tiling picture");

  // gen
  auto* gen = app.add_subcommand("gen", "print a canonical .srf for a standard model");
  std::string model;
  int rows = 0;
  int cols = 0;
  std::vector<std::string> removes;
  gen->add_option("model", model, "torus, klein, rect or cylinder")
      ->required()
      ->check(CLI::IsMember({"torus", "klein", "rect", "cylinder"}));
  gen->add_option("rows", rows, "row count")->required();
  gen->add_option("cols", cols, "column count")->required();
  gen->add_option("--remove", removes, "remove cell ROW,COL (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*topo) {
      const SurfaceGrid grid = load_grid(surface);
      Json j{{"schema", kTopologySchema}, {"name", grid.name()}};
      j.update(topology_json(grid, topology(grid, masked)));
      print_json(j);
    } else if (*an) {
      const SurfaceGrid grid = load_grid(surface);
      AnalysisOptions opts;
      opts.run_search = an_search;
      opts.search.node_budget = budget;
      opts.jobs = jobs;
      const AnalysisReport r = analyze(grid, an_tiles.resolve(), opts);
      print_json(analysis_json(grid, r, an_timings));
      if (!svg_path.empty()) {
        if (r.search && r.search->tiling) {
          write_file(svg_path, tiling_svg(grid, r.homology.relations.placements, *r.search->tiling));
        } else if (r.homology.certificate) {
          write_file(svg_path, certificate_svg(grid, *r.homology.certificate));
        }
      }
    } else if (*cert) {
      const SurfaceGrid grid = load_grid(surface);
      const RelationMatrix rm = relation_matrix(grid, cert_tiles.resolve());
      const auto w = certificate(grid, rm);
      if (!w) {
        std::cerr << "theta is trivial: no coloring certificate exists\n";
        return kExitNoArtifact;
      }
      Json j{{"schema", kCertificateSchema}, {"name", grid.name()}};
      j.update(certificate_json(grid, *w));
      print_json(j);
      if (!svg_path.empty()) write_file(svg_path, certificate_svg(grid, *w));
    } else if (*pl) {
      const SurfaceGrid grid = load_grid(surface);
      const auto placements = enumerate_placements(grid, pl_tiles.resolve(), jobs);
      Json j{{"schema", kPlacementsSchema}, {"name", grid.name()}, {"count", placements.size()}};
      if (list) {
        Json all = Json::array();
        for (const auto& p : placements) all.push_back(placement_json(grid, p));
        j["placements"] = std::move(all);
      }
      print_json(j);
    } else if (*se) {
      const SurfaceGrid grid = load_grid(surface);
      const auto placements = enumerate_placements(grid, se_tiles.resolve(), jobs);
      Json j{{"schema", kSearchSchema}, {"name", grid.name()}, {"placements", placements.size()}};
      if (count_cap > 0) {
        const CountResult c = count_tilings(grid, placements, count_cap, budget);
        j["count"] = c.count;
        j["complete"] = c.complete;
        j["budget_exceeded"] = c.budget_exceeded;
        j["nodes"] = c.nodes;
      } else {
        const SearchResult s = find_tiling(grid, placements, SearchOptions{budget, jobs});
        j.update(search_json(grid, placements, s));
        if (!svg_path.empty() && s.tiling) write_file(svg_path, tiling_svg(grid, placements, *s.tiling));
      }
      print_json(j);
    } else if (*gen) {
      ModelKind kind = ModelKind::torus;
      if (model == "klein") kind = ModelKind::klein;
      else if (model == "rect") kind = ModelKind::rect;
      else if (model == "cylinder") kind = ModelKind::cylinder;
      std::vector<std::pair<int, int>> cells;
      for (const auto& item : removes) {
        int r = 0, c = 0;
        char comma = 0;
        std::istringstream in(item);
        if (!(in >> r >> comma >> c) || comma != ',' || !in.eof()) {
          throw UsageError("bad --remove '" + item + "' (expected ROW,COL)");
        }
        cells.emplace_back(r, c);
      }
      const Model m{kind, rows, cols};
      for (const auto& w : model_warnings(m)) std::cerr << "warning: " << w << '\n';
      const std::string text = model_text(m, cells);
      generate(m, cells);  // rejects removals outside the grid
      std::cout << text;
    }
  } catch (const SelfCheckError& e) {
    std::cerr << "internal self-check failed: " << e.what() << '\n';
    return kExitSelfCheck;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
