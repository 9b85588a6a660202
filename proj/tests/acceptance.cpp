// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "tilehom/report.hpp"

namespace {

using namespace tilehom;
using Clock = std::chrono::steady_clock;

constexpr double kFixtureLimitMs = 1000.0;
constexpr double kSearchLimitMs = 30000.0;
constexpr double kPropertyLimitMs = 300000.0;
constexpr std::size_t kPropertyInstances = 200;

// Domino placements on the 8x8 board minus (1,1) and (8,8), from
// tests/oracles/brute_force_counts.py (run before the build).
constexpr std::size_t kChessPlacementsOracle = 108;

struct Check {
  std::ostringstream notes;
  bool ok{true};

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << " [failed: " << what << "]";
    }
  }
};

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string torsion_text(const IntVector& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t[i].get_str();
  return s + "]";
}

AnalysisReport run(const std::string& srf, const char* tile, bool search = false) {
  AnalysisOptions opts;
  opts.run_search = search;
  return analyze(testing::fixture(srf), testing::tiles({tile}), opts);
}

int failures = 0;

void report(int id, const std::string& title, const Check& c, double ms, double limit_ms) {
  const bool ok = c.ok && ms < limit_ms;
  if (!ok) ++failures;
  std::printf("%s criterion %d: %s (%.1f ms, limit %.0f ms)%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), ms,
              limit_ms, c.notes.str().c_str(), ms < limit_ms ? "" : " [over time limit]");
}

void group_case(Check& c, double& worst_ms, const std::string& srf, const char* tile, const IntVector& torsion,
                std::size_t free_rank, std::optional<long> order) {
  const auto t0 = Clock::now();
  const AnalysisReport r = run(srf, tile);
  worst_ms = std::max(worst_ms, elapsed_ms(t0));
  const std::string tag = srf + "/" + tile;
  c.expect(r.homology.group.torsion == torsion, tag + " torsion " + torsion_text(r.homology.group.torsion));
  c.expect(r.homology.group.free_rank == free_rank, tag + " free rank");
  c.expect(!r.homology.theta.trivial, tag + " theta nontrivial");
  if (order) c.expect(r.homology.theta.order && *r.homology.theta.order == *order, tag + " theta order");
  c.expect(r.verdict == Verdict::obstructed, tag + " verdict");
  c.expect(r.homology.certificate && verify_certificate(testing::fixture(srf), testing::tiles({tile}),
                                                        *r.homology.certificate),
           tag + " certificate");
}

void criterion1() {
  Check c;
  double ms = 0;
  group_case(c, ms, "torus6.srf", "I4", {2, 2, 2}, 1, 2);
  group_case(c, ms, "torus6x10.srf", "I4", {2, 2, 2}, 1, 2);
  report(1, "torus 6x6 and 6x10 with I4: Z + Z2^3, theta of order 2, OBSTRUCTED", c, ms, kFixtureLimitMs);
}

void criterion2() {
  Check c;
  double ms = 0;
  group_case(c, ms, "torus6.srf", "T4", {8}, 0, std::nullopt);
  group_case(c, ms, "torus10x6.srf", "T4", {8}, 0, std::nullopt);
  report(2, "torus 6x6 and 10x6 with T4: Z8, theta nontrivial", c, ms, kFixtureLimitMs);
}

void criterion3() {
  Check c;
  double ms = 0;
  group_case(c, ms, "torus6.srf", "X6", {2, 2, 2, 6}, 0, std::nullopt);
  report(3, "torus 6x6 with X6: Z2^3 + Z6, theta nontrivial", c, ms, kFixtureLimitMs);
}

void criterion4() {
  Check c;
  const auto t0 = Clock::now();
  const AnalysisReport r = run("torus4.srf", "I4", true);
  const double ms = elapsed_ms(t0);
  const SurfaceGrid g = testing::fixture("torus4.srf");
  c.expect(r.homology.theta.trivial, "theta trivial");
  c.expect(r.homology.witness && verify_witness(r.homology.relations, *r.homology.witness), "witness verifies");
  c.expect(!r.homology.certificate, "no certificate");
  c.expect(r.search && r.search->status == SearchStatus::found && r.search->tiling &&
               verify_tiling(g, r.homology.relations.placements, *r.search->tiling),
           "search finds a verified tiling");
  c.expect(r.verdict == Verdict::tiled, "verdict TILED");
  report(4, "torus 4x4 with I4: theta trivial, witness verifies, search tiles", c, ms, kFixtureLimitMs);
}

void criterion5() {
  Check c;
  const auto t0 = Clock::now();
  const AnalysisReport r = run("chess.srf", "domino");
  const double ms = elapsed_ms(t0);
  const SurfaceGrid g = testing::fixture("chess.srf");
  const std::size_t count = r.homology.relations.placement_count();
  c.expect(!r.homology.theta.trivial && !r.homology.theta.order, "theta of infinite order");
  c.expect(r.homology.certificate && verify_certificate(g, testing::tiles({"domino"}), *r.homology.certificate),
           "certificate verifies");
  c.expect(count == kChessPlacementsOracle, "placements " + std::to_string(count) + " vs oracle " +
                                                std::to_string(kChessPlacementsOracle));
  c.expect(count == testing::planar_bar_count(8, 8, 2, {{1, 1}, {8, 8}}), "placements vs direct scan");
  c.notes << " placements=" << count;
  report(5, "chessboard minus opposite corners with dominoes: infinite-order theta, certificate", c, ms,
         kFixtureLimitMs);
}

void criterion6() {
  Check c;
  const auto t0 = Clock::now();
  const SurfaceGrid g = testing::fixture("torus6.srf");
  const SearchOptions opts;
  const SearchResult s = find_tiling(g, testing::tiles({"I4"}), opts);
  const double ms = elapsed_ms(t0);
  c.expect(s.status == SearchStatus::exhausted, std::string("status ") + status_name(s.status));
  c.expect(s.nodes <= opts.node_budget, "within node budget");
  c.notes << " nodes=" << s.nodes;
  report(6, "search on torus 6x6 with I4 is exhausted", c, ms, kSearchLimitMs);
}

void criterion7() {
  Check c;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20260101);

  // Smith form invariants.
  for (std::size_t i = 0; i < kPropertyInstances && c.ok; ++i) {
    const IntMatrix m = testing::random_matrix(rng);
    const SmithDecomposition s = smith_normal_form(m);
    c.expect(s.U * m * s.V == s.D, "U*M*V = D");
    c.expect(abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1, "unimodular");
    Integer prod = 1;
    for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
      if (k <= s.rank) {
        prod *= s.D(k - 1, k - 1);
        if (k > 1) c.expect(mpz_divisible_p(s.D(k - 1, k - 1).get_mpz_t(), s.D(k - 2, k - 2).get_mpz_t()), "chain");
      }
      c.expect(testing::minors_gcd(m, k) == (k <= s.rank ? prod : Integer(0)), "determinant divisors");
    }
  }

  // Gluing involution and frame-map inverse.
  for (std::size_t i = 0; i < kPropertyInstances && c.ok; ++i) {
    const SurfaceGrid g = load_surface(testing::random_surface_text(rng));
    for (std::uint32_t id = 0; id < g.cell_count(); ++id) {
      for (Direction d : kDirections) {
        const auto t = g.neighbor(CellId{id}, d);
        if (!t) continue;
        const auto back = g.neighbor(t->target, t->entry);
        c.expect(back && back->target == CellId{id} && back->entry == d && back->chirality == t->chirality,
                 "involution");
        if (back) c.expect(frame_map(t->entry, *back).compose(frame_map(d, *t)) == Symmetry::identity(), "frame inverse");
      }
    }
  }

  // Three-way agreement, and found tiling implies trivial theta.
  const std::vector<std::vector<Tile>> sets = {testing::tiles({"domino"}), testing::tiles({"L3"}),
                                               testing::tiles({"I3"}), testing::tiles({"domino", "L3"}),
                                               testing::tiles({"O4"})};
  for (std::size_t i = 0; i < kPropertyInstances && c.ok; ++i) {
    const SurfaceGrid g = load_surface(testing::random_surface_text(rng));
    const auto& ts = sets[i % sets.size()];
    const RelationMatrix rm = relation_matrix(g, ts);
    const SmithDecomposition snf = smith_normal_form(rm.matrix);
    const ThetaReport theta = theta_report(rm, snf);
    const auto witness = signed_tiling_witness(rm, snf);
    const auto cert = certificate(g, rm, snf, theta);
    c.expect(theta.trivial == witness.has_value() && theta.trivial == !cert.has_value(), "three-way agreement");
    if (cert) c.expect(verify_certificate(g, ts, *cert), "certificate verifies");
    const SearchResult s = find_tiling(g, rm.placements);
    if (s.status == SearchStatus::found) c.expect(theta.trivial, "tiling found implies theta trivial");
  }
  report(7, "property suites (" + std::to_string(kPropertyInstances) + " instances each)", c, elapsed_ms(t0),
         kPropertyLimitMs);
}

void criterion8() {
  Check c;
  const auto t0 = Clock::now();
  struct Expect {
    ModelKind kind;
    long euler;
    bool orientable;
    std::size_t b;
    long genus;
  };
  const Expect table[] = {{ModelKind::torus, 0, true, 0, 1},
                          {ModelKind::klein, 0, false, 0, 2},
                          {ModelKind::rect, 1, true, 1, 0},
                          {ModelKind::cylinder, 0, true, 2, 0}};
  for (const Expect& e : table) {
    for (int m = 3; m <= 10; ++m) {
      for (int n = 3; n <= 10; ++n) {
        const TopologyReport t = topology(generate({e.kind, m, n}));
        c.expect(t.euler == e.euler && t.orientable == e.orientable && t.boundary_components == e.b &&
                     t.genus == e.genus && t.cone_points.empty(),
                 std::string(model_name(e.kind)) + " " + std::to_string(m) + "x" + std::to_string(n));
      }
    }
  }
  report(8, "generated torus/Klein/rect/cylinder topology", c, elapsed_ms(t0), kFixtureLimitMs);
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8};
  for (const auto& run_criterion : criteria) {
    try {
      run_criterion();
    } catch (const std::exception& e) {
      ++failures;
      std::printf("FAIL criterion: exception %s\n", e.what());
    }
  }
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
