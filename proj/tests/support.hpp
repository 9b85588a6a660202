#pragma once

// Shared helpers for the test suites: fixture loading, random instance
// generators and independent oracles.

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tilehom/tilehom.hpp"

#ifndef TILEHOM_DATA_DIR
#error "TILEHOM_DATA_DIR must point at the data/ fixtures"
#endif

namespace tilehom::testing {

inline std::string data_path(const std::string& name) { return std::string(TILEHOM_DATA_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline SurfaceGrid fixture(const std::string& name) { return load_surface(read_text(data_path(name))); }

inline std::vector<Tile> tiles(std::initializer_list<const char*> names,
                               SymmetryPolicy policy = SymmetryPolicy::free) {
  std::vector<Tile> out;
  for (const char* n : names) out.push_back({catalog(n), policy});
  return out;
}

inline CellId cell(const SurfaceGrid& g, int row, int col, const std::string& patch = "P") {
  return *g.find(patch, row, col);
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t max_dim = 6, int bound = 9) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<int> entry(-bound, bound);
  std::bernoulli_distribution sparse(0.3);
  IntMatrix m(dim(rng), dim(rng));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = sparse(rng) ? 0 : entry(rng);
  return m;
}

/// Random `.srf` text: 1-3 small patches, a few full-side gluings and unit
/// gluings between free edges, random `reversed` flags, occasional removals.
inline std::string random_surface_text(std::mt19937_64& rng, int max_side = 4) {
  std::uniform_int_distribution<int> side_len(1, max_side);
  std::uniform_int_distribution<int> patch_count(1, 3);
  std::bernoulli_distribution coin(0.5);
  struct P {
    std::string id;
    int rows, cols;
  };
  std::vector<P> patches;
  const int np = patch_count(rng);
  for (int i = 0; i < np; ++i) patches.push_back({"Q" + std::to_string(i), side_len(rng), side_len(rng)});

  struct Unit {
    std::size_t patch;
    Side side;
    int index;
  };
  std::vector<Unit> free_units;
  auto length = [&](const P& p, Side s) { return (s == Side::top || s == Side::bottom) ? p.cols : p.rows; };
  for (std::size_t i = 0; i < patches.size(); ++i) {
    for (Side s : {Side::top, Side::bottom, Side::left, Side::right}) {
      for (int k = 1; k <= length(patches[i], s); ++k) free_units.push_back({i, s, k});
    }
  }
  std::shuffle(free_units.begin(), free_units.end(), rng);

  std::ostringstream out;
  out << "grid random\n";
  for (const auto& p : patches) out << "patch " << p.id << ' ' << p.rows << ' ' << p.cols << '\n';

  std::set<std::tuple<std::size_t, int, int>> used;
  auto seg = [&](std::size_t pi, Side s, int a, int b) {
    std::ostringstream o;
    o << patches[pi].id << '.' << side_name(s) << '[' << a << ".." << b << ']';
    return o.str();
  };
  // Full-side gluings between sides of equal length.
  std::uniform_int_distribution<int> full_count(0, 2);
  const int nfull = full_count(rng);
  for (int f = 0; f < nfull; ++f) {
    std::uniform_int_distribution<std::size_t> pick(0, patches.size() - 1);
    std::uniform_int_distribution<int> pick_side(0, 3);
    const std::size_t pa = pick(rng), pb = pick(rng);
    const Side sa = static_cast<Side>(pick_side(rng)), sb = static_cast<Side>(pick_side(rng));
    if (pa == pb && sa == sb) continue;
    const int la = length(patches[pa], sa), lb = length(patches[pb], sb);
    if (la != lb) continue;
    bool clash = false;
    for (int k = 1; k <= la; ++k) {
      clash = clash || used.count({pa, static_cast<int>(sa), k}) || used.count({pb, static_cast<int>(sb), k});
    }
    if (clash) continue;
    for (int k = 1; k <= la; ++k) {
      used.insert({pa, static_cast<int>(sa), k});
      used.insert({pb, static_cast<int>(sb), k});
    }
    out << "glue " << seg(pa, sa, 1, la) << ' ' << seg(pb, sb, 1, lb) << (coin(rng) ? " reversed" : "") << '\n';
  }
  // A few unit gluings among the remaining free edges.
  std::vector<Unit> remaining;
  for (const Unit& u : free_units) {
    if (!used.count({u.patch, static_cast<int>(u.side), u.index})) remaining.push_back(u);
  }
  std::uniform_int_distribution<std::size_t> unit_pairs(0, remaining.size() / 2);
  const std::size_t nunit = std::min<std::size_t>(unit_pairs(rng), 4);
  for (std::size_t k = 0; k + 1 < remaining.size() && k / 2 < nunit; k += 2) {
    const Unit& a = remaining[k];
    const Unit& b = remaining[k + 1];
    out << "glue " << seg(a.patch, a.side, a.index, a.index) << ' ' << seg(b.patch, b.side, b.index, b.index)
        << (coin(rng) ? " reversed" : "") << '\n';
  }
  std::bernoulli_distribution remove(0.3);
  if (remove(rng)) {
    const P& p = patches.front();
    std::uniform_int_distribution<int> rr(1, p.rows), cc(1, p.cols);
    out << "remove " << p.id << " (" << rr(rng) << ',' << cc(rng) << ")\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// gcd of all k x k minors (0 if every minor vanishes), by enumeration.
inline Integer minors_gcd(const IntMatrix& m, std::size_t k) {
  Integer g = 0;
  std::vector<std::size_t> rows(k), cols(k);
  std::vector<bool> rsel(m.rows(), false), csel(m.cols(), false);
  std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::fill(csel.begin(), csel.end(), false);
    std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      IntMatrix sub(k, k);
      std::size_t si = 0;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (!rsel[i]) continue;
        std::size_t sj = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
          if (csel[j]) sub(si, sj++) = m(i, j);
        }
        ++si;
      }
      const Integer d = determinant(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    } while (std::prev_permutation(csel.begin(), csel.end()));
  } while (std::prev_permutation(rsel.begin(), rsel.end()));
  return g;
}

/// Placement count of a planar bar of length `len` (both orientations) in a
/// rows x cols rectangle with the given removed cells, by direct scan.
inline std::size_t planar_bar_count(int rows, int cols, int len, const std::set<std::pair<int, int>>& removed) {
  auto ok = [&](int r, int c) { return r >= 1 && c >= 1 && r <= rows && c <= cols && !removed.count({r, c}); };
  std::size_t n = 0;
  for (int r = 1; r <= rows; ++r) {
    for (int c = 1; c <= cols; ++c) {
      bool h = true, v = true;
      for (int k = 0; k < len; ++k) {
        h = h && ok(r, c + k);
        v = v && ok(r + k, c);
      }
      n += h ? 1 : 0;
      n += (v && len > 1) ? 1 : 0;
    }
  }
  return n;
}

}  // namespace tilehom::testing
