// mag: exact magnitude-homology workbench for finite metric spaces and
// planar shapes. Exit codes: 0 success / equivalent, 1 negative verdict
// or cross-check mismatch, 2 input error.

#include <algorithm>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "mag/io.hpp"

using namespace mag;

namespace {

FiniteMetricSpace to_metric(const SpaceInput& s, const std::string& what) {
  if (const auto* m = std::get_if<FiniteMetricSpace>(&s)) return *m;
  if (const auto* p = std::get_if<PointSet>(&s)) return metric_space_of(*p);
  throw std::runtime_error(what + " needs a finite space (metric, graph or points)");
}

std::string tuple_str(const FiniteMetricSpace& X, const std::array<size_t, 4>& w) {
  std::string s = "(";
  for (size_t i = 0; i < 4; ++i) s += (i ? ", " : "") + X.label(w[i]);
  return s + ")";
}

std::string chain_str(const FiniteMetricSpace& X, const std::vector<size_t>& c) {
  std::string s = "(";
  for (size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + X.label(c[i]);
  return s + ")";
}

int cmd_analyze(const std::string& path, bool as_json) {
  FiniteMetricSpace X = to_metric(load_space(path), "analyze");
  AlignednessReport rep = alignedness(X);
  if (as_json) {
    std::cout << alignedness_to_json(rep, X.labels()) << "\n";
  } else {
    if (rep.aligned) {
      std::cout << "aligned\n";
    } else {
      std::cout << "not aligned";
      if (rep.four_cut) std::cout << "; 4-cut " << tuple_str(X, *rep.four_cut);
      if (rep.geodetic_violation)
        std::cout << "; geodetic violation " << tuple_str(X, *rep.geodetic_violation);
      std::cout << "\n";
    }
    auto ib = inner_boundary(X);
    std::cout << "inner boundary:";
    if (ib.empty()) std::cout << " (empty)";
    for (size_t p : ib) std::cout << " " << X.label(p);
    std::cout << "\n";
    std::map<ExactLength, size_t> adj;
    for (size_t i = 0; i < X.size(); ++i)
      for (size_t j = i + 1; j < X.size(); ++j)
        if (is_adjacent(X, i, j)) ++adj[X.d(i, j)];
    std::cout << "adjacent pairs per distance:\n";
    for (const auto& [d, k] : adj) std::cout << "  " << d.str() << ": " << k << "\n";
  }
  return 0;
}

int cmd_homology(const std::string& path, size_t nmax, const std::string& lmax, bool ky,
                 bool as_json, size_t cap) {
  FiniteMetricSpace X = to_metric(load_space(path), "homology");
  ExactLength l(parse_rational(lmax));
  HomologyTable T = magnitude_homology(X, nmax, l, cap);
  if (as_json) std::cout << homology_table_to_json(T) << "\n";
  else std::cout << render_table(T);
  if (!ky) return 0;
  KyReport rep = ky_compare(X, nmax, l, cap);
  if (rep.refused) {
    std::cerr << "thin-chain cross-check refused: space is not aligned";
    if (rep.alignment.four_cut) std::cerr << "; 4-cut " << tuple_str(X, *rep.alignment.four_cut);
    if (rep.alignment.geodetic_violation)
      std::cerr << "; geodetic violation " << tuple_str(X, *rep.alignment.geodetic_violation);
    std::cerr << "\n";
    return 2;
  }
  if (!rep.match) {
    for (const auto& m : rep.mismatches) std::cerr << "MISMATCH " << m << "\n";
    return 1;
  }
  std::cout << "thin-chain cross-check: all blocks match\n";
  return 0;
}

int cmd_thin(const std::string& path, size_t nmax, const std::string& lmax) {
  FiniteMetricSpace X = to_metric(load_space(path), "thin");
  ExactLength bound(parse_rational(lmax));
  FiniteOracle O(X);
  for (size_t n = 0; n <= nmax; ++n) {
    std::map<ExactLength, std::vector<std::vector<size_t>>> by_len;
    for (auto& c : all_thin_chains(X, n)) {
      ExactLength l = chain_length(O, c);
      if (l <= bound) by_len[l].push_back(std::move(c));
    }
    for (const auto& [l, chains] : by_len) {
      std::cout << "thin(n=" << n << ", l=" << l.str() << "): " << chains.size() << "\n";
      for (const auto& c : chains) std::cout << "  " << chain_str(X, c) << "\n";
    }
  }
  return 0;
}

int cmd_equiv(const std::string& pa, const std::string& pb) {
  SpaceInput a = load_space(pa), b = load_space(pb);
  if (const auto* xa = std::get_if<PointSet>(&a)) {
    const auto* xb = std::get_if<PointSet>(&b);
    if (!xb) throw std::runtime_error("equiv: mixed input kinds");
    FiniteEquivalence res = equivalence_decision_finite(*xa, *xb);
    if (!res.equivalent) {
      std::cout << "not equivalent\n";
      return 1;
    }
    std::cout << "equivalent\n";
    if (res.f) {
      std::cout << "witness X -> Y:";
      for (size_t i = 0; i < res.f->size(); ++i) std::cout << " " << i << "->" << (*res.f)[i];
      std::cout << "\nwitness Y -> X:";
      for (size_t i = 0; i < res.g->size(); ++i) std::cout << " " << i << "->" << (*res.g)[i];
      std::cout << "\n";
    }
    return 0;
  }
  if (const auto* sa = std::get_if<Shape2D>(&a)) {
    const auto* sb = std::get_if<Shape2D>(&b);
    if (!sb) throw std::runtime_error("equiv: mixed input kinds");
    ShapeEquivalence res = shape_equivalent(*sa, *sb);
    if (!res.equivalent) {
      std::cout << "not equivalent\n";
      return 1;
    }
    std::cout << "equivalent\n";
    if (res.motion) {
      const RigidMotion2D& m = *res.motion;
      std::cout << "rigid motion [[" << rational_to_string(m.m00) << ", "
                << rational_to_string(m.m01) << "], [" << rational_to_string(m.m10) << ", "
                << rational_to_string(m.m11) << "]] + (" << rational_to_string(m.tx) << ", "
                << rational_to_string(m.ty) << ")\n";
    } else {
      std::cout << "both shapes convex\n";
    }
    return 0;
  }
  throw std::runtime_error("equiv expects two point sets or two shapes");
}

int cmd_core(const std::string& path) {
  SpaceInput s = load_space(path);
  if (const auto* p = std::get_if<PointSet>(&s)) {
    PointSet c = core_finite(*p);
    std::cout << "core points: " << c.size() << "\n";
    for (const auto& v : c.pts) {
      for (size_t i = 0; i < v.size(); ++i)
        std::cout << (i ? "," : "") << rational_to_string(v[i]);
      std::cout << "\n";
    }
    return 0;
  }
  if (const auto* sh = std::get_if<Shape2D>(&s)) {
    CoreDescription core = shape_core(*sh);
    if (core.empty()) {
      std::cout << "core: empty (shape is convex)\n";
      return 0;
    }
    std::cout << "core: hull of the features below, minus the open holes\n";
    for (const auto& f : core.features) {
      if (const auto* d = std::get_if<Disc2>(&f))
        std::cout << "  circle center (" << rational_to_string(d->cx) << ", "
                  << rational_to_string(d->cy) << ") squared radius "
                  << rational_to_string(d->r2) << "\n";
      else if (const auto* poly = std::get_if<Polygon2>(&f)) {
        std::cout << "  polygon boundary";
        for (const auto& v : poly->verts)
          std::cout << " (" << rational_to_string(v.first) << ", "
                    << rational_to_string(v.second) << ")";
        std::cout << "\n";
      } else {
        const auto& seg = std::get<Segment2>(f);
        std::cout << "  segment (" << rational_to_string(seg.a.first) << ", "
                  << rational_to_string(seg.a.second) << ")-(" << rational_to_string(seg.b.first)
                  << ", " << rational_to_string(seg.b.second) << ")\n";
      }
    }
    return 0;
  }
  throw std::runtime_error("core expects a point set or a shape");
}

int cmd_carath(const std::string& path, const std::string& point) {
  SpaceInput s = load_space(path);
  const auto* X = std::get_if<PointSet>(&s);
  if (!X) throw std::runtime_error("carath expects a point set");
  Vec a;
  std::stringstream ss(point);
  std::string cell;
  while (std::getline(ss, cell, ',')) a.push_back(parse_rational(cell));
  if (a.size() != X->dim) throw std::runtime_error("query point dimension mismatch");
  auto cert = closed_caratheodory(*X, a);
  if (!cert) {
    std::cout << "point is not in the convex hull\n";
    return 1;
  }
  std::cout << "subset:";
  for (size_t i : cert->subset) std::cout << " " << i;
  std::cout << "\nbarycentric:";
  for (const Rat& c : cert->barycentric) std::cout << " " << rational_to_string(c);
  std::cout << "\n";
  return 0;
}

int cmd_euler(const std::string& path, long lmax) {
  FiniteMetricSpace G = to_metric(load_space(path), "euler-check");
  EulerReport rep = euler_magnitude_check(G, lmax);
  std::cout << "magnitude series:";
  for (const Int& c : rep.series) std::cout << " " << c;
  std::cout << "\neuler characteristics:";
  for (const Int& c : rep.chi) std::cout << " " << c;
  std::cout << "\n" << (rep.match ? "match" : "MISMATCH") << " up to l=" << lmax << "\n";
  return rep.match ? 0 : 1;
}

// structural verification of the chain homotopy: the insertion step
// commutes with the surviving faces, and removing the inserted entry
// recovers the original chain
int cmd_phi_check(const std::string& path, size_t nmax, const std::string& lmax,
                  unsigned long seed, size_t trials) {
  FiniteMetricSpace X = to_metric(load_space(path), "phi-check");
  AlignednessReport al = alignedness(X);
  if (!al.aligned) {
    std::cerr << "phi-check needs an aligned space\n";
    return 2;
  }
  FiniteOracle O(X);
  ChainComplex C = enumerate_chains(X, nmax, ExactLength(parse_rational(lmax)));
  std::vector<std::vector<size_t>> chains;
  for (const auto& [key, block] : C.blocks)
    if (key.n >= 1)
      for (const auto& c : block.basis) chains.push_back(c);
  if (chains.size() > trials) {
    std::mt19937_64 rng(seed);
    std::shuffle(chains.begin(), chains.end(), rng);
    chains.resize(trials);
  }
  size_t checked = 0, failures = 0;
  for (const auto& c : chains) {
    auto ext = phi_extend(O, c);
    const size_t n = c.size() - 1;
    if (ext) {
      // removing the inserted point recovers the chain
      auto back = ext->second;
      back.erase(back.begin() + static_cast<long>(ext->first));
      if (back != c) ++failures;
    }
    for (size_t j = 1; j < n; ++j) {
      if (!chain_smooth_at(O, c, j)) continue;
      std::vector<size_t> face = c;
      face.erase(face.begin() + static_cast<long>(j));
      auto fext = phi_extend(O, face);
      // expected: drop index j (j < h) or j+1 (j >= h) from the extension
      std::optional<std::vector<size_t>> expect;
      if (ext) {
        size_t drop = j < ext->first ? j : j + 1;
        if (chain_smooth_at(O, ext->second, drop)) {
          auto e = ext->second;
          e.erase(e.begin() + static_cast<long>(drop));
          expect = e;
        }
      }
      std::optional<std::vector<size_t>> got;
      if (fext) got = fext->second;
      if (got != expect) ++failures;
      ++checked;
    }
  }
  std::cout << "chains: " << chains.size() << ", face relations checked: " << checked
            << ", failures: " << failures << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"magnitude homology workbench (exact arithmetic)"};
  app.require_subcommand(1);

  std::string input, input_b, lmax = "4", point;
  size_t nmax = 2, cap = 0, trials = 200;
  long lmax_int = 6;
  unsigned long seed = 0;
  bool ky = false, as_json = false;

  auto* analyze = app.add_subcommand("analyze", "alignedness, inner boundary, adjacency");
  analyze->add_option("input", input)->required();
  analyze->add_flag("--json", as_json);

  auto* homology = app.add_subcommand("homology", "magnitude homology table");
  homology->add_option("input", input)->required();
  homology->add_option("--nmax", nmax);
  homology->add_option("--lmax", lmax);
  homology->add_option("--cap", cap);
  homology->add_flag("--ky", ky, "cross-check ranks against thin-chain counts");
  homology->add_flag("--json", as_json);

  auto* thin = app.add_subcommand("thin", "thin chain bases");
  thin->add_option("input", input)->required();
  thin->add_option("--nmax", nmax);
  thin->add_option("--lmax", lmax);

  auto* equiv = app.add_subcommand("equiv", "magnitude homology equivalence");
  equiv->add_option("input_a", input)->required();
  equiv->add_option("input_b", input_b)->required();

  auto* core = app.add_subcommand("core", "core of a point set or shape");
  core->add_option("input", input)->required();

  auto* carath = app.add_subcommand("carath", "closed Caratheodory certificate");
  carath->add_option("input", input)->required();
  carath->add_option("--point", point, "query point, comma-separated rationals")->required();

  auto* euler = app.add_subcommand("euler-check", "Euler characteristic vs magnitude series");
  euler->add_option("input", input)->required();
  euler->add_option("--lmax", lmax_int);

  auto* phi = app.add_subcommand("phi-check", "chain homotopy structural relations");
  phi->add_option("input", input)->required();
  phi->add_option("--nmax", nmax);
  phi->add_option("--lmax", lmax);
  phi->add_option("--seed", seed);
  phi->add_option("--trials", trials);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(input, as_json);
    if (homology->parsed()) return cmd_homology(input, nmax, lmax, ky, as_json, cap);
    if (thin->parsed()) return cmd_thin(input, nmax, lmax);
    if (equiv->parsed()) return cmd_equiv(input, input_b);
    if (core->parsed()) return cmd_core(input);
    if (carath->parsed()) return cmd_carath(input, point);
    if (euler->parsed()) return cmd_euler(input, lmax_int);
    if (phi->parsed()) return cmd_phi_check(input, nmax, lmax, seed, trials);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
