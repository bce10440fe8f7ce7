#include "tinvis/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace tinvis {

namespace {

std::pair<int, int> ordered(int a, int b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

std::array<int, 3> triple(int a, int b, int c) {
  std::array<int, 3> t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

std::string gadget_role_name(GadgetRole role) {
  switch (role) {
    case GadgetRole::base: return "base";
    case GadgetRole::guard_s: return "s";
    case GadgetRole::guard_r: return "r";
    case GadgetRole::apex_o: return "o";
    case GadgetRole::guard_s_prime: return "s_prime";
    case GadgetRole::guard_r_prime: return "r_prime";
    case GadgetRole::apex_o_prime: return "o_prime";
    case GadgetRole::filler: return "filler";
  }
  return "";
}

bool ReductionInstance::t_has(int a, int b) const {
  return std::binary_search(t_edges.begin(), t_edges.end(), ordered(a, b));
}

bool ReductionInstance::g_has(int a, int b) const {
  return t_has(a, b) || std::binary_search(g_extra.begin(), g_extra.end(), ordered(a, b));
}

std::vector<int> outer_walk(const TriangulationInstance& instance) {
  if (!instance.has_coords)
    throw std::invalid_argument("outer_walk: triangulation carries no coordinates");
  PlanarFaces pf = planar_faces(instance.coords, instance.edges);
  std::vector<int> walk(pf.outer.rbegin(), pf.outer.rend());

  const int n = instance.n;
  std::vector<int> tips;  // walk indices holding endpoint vertices
  for (std::size_t k = 0; k < walk.size(); ++k)
    if (instance.roles[walk[k]] == VertexRole::endpoint) tips.push_back(static_cast<int>(k));
  if (static_cast<int>(tips.size()) != 2 * n)
    throw std::invalid_argument("outer_walk: outer face does not visit every endpoint exactly once");

  // First endpoints have even ids. Rotate so the walk opens with the full
  // first-endpoint run.
  auto is_first = [&](int tip) { return walk[tips[tip]] % 2 == 0; };
  int start = -1;
  for (int k = 0; k < 2 * n; ++k)
    if (is_first(k) && !is_first((k + 2 * n - 1) % (2 * n))) start = k;
  if (start < 0)
    throw std::invalid_argument("outer_walk: first endpoints do not form one contiguous run");
  std::rotate(walk.begin(), walk.begin() + tips[start], walk.end());

  std::vector<int> first_lines, last_lines;
  for (std::size_t k = 0; k < walk.size(); ++k) {
    int v = walk[k];
    if (instance.roles[v] != VertexRole::endpoint) continue;
    if (v % 2 == 0) {
      if (!last_lines.empty())
        throw std::invalid_argument("outer_walk: first endpoints do not form one contiguous run");
      first_lines.push_back(v / 2 + 1);
    } else {
      last_lines.push_back(v / 2 + 1);
    }
  }
  if (first_lines != last_lines)
    throw std::invalid_argument("outer_walk: endpoint runs visit the lines in different orders");
  return walk;
}

ReductionInstance compile_reduction(const TriangulationInstance& base) {
  if (base.n < 3) throw std::invalid_argument("compile_reduction: need at least three lines");
  if (!base.has_coords)
    throw std::invalid_argument("compile_reduction: triangulation carries no coordinates");
  if (check_no_k4(base))
    throw std::invalid_argument("compile_reduction: triangulation edge set contains a K4");

  ReductionInstance ri;
  ri.base = base;
  ri.n = base.n;
  const int n = base.n;
  const int v0 = base.vertex_count();

  std::vector<int> ow = outer_walk(base);
  std::vector<int> tips;
  for (std::size_t k = 0; k < ow.size(); ++k)
    if (base.roles[ow[k]] == VertexRole::endpoint) tips.push_back(static_cast<int>(k));
  for (int k = 0; k < n; ++k) ri.walk_order.push_back(ow[tips[k]] / 2 + 1);

  ri.roles.assign(v0 + 8 * n, GadgetRole::base);
  ri.role_line.assign(v0 + 8 * n, 0);
  ri.gadgets.assign(n, LineGadget{});
  for (int i = 1; i <= n; ++i) {
    LineGadget& g = ri.gadgets[i - 1];
    const int b0 = v0 + 6 * (i - 1);
    g.s = b0;
    g.r = b0 + 1;
    g.o = b0 + 2;
    g.s_prime = b0 + 3;
    g.r_prime = b0 + 4;
    g.o_prime = b0 + 5;
    const GadgetRole tags[6] = {GadgetRole::guard_s,       GadgetRole::guard_r,
                                GadgetRole::apex_o,        GadgetRole::guard_s_prime,
                                GadgetRole::guard_r_prime, GadgetRole::apex_o_prime};
    for (int k = 0; k < 6; ++k) {
      ri.roles[b0 + k] = tags[k];
      ri.role_line[b0 + k] = i;
    }
  }
  for (int k = 0; k < 2 * n; ++k) {
    ri.fillers.push_back(v0 + 6 * n + k);
    ri.roles[v0 + 6 * n + k] = GadgetRole::filler;
  }

  std::set<std::pair<int, int>> tset(base.edges.begin(), base.edges.end());
  std::set<std::array<int, 3>> fset(base.faces.begin(), base.faces.end());
  for (int i = 1; i <= n; ++i) {
    const LineGadget& g = ri.gadgets[i - 1];
    const int a = endpoint_vertex(i, false);
    const int b = endpoint_vertex(i, true);
    const std::pair<int, int> spikes[10] = {
        {a, g.s},       {a, g.r},       {a, g.o},           {g.o, g.s},
        {g.o, g.r},     {b, g.s_prime}, {b, g.r_prime},     {b, g.o_prime},
        {g.o_prime, g.s_prime},         {g.o_prime, g.r_prime}};
    for (auto [x, y] : spikes) tset.insert(ordered(x, y));
    fset.insert(triple(a, g.s, g.o));
    fset.insert(triple(a, g.o, g.r));
    fset.insert(triple(b, g.s_prime, g.o_prime));
    fset.insert(triple(b, g.o_prime, g.r_prime));
  }

  auto gad = [&](int k) -> const LineGadget& { return ri.gadgets[ri.walk_order[k] - 1]; };
  for (int k = 0; k + 1 < n; ++k) {
    tset.insert(ordered(gad(k).r, gad(k + 1).s));
    tset.insert(ordered(gad(k).s_prime, gad(k + 1).r_prime));
  }
  tset.insert(ordered(gad(n - 1).r, gad(0).r_prime));
  tset.insert(ordered(gad(0).s, gad(n - 1).s_prime));

  // Ring regions in walk order: the old boundary between consecutive tips
  // plus the two guards spanning it.
  auto portion = [&](int p0, int p1) {
    std::vector<int> out;
    if (p0 < p1) {
      out.assign(ow.begin() + p0, ow.begin() + p1 + 1);
    } else {
      out.assign(ow.begin() + p0, ow.end());
      out.insert(out.end(), ow.begin(), ow.begin() + p1 + 1);
    }
    return out;
  };
  ri.region_walks.assign(2 * n, {});
  for (int k = 0; k < 2 * n; ++k) {
    std::vector<int> cyc = portion(tips[k], k + 1 < 2 * n ? tips[k + 1] : 0);
    if (k + 1 < n) {
      cyc.push_back(gad(k + 1).s);
      cyc.push_back(gad(k).r);
    } else if (k + 1 == n) {
      cyc.push_back(gad(0).r_prime);
      cyc.push_back(gad(n - 1).r);
    } else if (k + 1 < 2 * n) {
      cyc.push_back(gad(k - n + 1).r_prime);
      cyc.push_back(gad(k - n).s_prime);
    } else {
      cyc.push_back(gad(0).s);
      cyc.push_back(gad(n - 1).s_prime);
    }
    if (std::set<int>(cyc.begin(), cyc.end()).size() != cyc.size())
      throw std::invalid_argument("compile_reduction: ring region boundary revisits a vertex");
    const int f = ri.fillers[k];
    const int sz = static_cast<int>(cyc.size());
    for (int t = 0; t < sz; ++t) {
      tset.insert(ordered(f, cyc[t]));
      fset.insert(triple(f, cyc[t], cyc[(t + 1) % sz]));
    }
    ri.region_walks[k] = std::move(cyc);
  }

  for (int k = 0; k < n; ++k)
    for (int v : {gad(k).s, gad(k).o, gad(k).r}) ri.outer_walk.push_back(v);
  for (int k = 0; k < n; ++k)
    for (int v : {gad(k).r_prime, gad(k).o_prime, gad(k).s_prime}) ri.outer_walk.push_back(v);

  std::set<std::pair<int, int>> gset;
  std::set<int> apexes;
  std::vector<int> total;  // guards and fillers: adjacent to every non-apex
  for (const LineGadget& g : ri.gadgets) {
    for (int v : {g.s, g.r, g.s_prime, g.r_prime}) total.push_back(v);
    apexes.insert(g.o);
    apexes.insert(g.o_prime);
  }
  total.insert(total.end(), ri.fillers.begin(), ri.fillers.end());
  for (int p : total)
    for (int q = 0; q < v0 + 8 * n; ++q) {
      if (q == p || apexes.count(q)) continue;
      auto e = ordered(p, q);
      if (!tset.count(e)) gset.insert(e);
    }
  for (int i = 1; i <= n; ++i) {
    const LineGadget& g = ri.gadgets[i - 1];
    std::vector<int> near = base.paths[i - 1];
    for (int v : {g.s, g.r, g.s_prime, g.r_prime}) near.push_back(v);
    for (int q : near) {
      for (int apex : {g.o, g.o_prime}) {
        auto e = ordered(apex, q);
        if (!tset.count(e)) gset.insert(e);
      }
    }
    gset.insert(ordered(g.o, g.o_prime));
  }

  ri.t_edges.assign(tset.begin(), tset.end());
  ri.g_extra.assign(gset.begin(), gset.end());
  ri.t_faces.assign(fset.begin(), fset.end());
  return ri;
}

ReductionReport check_instance(const ReductionInstance& ri) {
  ReductionReport rep;
  auto fail = [&](const std::string& m) { rep.violations.push_back(m); };
  const int n = ri.n;
  const int v0 = ri.base.vertex_count();
  const int vcount = v0 + 8 * n;

  if (n < 3) fail("fewer than three lines");
  if (ri.vertex_count() != vcount)
    fail("vertex count is " + std::to_string(ri.vertex_count()) + ", expected base plus 8n = " +
         std::to_string(vcount));
  if (static_cast<int>(ri.role_line.size()) != vcount ||
      static_cast<int>(ri.gadgets.size()) != n ||
      static_cast<int>(ri.fillers.size()) != 2 * n ||
      static_cast<int>(ri.region_walks.size()) != 2 * n) {
    fail("role, gadget, or filler tables have wrong sizes");
    return rep;
  }

  std::vector<int> sorted_order = ri.walk_order;
  std::sort(sorted_order.begin(), sorted_order.end());
  for (int i = 0; i < n; ++i)
    if (i >= static_cast<int>(sorted_order.size()) || sorted_order[i] != i + 1) {
      fail("walk order is not a permutation of the lines");
      break;
    }

  for (int v = 0; v < v0 && v < vcount; ++v)
    if (ri.roles[v] != GadgetRole::base) {
      fail("base-range vertex " + std::to_string(v) + " lost its base role");
      break;
    }
  for (int i = 1; i <= n; ++i) {
    const LineGadget& g = ri.gadgets[i - 1];
    const std::pair<int, GadgetRole> want[6] = {
        {g.s, GadgetRole::guard_s},           {g.r, GadgetRole::guard_r},
        {g.o, GadgetRole::apex_o},            {g.s_prime, GadgetRole::guard_s_prime},
        {g.r_prime, GadgetRole::guard_r_prime}, {g.o_prime, GadgetRole::apex_o_prime}};
    for (auto [v, tag] : want)
      if (v < v0 || v >= vcount || ri.roles[v] != tag || ri.role_line[v] != i)
        fail("gadget wiring broken for line " + std::to_string(i));
  }
  for (int f : ri.fillers)
    if (f < v0 || f >= vcount || ri.roles[f] != GadgetRole::filler)
      fail("filler id " + std::to_string(f) + " has wrong role");

  auto well_formed = [&](const std::vector<std::pair<int, int>>& es, const char* name) {
    for (std::size_t k = 0; k < es.size(); ++k) {
      auto [a, b] = es[k];
      if (a < 0 || b >= vcount || a >= b) {
        fail(std::string(name) + " edge list holds an out-of-range or unordered pair");
        return false;
      }
      if (k > 0 && !(es[k - 1] < es[k])) {
        fail(std::string(name) + " edge list is not sorted and unique");
        return false;
      }
    }
    return true;
  };
  if (!well_formed(ri.t_edges, "T") || !well_formed(ri.g_extra, "G-extra")) return rep;
  for (const auto& e : ri.g_extra)
    if (std::binary_search(ri.t_edges.begin(), ri.t_edges.end(), e)) {
      fail("a T edge reappears in the extra visibility list");
      break;
    }

  std::vector<std::set<int>> tadj(vcount), gadj(vcount);
  for (const auto& [a, b] : ri.t_edges) {
    tadj[a].insert(b);
    tadj[b].insert(a);
    gadj[a].insert(b);
    gadj[b].insert(a);
  }
  for (const auto& [a, b] : ri.g_extra) {
    gadj[a].insert(b);
    gadj[b].insert(a);
  }

  // Every T edge lies on exactly two of: a triangle, an outer-walk side.
  std::set<std::array<int, 3>> faces_seen;
  std::map<std::pair<int, int>, int> incidence;
  for (const auto& f : ri.t_faces) {
    auto [a, b, c] = f;
    if (a < 0 || c >= vcount || !(a < b && b < c)) {
      fail("face list holds a malformed triple");
      return rep;
    }
    if (!faces_seen.insert(f).second) fail("duplicate face in T");
    for (auto e : {ordered(a, b), ordered(a, c), ordered(b, c)}) {
      if (!ri.t_has(e.first, e.second)) fail("face uses a non-T edge");
      ++incidence[e];
    }
  }
  const int wn = static_cast<int>(ri.outer_walk.size());
  for (int k = 0; k < wn; ++k)
    ++incidence[ordered(ri.outer_walk[k], ri.outer_walk[(k + 1) % wn])];
  for (const auto& e : ri.t_edges) {
    auto it = incidence.find(e);
    int c = it == incidence.end() ? 0 : it->second;
    if (c != 2)
      fail("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ") lies on " +
           std::to_string(c) + " faces or walk sides, expected 2");
  }

  for (int i = 1; i <= n; ++i) {
    const LineGadget& g = ri.gadgets[i - 1];
    const int a = endpoint_vertex(i, false);
    const int b = endpoint_vertex(i, true);
    if (tadj[g.o] != std::set<int>{a, g.s, g.r})
      fail("apex of line " + std::to_string(i) + " has wrong T neighbors");
    if (tadj[g.o_prime] != std::set<int>{b, g.s_prime, g.r_prime})
      fail("primed apex of line " + std::to_string(i) + " has wrong T neighbors");
    if (!ri.g_has(g.o, g.o_prime) || ri.t_has(g.o, g.o_prime))
      fail("apex pair of line " + std::to_string(i) + " is not a G-only edge");
    std::set<int> want(ri.base.paths[i - 1].begin(), ri.base.paths[i - 1].end());
    for (int v : {g.s, g.r, g.s_prime, g.r_prime, g.o_prime}) want.insert(v);
    if (gadj[g.o] != want) fail("apex of line " + std::to_string(i) + " has wrong G neighbors");
    std::set<int> wantp(ri.base.paths[i - 1].begin(), ri.base.paths[i - 1].end());
    for (int v : {g.s, g.r, g.s_prime, g.r_prime, g.o}) wantp.insert(v);
    if (gadj[g.o_prime] != wantp)
      fail("primed apex of line " + std::to_string(i) + " has wrong G neighbors");
  }

  std::set<int> total, apexes;
  for (const LineGadget& g : ri.gadgets) {
    for (int v : {g.s, g.r, g.s_prime, g.r_prime}) total.insert(v);
    apexes.insert(g.o);
    apexes.insert(g.o_prime);
  }
  for (int f : ri.fillers) total.insert(f);
  for (int p : total) {
    std::set<int> want;
    for (int q = 0; q < vcount; ++q)
      if (q != p && !apexes.count(q)) want.insert(q);
    if (ri.roles[p] != GadgetRole::filler) {
      const LineGadget& g = ri.gadgets[ri.role_line[p] - 1];
      want.insert(g.o);
      want.insert(g.o_prime);
    }
    if (gadj[p] != want)
      fail("guard or filler " + std::to_string(p) + " does not see exactly the non-apex world");
  }

  for (const auto& [a, b] : ri.g_extra) {
    bool a_mid = a < v0 && ri.base.roles[a] == VertexRole::middle;
    bool b_mid = b < v0 && ri.base.roles[b] == VertexRole::middle;
    if ((a_mid && !total.count(b)) || (b_mid && !total.count(a))) {
      fail("a middle vertex is G-visible from outside the guard and filler set");
      break;
    }
  }

  for (int k = 0; k < 2 * n; ++k) {
    const int f = ri.fillers[k];
    const auto& cyc = ri.region_walks[k];
    const int sz = static_cast<int>(cyc.size());
    if (std::set<int>(cyc.begin(), cyc.end()).size() != cyc.size())
      fail("region walk " + std::to_string(k) + " revisits a vertex");
    if (tadj[f] != std::set<int>(cyc.begin(), cyc.end()))
      fail("filler " + std::to_string(f) + " is not starred to exactly its region walk");
    for (int t = 0; t < sz; ++t) {
      int u = cyc[t], v = cyc[(t + 1) % sz];
      if (!ri.t_has(u, v)) fail("region walk " + std::to_string(k) + " uses a non-T edge");
      if (!faces_seen.count(triple(f, u, v)))
        fail("region walk " + std::to_string(k) + " is missing a fan face");
    }
  }

  if (wn != 6 * n) {
    fail("outer walk has " + std::to_string(wn) + " vertices, expected 6n");
    return rep;
  }
  if (std::set<int>(ri.outer_walk.begin(), ri.outer_walk.end()).size() !=
      ri.outer_walk.size())
    fail("outer walk revisits a vertex");
  for (int k = 0; k < n; ++k) {
    const LineGadget& g = ri.gadgets[ri.walk_order[k] - 1];
    const int expect_a[3] = {g.s, g.o, g.r};
    const int expect_b[3] = {g.r_prime, g.o_prime, g.s_prime};
    for (int t = 0; t < 3; ++t) {
      if (ri.outer_walk[3 * k + t] != expect_a[t])
        fail("outer walk breaks the s,o,r pattern at line " + std::to_string(ri.walk_order[k]));
      if (ri.outer_walk[3 * n + 3 * k + t] != expect_b[t])
        fail("outer walk breaks the r',o',s' pattern at line " + std::to_string(ri.walk_order[k]));
    }
  }
  for (int k = 0; k < wn; ++k)
    if (!ri.t_has(ri.outer_walk[k], ri.outer_walk[(k + 1) % wn]))
      fail("outer walk side is not a T edge");
  for (int k = 0; k < wn; ++k)
    for (int j = k + 2; j < wn; ++j) {
      if (k == 0 && j == wn - 1) continue;
      if (ri.t_has(ri.outer_walk[k], ri.outer_walk[j]))
        fail("outer walk has a T chord between positions " + std::to_string(k) + " and " +
             std::to_string(j));
    }

  return rep;
}

}  // namespace tinvis
