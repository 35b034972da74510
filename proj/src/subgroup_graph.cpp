#include "freefix/subgroup_graph.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <unordered_map>

namespace freefix {

namespace {

// Union-find folding workspace. Adjacency entries may go stale while merges
// are pending; every read resolves through find().
struct Folder {
  int deg;
  std::vector<std::int32_t> adj;
  std::vector<std::int32_t> uf;
  std::vector<std::int32_t> weight;
  std::vector<std::pair<std::int32_t, std::int32_t>> pending;

  explicit Folder(int rank) : deg(2 * rank) {}

  int make_vertex() {
    int id = static_cast<int>(uf.size());
    uf.push_back(id);
    weight.push_back(1);
    adj.resize(adj.size() + static_cast<std::size_t>(std::max(deg, 1)), -1);
    return id;
  }

  std::int32_t& at(int v, int d) {
    return adj[static_cast<std::size_t>(v) * std::max(deg, 1) + d];
  }

  int find(int v) {
    while (uf[v] != v) {
      uf[v] = uf[uf[v]];
      v = uf[v];
    }
    return v;
  }

  void add_edge(int u, Atom a, int v) {
    u = find(u);
    v = find(v);
    int d = atom_ordinal(a);
    int di = atom_ordinal(atom_inverse(a));
    int w = at(u, d) < 0 ? -1 : find(at(u, d));
    if (w < 0) {
      at(u, d) = v;
      int z = at(v, di) < 0 ? -1 : find(at(v, di));
      if (z < 0) {
        at(v, di) = u;
      } else if (z != u) {
        pending.emplace_back(z, u);
      }
    } else if (w != v) {
      pending.emplace_back(w, v);
    }
  }

  void fold_all() {
    while (!pending.empty()) {
      auto [a, b] = pending.back();
      pending.pop_back();
      int x = find(a), y = find(b);
      if (x == y) continue;
      if (weight[x] < weight[y]) std::swap(x, y);
      uf[y] = x;
      weight[x] += weight[y];
      for (int d = 0; d < deg; ++d) {
        int ny = at(y, d);
        if (ny < 0) continue;
        ny = find(ny);
        int nx = at(x, d) < 0 ? -1 : find(at(x, d));
        if (nx < 0) {
          at(x, d) = ny;
        } else if (nx != ny) {
          pending.emplace_back(nx, ny);
        }
      }
    }
  }
};

int vertex_degree(const std::vector<std::int32_t>& adj, int deg, int v) {
  int n = 0;
  for (int d = 0; d < deg; ++d) {
    if (adj[static_cast<std::size_t>(v) * deg + d] >= 0) ++n;
  }
  return n;
}

// Removes degree <= 1 vertices (except `protect` when >= 0), in place.
// Returns the alive mask.
std::vector<char> peel(std::vector<std::int32_t>& adj, int deg, int nv,
                       int protect) {
  std::vector<char> alive(nv, 1);
  std::vector<int> degree(nv);
  std::vector<int> stack;
  for (int v = 0; v < nv; ++v) {
    degree[v] = vertex_degree(adj, deg, v);
    if (v != protect && degree[v] <= 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (!alive[v] || v == protect || degree[v] > 1) continue;
    alive[v] = 0;
    for (int d = 0; d < deg; ++d) {
      auto& slot = adj[static_cast<std::size_t>(v) * deg + d];
      int w = slot;
      if (w < 0) continue;
      slot = -1;
      auto& back = adj[static_cast<std::size_t>(w) * deg +
                       atom_ordinal(atom_inverse(atom_from_ordinal(d)))];
      if (back == v) back = -1;
      --degree[v];
      --degree[w];
      if (alive[w] && w != protect && degree[w] <= 1) stack.push_back(w);
    }
  }
  return alive;
}

void append_int(std::string& s, int x) {
  s += std::to_string(x);
  s.push_back(',');
}

}  // namespace

SubgroupGraph SubgroupGraph::fold(std::span<const Word> gens, int rank) {
  if (rank < 0) fail(ErrorCode::kInput, "negative rank");
  Folder f(rank);
  int base = f.make_vertex();
  for (const Word& g : gens) {
    if (g.rank() != rank) {
      fail(ErrorCode::kRankMismatch, "generator over wrong rank");
    }
    if (g.empty()) continue;
    int cur = base;
    for (std::size_t i = 0; i < g.size(); ++i) {
      int next = (i + 1 == g.size()) ? base : f.make_vertex();
      f.add_edge(cur, g.at(i), next);
      f.fold_all();
      cur = f.find(next);
      base = f.find(base);
    }
  }
  f.fold_all();

  int n = static_cast<int>(f.uf.size());
  std::vector<std::int32_t> id(n, -1);
  int nv = 0;
  for (int v = 0; v < n; ++v) {
    if (f.find(v) == v) id[v] = nv++;
  }
  std::vector<std::int32_t> adj(static_cast<std::size_t>(nv) * 2 * rank, -1);
  for (int v = 0; v < n; ++v) {
    if (id[v] < 0) continue;
    for (int d = 0; d < 2 * rank; ++d) {
      int w = f.at(v, d);
      if (w >= 0) {
        adj[static_cast<std::size_t>(id[v]) * 2 * rank + d] = id[f.find(w)];
      }
    }
  }
  return from_raw(rank, nv, std::move(adj), id[f.find(base)], true);
}

SubgroupGraph SubgroupGraph::full_rose(int rank) {
  std::vector<std::int32_t> adj(static_cast<std::size_t>(2) * rank, 0);
  return from_raw(rank, 1, std::move(adj), 0, true);
}

SubgroupGraph SubgroupGraph::trivial(int rank) {
  std::vector<std::int32_t> adj(static_cast<std::size_t>(2) * rank, -1);
  return from_raw(rank, 1, std::move(adj), 0, true);
}

SubgroupGraph SubgroupGraph::from_raw(int rank, int nv,
                                      std::vector<std::int32_t> adj, int base,
                                      bool keep_base) {
  int deg = 2 * rank;
  auto alive = peel(adj, std::max(deg, 1), nv, keep_base ? base : -1);
  SubgroupGraph g;
  g.rank_ = rank;

  std::vector<std::int32_t> order;  // BFS from base, directions ascending
  std::vector<std::int32_t> newid(nv, -1);
  order.reserve(nv);
  newid[base] = 0;
  order.push_back(base);
  for (std::size_t head = 0; head < order.size(); ++head) {
    int v = order[head];
    for (int d = 0; d < deg; ++d) {
      int w = adj[static_cast<std::size_t>(v) * deg + d];
      if (w >= 0 && alive[w] && newid[w] < 0) {
        newid[w] = static_cast<int>(order.size());
        order.push_back(w);
      }
    }
  }
  g.nv_ = static_cast<int>(order.size());
  g.adj_.assign(static_cast<std::size_t>(g.nv_) * std::max(deg, 1), -1);
  g.parent_.assign(g.nv_, -1);
  g.parent_atom_.assign(g.nv_, 0);
  for (int v = 0; v < g.nv_; ++v) {
    int old = order[v];
    for (int d = 0; d < deg; ++d) {
      int w = adj[static_cast<std::size_t>(old) * deg + d];
      if (w < 0 || !alive[w]) continue;
      int nw = newid[w];
      g.adj_[static_cast<std::size_t>(v) * deg + d] = nw;
      if (nw != 0 && g.parent_[nw] < 0 && nw > v) {
        g.parent_[nw] = v;
        g.parent_atom_[nw] = atom_from_ordinal(d);
      }
    }
  }
  g.finish();
  return g;
}

void SubgroupGraph::finish() {
  int deg = 2 * rank_;
  key_.clear();
  append_int(key_, rank_);
  append_int(key_, nv_);
  for (std::int32_t x : adj_) append_int(key_, x);

  auto mask = core_mask();
  int first_core = -1;
  for (int v = 0; v < nv_ && first_core < 0; ++v) {
    if (mask[v]) first_core = v;
  }
  if (first_core < 0) {
    class_key_.clear();
    anchor_ = 0;
    anchor_path_ = Word(rank_);
    return;
  }

  // Canonical basepoint-free form: least BFS encoding over all anchors.
  std::string best;
  int best_anchor = -1;
  std::vector<std::int32_t> newid(nv_);
  std::vector<std::int32_t> order;
  for (int a = 0; a < nv_; ++a) {
    if (!mask[a]) continue;
    std::fill(newid.begin(), newid.end(), -1);
    order.clear();
    newid[a] = 0;
    order.push_back(a);
    std::string enc;
    append_int(enc, rank_);
    for (std::size_t head = 0; head < order.size(); ++head) {
      int v = order[head];
      for (int d = 0; d < deg; ++d) {
        int w = adj_[static_cast<std::size_t>(v) * deg + d];
        if (w < 0 || !mask[w]) {
          append_int(enc, -1);
          continue;
        }
        if (newid[w] < 0) {
          newid[w] = static_cast<int>(order.size());
          order.push_back(w);
        }
        append_int(enc, newid[w]);
      }
    }
    if (best_anchor < 0 || enc < best) {
      best = std::move(enc);
      best_anchor = a;
    }
  }
  class_key_ = best;
  anchor_ = best_anchor;

  std::vector<Atom> path;
  for (int v = anchor_; v != 0; v = parent_[v]) path.push_back(parent_atom_[v]);
  std::reverse(path.begin(), path.end());
  anchor_path_ = Word(rank_, path);
}

std::vector<char> SubgroupGraph::core_mask() const {
  auto adj = adj_;
  return peel(adj, std::max(2 * rank_, 1), nv_, -1);
}

int SubgroupGraph::edge_count() const {
  int slots = 0;
  for (std::int32_t x : adj_) {
    if (x >= 0) ++slots;
  }
  return slots / 2;
}

int SubgroupGraph::rank() const { return edge_count() - nv_ + 1; }

bool SubgroupGraph::is_full_rose() const {
  return nv_ == 1 && edge_count() == rank_;
}

int SubgroupGraph::walk_word(int v, const Word& w) const {
  for (Atom a : w.atoms()) {
    v = walk(v, a);
    if (v < 0) return -1;
  }
  return v;
}

bool SubgroupGraph::member(const Word& w) const {
  if (w.rank() != rank_) fail(ErrorCode::kRankMismatch, "member: rank mismatch");
  return walk_word(0, w) == 0;
}

std::vector<Word> SubgroupGraph::basis() const {
  int deg = 2 * rank_;
  // tree path words base -> v
  std::vector<std::vector<Atom>> path(nv_);
  for (int v = 1; v < nv_; ++v) {
    path[v] = path[parent_[v]];
    path[v].push_back(parent_atom_[v]);
  }
  std::vector<Word> out;
  for (int v = 0; v < nv_; ++v) {
    for (int d = 0; d < deg; ++d) {
      int w = adj_[static_cast<std::size_t>(v) * deg + d];
      if (w < 0) continue;
      Atom a = atom_from_ordinal(d);
      bool tree = (parent_[w] == v && parent_atom_[w] == a) ||
                  (parent_[v] == w && parent_atom_[v] == atom_inverse(a));
      if (tree) continue;
      int di = atom_ordinal(atom_inverse(a));
      if (std::pair(v, d) < std::pair(w, di)) {
        std::vector<Atom> atoms = path[v];
        atoms.push_back(a);
        for (auto it = path[w].rbegin(); it != path[w].rend(); ++it) {
          atoms.push_back(atom_inverse(*it));
        }
        out.emplace_back(rank_, atoms);
      }
    }
  }
  return out;
}

std::optional<Word> SubgroupGraph::spell(const Word& w) const {
  if (w.rank() != rank_) fail(ErrorCode::kRankMismatch, "spell: rank mismatch");
  int deg = 2 * rank_;
  std::unordered_map<std::int64_t, int> index;  // (v,d) -> signed basis id
  int next = 1;
  for (int v = 0; v < nv_; ++v) {
    for (int d = 0; d < deg; ++d) {
      int u = adj_[static_cast<std::size_t>(v) * deg + d];
      if (u < 0) continue;
      Atom a = atom_from_ordinal(d);
      bool tree = (parent_[u] == v && parent_atom_[u] == a) ||
                  (parent_[v] == u && parent_atom_[v] == atom_inverse(a));
      if (tree) continue;
      int di = atom_ordinal(atom_inverse(a));
      if (std::pair(v, d) < std::pair(u, di)) {
        index[static_cast<std::int64_t>(v) * deg + d] = next;
        index[static_cast<std::int64_t>(u) * deg + di] = -next;
        ++next;
      }
    }
  }
  std::vector<Atom> spelled;
  int v = 0;
  for (Atom a : w.atoms()) {
    int d = atom_ordinal(a);
    int u = adj_[static_cast<std::size_t>(v) * deg + d];
    if (u < 0) return std::nullopt;
    auto it = index.find(static_cast<std::int64_t>(v) * deg + d);
    if (it != index.end()) {
      spelled.push_back(static_cast<Atom>(it->second));
    }
    v = u;
  }
  if (v != 0) return std::nullopt;
  return Word(next - 1, spelled);
}

std::vector<PullbackComponent> SubgroupGraph::pullback(
    const SubgroupGraph& h, const SubgroupGraph& k) {
  if (h.rank_ != k.rank_) {
    fail(ErrorCode::kRankMismatch, "pullback: rank mismatch");
  }
  int deg = 2 * h.rank_;
  auto pid = [&](int u, int v) {
    return static_cast<std::int64_t>(u) * k.nv_ + v;
  };

  std::vector<char> visited(static_cast<std::size_t>(h.nv_) * k.nv_, 0);
  std::vector<PullbackComponent> others;
  std::optional<PullbackComponent> based;

  std::vector<std::int64_t> comp;
  for (std::int64_t start = 0;
       start < static_cast<std::int64_t>(h.nv_) * k.nv_; ++start) {
    if (visited[start]) continue;
    comp.clear();
    comp.push_back(start);
    visited[start] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      int u = static_cast<int>(comp[head] / k.nv_);
      int v = static_cast<int>(comp[head] % k.nv_);
      for (int d = 0; d < deg; ++d) {
        Atom a = atom_from_ordinal(d);
        int uu = h.walk(u, a);
        int vv = k.walk(v, a);
        if (uu < 0 || vv < 0) continue;
        auto q = pid(uu, vv);
        if (!visited[q]) {
          visited[q] = 1;
          comp.push_back(q);
        }
      }
    }

    // local subgraph over the component
    std::unordered_map<std::int64_t, int> local;
    local.reserve(comp.size() * 2);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      local[comp[i]] = static_cast<int>(i);
    }
    int cn = static_cast<int>(comp.size());
    std::vector<std::int32_t> cadj(
        static_cast<std::size_t>(cn) * std::max(deg, 1), -1);
    for (int i = 0; i < cn; ++i) {
      int u = static_cast<int>(comp[i] / k.nv_);
      int v = static_cast<int>(comp[i] % k.nv_);
      for (int d = 0; d < deg; ++d) {
        Atom a = atom_from_ordinal(d);
        int uu = h.walk(u, a);
        int vv = k.walk(v, a);
        if (uu < 0 || vv < 0) continue;
        cadj[static_cast<std::size_t>(i) * deg + d] = local[pid(uu, vv)];
      }
    }

    if (local.count(0)) {
      PullbackComponent c{from_raw(h.rank_, cn, cadj, local[0], true),
                          Word(h.rank_), true};
      based = std::move(c);
      continue;
    }

    // core the component; drop contractible ones
    auto cadj2 = cadj;
    auto alive = peel(cadj2, std::max(deg, 1), cn, -1);
    int anchor_local = -1;
    for (int i = 0; i < cn && anchor_local < 0; ++i) {
      if (alive[i]) anchor_local = i;
    }
    if (anchor_local < 0) continue;

    int au = static_cast<int>(comp[anchor_local] / k.nv_);
    int av = static_cast<int>(comp[anchor_local] % k.nv_);
    Word p = h.tree_path(au);
    Word q = k.tree_path(av);
    Word witness = concat(q, invert(p));
    PullbackComponent c{
        from_raw(h.rank_, cn, std::move(cadj2), anchor_local, true),
        std::move(witness), false};
    others.push_back(std::move(c));
  }

  std::sort(others.begin(), others.end(),
            [](const PullbackComponent& a, const PullbackComponent& b) {
              if (a.graph.class_key() != b.graph.class_key()) {
                return a.graph.class_key() < b.graph.class_key();
              }
              return shortlex_less(a.witness, b.witness);
            });
  std::vector<PullbackComponent> out;
  out.push_back(std::move(*based));  // component of (0,0) always exists
  for (auto& c : others) out.push_back(std::move(c));
  return out;
}

SubgroupGraph SubgroupGraph::intersect(const SubgroupGraph& k) const {
  if (rank_ != k.rank_) fail(ErrorCode::kRankMismatch, "intersect: rank mismatch");
  int deg = 2 * rank_;
  auto pid = [&](int u, int v) {
    return static_cast<std::int64_t>(u) * k.nv_ + v;
  };
  std::unordered_map<std::int64_t, int> local;
  std::vector<std::int64_t> comp{0};
  local[0] = 0;
  for (std::size_t head = 0; head < comp.size(); ++head) {
    int u = static_cast<int>(comp[head] / k.nv_);
    int v = static_cast<int>(comp[head] % k.nv_);
    for (int d = 0; d < deg; ++d) {
      Atom a = atom_from_ordinal(d);
      int uu = walk(u, a);
      int vv = k.walk(v, a);
      if (uu < 0 || vv < 0) continue;
      auto q = pid(uu, vv);
      if (!local.count(q)) {
        local[q] = static_cast<int>(comp.size());
        comp.push_back(q);
      }
    }
  }
  int cn = static_cast<int>(comp.size());
  std::vector<std::int32_t> cadj(static_cast<std::size_t>(cn) * std::max(deg, 1),
                                 -1);
  for (int i = 0; i < cn; ++i) {
    int u = static_cast<int>(comp[i] / k.nv_);
    int v = static_cast<int>(comp[i] % k.nv_);
    for (int d = 0; d < deg; ++d) {
      Atom a = atom_from_ordinal(d);
      int uu = walk(u, a);
      int vv = k.walk(v, a);
      if (uu < 0 || vv < 0) continue;
      cadj[static_cast<std::size_t>(i) * deg + d] = local[pid(uu, vv)];
    }
  }
  return from_raw(rank_, cn, std::move(cadj), 0, true);
}

Word SubgroupGraph::tree_path(int v) const {
  std::vector<Atom> path;
  for (; v != 0; v = parent_[v]) path.push_back(parent_atom_[v]);
  std::reverse(path.begin(), path.end());
  return Word(rank_, path);
}

std::optional<Word> SubgroupGraph::conjugator_to(
    const SubgroupGraph& other) const {
  if (rank_ != other.rank_) {
    fail(ErrorCode::kRankMismatch, "conjugator_to: rank mismatch");
  }
  if (class_key_ != other.class_key_) return std::nullopt;
  return concat(anchor_path_, invert(other.anchor_path_));
}

SubgroupGraph SubgroupGraph::class_representative() const {
  auto mask = core_mask();
  bool any = false;
  for (char c : mask) any = any || c;
  if (!any) return *this;
  return from_raw(rank_, nv_, adj_, anchor_, true);
}

int SubgroupGraph::cyclic_intersection_index(const Word& x) const {
  if (x.empty()) fail(ErrorCode::kDomain, "cyclic intersection of identity");
  auto [core, conj] = cyclic_reduce(x);
  int u = walk_word(0, conj);
  if (u < 0) return 0;
  int v = u;
  for (int m = 1; m <= nv_; ++m) {
    v = walk_word(v, core);
    if (v < 0) return 0;
    if (v == u) return m;
  }
  return 0;  // orbit cycled without returning to u
}

SubgroupGraph::PurityReport SubgroupGraph::purity_check(int bound) const {
  PurityReport report;
  report.bound = bound;
  int deg = 2 * rank_;

  // Witnesses x = c z c^-1 with z cyclically reduced. x^m in H forces the
  // c-path from the basepoint and the z-orbit to exist, so both searches run
  // over graph paths only.
  std::vector<Atom> cbuf, zbuf;
  // DFS over z-paths from u; returns true when a witness was found.
  auto try_z = [&](auto&& self, int zlen, int vcur, int u) -> bool {
    if (static_cast<int>(zbuf.size()) == zlen) {
      if (zbuf.front() == atom_inverse(zbuf.back())) return false;
      if (!cbuf.empty()) {
        if (cbuf.back() == atom_inverse(zbuf.front())) return false;
        if (zbuf.back() == cbuf.back()) return false;
      }
      // proper powers are skipped
      for (int p = 1; p < zlen; ++p) {
        if (zlen % p != 0) continue;
        bool period = true;
        for (int i = p; i < zlen && period; ++i) {
          period = zbuf[i] == zbuf[i - p];
        }
        if (period) return false;
      }
      Word z(rank_, zbuf);
      int v = vcur;
      for (int m = 1; v >= 0 && m <= nv_; ++m) {
        if (v == u) {
          if (m == 1) return false;  // x itself is a member
          Word c(rank_, cbuf);
          Word x = concat(concat(c, z), invert(c));
          if (shortlex_less(invert(x), x)) return false;
          report.impure = true;
          report.witness = x;
          report.power = m;
          return true;
        }
        v = walk_word(v, z);
      }
      return false;
    }
    for (int d = 0; d < deg; ++d) {
      Atom a = atom_from_ordinal(d);
      if (!zbuf.empty() && zbuf.back() == atom_inverse(a)) continue;
      int w = walk(vcur, a);
      if (w < 0) continue;
      zbuf.push_back(a);
      if (self(self, zlen, w, u)) return true;
      zbuf.pop_back();
    }
    return false;
  };
  auto try_c = [&](auto&& self, int clen, int zlen, int vcur) -> bool {
    if (static_cast<int>(cbuf.size()) == clen) {
      zbuf.clear();
      // z starts one step past the end of c
      return try_z(try_z, zlen, vcur, vcur);
    }
    for (int d = 0; d < deg; ++d) {
      Atom a = atom_from_ordinal(d);
      if (!cbuf.empty() && cbuf.back() == atom_inverse(a)) continue;
      int w = walk(vcur, a);
      if (w < 0) continue;
      cbuf.push_back(a);
      if (self(self, clen, zlen, w)) return true;
      cbuf.pop_back();
    }
    return false;
  };

  for (int xlen = 1; xlen <= bound && !report.impure; ++xlen) {
    for (int clen = 0; 2 * clen + 1 <= xlen && !report.impure; ++clen) {
      int zlen = xlen - 2 * clen;
      cbuf.clear();
      try_c(try_c, clen, zlen, 0);
    }
  }
  return report;
}

SubgroupGraph::InertiaReport SubgroupGraph::inertia_sample(
    int trials, int gen_len_bound, std::uint64_t seed) const {
  InertiaReport report;
  report.trials = trials;
  report.gen_len_bound = gen_len_bound;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  int deg = 2 * rank_;
  if (deg == 0) return report;
  for (int t = 0; t < trials; ++t) {
    int ngens = 1 + static_cast<int>(rng() % 3);
    std::vector<Word> gens;
    gens.reserve(ngens);
    for (int i = 0; i < ngens; ++i) {
      int len = 1 + static_cast<int>(rng() % std::max(gen_len_bound, 1));
      std::vector<Atom> atoms;
      for (int j = 0; j < len; ++j) {
        Atom a;
        if (j == 0) {
          a = atom_from_ordinal(static_cast<int>(rng() % deg));
        } else {
          int pick = static_cast<int>(rng() % (deg - 1));
          int banned = atom_ordinal(atom_inverse(atoms.back()));
          a = atom_from_ordinal(pick >= banned ? pick + 1 : pick);
        }
        atoms.push_back(a);
      }
      gens.emplace_back(rank_, atoms);
    }
    SubgroupGraph k = fold(gens, rank_);
    SubgroupGraph meet = intersect(k);
    if (meet.rank() > k.rank()) {
      report.violations.push_back({gens, k.rank(), meet.rank()});
    }
  }
  return report;
}

SubgroupGraph::CosetBoundReport SubgroupGraph::coset_displacement_check(
    const Word& h, std::span<const Word> us) const {
  if (h.empty()) fail(ErrorCode::kPrecondition, "h must be non-trivial");
  if (h.rank() != rank_) {
    fail(ErrorCode::kRankMismatch, "coset check: rank mismatch");
  }
  auto mask = core_mask();
  bool any = false;
  for (char c : mask) any = any || c;
  if (!any) fail(ErrorCode::kPrecondition, "subgroup is trivial");

  // distance to the core inside the based graph
  std::vector<int> dist(nv_, -1);
  std::queue<int> bfs;
  for (int v = 0; v < nv_; ++v) {
    if (mask[v]) {
      dist[v] = 0;
      bfs.push(v);
    }
  }
  int deg = 2 * rank_;
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (int d = 0; d < deg; ++d) {
      int w = walk(v, atom_from_ordinal(d));
      if (w >= 0 && dist[w] < 0) {
        dist[w] = dist[v] + 1;
        bfs.push(w);
      }
    }
  }

  // lazily grown Schreier cover: fresh tree vertices hang off the graph
  std::unordered_map<std::int64_t, int> ext;
  std::vector<int> ext_dist;
  auto step = [&](int v, Atom a) {
    if (v < nv_) {
      int w = walk(v, a);
      if (w >= 0) return w;
    }
    auto key = static_cast<std::int64_t>(v) * deg + atom_ordinal(a);
    auto it = ext.find(key);
    if (it != ext.end()) return it->second;
    int fresh = nv_ + static_cast<int>(ext_dist.size());
    int depth = (v < nv_ ? dist[v] : ext_dist[v - nv_]) + 1;
    ext_dist.push_back(depth);
    ext[key] = fresh;
    ext[static_cast<std::int64_t>(fresh) * deg +
        atom_ordinal(atom_inverse(a))] = v;
    return fresh;
  };
  auto walk_cover = [&](int v, const Word& w) {
    for (Atom a : w.atoms()) v = step(v, a);
    return v;
  };

  CosetBoundReport report;
  report.ok = true;
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (us[i].rank() != rank_) {
      fail(ErrorCode::kRankMismatch, "coset check: conjugator rank mismatch");
    }
    int v = walk_cover(0, invert(us[i]));
    if (walk_cover(v, h) != v) {
      fail(ErrorCode::kPrecondition,
           "h^{u_" + std::to_string(i) + "} is not in the subgroup");
    }
    int d = v < nv_ ? dist[v] : ext_dist[v - nv_];
    report.distances.push_back(d);
    if (2 * d > static_cast<int>(h.size()) && report.failing < 0) {
      report.ok = false;
      report.failing = static_cast<int>(i);
    }
  }
  return report;
}

std::optional<Word> SubgroupGraph::conjugate_into(
    const SubgroupGraph& k) const {
  if (rank_ != k.rank_) {
    fail(ErrorCode::kRankMismatch, "conjugate_into: rank mismatch");
  }
  auto mask = core_mask();
  bool any = false;
  for (char c : mask) any = any || c;
  if (!any) return Word(rank_);  // trivial subgroup embeds anywhere

  auto kmask = k.core_mask();
  int deg = 2 * rank_;
  std::vector<int> image(nv_);
  std::vector<int> stack;
  for (int t = 0; t < k.nv_; ++t) {
    if (!kmask[t]) continue;
    std::fill(image.begin(), image.end(), -1);
    image[anchor_] = t;
    stack.assign(1, anchor_);
    bool ok = true;
    while (ok && !stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int d = 0; d < deg && ok; ++d) {
        Atom a = atom_from_ordinal(d);
        int w = walk(v, a);
        if (w < 0 || !mask[w]) continue;
        int tw = k.walk(image[v], a);
        if (tw < 0 || !kmask[tw]) {
          ok = false;
        } else if (image[w] < 0) {
          image[w] = tw;
          stack.push_back(w);
        } else if (image[w] != tw) {
          ok = false;
        }
      }
    }
    if (ok) {
      return concat(anchor_path_, invert(k.tree_path(t)));
    }
  }
  return std::nullopt;
}

std::optional<Word> SubgroupGraph::coset_solve(const Word& x0,
                                               const Word& z) const {
  if (x0.rank() != rank_ || z.rank() != rank_) {
    fail(ErrorCode::kRankMismatch, "coset_solve: rank mismatch");
  }
  if (z.empty()) {
    if (member(x0)) return x0;
    return std::nullopt;
  }
  int deg = 2 * rank_;

  // Two-point automaton for the coset x0<z>: the based graph of <z> with a
  // path spelling x0 glued into its basepoint, folded. Folding preserves the
  // set of elements spelled by start -> mark paths, which is exactly x0<z>.
  SubgroupGraph gz = fold(std::span<const Word>(&z, 1), rank_);
  Folder f(rank_);
  std::vector<int> node(gz.nv_);
  for (int v = 0; v < gz.nv_; ++v) node[v] = f.make_vertex();
  for (int v = 0; v < gz.nv_; ++v) {
    for (int d = 0; d < deg; d += 2) {  // positive direction once per edge
      int w = gz.adj_[static_cast<std::size_t>(v) * deg + d];
      if (w >= 0) f.add_edge(node[v], atom_from_ordinal(d), node[w]);
    }
  }
  f.fold_all();
  int start;
  if (x0.empty()) {
    start = f.find(node[0]);
  } else {
    start = f.make_vertex();
    int cur = start;
    for (std::size_t i = 0; i < x0.size(); ++i) {
      int next = (i + 1 == x0.size()) ? f.find(node[0]) : f.make_vertex();
      f.add_edge(cur, x0.at(i), next);
      f.fold_all();
      cur = f.find(next);
    }
    start = f.find(start);
  }
  int mark = f.find(node[0]);

  int n = static_cast<int>(f.uf.size());
  std::vector<std::int32_t> id(n, -1);
  int nb = 0;
  for (int v = 0; v < n; ++v) {
    if (f.find(v) == v) id[v] = nb++;
  }
  std::vector<std::int32_t> badj(static_cast<std::size_t>(nb) * deg, -1);
  for (int v = 0; v < n; ++v) {
    if (id[v] < 0) continue;
    for (int d = 0; d < deg; ++d) {
      int w = f.at(v, d);
      if (w >= 0) {
        badj[static_cast<std::size_t>(id[v]) * deg + d] = id[f.find(w)];
      }
    }
  }

  // Product reachability (start, base) -> (mark, base); a common path means
  // a common element since both factors are folded.
  int total = nb * nv_;
  int src = id[start] * nv_ + 0;
  int dst = id[mark] * nv_ + 0;
  std::vector<std::int32_t> pred_state(total, -1);
  std::vector<Atom> pred_atom(total, 0);
  std::vector<char> seen(total, 0);
  std::queue<int> queue;
  seen[src] = 1;
  queue.push(src);
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop();
    if (s == dst) break;
    int b = s / nv_, v = s % nv_;
    for (int d = 0; d < deg; ++d) {
      int b2 = badj[static_cast<std::size_t>(b) * deg + d];
      int v2 = adj_[static_cast<std::size_t>(v) * deg + d];
      if (b2 < 0 || v2 < 0) continue;
      int s2 = b2 * nv_ + v2;
      if (seen[s2]) continue;
      seen[s2] = 1;
      pred_state[s2] = s;
      pred_atom[s2] = atom_from_ordinal(d);
      queue.push(s2);
    }
  }
  if (!seen[dst]) return std::nullopt;
  std::vector<Atom> rev;
  for (int s = dst; s != src; s = pred_state[s]) rev.push_back(pred_atom[s]);
  std::reverse(rev.begin(), rev.end());
  return Word(rank_, rev);
}

}  // namespace freefix
