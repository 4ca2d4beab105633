#include "apxerr/joingraph.hpp"

#include "apxerr/errors.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace apxerr {

std::vector<JoinEdge> JoinGraph::edges() const {
  std::map<int, std::vector<int>> verticesOfVar;
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].alive)
      for (int v : vertices[i].vars) verticesOfVar[v].push_back(static_cast<int>(i));

  std::map<std::pair<int, int>, std::vector<int>> shared;
  for (const auto& [var, vs] : verticesOfVar)
    for (size_t x = 0; x < vs.size(); ++x)
      for (size_t y = x + 1; y < vs.size(); ++y)
        shared[{vs[x], vs[y]}].push_back(var);

  std::vector<JoinEdge> out;
  out.reserve(shared.size());
  for (auto& [pair, vars] : shared) out.push_back({pair.first, pair.second, std::move(vars)});
  return out;
}

size_t JoinGraph::alive_count() const {
  size_t n = 0;
  for (const JoinVertex& v : vertices) n += v.alive;
  return n;
}

namespace {

std::map<int, int> var_use_counts(const JoinGraph& g) {
  std::map<int, int> uses;
  for (const JoinVertex& v : g.vertices)
    if (v.alive)
      for (int var : v.vars) uses[var]++;
  return uses;
}

void marginalize_vertex(JoinGraph& g, int i, const std::map<int, int>& uses) {
  JoinVertex& v = g.vertices[static_cast<size_t>(i)];
  std::vector<int> drop;
  for (int var : v.vars) {
    if (uses.at(var) > 1) continue;
    if (std::binary_search(g.errorVars.begin(), g.errorVars.end(), var)) continue;
    drop.push_back(var);
  }
  if (drop.empty()) return;
  v.table = marginalize(v.table, drop);
  v.vars = v.table.vars();
}

} // namespace

void JoinGraph::marginalize_exclusive() {
  std::map<int, int> uses = var_use_counts(*this);
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].alive) marginalize_vertex(*this, static_cast<int>(i), uses);
}

void JoinGraph::merge(int i, int j, size_t rowCap) {
  JoinVertex& vi = vertices[static_cast<size_t>(i)];
  JoinVertex& vj = vertices[static_cast<size_t>(j)];
  if (!vi.alive || !vj.alive) throw InvariantError("merge: dead vertex");

  vi.table = factor_product(vi.table, vj.table, rowCap);
  std::vector<int> unionVars;
  std::set_union(vi.vars.begin(), vi.vars.end(), vj.vars.begin(), vj.vars.end(),
                 std::back_inserter(unionVars));
  vi.vars = std::move(unionVars);
  vi.parts.insert(vi.parts.end(), vj.parts.begin(), vj.parts.end());
  std::sort(vi.parts.begin(), vi.parts.end());
  vj.alive = false;
  vj.table = SolutionTable{};

  // absorb any vertex whose variable set is now a subset of X_i; absorption
  // cannot grow the table (message keys are unique) but updates counts
  bool absorbed = true;
  while (absorbed) {
    absorbed = false;
    for (size_t k = 0; k < vertices.size(); ++k) {
      JoinVertex& vk = vertices[k];
      if (!vk.alive || static_cast<int>(k) == i) continue;
      if (!std::includes(vi.vars.begin(), vi.vars.end(), vk.vars.begin(), vk.vars.end()))
        continue;
      vi.table = factor_product(vi.table, vk.table, rowCap);
      vi.parts.insert(vi.parts.end(), vk.parts.begin(), vk.parts.end());
      std::sort(vi.parts.begin(), vi.parts.end());
      vk.alive = false;
      vk.table = SolutionTable{};
      absorbed = true;
    }
  }

  std::map<int, int> uses = var_use_counts(*this);
  marginalize_vertex(*this, i, uses);
}

JoinGraph build_join_graph(const Partitioning& partitioning,
                           std::vector<SolutionTable> tables,
                           std::vector<int> errorVars) {
  if (tables.size() != partitioning.parts.size())
    throw InvariantError("build_join_graph: one table per part required");
  JoinGraph g;
  std::sort(errorVars.begin(), errorVars.end());
  g.errorVars = std::move(errorVars);
  g.vertices.reserve(tables.size());
  for (size_t p = 0; p < tables.size(); ++p) {
    JoinVertex v;
    v.parts = {static_cast<int>(p)};
    v.vars = tables[p].vars();
    v.table = std::move(tables[p]);
    g.vertices.push_back(std::move(v));
  }
  g.marginalize_exclusive();
  return g;
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<size_t>(a)] = b;
    return true;
  }
};

bool is_forest(const JoinGraph& g, const std::vector<JoinEdge>& edges) {
  Dsu dsu(g.vertices.size());
  for (const JoinEdge& e : edges)
    if (!dsu.unite(e.a, e.b)) return false;
  return true;
}

// Tarjan lowlink pass; returns a flag per edge index.
std::vector<uint8_t> bridge_flags(size_t vertexCount, const std::vector<JoinEdge>& edges) {
  std::vector<std::vector<std::pair<int, int>>> adj(vertexCount); // (neighbor, edge idx)
  for (size_t ei = 0; ei < edges.size(); ++ei) {
    adj[static_cast<size_t>(edges[ei].a)].push_back({edges[ei].b, static_cast<int>(ei)});
    adj[static_cast<size_t>(edges[ei].b)].push_back({edges[ei].a, static_cast<int>(ei)});
  }
  std::vector<uint8_t> isBridge(edges.size(), 0);
  std::vector<int> disc(vertexCount, -1), low(vertexCount, 0);
  int timer = 0;

  std::function<void(int, int)> dfs = [&](int u, int viaEdge) {
    disc[static_cast<size_t>(u)] = low[static_cast<size_t>(u)] = timer++;
    for (auto [w, ei] : adj[static_cast<size_t>(u)]) {
      if (ei == viaEdge) continue;
      if (disc[static_cast<size_t>(w)] < 0) {
        dfs(w, ei);
        low[static_cast<size_t>(u)] = std::min(low[static_cast<size_t>(u)], low[static_cast<size_t>(w)]);
        if (low[static_cast<size_t>(w)] > disc[static_cast<size_t>(u)]) isBridge[static_cast<size_t>(ei)] = 1;
      } else {
        low[static_cast<size_t>(u)] = std::min(low[static_cast<size_t>(u)], disc[static_cast<size_t>(w)]);
      }
    }
  };
  for (size_t u = 0; u < vertexCount; ++u)
    if (disc[u] < 0 && !adj[u].empty()) dfs(static_cast<int>(u), -1);
  return isBridge;
}

} // namespace

JoinTree reduce_to_tree(JoinGraph graph, const TreeBuildOptions& options) {
  if (graph.alive_count() == 0) throw InputError("reduce_to_tree: empty graph");
  uint64_t ts = options.tableSizeThreshold;

  while (true) {
    std::vector<JoinEdge> edges = graph.edges();
    if (is_forest(graph, edges)) break;

    std::vector<uint8_t> bridge = bridge_flags(graph.vertices.size(), edges);
    struct Candidate {
      uint64_t w;
      int a, b;
    };
    std::vector<Candidate> eligible;
    for (size_t ei = 0; ei < edges.size(); ++ei) {
      if (bridge[ei]) continue;
      const JoinEdge& e = edges[ei];
      uint64_t w = estimate_merge_size(graph.vertices[static_cast<size_t>(e.a)].table,
                                       graph.vertices[static_cast<size_t>(e.b)].table,
                                       options.estimator);
      if (w <= ts) eligible.push_back({w, e.a, e.b});
    }
    std::sort(eligible.begin(), eligible.end(), [](const Candidate& x, const Candidate& y) {
      return std::tie(x.w, x.a, x.b) < std::tie(y.w, y.a, y.b);
    });

    // vertex-disjoint greedy pick, smallest first
    std::vector<uint8_t> used(graph.vertices.size(), 0);
    size_t merges = 0;
    for (const Candidate& c : eligible) {
      if (used[static_cast<size_t>(c.a)] || used[static_cast<size_t>(c.b)]) continue;
      if (!graph.vertices[static_cast<size_t>(c.a)].alive ||
          !graph.vertices[static_cast<size_t>(c.b)].alive)
        continue;
      used[static_cast<size_t>(c.a)] = used[static_cast<size_t>(c.b)] = 1;
      try {
        graph.merge(c.a, c.b, options.hardRowCap);
        ++merges;
      } catch (const ResourceError&) {
        // estimate undershot a too-large product; leave the edge for later
      }
    }

    if (merges == 0) {
      ts *= 2;
      if (options.diag)
        *options.diag << "c treebuild: no mergeable edge under threshold, escalating TS to "
                      << ts << "\n";
      if (ts > options.hardRowCap * 16)
        throw ResourceError("reduce_to_tree: memory cap exceeded during forced escalation");
      continue;
    }
    graph.marginalize_exclusive();
  }

  // assemble the rooted forest
  std::vector<int> denseOf(graph.vertices.size(), -1);
  JoinTree tree;
  tree.errorVars = graph.errorVars;
  for (size_t i = 0; i < graph.vertices.size(); ++i) {
    if (!graph.vertices[i].alive) continue;
    denseOf[i] = static_cast<int>(tree.vertices.size());
    TreeVertex tv;
    tv.vars = graph.vertices[i].vars;
    tv.table = std::move(graph.vertices[i].table);
    tree.vertices.push_back(std::move(tv));
  }
  for (TreeVertex& tv : tree.vertices)
    for (size_t pos = 0; pos < tv.vars.size(); ++pos) {
      auto it = std::lower_bound(tree.errorVars.begin(), tree.errorVars.end(), tv.vars[pos]);
      if (it != tree.errorVars.end() && *it == tv.vars[pos])
        tv.errorBits.push_back({static_cast<int>(pos),
                                static_cast<int>(it - tree.errorVars.begin())});
    }

  std::vector<JoinEdge> edges = graph.edges();
  std::vector<std::vector<std::pair<int, std::vector<int>>>> adj(tree.vertices.size());
  for (const JoinEdge& e : edges) {
    int a = denseOf[static_cast<size_t>(e.a)];
    int b = denseOf[static_cast<size_t>(e.b)];
    adj[static_cast<size_t>(a)].push_back({b, e.sharedVars});
    adj[static_cast<size_t>(b)].push_back({a, e.sharedVars});
  }

  std::vector<uint8_t> seen(tree.vertices.size(), 0);
  struct Root {
    size_t tableSize;
    int vertex;
  };
  std::vector<Root> componentRoots;
  for (size_t start = 0; start < tree.vertices.size(); ++start) {
    if (seen[start]) continue;
    // collect the component, then root it at its largest table
    std::vector<int> component{static_cast<int>(start)};
    seen[start] = 1;
    for (size_t qi = 0; qi < component.size(); ++qi)
      for (auto& [nb, label] : adj[static_cast<size_t>(component[qi])])
        if (!seen[static_cast<size_t>(nb)]) {
          seen[static_cast<size_t>(nb)] = 1;
          component.push_back(nb);
        }
    int root = component.front();
    for (int v : component)
      if (tree.vertices[static_cast<size_t>(v)].table.size() >
          tree.vertices[static_cast<size_t>(root)].table.size())
        root = v;
    componentRoots.push_back({tree.vertices[static_cast<size_t>(root)].table.size(), root});

    std::vector<int> stack{root};
    std::vector<uint8_t> placed(tree.vertices.size(), 0);
    placed[static_cast<size_t>(root)] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto& [nb, label] : adj[static_cast<size_t>(u)]) {
        if (placed[static_cast<size_t>(nb)]) continue;
        placed[static_cast<size_t>(nb)] = 1;
        tree.vertices[static_cast<size_t>(nb)].parent = u;
        tree.vertices[static_cast<size_t>(nb)].sharedWithParent = label;
        tree.vertices[static_cast<size_t>(u)].children.push_back(nb);
        stack.push_back(nb);
      }
    }
  }
  std::sort(componentRoots.begin(), componentRoots.end(),
            [](const Root& x, const Root& y) { return x.tableSize > y.tableSize; });
  for (const Root& r : componentRoots) tree.roots.push_back(r.vertex);

  tree.check_rip();
  tree.finalize();
  return tree;
}

void JoinTree::finalize() {
  for (TreeVertex& v : vertices) {
    v.wordsPerRow = (v.vars.size() + 63) / 64;
    v.rowWords.clear();
    v.rowCounts.clear();
    v.rowWords.reserve(v.table.size() * v.wordsPerRow);
    v.rowCounts.reserve(v.table.size());
    for (const auto& [key, count] : v.table.rows()) {
      for (size_t w = 0; w < v.wordsPerRow; ++w) v.rowWords.push_back(key.word(w));
      v.rowCounts.push_back(count);
    }

    auto positions = [&](const std::vector<int>& label) {
      std::vector<int> pos;
      pos.reserve(label.size());
      for (int var : label) {
        int p = v.table.position_of(var);
        if (p < 0) throw InvariantError("finalize: label variable missing from vertex");
        pos.push_back(p);
      }
      return pos;
    };
    v.parentLabelPos = v.parent >= 0 ? positions(v.sharedWithParent) : std::vector<int>{};
    v.childLabelPos.clear();
    for (int c : v.children)
      v.childLabelPos.push_back(positions(vertices[static_cast<size_t>(c)].sharedWithParent));
  }
}

void JoinTree::check_rip() const {
  // Per variable: (#vertices containing it) - (#tree edges whose label
  // contains it) must be 1, i.e. the induced subgraph is a connected subtree.
  std::map<int, int> balance;
  for (const TreeVertex& v : vertices)
    for (int var : v.vars) balance[var]++;
  for (const TreeVertex& v : vertices)
    if (v.parent >= 0)
      for (int var : v.sharedWithParent) balance[var]--;
  for (const auto& [var, b] : balance)
    if (b != 1)
      throw InvariantError("running intersection property violated for variable " +
                           std::to_string(var));
  // edge labels must equal the endpoint intersection
  for (const TreeVertex& v : vertices) {
    if (v.parent < 0) continue;
    std::vector<int> expect;
    const TreeVertex& p = vertices[static_cast<size_t>(v.parent)];
    std::set_intersection(v.vars.begin(), v.vars.end(), p.vars.begin(), p.vars.end(),
                          std::back_inserter(expect));
    if (expect != v.sharedWithParent)
      throw InvariantError("tree edge label does not equal endpoint intersection");
  }
}

JoinTree JoinTree::rerooted(int newRoot) const {
  JoinTree out = *this;
  for (TreeVertex& v : out.vertices) {
    v.parent = -1;
    v.children.clear();
    v.sharedWithParent.clear();
  }
  // adjacency from the old orientation
  std::vector<std::vector<int>> adj(vertices.size());
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].parent >= 0) {
      adj[i].push_back(vertices[i].parent);
      adj[static_cast<size_t>(vertices[i].parent)].push_back(static_cast<int>(i));
    }

  std::vector<uint8_t> placed(vertices.size(), 0);
  out.roots.clear();
  auto orient = [&](int root) {
    out.roots.push_back(root);
    std::vector<int> stack{root};
    placed[static_cast<size_t>(root)] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int nb : adj[static_cast<size_t>(u)]) {
        if (placed[static_cast<size_t>(nb)]) continue;
        placed[static_cast<size_t>(nb)] = 1;
        TreeVertex& vnb = out.vertices[static_cast<size_t>(nb)];
        vnb.parent = u;
        std::set_intersection(vnb.vars.begin(), vnb.vars.end(),
                              out.vertices[static_cast<size_t>(u)].vars.begin(),
                              out.vertices[static_cast<size_t>(u)].vars.end(),
                              std::back_inserter(vnb.sharedWithParent));
        out.vertices[static_cast<size_t>(u)].children.push_back(nb);
        stack.push_back(nb);
      }
    }
  };
  orient(newRoot);
  for (size_t i = 0; i < vertices.size(); ++i)
    if (!placed[i]) orient(static_cast<int>(i));
  return out;
}

std::string JoinTree::dump() const {
  std::ostringstream os;
  for (size_t i = 0; i < vertices.size(); ++i) {
    const TreeVertex& v = vertices[i];
    os << "vertex " << i << " rows=" << v.table.size() << " vars={";
    for (size_t k = 0; k < v.vars.size(); ++k) os << (k ? "," : "") << v.vars[k];
    os << "}";
    if (v.parent >= 0) {
      os << " parent=" << v.parent << " label={";
      for (size_t k = 0; k < v.sharedWithParent.size(); ++k)
        os << (k ? "," : "") << v.sharedWithParent[k];
      os << "}";
    } else {
      os << " root";
    }
    os << '\n';
  }
  return os.str();
}

} // namespace apxerr
