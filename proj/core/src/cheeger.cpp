#include "hypspec/cheeger.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <thread>

#include "hypspec/error.hpp"

namespace hypspec {

const char* to_string(CheegerMethod method) {
  return method == CheegerMethod::Exact ? "exact" : "sweep";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Mask = std::uint32_t;

bool mask_connected(Mask set, const std::vector<Mask>& nb) {
  if (set == 0) return false;
  Mask reached = set & (~set + 1);
  for (;;) {
    Mask grow = reached;
    for (Mask r = reached; r; r &= r - 1) grow |= nb[std::countr_zero(r)] & set;
    if (grow == reached) break;
    reached = grow;
  }
  return reached == set;
}

struct Candidate {
  double ratio = kInf;
  Mask side = 0;
};

// Cell 0 is always on side B, so each bipartition is visited once.
Candidate search_range(const TrigonGraph& g, const std::vector<Mask>& nb, Mask full,
                       std::uint64_t begin, std::uint64_t end) {
  Candidate best;
  for (std::uint64_t m = begin; m < end; ++m) {
    const Mask B = static_cast<Mask>((m << 1) | 1u);
    const Mask C = full & ~B;
    if (C == 0) continue;
    if (!mask_connected(B, nb) || !mask_connected(C, nb)) continue;
    double cut = 0.0;
    for (const TrigonEdge& e : g.edges) {
      if (((B >> e.a) & 1u) != ((B >> e.b) & 1u)) cut += e.length;
    }
    double aB = 0.0, aC = 0.0;
    for (int i = 0; i < g.size(); ++i) ((B >> i) & 1u ? aB : aC) += g.area[i];
    const double ratio = cut / std::min(aB, aC);
    if (ratio < best.ratio) best = {ratio, B};
  }
  return best;
}

CheegerEstimate make_estimate(const TrigonGraph& g, const std::vector<char>& in_b,
                              CheegerMethod method) {
  CheegerEstimate est;
  est.method = method;
  double aB = 0.0, aC = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    if (in_b[i]) {
      est.side.push_back(i);
      aB += g.area[i];
    } else {
      aC += g.area[i];
    }
  }
  for (const TrigonEdge& e : g.edges) {
    if (in_b[e.a] != in_b[e.b]) est.cut_length += e.length;
  }
  est.smaller_area = std::min(aB, aC);
  est.value = est.cut_length / est.smaller_area;
  return est;
}

CheegerEstimate no_cut(CheegerMethod method) {
  CheegerEstimate est;
  est.method = method;
  est.value = kInf;
  return est;
}

bool subset_connected(const TrigonGraph& g, const std::vector<char>& in) {
  int start = -1, total = 0;
  for (int i = 0; i < g.size(); ++i) {
    if (in[i]) {
      ++total;
      if (start == -1) start = i;
    }
  }
  if (total == 0) return false;
  std::vector<char> seen(g.size(), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int w : g.adjacency[u]) {
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == total;
}

}  // namespace

CheegerEstimate exact_cheeger(const TrigonGraph& g) {
  const int n = g.size();
  if (n == 0) fail(ErrorKind::Precondition, "empty cell set");
  if (n > 31) fail(ErrorKind::Precondition, "exact Cheeger search supports at most 31 cells");
  if (!g.connected()) fail(ErrorKind::Precondition, "cell set is disconnected");
  if (n == 1) return no_cut(CheegerMethod::Exact);

  std::vector<Mask> nb(n, 0);
  for (const TrigonEdge& e : g.edges) {
    nb[e.a] |= Mask{1} << e.b;
    nb[e.b] |= Mask{1} << e.a;
  }
  const Mask full = static_cast<Mask>((std::uint64_t{1} << n) - 1);
  const std::uint64_t total = std::uint64_t{1} << (n - 1);

  // Contiguous chunks reduced in order keep the result independent of the
  // thread count: the first strictly smaller ratio in mask order wins.
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned chunks = total < 4096 ? 1u : std::min<unsigned>(hw, 64u);
  std::vector<Candidate> found(chunks);
  {
    std::vector<std::jthread> workers;
    for (unsigned c = 1; c < chunks; ++c) {
      workers.emplace_back([&, c] {
        found[c] = search_range(g, nb, full, total * c / chunks, total * (c + 1) / chunks);
      });
    }
    found[0] = search_range(g, nb, full, 0, total / chunks);
  }
  Candidate best;
  for (const Candidate& c : found) {
    if (c.ratio < best.ratio) best = c;
  }
  if (best.side == 0) return no_cut(CheegerMethod::Exact);
  std::vector<char> in_b(n, 0);
  for (int i = 0; i < n; ++i) in_b[i] = static_cast<char>((best.side >> i) & 1u);
  return make_estimate(g, in_b, CheegerMethod::Exact);
}

CheegerEstimate sweep_cheeger(const TrigonGraph& g, const std::vector<double>& score) {
  const int n = g.size();
  if (n == 0) fail(ErrorKind::Precondition, "empty cell set");
  if (static_cast<int>(score.size()) != n) {
    fail(ErrorKind::InvalidInput, "one score per cell required");
  }
  if (!g.connected()) fail(ErrorKind::Precondition, "cell set is disconnected");
  if (n == 1) return no_cut(CheegerMethod::Sweep);

  CheegerEstimate best = no_cut(CheegerMethod::Sweep);
  auto consider = [&](const std::vector<char>& in_b) {
    std::vector<char> in_c(n);
    for (int i = 0; i < n; ++i) in_c[i] = !in_b[i];
    if (!subset_connected(g, in_b) || !subset_connected(g, in_c)) return;
    CheegerEstimate est = make_estimate(g, in_b, CheegerMethod::Sweep);
    if (est.value < best.value) best = std::move(est);
  };

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return score[a] < score[b]; });
  std::vector<char> in_b(n, 0);
  for (int j = 0; j + 1 < n; ++j) {
    in_b[order[j]] = 1;
    consider(in_b);
  }

  // Every edge of a spanning tree splits it into two connected subtrees.
  std::vector<int> parent(n, -1), bfs;
  std::vector<char> seen(n, 0);
  bfs.push_back(0);
  seen[0] = 1;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    for (int w : g.adjacency[bfs[i]]) {
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = bfs[i];
        bfs.push_back(w);
      }
    }
  }
  std::vector<std::vector<int>> children(n);
  for (int v : bfs) {
    if (parent[v] != -1) children[parent[v]].push_back(v);
  }
  for (int v = 1; v < n; ++v) {
    if (parent[v] == -1) continue;
    std::fill(in_b.begin(), in_b.end(), 0);
    std::vector<int> stack{v};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      in_b[u] = 1;
      for (int c : children[u]) stack.push_back(c);
    }
    consider(in_b);
  }
  return best;
}

CheegerEstimate discrete_cheeger(const Mesh& mesh, const std::vector<int>& cells,
                                 int exact_limit, const EigenOptions& eigen) {
  if (cells.empty()) fail(ErrorKind::Precondition, "empty cell set");
  const TrigonGraph whole = trigon_graph(mesh, TrigonLevel::Coarse);
  const TrigonGraph sub = induced_subgraph(whole, cells);
  if (!sub.connected()) {
    fail(ErrorKind::Precondition, "cell set does not induce a connected sub-domain");
  }

  auto to_input_ids = [&](CheegerEstimate est) {
    for (int& c : est.side) c = cells[c];
    return est;
  };

  const int n = sub.size();
  if (n <= exact_limit && n <= 31) return to_input_ids(exact_cheeger(sub));

  std::vector<int> local(mesh.coarse_cell_count(), -1);
  for (int i = 0; i < n; ++i) local[cells[i]] = i;
  std::vector<int> tris;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    if (local[mesh.triangles()[t].tag.coarse_cell] != -1) tris.push_back(t);
  }
  std::vector<int> vmap;
  const SpectralPair pair = assemble_fem(mesh, tris, &vmap);
  std::vector<int> global_to_local(mesh.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(vmap.size()); ++i) global_to_local[vmap[i]] = i;

  const Spectrum spec = lowest_eigs(pair, 2, eigen);
  const Eigen::VectorXd fiedler = spec.eigenvectors.col(1);
  std::vector<double> score(n, 0.0), weight(n, 0.0);
  for (int t : tris) {
    const MeshTriangle& tri = mesh.triangles()[t];
    const int c = local[tri.tag.coarse_cell];
    for (int v : tri.corners) {
      score[c] += tri.area * fiedler[global_to_local[v]];
      weight[c] += tri.area;
    }
  }
  for (int i = 0; i < n; ++i) score[i] /= weight[i];
  return to_input_ids(sweep_cheeger(sub, score));
}

}  // namespace hypspec
