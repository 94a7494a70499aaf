#include "hyperd1/steiner_forest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <string>

namespace hyperd1 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Mask = std::uint32_t;

std::vector<PointIndex> sortedUnion(std::span<const PointIndex> x, std::span<const PointIndex> y) {
  std::vector<PointIndex> out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

// Terminal membership as bit masks over positions in inst.terminals().
struct TerminalMasks {
  Mask inA = 0;
  Mask inB = 0;

  bool feasible(Mask block) const noexcept { return (block & inA) != 0 && (block & inB) != 0; }
};

TerminalMasks terminalMasks(const SteinerInstance& inst) {
  TerminalMasks masks;
  const auto& terms = inst.terminals();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (inst.a().contains(terms[i])) masks.inA |= Mask{1} << i;
    if (inst.b().contains(terms[i])) masks.inB |= Mask{1} << i;
  }
  return masks;
}

// Prim over the positions listed in `members`, distances from a dense
// row-major matrix of width `stride`. Appends tree edges (as positions) when
// `edges` is non-null.
double primTree(std::span<const std::size_t> members, const std::vector<double>& dist, std::size_t stride,
                std::vector<std::pair<std::size_t, std::size_t>>* edges = nullptr) {
  const std::size_t k = members.size();
  if (k <= 1) return 0.0;
  std::vector<double> key(k, kInf);
  std::vector<std::size_t> link(k, 0);
  std::vector<bool> done(k, false);
  std::vector<double> lengths;
  lengths.reserve(k - 1);
  key[0] = 0.0;
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t pick = k;
    for (std::size_t i = 0; i < k; ++i)
      if (!done[i] && (pick == k || key[i] < key[pick])) pick = i;
    done[pick] = true;
    if (step > 0) {
      lengths.push_back(key[pick]);
      if (edges) edges->emplace_back(members[link[pick]], members[pick]);
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (done[i]) continue;
      const double d = dist[members[pick] * stride + members[i]];
      if (d < key[i]) {
        key[i] = d;
        link[i] = pick;
      }
    }
  }
  return pairwiseSum(lengths);
}

std::vector<std::size_t> bitsOf(Mask mask) {
  std::vector<std::size_t> out;
  for (; mask != 0; mask &= mask - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
  return out;
}

GraphCertificate certificateFrom(const SteinerInstance& inst, std::span<const PointIndex> localToGlobal,
                                 const std::set<std::pair<std::size_t, std::size_t>>& localEdges) {
  std::vector<PointIndex> vertices = inst.terminals();
  std::vector<Edge> edges;
  edges.reserve(localEdges.size());
  for (const auto& [x, y] : localEdges) {
    edges.emplace_back(localToGlobal[x], localToGlobal[y]);
    vertices.push_back(localToGlobal[x]);
    vertices.push_back(localToGlobal[y]);
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return validateCertificate(inst.a(), inst.b(),
                             WeightedGraph(inst.spacePtr(), std::move(vertices), std::move(edges)));
}

// Optimal partition of `full` into feasible blocks given a per-block cost.
// Blocks always contain the lowest remaining terminal, so each partition is
// visited once. Returns the chosen blocks.
std::vector<Mask> bestPartition(Mask full, const TerminalMasks& masks,
                                const std::function<double(Mask)>& blockCost, double& value) {
  const std::size_t count = std::size_t{1} << std::popcount(full);
  // Masks here are dense over [0, full] because full = 2^t - 1.
  std::vector<double> best(count, kInf);
  std::vector<Mask> choice(count, 0);
  best[0] = 0.0;
  for (Mask s = 1; s <= full; ++s) {
    const Mask low = s & (~s + 1);
    const Mask rest = s ^ low;
    Mask sub = rest;
    while (true) {
      const Mask block = low | sub;
      if (masks.feasible(block) && std::isfinite(best[s ^ block])) {
        const double cand = best[s ^ block] + blockCost(block);
        if (cand < best[s]) {
          best[s] = cand;
          choice[s] = block;
        }
      }
      if (sub == 0) break;
      sub = (sub - 1) & rest;
    }
  }
  value = best[full];
  std::vector<Mask> blocks;
  for (Mask s = full; s != 0; s ^= choice[s]) blocks.push_back(choice[s]);
  return blocks;
}

}  // namespace

SteinerInstance::SteinerInstance(PointSet a, PointSet b, std::vector<PointIndex> pool)
    : a_(std::move(a)), b_(std::move(b)) {
  requireSameSpace(a_, b_);
  terminals_ = sortedUnion(a_.members(), b_.members());
  for (PointIndex p : pool) a_.space().checkIndex(p);
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::set_difference(pool.begin(), pool.end(), terminals_.begin(), terminals_.end(),
                      std::back_inserter(pool_));
}

ForestResult d1Exact(const SteinerInstance& inst, const SolverCaps& caps) {
  const std::size_t t = inst.terminals().size();
  const std::size_t p = inst.pool().size();
  if (t > caps.terminalCap || t > 31)
    throw Error(ErrorCode::CapExceeded, "exact solver limited to " + std::to_string(caps.terminalCap) +
                                            " terminals, got " + std::to_string(t));
  if (p > caps.poolCap)
    throw Error(ErrorCode::CapExceeded, "exact solver limited to " + std::to_string(caps.poolCap) +
                                            " pool points, got " + std::to_string(p));

  // Local positions: terminals first, then pool points.
  std::vector<PointIndex> local = inst.terminals();
  local.insert(local.end(), inst.pool().begin(), inst.pool().end());
  const std::size_t m = local.size();
  const std::vector<double> dist = inst.space().distanceMatrix(local);

  // tree[S][v]: cheapest tree spanning terminals S plus vertex v.
  // join[S][u]: cheapest tree spanning S in which u joins two subtrees (or
  //             u is the single terminal of S).
  const Mask full = static_cast<Mask>((std::size_t{1} << t) - 1);
  const std::size_t subsets = std::size_t{1} << t;
  std::vector<double> tree(subsets * m, kInf), join(subsets * m, kInf);
  std::vector<std::uint16_t> treeVia(subsets * m, 0);
  std::vector<Mask> joinSplit(subsets * m, 0);

  for (Mask s = 1; s <= full; ++s) {
    double* joinRow = &join[s * m];
    if (std::has_single_bit(s)) {
      joinRow[std::countr_zero(s)] = 0.0;
    } else {
      const Mask low = s & (~s + 1);
      const Mask rest = s ^ low;
      for (Mask sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
        const Mask left = low | sub;
        const Mask right = s ^ left;
        const double* l = &tree[left * m];
        const double* r = &tree[right * m];
        for (std::size_t u = 0; u < m; ++u) {
          const double cand = l[u] + r[u];
          if (cand < joinRow[u]) {
            joinRow[u] = cand;
            joinSplit[s * m + u] = left;
          }
        }
        if (sub == 0) break;
      }
    }
    double* treeRow = &tree[s * m];
    std::uint16_t* viaRow = &treeVia[s * m];
    for (std::size_t u = 0; u < m; ++u) {
      if (!std::isfinite(joinRow[u])) continue;
      const double* du = &dist[u * m];
      for (std::size_t v = 0; v < m; ++v) {
        const double cand = joinRow[u] + du[v];
        if (cand < treeRow[v]) {
          treeRow[v] = cand;
          viaRow[v] = static_cast<std::uint16_t>(u);
        }
      }
    }
  }

  const TerminalMasks masks = terminalMasks(inst);
  auto steinerCost = [&](Mask block) { return tree[block * m + std::countr_zero(block)]; };
  ForestResult result;
  const auto blocks = bestPartition(full, masks, steinerCost, result.value);

  std::set<std::pair<std::size_t, std::size_t>> edges;
  std::function<void(Mask, std::size_t)> emit = [&](Mask s, std::size_t v) {
    const std::size_t u = treeVia[s * m + v];
    if (u != v) edges.insert(std::minmax(u, v));
    if (std::has_single_bit(s)) {
      const auto terminal = static_cast<std::size_t>(std::countr_zero(s));
      if (terminal != u) edges.insert(std::minmax(terminal, u));
      return;
    }
    const Mask left = joinSplit[s * m + u];
    emit(left, u);
    emit(s ^ left, u);
  };
  for (Mask block : blocks) emit(block, static_cast<std::size_t>(std::countr_zero(block)));
  result.certificate = certificateFrom(inst, local, edges);
  return result;
}

double d1BruteForce(const SteinerInstance& inst, const SolverCaps& caps) {
  const std::size_t t = inst.terminals().size();
  std::vector<PointIndex> local = inst.terminals();
  local.insert(local.end(), inst.pool().begin(), inst.pool().end());
  const std::size_t m = local.size();
  if (m > caps.oracleCap)
    throw Error(ErrorCode::TooLarge, "brute-force oracle limited to " + std::to_string(caps.oracleCap) +
                                         " vertices, got " + std::to_string(m));
  const std::vector<double> dist = inst.space().distanceMatrix(local);
  const TerminalMasks masks = terminalMasks(inst);

  // assign[i] = block of vertex i, or -1 for an unused pool vertex.
  std::vector<int> assign(m, -1);
  double best = kInf;
  std::function<void(std::size_t, int)> recurse = [&](std::size_t i, int blockCount) {
    if (i == m) {
      double total = 0.0;
      for (int blk = 0; blk < blockCount; ++blk) {
        std::vector<std::size_t> members;
        Mask terminalsIn = 0;
        for (std::size_t v = 0; v < m; ++v) {
          if (assign[v] != blk) continue;
          members.push_back(v);
          if (v < t) terminalsIn |= Mask{1} << v;
        }
        if (!masks.feasible(terminalsIn)) return;
        total += primTree(members, dist, m);
      }
      best = std::min(best, total);
      return;
    }
    if (i >= t) {
      assign[i] = -1;
      recurse(i + 1, blockCount);
    }
    for (int blk = 0; blk <= blockCount; ++blk) {
      assign[i] = blk;
      recurse(i + 1, std::max(blockCount, blk + 1));
    }
    assign[i] = -1;
  };
  recurse(0, 0);
  return best;
}

ForestResult mstUpperBound(const SteinerInstance& inst, const SolverCaps& caps) {
  const auto& terms = inst.terminals();
  const std::size_t t = terms.size();
  const std::vector<double> dist = inst.space().distanceMatrix(terms);
  std::vector<std::size_t> everyone(t);
  for (std::size_t i = 0; i < t; ++i) everyone[i] = i;

  std::set<std::pair<std::size_t, std::size_t>> edges;
  if (t <= caps.terminalCap && t <= 31) {
    const TerminalMasks masks = terminalMasks(inst);
    const Mask full = static_cast<Mask>((std::size_t{1} << t) - 1);
    std::vector<double> mst(std::size_t{1} << t, kInf);
    auto blockCost = [&](Mask block) {
      double& c = mst[block];
      if (!std::isfinite(c)) c = primTree(bitsOf(block), dist, t);
      return c;
    };
    double value = 0.0;
    for (Mask block : bestPartition(full, masks, blockCost, value)) {
      std::vector<std::pair<std::size_t, std::size_t>> treeEdges;
      primTree(bitsOf(block), dist, t, &treeEdges);
      for (auto [x, y] : treeEdges) edges.insert(std::minmax(x, y));
    }
  } else {
    // One MST over all terminals, then drop the longest edges whose removal
    // leaves both sides admissible.
    std::vector<std::pair<std::size_t, std::size_t>> treeEdges;
    primTree(everyone, dist, t, &treeEdges);
    std::vector<std::vector<std::size_t>> adj(t);
    for (auto [x, y] : treeEdges) {
      adj[x].push_back(y);
      adj[y].push_back(x);
    }
    std::vector<bool> inA(t), inB(t);
    for (std::size_t i = 0; i < t; ++i) {
      inA[i] = inst.a().contains(terms[i]);
      inB[i] = inst.b().contains(terms[i]);
    }
    std::sort(treeEdges.begin(), treeEdges.end(), [&](auto e, auto f) {
      return dist[e.first * t + e.second] > dist[f.first * t + f.second];
    });
    auto sideAdmissible = [&](std::size_t start, std::size_t blocked) {
      bool hasA = false, hasB = false;
      std::vector<std::size_t> stack{start};
      std::vector<bool> seen(t, false);
      seen[start] = true;
      seen[blocked] = true;
      while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        hasA = hasA || inA[v];
        hasB = hasB || inB[v];
        for (std::size_t w : adj[v])
          if (!seen[w]) {
            seen[w] = true;
            stack.push_back(w);
          }
      }
      return hasA && hasB;
    };
    for (auto [x, y] : treeEdges) {
      auto unlink = [&](std::size_t from, std::size_t to) {
        adj[from].erase(std::find(adj[from].begin(), adj[from].end(), to));
      };
      unlink(x, y);
      unlink(y, x);
      if (sideAdmissible(x, y) && sideAdmissible(y, x)) continue;
      adj[x].push_back(y);
      adj[y].push_back(x);
      edges.insert(std::minmax(x, y));
    }
  }
  ForestResult result;
  result.certificate = certificateFrom(inst, terms, edges);
  result.value = result.certificate.totalLength;
  return result;
}

double separationLowerBound(const PointSet& a, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive and finite");
  const auto members = a.members();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (a.space().distance(members[i], members[j]) < 2.0 * epsilon - kTolerance)
        throw Error(ErrorCode::NotSeparated, "points " + std::to_string(members[i]) + " and " +
                                                 std::to_string(members[j]) + " are closer than 2*epsilon");
  return epsilon * static_cast<double>(members.size() - 1) / 2.0;
}

}  // namespace hyperd1
