#include "ttcube/cubulation.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace ttc {

void validate_wallspace(Wallspace &ws) {
  if (ws.chambers.empty())
    fail(ErrorKind::invalid, "wallspace: no chambers");
  {
    std::set<std::string> names(ws.chambers.begin(), ws.chambers.end());
    if (names.size() != ws.chambers.size())
      fail(ErrorKind::invalid, "wallspace: duplicate chamber names");
  }
  std::uint32_t n = static_cast<std::uint32_t>(ws.chambers.size());
  for (auto &wall : ws.walls) {
    for (int s : {0, 1}) {
      std::sort(wall.side[s].begin(), wall.side[s].end());
      wall.side[s].erase(
          std::unique(wall.side[s].begin(), wall.side[s].end()),
          wall.side[s].end());
      if (wall.side[s].empty())
        fail(ErrorKind::invalid, "wallspace: empty halfspace");
      for (auto c : wall.side[s])
        if (c >= n)
          fail(ErrorKind::invalid, "wallspace: chamber index out of range");
    }
    if (wall.side[0].size() + wall.side[1].size() != n)
      fail(ErrorKind::invalid, "wallspace: halfspaces do not cover chambers");
    std::vector<std::uint32_t> both;
    std::set_intersection(wall.side[0].begin(), wall.side[0].end(),
                          wall.side[1].begin(), wall.side[1].end(),
                          std::back_inserter(both));
    if (!both.empty())
      fail(ErrorKind::invalid, "wallspace: halfspaces overlap");
    // Side 0 is the side containing chamber 0.
    if (!std::binary_search(wall.side[0].begin(), wall.side[0].end(), 0u))
      std::swap(wall.side[0], wall.side[1]);
  }
  std::sort(ws.walls.begin(), ws.walls.end(),
            [](const Wallspace::Wall &a, const Wallspace::Wall &b) {
              return a.side[0] < b.side[0];
            });
  for (std::size_t i = 0; i + 1 < ws.walls.size(); ++i)
    if (ws.walls[i].side[0] == ws.walls[i + 1].side[0])
      fail(ErrorKind::invalid, "wallspace: duplicate wall");
}

Ultrafilter principal_ultrafilter(const Wallspace &ws, std::uint32_t chamber) {
  if (chamber >= ws.chambers.size())
    fail(ErrorKind::domain, "principal_ultrafilter: unknown chamber");
  Ultrafilter uf;
  uf.side.resize(ws.walls.size());
  for (std::size_t i = 0; i < ws.walls.size(); ++i) {
    const auto &w = ws.walls[i];
    uf.side[i] = std::binary_search(w.side[0].begin(), w.side[0].end(), chamber)
                     ? 0
                     : 1;
  }
  return uf;
}

Ultrafilter principal_ultrafilter(const Wallspace &ws,
                                  const std::string &chamber) {
  for (std::uint32_t i = 0; i < ws.chambers.size(); ++i)
    if (ws.chambers[i] == chamber)
      return principal_ultrafilter(ws, i);
  fail(ErrorKind::domain, "principal_ultrafilter: unknown chamber " + chamber);
}

namespace {

// halfspaces_meet[i][s][j][t]: do halfspace (i,s) and (j,t) intersect?
struct Compat {
  std::size_t k = 0;
  std::vector<std::uint8_t> bits;

  std::uint8_t &at(std::size_t i, int s, std::size_t j, int t) {
    return bits[((i * 2 + s) * k + j) * 2 + t];
  }
  std::uint8_t at(std::size_t i, int s, std::size_t j, int t) const {
    return bits[((i * 2 + s) * k + j) * 2 + t];
  }
};

Compat build_compat(const Wallspace &ws) {
  Compat c;
  c.k = ws.walls.size();
  c.bits.assign(4 * c.k * c.k, 0);
  for (std::size_t i = 0; i < c.k; ++i)
    for (int s : {0, 1})
      for (std::size_t j = 0; j < c.k; ++j)
        for (int t : {0, 1}) {
          std::vector<std::uint32_t> inter;
          std::set_intersection(ws.walls[i].side[s].begin(),
                                ws.walls[i].side[s].end(),
                                ws.walls[j].side[t].begin(),
                                ws.walls[j].side[t].end(),
                                std::back_inserter(inter));
          c.at(i, s, j, t) = inter.empty() ? 0 : 1;
        }
  return c;
}

bool flip_consistent(const Compat &c, const Ultrafilter &uf, std::size_t i,
                     int new_side) {
  for (std::size_t j = 0; j < c.k; ++j) {
    if (j == i)
      continue;
    if (!c.at(i, new_side, j, uf.side[j]))
      return false;
  }
  return true;
}

} // namespace

CubeSkeleton dual_complex(const Wallspace &ws, int max_dim,
                          std::size_t vertex_cap) {
  Wallspace canon = ws;
  validate_wallspace(canon);
  const std::size_t k = canon.walls.size();
  Compat compat = build_compat(canon);

  // Flip-BFS from the principal ultrafilters.
  std::map<Ultrafilter, std::uint32_t> index;
  std::vector<Ultrafilter> order;
  std::queue<std::uint32_t> queue;
  auto intern = [&](const Ultrafilter &uf) {
    auto it = index.find(uf);
    if (it != index.end())
      return it->second;
    if (order.size() >= vertex_cap)
      fail(ErrorKind::limit, "dual_complex: vertex cap exceeded");
    std::uint32_t id = static_cast<std::uint32_t>(order.size());
    index.emplace(uf, id);
    order.push_back(uf);
    queue.push(id);
    return id;
  };
  for (std::uint32_t c = 0; c < canon.chambers.size(); ++c)
    intern(principal_ultrafilter(canon, c));
  while (!queue.empty()) {
    std::uint32_t id = queue.front();
    queue.pop();
    Ultrafilter uf = order[id];
    for (std::size_t i = 0; i < k; ++i) {
      int flipped = 1 - uf.side[i];
      if (!flip_consistent(compat, uf, i, flipped))
        continue;
      Ultrafilter next = uf;
      next.side[i] = static_cast<std::uint8_t>(flipped);
      intern(next);
    }
  }

  CubeSkeleton sk;
  sk.vertices.assign(order.begin(), order.end());
  std::sort(sk.vertices.begin(), sk.vertices.end());
  std::map<Ultrafilter, std::uint32_t> pos;
  for (std::uint32_t i = 0; i < sk.vertices.size(); ++i)
    pos[sk.vertices[i]] = i;

  sk.adjacency.resize(sk.vertices.size());
  for (std::uint32_t v = 0; v < sk.vertices.size(); ++v) {
    for (std::size_t i = 0; i < k; ++i) {
      Ultrafilter next = sk.vertices[v];
      next.side[i] = static_cast<std::uint8_t>(1 - next.side[i]);
      auto it = pos.find(next);
      if (it == pos.end())
        continue;
      sk.adjacency[v].push_back(it->second);
      if (v < it->second)
        sk.edges.push_back({v, it->second});
    }
    std::sort(sk.adjacency[v].begin(), sk.adjacency[v].end());
  }
  std::sort(sk.edges.begin(), sk.edges.end());

  // Count d-cubes from their all-zero corner on the flipped wall set.
  sk.cube_counts.assign(static_cast<std::size_t>(std::max(max_dim, 1)) + 1, 0);
  if (sk.cube_counts.size() > 1)
    sk.cube_counts[1] = sk.edges.size();
  auto corner_exists = [&](Ultrafilter base, const std::vector<std::size_t> &S,
                           unsigned mask) {
    for (std::size_t b = 0; b < S.size(); ++b)
      if (mask & (1u << b))
        base.side[S[b]] = static_cast<std::uint8_t>(1 - base.side[S[b]]);
    return pos.count(base) > 0;
  };
  for (std::uint32_t v = 0; v < sk.vertices.size(); ++v) {
    const Ultrafilter &uf = sk.vertices[v];
    std::vector<std::size_t> flippable;
    for (std::size_t i = 0; i < k; ++i) {
      if (uf.side[i] != 0)
        continue; // count each cube once, from its all-zero corner
      Ultrafilter next = uf;
      next.side[i] = 1;
      if (pos.count(next))
        flippable.push_back(i);
    }
    // Grow subsets of flippable walls whose full corner sets are present;
    // subsets of good sets are good, so incremental extension finds all.
    std::vector<std::vector<std::size_t>> good = {{}};
    for (std::size_t idx = 0; idx < flippable.size(); ++idx) {
      std::vector<std::vector<std::size_t>> grown;
      for (const auto &S : good) {
        if (static_cast<int>(S.size()) >= max_dim)
          continue;
        if (!S.empty() && S.back() >= idx)
          continue;
        std::vector<std::size_t> T = S;
        T.push_back(idx);
        std::vector<std::size_t> walls;
        for (auto b : T)
          walls.push_back(flippable[b]);
        bool ok = true;
        for (unsigned mask = 0; mask < (1u << T.size()) && ok; ++mask)
          if (!corner_exists(uf, walls, mask))
            ok = false;
        if (ok)
          grown.push_back(T);
      }
      good.insert(good.end(), grown.begin(), grown.end());
    }
    for (const auto &S : good)
      if (S.size() >= 2)
        sk.cube_counts[S.size()]++;
  }
  sk.dimension = 0;
  if (!sk.edges.empty())
    sk.dimension = 1;
  for (std::size_t d = 2; d < sk.cube_counts.size(); ++d)
    if (sk.cube_counts[d] > 0)
      sk.dimension = static_cast<int>(d);
  return sk;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>>
crossing_pairs(const Wallspace &ws) {
  Wallspace canon = ws;
  validate_wallspace(canon);
  Compat c = build_compat(canon);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::size_t i = 0; i < canon.walls.size(); ++i)
    for (std::size_t j = i + 1; j < canon.walls.size(); ++j) {
      bool crossing = true;
      for (int s : {0, 1})
        for (int t : {0, 1})
          if (!c.at(i, s, j, t))
            crossing = false;
      if (crossing)
        out.push_back({static_cast<std::uint32_t>(i),
                       static_cast<std::uint32_t>(j)});
    }
  return out;
}

MedianVerdict
is_median_graph(const std::vector<std::vector<std::uint32_t>> &adj,
                std::size_t cap) {
  std::size_t n = adj.size();
  if (n > cap)
    fail(ErrorKind::limit, "is_median: vertex count exceeds brute-force cap");
  MedianVerdict verdict;
  if (n == 0)
    return verdict;

  // All-pairs distances by BFS.
  const int INF = 1 << 29;
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, INF));
  for (std::uint32_t s = 0; s < n; ++s) {
    std::queue<std::uint32_t> q;
    dist[s][s] = 0;
    q.push(s);
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (auto w : adj[v])
        if (dist[s][w] == INF) {
          dist[s][w] = dist[s][v] + 1;
          q.push(w);
        }
    }
    for (std::uint32_t t = 0; t < n; ++t)
      if (dist[s][t] == INF)
        fail(ErrorKind::domain, "is_median: graph is not connected");
  }

  // Interval bitsets I(u,v).
  std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> interval(
      n * n, std::vector<std::uint64_t>(words, 0));
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = 0; v < n; ++v) {
      auto &row = interval[u * n + v];
      for (std::uint32_t x = 0; x < n; ++x)
        if (dist[u][x] + dist[x][v] == dist[u][v])
          row[x / 64] |= std::uint64_t{1} << (x % 64);
    }

  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u; v < n; ++v)
      for (std::uint32_t w = v; w < n; ++w) {
        std::size_t count = 0;
        const auto &a = interval[u * n + v];
        const auto &b = interval[v * n + w];
        const auto &c = interval[u * n + w];
        for (std::size_t i = 0; i < words; ++i)
          count += static_cast<std::size_t>(
              __builtin_popcountll(a[i] & b[i] & c[i]));
        if (count != 1) {
          verdict.is_median = false;
          verdict.witness = {u, v, w};
          verdict.median_count = count;
          return verdict;
        }
      }
  return verdict;
}

MedianVerdict is_median(const CubeSkeleton &sk, std::size_t cap) {
  return is_median_graph(sk.adjacency, cap);
}

} // namespace ttc
