#include "specbasis/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "specbasis/errors.hpp"

namespace specbasis {

TriangleMesh::TriangleMesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
                           std::vector<std::string> load_warnings)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      warnings_(std::move(load_warnings)) {
  const int n = num_vertices();
  if (n < 3) throw InvalidMesh("mesh needs at least 3 vertices, got " + std::to_string(n));
  if (triangles_.empty()) throw InvalidMesh("mesh has no triangles");
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    for (int v : tri) {
      if (v < 0 || v >= n) {
        throw InvalidMesh("triangle " + std::to_string(t) + " references vertex " +
                          std::to_string(v) + " outside [0, " + std::to_string(n) + ")");
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw InvalidMesh("triangle " + std::to_string(t) + " repeats a vertex");
    }
  }
  for (const auto& p : vertices_) {
    if (!p.allFinite()) throw InvalidMesh("vertex coordinates must be finite");
  }

  // vertex -> triangles
  tri_offsets_.assign(n + 1, 0);
  for (const auto& tri : triangles_)
    for (int v : tri) ++tri_offsets_[v + 1];
  std::partial_sum(tri_offsets_.begin(), tri_offsets_.end(), tri_offsets_.begin());
  incident_.resize(tri_offsets_.back());
  {
    std::vector<int> fill(tri_offsets_.begin(), tri_offsets_.end() - 1);
    for (int t = 0; t < num_triangles(); ++t)
      for (int v : triangles_[t]) incident_[fill[v]++] = t;
  }

  // vertex -> one ring (sorted, unique); symmetric by construction
  std::vector<std::vector<int>> rings(n);
  for (const auto& tri : triangles_) {
    for (int k = 0; k < 3; ++k) {
      rings[tri[k]].push_back(tri[(k + 1) % 3]);
      rings[tri[k]].push_back(tri[(k + 2) % 3]);
    }
  }
  ring_offsets_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) {
    auto& r = rings[v];
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    ring_offsets_[v + 1] = ring_offsets_[v] + static_cast<int>(r.size());
  }
  ring_.reserve(ring_offsets_.back());
  for (auto& r : rings) ring_.insert(ring_.end(), r.begin(), r.end());
}

std::span<const int> TriangleMesh::neighbors(int v) const {
  return {ring_.data() + ring_offsets_[v],
          static_cast<std::size_t>(ring_offsets_[v + 1] - ring_offsets_[v])};
}

std::span<const int> TriangleMesh::incident_triangles(int v) const {
  return {incident_.data() + tri_offsets_[v],
          static_cast<std::size_t>(tri_offsets_[v + 1] - tri_offsets_[v])};
}

double TriangleMesh::triangle_area(int t) const {
  const auto& tri = triangles_[t];
  const Point e1 = vertices_[tri[1]] - vertices_[tri[0]];
  const Point e2 = vertices_[tri[2]] - vertices_[tri[0]];
  return 0.5 * e1.cross(e2).norm();
}

double TriangleMesh::total_area() const {
  double a = 0.0;
  for (int t = 0; t < num_triangles(); ++t) a += triangle_area(t);
  return a;
}

double TriangleMesh::bounding_box_diagonal() const {
  Point lo = vertices_.front();
  Point hi = vertices_.front();
  for (const auto& p : vertices_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

std::vector<MeshEdge> mesh_edges(const TriangleMesh& mesh) {
  std::vector<std::pair<int, int>> all;
  all.reserve(3 * mesh.num_triangles());
  for (const auto& tri : mesh.triangles()) {
    for (int k = 0; k < 3; ++k) {
      int a = tri[k];
      int b = tri[(k + 1) % 3];
      all.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(all.begin(), all.end());
  std::vector<MeshEdge> edges;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    edges.push_back({all[i].first, all[i].second, static_cast<int>(j - i)});
    i = j;
  }
  return edges;
}

double degenerate_area_threshold(const TriangleMesh& mesh) {
  const double d = mesh.bounding_box_diagonal();
  return 1e-12 * d * d;
}

std::pair<std::vector<int>, int> connected_components(const TriangleMesh& mesh) {
  const int n = mesh.num_vertices();
  std::vector<int> comp(n, -1);
  int count = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : mesh.neighbors(v)) {
        if (comp[w] < 0) {
          comp[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  return {std::move(comp), count};
}

MeshReport validate(const TriangleMesh& mesh) {
  MeshReport report;
  report.num_vertices = mesh.num_vertices();
  report.num_triangles = mesh.num_triangles();
  const auto edges = mesh_edges(mesh);
  report.num_edges = static_cast<int>(edges.size());
  for (const auto& e : edges) {
    if (e.triangle_count == 1) ++report.boundary_edges;
    if (e.triangle_count > 2) report.non_manifold_edges.push_back(e);
  }
  report.connected_components = connected_components(mesh).second;
  for (int v = 0; v < mesh.num_vertices(); ++v)
    if (mesh.incident_triangles(v).empty()) ++report.isolated_vertices;
  report.degenerate_threshold = degenerate_area_threshold(mesh);
  for (int t = 0; t < mesh.num_triangles(); ++t)
    if (mesh.triangle_area(t) < report.degenerate_threshold) report.degenerate_triangles.push_back(t);
  return report;
}

DistanceMetric parse_distance_metric(const std::string& name) {
  if (name == "euclidean") return DistanceMetric::Euclidean;
  if (name == "geodesic" || name == "graph_geodesic") return DistanceMetric::GraphGeodesic;
  throw InvalidArgument("unknown distance metric '" + name + "'");
}

Vector graph_distances(const TriangleMesh& mesh, std::span<const int> sources) {
  const int n = mesh.num_vertices();
  Vector dist = Vector::Constant(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (int s : sources) {
    if (s < 0 || s >= n) throw InvalidArgument("source vertex out of range");
    dist[s] = 0.0;
    heap.emplace(0.0, s);
  }
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (int w : mesh.neighbors(v)) {
      const double nd = d + (mesh.vertex(v) - mesh.vertex(w)).norm();
      if (nd < dist[w]) {
        dist[w] = nd;
        heap.emplace(nd, w);
      }
    }
  }
  return dist;
}

DistanceResult vertex_distances(const TriangleMesh& mesh, int source, DistanceMetric metric) {
  const int n = mesh.num_vertices();
  if (source < 0 || source >= n) throw InvalidArgument("source vertex out of range");
  DistanceResult result;
  if (metric == DistanceMetric::Euclidean) {
    result.values.resize(n);
    for (int v = 0; v < n; ++v) result.values[v] = (mesh.vertex(v) - mesh.vertex(source)).norm();
  } else {
    const int src[] = {source};
    result.values = graph_distances(mesh, src);
    result.disconnected = !result.values.allFinite();
  }
  return result;
}

std::vector<int> hop_distances(const TriangleMesh& mesh, int source) {
  std::vector<int> hops(mesh.num_vertices(), -1);
  std::queue<int> queue;
  hops[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    for (int w : mesh.neighbors(v)) {
      if (hops[w] < 0) {
        hops[w] = hops[v] + 1;
        queue.push(w);
      }
    }
  }
  return hops;
}

std::pair<TriangleMesh, std::vector<int>> submesh(const TriangleMesh& mesh,
                                                  std::span<const int> keep_triangles) {
  std::vector<int> remap(mesh.num_vertices(), -1);
  std::vector<int> original;
  std::vector<Triangle> tris;
  tris.reserve(keep_triangles.size());
  // keep vertex order of the original mesh
  std::vector<char> used(mesh.num_vertices(), 0);
  for (int t : keep_triangles)
    for (int v : mesh.triangle(t)) used[v] = 1;
  std::vector<Point> verts;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (!used[v]) continue;
    remap[v] = static_cast<int>(verts.size());
    verts.push_back(mesh.vertex(v));
    original.push_back(v);
  }
  for (int t : keep_triangles) {
    const auto& tri = mesh.triangle(t);
    tris.push_back({remap[tri[0]], remap[tri[1]], remap[tri[2]]});
  }
  return {TriangleMesh(std::move(verts), std::move(tris)), std::move(original)};
}

}  // namespace specbasis
