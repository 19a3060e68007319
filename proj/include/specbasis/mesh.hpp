#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace specbasis {

using Vector = Eigen::VectorXd;
using Point = Eigen::Vector3d;
using Triangle = std::array<int, 3>;

/// One vertex-indexed real function together with a short note on where it came from.
struct ScalarField {
  Vector values;
  std::string provenance;

  Eigen::Index size() const { return values.size(); }
  double operator[](Eigen::Index i) const { return values[i]; }
};

/// Immutable triangle mesh with vertex adjacency.
///
/// Construction validates the connectivity (indices in range, no repeated vertex
/// inside a triangle, at least three vertices and one triangle) and derives the
/// one-ring neighbourhoods and vertex/triangle incidence in CSR form.
class TriangleMesh {
 public:
  TriangleMesh(std::vector<Point> vertices, std::vector<Triangle> triangles,
               std::vector<std::string> load_warnings = {});

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const Point& vertex(int v) const { return vertices_[v]; }
  const Triangle& triangle(int t) const { return triangles_[t]; }

  /// Sorted one-ring neighbours of v.
  std::span<const int> neighbors(int v) const;
  /// Triangles incident to v, in ascending index order.
  std::span<const int> incident_triangles(int v) const;

  double triangle_area(int t) const;
  double total_area() const;
  double bounding_box_diagonal() const;

  /// Warnings recorded while loading (e.g. fan-triangulated quads).
  const std::vector<std::string>& load_warnings() const { return warnings_; }

 private:
  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<int> ring_offsets_, ring_;
  std::vector<int> tri_offsets_, incident_;
  std::vector<std::string> warnings_;
};

/// An undirected edge (lo < hi) with the number of incident triangles.
struct MeshEdge {
  int lo = 0;
  int hi = 0;
  int triangle_count = 0;
};

/// Unique undirected edges in lexicographic (lo, hi) order.
std::vector<MeshEdge> mesh_edges(const TriangleMesh& mesh);

struct MeshReport {
  int num_vertices = 0;
  int num_triangles = 0;
  int num_edges = 0;
  int boundary_edges = 0;
  int connected_components = 0;
  int isolated_vertices = 0;
  double degenerate_threshold = 0.0;
  std::vector<int> degenerate_triangles;
  std::vector<MeshEdge> non_manifold_edges;
};

/// Area below which a triangle is treated as degenerate: 1e-12 * bbox_diagonal^2.
double degenerate_area_threshold(const TriangleMesh& mesh);

/// Inspects the mesh without modifying it. Problems are reported, never thrown.
MeshReport validate(const TriangleMesh& mesh);

/// Connected component id per vertex (over triangle edges) and the component count.
std::pair<std::vector<int>, int> connected_components(const TriangleMesh& mesh);

enum class MeshFormat { Auto, OFF, OBJ, PLY };

MeshFormat parse_mesh_format(const std::string& name);

/// Reads OFF, OBJ (v/f records) or ASCII PLY. Quads are fan-triangulated with a
/// warning; larger polygons raise UnsupportedFeature.
TriangleMesh load_mesh(const std::filesystem::path& path, MeshFormat format = MeshFormat::Auto);

/// Parses mesh text already in memory.
TriangleMesh parse_mesh(const std::string& text, MeshFormat format);

/// Writes OFF with 9 significant digits per coordinate.
void save_off(const TriangleMesh& mesh, const std::filesystem::path& path);
std::string format_off(const TriangleMesh& mesh);

/// Writes ASCII PLY; when colors are given (one RGB per vertex) they are stored
/// as uchar red/green/blue vertex properties.
void save_ply(const TriangleMesh& mesh, const std::filesystem::path& path,
              std::span<const std::array<std::uint8_t, 3>> colors = {});

enum class DistanceMetric { Euclidean, GraphGeodesic };

DistanceMetric parse_distance_metric(const std::string& name);

struct DistanceResult {
  Vector values;
  /// True when some vertex is unreachable; those entries hold +infinity.
  bool disconnected = false;
};

/// Distances from `source`: straight-line, or single-source shortest paths over
/// edge lengths.
DistanceResult vertex_distances(const TriangleMesh& mesh, int source, DistanceMetric metric);

/// Multi-source shortest-path distances over mesh edges (edge-length weights).
Vector graph_distances(const TriangleMesh& mesh, std::span<const int> sources);

/// Breadth-first hop counts from `source`; -1 for unreachable vertices.
std::vector<int> hop_distances(const TriangleMesh& mesh, int source);

/// Keeps the listed triangles and drops vertices no longer referenced. The
/// returned map gives, for each new vertex, its index in the original mesh.
std::pair<TriangleMesh, std::vector<int>> submesh(const TriangleMesh& mesh,
                                                  std::span<const int> keep_triangles);

// Procedural meshes used by the CLI generator and the test suites.

/// Subdivided icosahedron projected to a sphere. Level 0 has 12 vertices,
/// level L has 10 * 4^L + 2. Coarser-level vertices keep their indices.
TriangleMesh make_icosphere(int subdivisions, double radius = 1.0);

/// Torus around the z axis, `major_segments` x `minor_segments` vertices.
TriangleMesh make_torus(int major_segments, int minor_segments, double major_radius,
                        double minor_radius);

/// Regular grid on [0, size]^2 in the z = 0 plane, (nx + 1) x (ny + 1) vertices,
/// each cell split on the diagonal from (i, j) to (i + 1, j + 1).
TriangleMesh make_grid(int nx, int ny, double size = 1.0);

/// Unit square with vertices (0,0,0), (1,0,0), (1,1,0), (0,1,0) and the diagonal 0-2.
TriangleMesh make_unit_square();

}  // namespace specbasis
