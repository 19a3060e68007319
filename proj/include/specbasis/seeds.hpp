#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specbasis/laplacian.hpp"
#include "specbasis/mesh.hpp"

namespace specbasis {

/// Seed vertices in selection order.
struct SeedSet {
  std::vector<int> indices;
  std::string method;
  int start = -1;
  DistanceMetric metric = DistanceMetric::Euclidean;

  int size() const { return static_cast<int>(indices.size()); }
};

/// Half the norm of B^{-1} L applied to the coordinate functions: the mean
/// curvature magnitude on a closed surface.
Vector curvature_field(const TriangleMesh& mesh, const LaplacianOperator& op);

/// Vertex of maximum curvature (lowest index on ties).
int curvature_maximum(const TriangleMesh& mesh, const LaplacianOperator& op);

/// Greedy farthest point sampling from `start`; ties go to the lowest index.
SeedSet farthest_point_sampling(const TriangleMesh& mesh, int k, int start,
                                DistanceMetric metric = DistanceMetric::Euclidean);

/// Vertices where |field| exceeds tau * max |field|.
std::vector<int> support(const Vector& field, double tau);

using SeedGenerator = std::function<Vector(int seed)>;

struct CoverageResult {
  SeedSet seeds;
  std::vector<Vector> fields;
  /// Covered fraction after each round; strictly increasing, ends at 1.
  std::vector<double> history;
  double tau = 1e-3;
  int iterations() const { return static_cast<int>(history.size()); }
};

/// FPS from the curvature maximum, then rounds of: generate fields, find the
/// uncovered vertices, split them into connected components, and seed each
/// component at its vertex farthest (over mesh edges) from the covered set.
CoverageResult coverage_loop(const TriangleMesh& mesh, const LaplacianOperator& op, const SeedGenerator& generator,
                             int k0 = 10, double tau = 1e-3, DistanceMetric metric = DistanceMetric::Euclidean);

/// Fraction of vertices inside the union of the first k supports, k = 1..m.
std::vector<double> coverage_curve(const std::vector<Vector>& fields, double tau);

std::string format_seeds(const std::vector<int>& seeds);
std::vector<int> parse_seeds(const std::string& text);
std::vector<int> read_seeds(const std::filesystem::path& path);

}  // namespace specbasis
