#include <cmath>
#include <map>
#include <numbers>

#include "specbasis/errors.hpp"
#include "specbasis/mesh.hpp"

namespace specbasis {

TriangleMesh make_icosphere(int subdivisions, double radius) {
  if (subdivisions < 0) throw InvalidArgument("subdivisions must be >= 0");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Point> v = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1},
  };
  for (auto& p : v) p.normalize();
  std::vector<Triangle> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int id = static_cast<int>(v.size());
      v.push_back((v[a] + v[b]).normalized());
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<Triangle> next;
    next.reserve(4 * f.size());
    for (const auto& t : f) {
      const int ab = mid(t[0], t[1]);
      const int bc = mid(t[1], t[2]);
      const int ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    f = std::move(next);
  }
  for (auto& p : v) p *= radius;
  return TriangleMesh(std::move(v), std::move(f));
}

TriangleMesh make_torus(int major_segments, int minor_segments, double major_radius,
                        double minor_radius) {
  if (major_segments < 3 || minor_segments < 3) throw InvalidArgument("torus needs at least 3x3 segments");
  std::vector<Point> v;
  v.reserve(static_cast<std::size_t>(major_segments) * minor_segments);
  for (int i = 0; i < major_segments; ++i) {
    const double u = 2.0 * std::numbers::pi * i / major_segments;
    for (int j = 0; j < minor_segments; ++j) {
      const double w = 2.0 * std::numbers::pi * j / minor_segments;
      const double rr = major_radius + minor_radius * std::cos(w);
      v.emplace_back(rr * std::cos(u), rr * std::sin(u), minor_radius * std::sin(w));
    }
  }
  auto id = [&](int i, int j) { return (i % major_segments) * minor_segments + (j % minor_segments); };
  std::vector<Triangle> f;
  f.reserve(2 * v.size());
  for (int i = 0; i < major_segments; ++i) {
    for (int j = 0; j < minor_segments; ++j) {
      f.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      f.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return TriangleMesh(std::move(v), std::move(f));
}

TriangleMesh make_grid(int nx, int ny, double size) {
  if (nx < 1 || ny < 1) throw InvalidArgument("grid needs at least one cell");
  std::vector<Point> v;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) v.emplace_back(size * i / nx, size * j / ny, 0.0);
  auto id = [&](int i, int j) { return j * (nx + 1) + i; };
  std::vector<Triangle> f;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      f.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      f.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return TriangleMesh(std::move(v), std::move(f));
}

TriangleMesh make_unit_square() {
  return TriangleMesh({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, {{0, 1, 2}, {0, 2, 3}});
}

}  // namespace specbasis
