#include "specbasis/seeds.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "specbasis/errors.hpp"
#include "specbasis/export.hpp"

namespace specbasis {

Vector curvature_field(const TriangleMesh& mesh, const LaplacianOperator& op) {
  const int n = mesh.num_vertices();
  if (op.size() != n) throw DimensionMismatch("operator and mesh differ in size");
  Matrix P(n, 3);
  for (int v = 0; v < n; ++v) P.row(v) = mesh.vertex(v).transpose() * op.length_scale;
  const Matrix LP = op.stiffness() * P;
  Matrix lap(n, 3);
  for (int c = 0; c < 3; ++c) lap.col(c) = mass_solve(op, LP.col(c));
  return 0.5 * lap.rowwise().norm();
}

int curvature_maximum(const TriangleMesh& mesh, const LaplacianOperator& op) {
  const Vector h = curvature_field(mesh, op);
  int best = 0;
  for (int v = 1; v < h.size(); ++v)
    if (h[v] > h[best]) best = v;
  return best;
}

SeedSet farthest_point_sampling(const TriangleMesh& mesh, int k, int start, DistanceMetric metric) {
  const int n = mesh.num_vertices();
  if (k < 1 || k > n) throw InvalidArgument("seed count must lie in [1, n]");
  if (start < 0 || start >= n) throw InvalidArgument("start vertex out of range");
  SeedSet set;
  set.method = "fps";
  set.start = start;
  set.metric = metric;
  Vector mind = Vector::Constant(n, std::numeric_limits<double>::infinity());
  std::vector<char> chosen(n, 0);
  int next = start;
  for (int j = 0; j < k; ++j) {
    set.indices.push_back(next);
    chosen[next] = 1;
    if (j + 1 == k) break;
    const Vector d = vertex_distances(mesh, next, metric).values;
    mind = mind.cwiseMin(d);
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (chosen[v]) continue;
      if (best < 0 || mind[v] > mind[best]) best = v;
    }
    next = best;
  }
  return set;
}

std::vector<int> support(const Vector& field, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("support threshold must lie in (0, 1)");
  const double peak = field.size() ? field.cwiseAbs().maxCoeff() : 0.0;
  if (!(peak > 0.0)) throw ZeroField("field is identically zero");
  std::vector<int> out;
  for (int i = 0; i < field.size(); ++i)
    if (std::abs(field[i]) > tau * peak) out.push_back(i);
  return out;
}

CoverageResult coverage_loop(const TriangleMesh& mesh, const LaplacianOperator& op, const SeedGenerator& generator,
                             int k0, double tau, DistanceMetric metric) {
  const int n = mesh.num_vertices();
  if (!generator) throw InvalidArgument("coverage loop needs a field generator");
  CoverageResult result;
  result.tau = tau;
  k0 = std::clamp(k0, 1, n);
  result.seeds = farthest_point_sampling(mesh, k0, curvature_maximum(mesh, op), metric);
  result.seeds.method = "coverage";

  std::vector<char> covered(n, 0);
  int covered_count = 0;
  std::vector<int> pending = result.seeds.indices;
  while (true) {
    for (int s : pending) {
      Vector f = generator(s);
      if (f.size() != n) throw DimensionMismatch("generator returned a field of the wrong length");
      const auto sup = support(f, tau);
      if (!std::binary_search(sup.begin(), sup.end(), s))
        throw NoProgress("field generated at seed " + std::to_string(s) + " does not cover its seed");
      for (int v : sup)
        if (!covered[v]) {
          covered[v] = 1;
          ++covered_count;
        }
      result.fields.push_back(std::move(f));
    }
    const double fraction = static_cast<double>(covered_count) / n;
    if (!result.history.empty() && !(fraction > result.history.back()))
      throw NoProgress("coverage did not grow");
    result.history.push_back(fraction);
    if (covered_count == n) break;

    // Uncovered components and their representatives.
    std::vector<int> sources;
    for (int v = 0; v < n; ++v)
      if (covered[v]) sources.push_back(v);
    const Vector dist = graph_distances(mesh, sources);
    std::vector<int> comp(n, -1);
    pending.clear();
    for (int s = 0; s < n; ++s) {
      if (covered[s] || comp[s] >= 0) continue;
      int rep = s;
      std::vector<int> stack{s};
      comp[s] = s;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (dist[v] > dist[rep] || (dist[v] == dist[rep] && v < rep)) rep = v;
        for (int w : mesh.neighbors(v)) {
          if (covered[w] || comp[w] >= 0) continue;
          comp[w] = s;
          stack.push_back(w);
        }
      }
      pending.push_back(rep);
    }
    result.seeds.indices.insert(result.seeds.indices.end(), pending.begin(), pending.end());
  }
  return result;
}

std::vector<double> coverage_curve(const std::vector<Vector>& fields, double tau) {
  if (fields.empty()) throw InvalidArgument("coverage curve needs at least one field");
  const Eigen::Index n = fields.front().size();
  std::vector<char> covered(n, 0);
  int count = 0;
  std::vector<double> out;
  for (const auto& f : fields) {
    if (f.size() != n) throw DimensionMismatch("fields differ in length");
    for (int v : support(f, tau))
      if (!covered[v]) {
        covered[v] = 1;
        ++count;
      }
    out.push_back(static_cast<double>(count) / static_cast<double>(n));
  }
  return out;
}

std::string format_seeds(const std::vector<int>& seeds) {
  std::string out;
  for (int s : seeds) out += std::to_string(s) + "\n";
  return out;
}

std::vector<int> parse_seeds(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<int> out;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    int v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + b, line.data() + e + 1, v);
    if (ec != std::errc() || ptr != line.data() + e + 1)
      throw ParseError("seed file line " + std::to_string(line_no) + ": expected a vertex index");
    out.push_back(v);
  }
  return out;
}

std::vector<int> read_seeds(const std::filesystem::path& path) { return parse_seeds(read_text_file(path)); }

}  // namespace specbasis
