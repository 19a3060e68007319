#include "specbasis/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "specbasis/errors.hpp"
#include "specbasis/export.hpp"

namespace specbasis {

LaplacianScheme parse_scheme(const std::string& name) {
  if (name == "fem" || name == "linear_fem") return LaplacianScheme::LinearFem;
  if (name == "cot" || name == "voronoi_cotangent") return LaplacianScheme::VoronoiCotangent;
  if (name == "meanvalue" || name == "mean_value") return LaplacianScheme::MeanValue;
  throw InvalidArgument("unknown Laplacian scheme '" + name + "'");
}

MassMode parse_mass_mode(const std::string& name) {
  if (name == "lumped") return MassMode::Lumped;
  if (name == "consistent") return MassMode::Consistent;
  throw InvalidArgument("unknown mass mode '" + name + "'");
}

std::string to_string(LaplacianScheme scheme) {
  switch (scheme) {
    case LaplacianScheme::LinearFem: return "linear_fem";
    case LaplacianScheme::VoronoiCotangent: return "voronoi_cotangent";
    case LaplacianScheme::MeanValue: return "mean_value";
  }
  return "?";
}

std::string to_string(MassMode mode) { return mode == MassMode::Lumped ? "lumped" : "consistent"; }

LaplacianOperator::LaplacianOperator(LaplacianScheme scheme, MassMode mass_mode, SparseMatrix L,
                                     SparseSymMatrix B)
    : scheme_(scheme), mass_mode_(mass_mode), B_(std::move(B)) {
  if (L.rows() != B_.size() || L.cols() != B_.size()) throw DimensionMismatch("L and B differ in size");
  L.makeCompressed();
  if (scheme_ != LaplacianScheme::MeanValue) Lsym_ = SparseSymMatrix(L, Definiteness::PositiveSemiDefinite);
  L_ = std::make_shared<const SparseMatrix>(std::move(L));
}

const SparseSymMatrix& LaplacianOperator::stiffness() const {
  if (!symmetric()) throw SchemeNotSymmetric("the mean-value stiffness is not symmetric");
  return Lsym_;
}

double LaplacianOperator::lambda_max() const {
  if (lambda_max_ < 0.0) lambda_max_ = largest_eigenvalue(stiffness(), B_);
  return lambda_max_;
}

namespace {

double cot_at(const Point& apex, const Point& a, const Point& b) {
  const Point u = a - apex;
  const Point v = b - apex;
  return u.dot(v) / u.cross(v).norm();
}

double tan_half_at(const Point& apex, const Point& a, const Point& b) {
  const Point u = a - apex;
  const Point v = b - apex;
  // tan(theta/2) = (1 - cos) / sin = (|u||v| - u.v) / |u x v|
  return (u.norm() * v.norm() - u.dot(v)) / u.cross(v).norm();
}

}  // namespace

LaplacianOperator assemble(const TriangleMesh& mesh, LaplacianScheme scheme, MassMode mass_mode,
                           const AssembleOptions& options) {
  const int n = mesh.num_vertices();
  if (n == 0 || mesh.num_triangles() == 0) throw EmptyMesh("mesh has no vertices or triangles");
  if (scheme != LaplacianScheme::LinearFem && mass_mode == MassMode::Consistent)
    throw InvalidArgument(to_string(scheme) + " uses the lumped mass matrix only");

  const double threshold = degenerate_area_threshold(mesh);
  double s2 = 1.0;
  if (options.normalize_area) {
    const double area = mesh.total_area();
    if (!(area > 0.0)) throw AllDegenerate("mesh has zero area");
    s2 = 1.0 / area;
  }

  std::vector<Eigen::Triplet<double>> lt, bt;
  lt.reserve(12 * mesh.num_triangles());
  bt.reserve(9 * mesh.num_triangles());
  int degenerate = 0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double area = mesh.triangle_area(t);
    if (!(area >= threshold) || area == 0.0) {
      ++degenerate;
      continue;
    }
    const auto& tri = mesh.triangle(t);
    const double a = area * s2;
    for (int c = 0; c < 3; ++c) {
      const int i = tri[c];
      const int j = tri[(c + 1) % 3];
      const int k = tri[(c + 2) % 3];
      if (scheme == LaplacianScheme::MeanValue) {
        // angle at i, shared by edges (i,j) and (i,k)
        const double th = tan_half_at(mesh.vertex(i), mesh.vertex(j), mesh.vertex(k));
        lt.emplace_back(i, j, -th / (mesh.vertex(j) - mesh.vertex(i)).norm());
        lt.emplace_back(i, k, -th / (mesh.vertex(k) - mesh.vertex(i)).norm());
      } else {
        // corner i is opposite edge (j,k)
        const double w = 0.5 * cot_at(mesh.vertex(i), mesh.vertex(j), mesh.vertex(k));
        lt.emplace_back(j, k, -w);
        lt.emplace_back(k, j, -w);
        lt.emplace_back(j, j, w);
        lt.emplace_back(k, k, w);
      }
      if (mass_mode == MassMode::Lumped) {
        bt.emplace_back(i, i, a / 3.0);
      } else {
        bt.emplace_back(i, i, a / 6.0);
        bt.emplace_back(i, j, a / 12.0);
        bt.emplace_back(j, i, a / 12.0);
      }
    }
  }
  if (degenerate == mesh.num_triangles()) throw AllDegenerate("every triangle is degenerate");

  SparseMatrix L(n, n), B(n, n);
  L.setFromTriplets(lt.begin(), lt.end());
  B.setFromTriplets(bt.begin(), bt.end());
  B.makeCompressed();

  int negative = 0;
  if (scheme == LaplacianScheme::MeanValue) {
    // Row-normalise the positive weights: L = I - W / rowsum(W).
    Vector rowsum = Vector::Zero(n);
    for (int k = 0; k < L.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(L, k); it; ++it) rowsum[it.row()] -= it.value();
    std::vector<Eigen::Triplet<double>> nt;
    for (int k = 0; k < L.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(L, k); it; ++it)
        nt.emplace_back(it.row(), it.col(), it.value() / rowsum[it.row()]);
    for (int i = 0; i < n; ++i)
      if (rowsum[i] > 0.0) nt.emplace_back(i, i, 1.0);
    L.setZero();
    L.setFromTriplets(nt.begin(), nt.end());
  } else {
    for (int k = 0; k < L.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(L, k); it; ++it)
        if (it.row() < it.col() && it.value() > 0.0) ++negative;
  }
  L.prune(0.0);
  // Exact zero row sums: recompute each diagonal from its off-diagonals.
  {
    Vector off = Vector::Zero(n);
    for (int k = 0; k < L.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(L, k); it; ++it)
        if (it.row() != it.col()) off[it.row()] += it.value();
    for (int k = 0; k < L.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(L, k); it; ++it)
        if (it.row() == it.col()) it.valueRef() = -off[it.row()];
  }

  const Vector bd = B.diagonal();
  for (int i = 0; i < n; ++i)
    if (!(bd[i] > 0.0)) throw InvalidMesh("vertex " + std::to_string(i) + " has zero mass (isolated or only degenerate triangles)");

  LaplacianOperator op(scheme, mass_mode, std::move(L), SparseSymMatrix(std::move(B), Definiteness::PositiveDefinite));
  op.negative_weights = negative;
  op.degenerate_triangles = degenerate;
  op.length_scale = std::sqrt(s2);
  return op;
}

Vector mass_solve(const LaplacianOperator& op, const Vector& b) {
  if (b.size() != op.size()) throw DimensionMismatch("field length does not match operator");
  if (op.mass_mode() == MassMode::Lumped) return b.cwiseQuotient(op.B().diagonal());
  SolveOptions so;
  so.tol = 1e-13;
  return solve_spd(op.B(), b, so);
}

Vector apply(const LaplacianOperator& op, const Vector& f) {
  if (f.size() != op.size()) throw DimensionMismatch("field length does not match operator");
  return mass_solve(op, op.L() * f);
}

std::string format_matrix_market(const SparseMatrix& m) {
  std::string out = "%%MatrixMarket matrix coordinate real general\n";
  out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " + std::to_string(m.nonZeros()) + "\n";
  // row-major order for stable, readable output
  std::vector<std::tuple<int, int, double>> entries;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      entries.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  std::sort(entries.begin(), entries.end());
  for (const auto& [i, j, v] : entries)
    out += std::to_string(i + 1) + " " + std::to_string(j + 1) + " " + format_double(v) + "\n";
  return out;
}

void export_matrix_market(const LaplacianOperator& op, const std::filesystem::path& stiffness_path,
                          const std::filesystem::path& mass_path) {
  write_file_atomic(stiffness_path, format_matrix_market(op.L()));
  write_file_atomic(mass_path, format_matrix_market(op.B().matrix()));
}

}  // namespace specbasis
