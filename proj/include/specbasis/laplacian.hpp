#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "specbasis/mesh.hpp"
#include "specbasis/numerics.hpp"

namespace specbasis {

enum class LaplacianScheme { LinearFem, VoronoiCotangent, MeanValue };
enum class MassMode { Consistent, Lumped };

/// Accepts "fem"/"linear_fem", "cot"/"voronoi_cotangent", "meanvalue"/"mean_value".
LaplacianScheme parse_scheme(const std::string& name);
MassMode parse_mass_mode(const std::string& name);
std::string to_string(LaplacianScheme scheme);
std::string to_string(MassMode mode);

struct AssembleOptions {
  /// Rescale the mesh so its total area is one before assembly.
  bool normalize_area = false;
};

/// Stiffness L and mass B of the operator B^{-1} L.
///
/// L is symmetric PSD for the cotangent schemes. The mean-value stiffness is
/// row-normalised and not symmetric: it is kept as a general sparse matrix and
/// only serves harmonic solves.
class LaplacianOperator {
 public:
  LaplacianOperator(LaplacianScheme scheme, MassMode mass_mode, SparseMatrix L, SparseSymMatrix B);

  LaplacianScheme scheme() const { return scheme_; }
  MassMode mass_mode() const { return mass_mode_; }
  int size() const { return B_.size(); }
  bool symmetric() const { return scheme_ != LaplacianScheme::MeanValue; }

  /// Stiffness in general storage (valid for every scheme).
  const SparseMatrix& L() const { return *L_; }
  const SparseSymMatrix& B() const { return B_; }
  /// Stiffness as a symmetric matrix; throws SchemeNotSymmetric for mean-value.
  const SparseSymMatrix& stiffness() const;

  /// Cotangent weights that came out negative (obtuse opposite angles).
  int negative_weights = 0;
  /// Triangles skipped as degenerate.
  int degenerate_triangles = 0;
  /// Factor applied to coordinates when normalize_area was requested (else 1).
  double length_scale = 1.0;

  /// Largest generalised eigenvalue, estimated once and cached.
  double lambda_max() const;

 private:
  LaplacianScheme scheme_;
  MassMode mass_mode_;
  std::shared_ptr<const SparseMatrix> L_;
  SparseSymMatrix B_;
  SparseSymMatrix Lsym_;
  mutable double lambda_max_ = -1.0;
};

/// Assembles stiffness and mass. Degenerate triangles (see
/// degenerate_area_threshold) contribute nothing.
LaplacianOperator assemble(const TriangleMesh& mesh,
                           LaplacianScheme scheme = LaplacianScheme::LinearFem,
                           MassMode mass_mode = MassMode::Lumped, const AssembleOptions& options = {});

/// B^{-1} L f.
Vector apply(const LaplacianOperator& op, const Vector& f);

/// Solves B x = b (elementwise for lumped mass).
Vector mass_solve(const LaplacianOperator& op, const Vector& b);

/// Matrix Market coordinate text ("general" storage, 1-based indices).
std::string format_matrix_market(const SparseMatrix& m);
void export_matrix_market(const LaplacianOperator& op, const std::filesystem::path& stiffness_path,
                          const std::filesystem::path& mass_path);

}  // namespace specbasis
