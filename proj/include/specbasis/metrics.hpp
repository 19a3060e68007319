#pragma once

#include <functional>
#include <string>
#include <vector>

#include "specbasis/laplacian.hpp"

namespace specbasis {

/// g -> K g for some kernel operator K.
using KernelApply = std::function<Vector(const Vector&)>;

/// f^T B g.
double area_metric(const LaplacianOperator& op, const Vector& f, const Vector& g);

/// f^T L g. Throws SchemeNotSymmetric for the mean-value operator.
double conformal_metric(const LaplacianOperator& op, const Vector& f, const Vector& g);

struct AdjointProbe {
  int probes = 2;
  double tol = 1e-8;
  unsigned seed = 99;
};

/// Checks |<p, K q>_B - <K p, q>_B| <= tol * |p|_B |K q|_B on random probes and
/// throws NotAdjoint otherwise.
void check_adjoint(const LaplacianOperator& op, const KernelApply& kernel, const AdjointProbe& probe = {});

/// f^T B (K g). The kernel is probed for B-adjointness first.
double kernel_metric(const LaplacianOperator& op, const KernelApply& kernel, const Vector& f, const Vector& g,
                     const AdjointProbe& probe = {});

enum class MetricKind { Area, Conformal, Kernel };

MetricKind parse_metric_kind(const std::string& name);
std::string to_string(MetricKind kind);

struct ComparisonMatrix {
  Matrix values;
  MetricKind metric = MetricKind::Area;
  std::vector<std::string> field_ids;
  /// Fields were rescaled to [0, 1] before comparison.
  bool normalized = false;
};

struct ComparisonOptions {
  bool normalize = false;
  AdjointProbe probe;
};

/// All pairwise metric values with m kernel applications and m^2 dot products.
ComparisonMatrix comparison_matrix(const LaplacianOperator& op, const std::vector<Vector>& fields,
                                   MetricKind metric, const KernelApply& kernel = {},
                                   const std::vector<std::string>& ids = {}, const ComparisonOptions& options = {});

/// (f - min f) / (max f - min f); constant fields map to zero.
Vector normalize_unit_range(const Vector& f);

}  // namespace specbasis
