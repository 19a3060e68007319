#include "specbasis/metrics.hpp"

#include <cmath>
#include <random>
#include <string>

#include "specbasis/errors.hpp"

namespace specbasis {

namespace {

void check_pair(const LaplacianOperator& op, const Vector& f, const Vector& g) {
  if (f.size() != op.size() || g.size() != op.size()) throw DimensionMismatch("fields must live on the operator's mesh");
}

}  // namespace

double area_metric(const LaplacianOperator& op, const Vector& f, const Vector& g) {
  check_pair(op, f, g);
  return f.dot(op.B() * g);
}

double conformal_metric(const LaplacianOperator& op, const Vector& f, const Vector& g) {
  check_pair(op, f, g);
  return f.dot(op.stiffness() * g);
}

void check_adjoint(const LaplacianOperator& op, const KernelApply& kernel, const AdjointProbe& probe) {
  if (!kernel) throw InvalidArgument("kernel metric needs a kernel operator");
  std::mt19937 rng(probe.seed);
  std::normal_distribution<double> nd;
  const int n = op.size();
  for (int k = 0; k < probe.probes; ++k) {
    Vector p(n), q(n);
    for (int i = 0; i < n; ++i) p[i] = nd(rng);
    for (int i = 0; i < n; ++i) q[i] = nd(rng);
    const Vector Kp = kernel(p);
    const Vector Kq = kernel(q);
    const double a = p.dot(op.B() * Kq);
    const double b = Kp.dot(op.B() * q);
    const double scale = std::sqrt(p.dot(op.B() * p)) * std::sqrt(Kq.dot(op.B() * Kq)) +
                         std::sqrt(q.dot(op.B() * q)) * std::sqrt(Kp.dot(op.B() * Kp));
    if (std::abs(a - b) > probe.tol * scale)
      throw NotAdjoint("kernel is not B-adjoint: probe mismatch " + std::to_string(std::abs(a - b) / scale));
  }
}

double kernel_metric(const LaplacianOperator& op, const KernelApply& kernel, const Vector& f, const Vector& g,
                     const AdjointProbe& probe) {
  check_pair(op, f, g);
  check_adjoint(op, kernel, probe);
  return f.dot(op.B() * kernel(g));
}

MetricKind parse_metric_kind(const std::string& name) {
  if (name == "area") return MetricKind::Area;
  if (name == "conformal") return MetricKind::Conformal;
  if (name == "kernel") return MetricKind::Kernel;
  throw InvalidArgument("unknown metric '" + name + "'");
}

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::Area: return "area";
    case MetricKind::Conformal: return "conformal";
    case MetricKind::Kernel: return "kernel";
  }
  return "?";
}

Vector normalize_unit_range(const Vector& f) {
  if (f.size() == 0) return f;
  const double lo = f.minCoeff();
  const double hi = f.maxCoeff();
  if (!(hi > lo)) return Vector::Zero(f.size());
  return (f.array() - lo) / (hi - lo);
}

ComparisonMatrix comparison_matrix(const LaplacianOperator& op, const std::vector<Vector>& fields,
                                   MetricKind metric, const KernelApply& kernel,
                                   const std::vector<std::string>& ids, const ComparisonOptions& options) {
  if (fields.empty()) throw InvalidArgument("comparison needs at least one field");
  if (!ids.empty() && ids.size() != fields.size()) throw InvalidArgument("one id per field is required");
  const int n = op.size();
  const int m = static_cast<int>(fields.size());
  Matrix F(n, m);
  for (int j = 0; j < m; ++j) {
    if (fields[j].size() != n) throw DimensionMismatch("field " + std::to_string(j) + " has the wrong length");
    F.col(j) = options.normalize ? normalize_unit_range(fields[j]) : fields[j];
  }
  Matrix G;
  switch (metric) {
    case MetricKind::Area: G = op.B() * F; break;
    case MetricKind::Conformal: G = op.stiffness() * F; break;
    case MetricKind::Kernel: {
      check_adjoint(op, kernel, options.probe);
      Matrix KF(n, m);
      for (int j = 0; j < m; ++j) KF.col(j) = kernel(F.col(j));
      G = op.B() * KF;
      break;
    }
  }
  ComparisonMatrix out;
  out.values = F.transpose() * G;
  out.metric = metric;
  out.normalized = options.normalize;
  if (ids.empty()) {
    for (int j = 0; j < m; ++j) out.field_ids.push_back("field_" + std::to_string(j));
  } else {
    out.field_ids = ids;
  }
  return out;
}

}  // namespace specbasis
