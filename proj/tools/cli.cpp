#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "specbasis/basis.hpp"
#include "specbasis/errors.hpp"
#include "specbasis/export.hpp"
#include "specbasis/metrics.hpp"
#include "specbasis/seeds.hpp"

namespace specbasis::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Globals {
  std::string mesh;
  std::string scheme = "fem";
  std::string mass = "lumped";
  std::string out = ".";
  std::vector<std::string> formats{"csv"};
  bool normalize_area = false;

  bool wants(const std::string& f) const { return std::find(formats.begin(), formats.end(), f) != formats.end(); }
};

/// Output directory plus the manifest that lists every file written to it.
class Run {
 public:
  Run(const Globals& g, std::string command, std::ostream& out) : g_(g), out_(out) {
    dir_ = g.out;
    fs::create_directories(dir_);
    manifest_["command"] = std::move(command);
  }

  json& manifest() { return manifest_; }

  void write(const std::string& name, const std::string& content) {
    write_file_atomic(dir_ / name, content);
    manifest_["outputs"].push_back({{"file", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
    out_ << (dir_ / name).string() << "\n";
  }

  void finish() {
    if (!manifest_.contains("outputs")) manifest_["outputs"] = json::array();
    write_file_atomic(dir_ / "manifest.json", manifest_.dump(2) + "\n");
    out_ << (dir_ / "manifest.json").string() << "\n";
  }

 private:
  const Globals& g_;
  std::ostream& out_;
  fs::path dir_;
  json manifest_;
};

/// Mesh, operator and the bookkeeping shared by every mesh-based command.
struct Loaded {
  std::optional<TriangleMesh> mesh;
  std::optional<LaplacianOperator> op;
};

Loaded load(const Globals& g, Run& run) {
  if (g.mesh.empty()) throw InvalidArgument("--mesh is required");
  auto t0 = Clock::now();
  const std::string text = read_text_file(g.mesh);
  Loaded l;
  l.mesh.emplace(load_mesh(g.mesh));
  const double t_load = seconds_since(t0);
  t0 = Clock::now();
  AssembleOptions opts;
  opts.normalize_area = g.normalize_area;
  l.op.emplace(assemble(*l.mesh, parse_scheme(g.scheme), parse_mass_mode(g.mass), opts));
  auto& m = run.manifest();
  m["mesh"] = {{"path", g.mesh},
               {"sha256", sha256_hex(text)},
               {"vertices", l.mesh->num_vertices()},
               {"triangles", l.mesh->num_triangles()}};
  m["operator"] = {{"scheme", to_string(l.op->scheme())},
                   {"mass", to_string(l.op->mass_mode())},
                   {"normalize_area", g.normalize_area},
                   {"negative_weights", l.op->negative_weights},
                   {"degenerate_triangles", l.op->degenerate_triangles}};
  m["timings"]["load_s"] = t_load;
  m["timings"]["assemble_s"] = seconds_since(t0);
  m["warnings"] = l.mesh->load_warnings();
  return l;
}

std::vector<int> gather_seeds(const std::vector<int>& listed, const std::string& file) {
  std::vector<int> seeds = listed;
  if (!file.empty()) {
    const auto more = read_seeds(file);
    seeds.insert(seeds.end(), more.begin(), more.end());
  }
  return seeds;
}

void write_fields(Run& run, const Globals& g, const TriangleMesh& mesh, const std::vector<ScalarField>& fields,
                  const std::vector<std::string>& stems) {
  json all = json::array();
  for (std::size_t j = 0; j < fields.size(); ++j) {
    const Vector& v = fields[j].values;
    if (g.wants("csv")) run.write(stems[j] + ".csv", format_field_csv(v));
    if (g.wants("ply")) {
      const auto colors = color_ramp(v);
      const fs::path tmp = fs::path(g.out) / (stems[j] + ".ply.build");
      save_ply(mesh, tmp, colors);
      const std::string content = read_text_file(tmp);
      fs::remove(tmp);
      run.write(stems[j] + ".ply", content);
    }
    if (g.wants("json")) all.push_back({{"id", stems[j]}, {"provenance", fields[j].provenance},
                                        {"values", std::vector<double>(v.data(), v.data() + v.size())}});
  }
  if (g.wants("json")) run.write("fields.json", all.dump() + "\n");
}

json spectrum_json(const EigenSystem& eig) {
  json s;
  s["values"] = std::vector<double>(eig.values.data(), eig.values.data() + eig.values.size());
  s["residuals"] = std::vector<double>(eig.residuals.data(), eig.residuals.data() + eig.residuals.size());
  s["next_value"] = eig.next_value ? json(*eig.next_value) : json(nullptr);
  json clusters = json::array();
  for (auto [first, count] : eig.clusters) clusters.push_back({{"first", first}, {"count", count}});
  s["clusters"] = clusters;
  return s;
}

DiffusionMethod parse_method(const std::string& m) {
  if (m == "chebyshev") return DiffusionMethod::Chebyshev;
  if (m == "truncated") return DiffusionMethod::Truncated;
  throw InvalidArgument("unknown method '" + m + "'");
}

GreenRole parse_role(const std::string& r) {
  if (r == "harmonic") return GreenRole::Harmonic;
  if (r == "diffusion") return GreenRole::Diffusion;
  if (r == "general") return GreenRole::General;
  throw InvalidArgument("unknown green role '" + r + "'");
}

void add_params(json& m, const BasisSet& set) {
  for (const auto& [k, v] : set.parameters) m["parameters"][k] = v;
  for (const auto& w : set.warnings) m["warnings"].push_back(w);
}

struct BasisArgs {
  std::vector<int> seeds;
  std::string seeds_file;
  double t = 0.1;
  std::string method = "chebyshev";
  int k = 100;
  int r = 5;
  std::string filter = "exp:t=0.1";
  double mu = 1.0;
  std::string potential;
  std::string role = "harmonic";
};

void cmd_basis(const std::string& kind, const Globals& g, const BasisArgs& a, std::ostream& out) {
  Run run(g, "basis " + kind, out);
  auto l = load(g, run);
  const auto& mesh = *l.mesh;
  const auto& op = *l.op;
  auto& m = run.manifest();
  const auto seeds = gather_seeds(a.seeds, a.seeds_file);
  auto t0 = Clock::now();
  std::vector<ScalarField> fields;
  std::vector<std::string> stems;
  auto stem_per_seed = [&](const std::string& prefix) {
    for (int s : seeds) stems.push_back(prefix + "_" + std::to_string(s));
  };

  if (kind == "harmonic" || kind == "hamiltonian") {
    BasisSet set;
    if (kind == "harmonic") {
      set = harmonic_basis(op, seeds);
    } else {
      if (a.potential.empty()) throw InvalidArgument("hamiltonian basis needs --potential");
      set = hamiltonian_basis(op, read_field_csv(a.potential), a.mu, seeds);
      m["parameters"]["potential"] = a.potential;
    }
    add_params(m, set);
    fields = set.fields;
    stem_per_seed(kind);
  } else if (kind == "eigen") {
    const EigenSystem eig = eigen_basis(op, a.k);
    m["parameters"]["k"] = a.k;
    m["residuals"]["max_eigen_residual"] = eig.residuals.size() ? eig.residuals.maxCoeff() : 0.0;
    for (int j = 0; j < eig.size(); ++j) {
      fields.push_back({eig.vectors.col(j), "eigenvector " + std::to_string(j)});
      stems.push_back("eigen_" + std::to_string(j));
    }
    run.write("spectrum.json", spectrum_json(eig).dump(2) + "\n");
  } else if (kind == "diffusion") {
    DiffusionOptions d;
    d.method = parse_method(a.method);
    d.r = a.r;
    d.k = a.k;
    const BasisSet set = diffusion_set(op, a.t, seeds, d);
    add_params(m, set);
    fields = set.fields;
    stem_per_seed("diffusion");
  } else if (kind == "spectral") {
    const FilterSpec filter = parse_filter(a.filter);
    m["parameters"]["filter"] = filter.describe();
    m["parameters"]["method"] = a.method;
    if (seeds.empty()) throw InvalidArgument("spectral basis needs at least one seed");
    if (parse_method(a.method) == DiffusionMethod::Chebyshev) {
      RationalFilterOperator K(op, rational_form(filter, a.r));
      m["parameters"]["path"] = filter.kind == FilterKind::Rational ? "exact_rational" : "pade_chebyshev";
      if (filter.kind != FilterKind::Rational) m["parameters"]["r"] = a.r;
      for (int s : seeds) {
        if (s < 0 || s >= op.size()) throw InvalidArgument("seed " + std::to_string(s) + " out of range");
        Vector e = Vector::Zero(op.size());
        e[s] = 1.0;
        fields.push_back({K.apply(e), "spectral " + filter.describe()});
      }
      m["residuals"]["max_shift_residual"] = K.max_residual();
      m["residuals"]["max_imaginary"] = K.max_imaginary();
    } else {
      const EigenSystem eig = eigen_basis(op, a.k);
      m["parameters"]["path"] = "truncated";
      m["parameters"]["k"] = a.k;
      bool deflated = false;
      for (int s : seeds) {
        if (s < 0 || s >= op.size()) throw InvalidArgument("seed " + std::to_string(s) + " out of range");
        Vector e = Vector::Zero(op.size());
        e[s] = 1.0;
        fields.push_back({truncated_spectral(op, eig, filter, e, &deflated), "spectral " + filter.describe()});
      }
      m["parameters"]["deflated"] = deflated;
    }
    stem_per_seed("spectral");
  } else if (kind == "green") {
    GreenOptions o;
    o.role = parse_role(a.role);
    o.t = a.t;
    o.r = a.r;
    if (o.role == GreenRole::General) o.filter = parse_filter(a.filter);
    m["parameters"]["role"] = a.role;
    if (seeds.empty()) throw InvalidArgument("green basis needs at least one seed");
    for (int s : seeds) fields.push_back(green_column(op, s, o));
    stem_per_seed("green");
  } else {
    throw InvalidArgument("unknown basis kind '" + kind + "'");
  }
  m["seeds"] = seeds;
  m["timings"]["compute_s"] = seconds_since(t0);
  write_fields(run, g, mesh, fields, stems);
  run.finish();
}

struct MetricArgs {
  std::string metric = "area";
  std::vector<std::string> field_files;
  std::string generate;
  std::vector<int> seeds;
  int fps = 0;
  double t = 1e-3;
  int k = 20;
  int r = 5;
  double kernel_t = 0.1;
  bool normalize = false;
};

void cmd_metrics(const Globals& g, const MetricArgs& a, std::ostream& out) {
  Run run(g, "metrics " + a.metric, out);
  auto l = load(g, run);
  const auto& op = *l.op;
  auto& m = run.manifest();
  auto t0 = Clock::now();
  std::vector<Vector> fields;
  std::vector<std::string> ids;
  if (!a.field_files.empty()) {
    for (const auto& f : a.field_files) {
      fields.push_back(read_field_csv(f));
      ids.push_back(fs::path(f).stem().string());
    }
  } else if (a.generate == "diffusion") {
    std::vector<int> seeds = a.seeds;
    if (a.fps > 0) seeds = farthest_point_sampling(*l.mesh, a.fps, curvature_maximum(*l.mesh, op)).indices;
    const BasisSet set = diffusion_set(op, a.t, seeds);
    add_params(m, set);
    for (std::size_t j = 0; j < seeds.size(); ++j) {
      fields.push_back(set.fields[j].values);
      ids.push_back("diffusion_" + std::to_string(seeds[j]));
    }
    m["seeds"] = seeds;
  } else if (a.generate == "eigen") {
    const EigenSystem eig = eigen_basis(op, a.k);
    for (int j = 0; j < eig.size(); ++j) {
      fields.push_back(eig.vectors.col(j));
      ids.push_back("eigen_" + std::to_string(j));
    }
    m["parameters"]["k"] = a.k;
  } else {
    throw InvalidArgument("metrics needs --field files or --generate {diffusion,eigen}");
  }
  const MetricKind kind = parse_metric_kind(a.metric);
  KernelApply kernel;
  std::optional<RationalFilterOperator> K;
  if (kind == MetricKind::Kernel) {
    K.emplace(op, rational_form(FilterSpec::exponential(a.kernel_t), a.r));
    kernel = [&K](const Vector& f) { return K->apply(f); };
    m["parameters"]["kernel"] = FilterSpec::exponential(a.kernel_t).describe();
  }
  ComparisonOptions opts;
  opts.normalize = a.normalize;
  const ComparisonMatrix cm = comparison_matrix(op, fields, kind, kernel, ids, opts);
  m["parameters"]["metric"] = to_string(kind);
  m["parameters"]["normalized"] = cm.normalized;
  m["field_ids"] = cm.field_ids;
  m["timings"]["compute_s"] = seconds_since(t0);
  run.write("matrix.csv", format_matrix_csv(cm.values));
  run.write("matrix.pgm", format_pgm(cm.values));
  run.finish();
}

std::string curve_csv(const std::vector<double>& curve) {
  std::string s = "k,fraction\n";
  for (std::size_t j = 0; j < curve.size(); ++j) s += std::to_string(j + 1) + "," + format_double(curve[j]) + "\n";
  return s;
}

struct SeedArgs {
  int k = 10;
  int start = -1;
  std::string metric = "euclidean";
  std::optional<double> t;
  double tau = 1e-3;
  int r = 5;
  int k0 = 10;
};

void cmd_seeds(const Globals& g, const SeedArgs& a, std::ostream& out) {
  Run run(g, "seeds", out);
  auto l = load(g, run);
  auto& m = run.manifest();
  auto t0 = Clock::now();
  const int start = a.start >= 0 ? a.start : curvature_maximum(*l.mesh, *l.op);
  const SeedSet set = farthest_point_sampling(*l.mesh, a.k, start, parse_distance_metric(a.metric));
  m["parameters"] = {{"k", a.k}, {"start", start}, {"metric", a.metric}};
  m["seeds"] = set.indices;
  run.write("seeds.txt", format_seeds(set.indices));
  if (a.t) {
    DiffusionOptions d;
    d.r = a.r;
    const BasisSet fields = diffusion_set(*l.op, *a.t, set.indices, d);
    std::vector<Vector> vs;
    for (const auto& f : fields.fields) vs.push_back(f.values);
    m["parameters"]["t"] = *a.t;
    m["parameters"]["tau"] = a.tau;
    run.write("coverage_curve.csv", curve_csv(coverage_curve(vs, a.tau)));
  }
  m["timings"]["compute_s"] = seconds_since(t0);
  run.finish();
}

void cmd_coverage(const Globals& g, const SeedArgs& a, std::ostream& out) {
  Run run(g, "coverage", out);
  auto l = load(g, run);
  auto& m = run.manifest();
  auto t0 = Clock::now();
  const double t = a.t.value_or(1.0);
  const LaplacianOperator& op = *l.op;
  RationalFilterOperator K(op, rational_form(FilterSpec::exponential(t), a.r));
  const SeedGenerator gen = [&](int s) {
    Vector e = Vector::Zero(op.size());
    e[s] = 1.0;
    return K.apply(e);
  };
  const CoverageResult res = coverage_loop(*l.mesh, op, gen, a.k0, a.tau, parse_distance_metric(a.metric));
  m["parameters"] = {{"t", t}, {"tau", a.tau}, {"k0", a.k0}, {"r", a.r}, {"metric", a.metric}};
  m["residuals"]["max_shift_residual"] = K.max_residual();
  json report;
  report["iterations"] = res.iterations();
  report["history"] = res.history;
  report["seeds"] = res.seeds.indices;
  report["tau"] = res.tau;
  m["timings"]["compute_s"] = seconds_since(t0);
  run.write("seeds.txt", format_seeds(res.seeds.indices));
  run.write("coverage.json", report.dump(2) + "\n");
  run.write("coverage_curve.csv", curve_csv(coverage_curve(res.fields, a.tau)));
  run.finish();
}

void cmd_validate(const Globals& g, std::ostream& out) {
  if (g.mesh.empty()) throw InvalidArgument("--mesh is required");
  const TriangleMesh mesh = load_mesh(g.mesh);
  const MeshReport r = validate(mesh);
  json j;
  j["vertices"] = r.num_vertices;
  j["triangles"] = r.num_triangles;
  j["edges"] = r.num_edges;
  j["boundary_edges"] = r.boundary_edges;
  j["connected_components"] = r.connected_components;
  j["isolated_vertices"] = r.isolated_vertices;
  j["degenerate_threshold"] = r.degenerate_threshold;
  j["degenerate_triangles"] = r.degenerate_triangles;
  json nm = json::array();
  for (const auto& e : r.non_manifold_edges) nm.push_back({e.lo, e.hi, e.triangle_count});
  j["non_manifold_edges"] = nm;
  j["warnings"] = mesh.load_warnings();
  out << j.dump(2) << "\n";
}

void cmd_spectrum(const Globals& g, int k, std::ostream& out) {
  Run run(g, "spectrum", out);
  auto l = load(g, run);
  auto t0 = Clock::now();
  const EigenSystem eig = eigen_basis(*l.op, k);
  run.manifest()["parameters"]["k"] = k;
  run.manifest()["residuals"]["max_eigen_residual"] = eig.residuals.size() ? eig.residuals.maxCoeff() : 0.0;
  run.manifest()["timings"]["compute_s"] = seconds_since(t0);
  run.write("spectrum.json", spectrum_json(eig).dump(2) + "\n");
  run.finish();
}

struct GenArgs {
  std::string shape;
  std::string file;
  int level = 3;
  double radius = 1.0;
  int nx = 20;
  int ny = 20;
  double size = 1.0;
  int major_segments = 40;
  int minor_segments = 25;
  double major_radius = 1.0;
  double minor_radius = 0.4;
};

void cmd_generate(const GenArgs& a, std::ostream& out) {
  std::optional<TriangleMesh> mesh;
  if (a.shape == "icosphere") mesh.emplace(make_icosphere(a.level, a.radius));
  else if (a.shape == "torus") mesh.emplace(make_torus(a.major_segments, a.minor_segments, a.major_radius, a.minor_radius));
  else if (a.shape == "grid") mesh.emplace(make_grid(a.nx, a.ny, a.size));
  else throw InvalidArgument("unknown shape '" + a.shape + "'");
  write_file_atomic(a.file, format_off(*mesh));
  out << a.file << " (" << mesh->num_vertices() << " vertices)\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral and harmonic basis functions on triangle meshes", "specbasis"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--mesh", g.mesh, "Input mesh (OFF, OBJ or PLY)");
  app.add_option("--scheme", g.scheme, "Laplacian weights")->check(CLI::IsMember({"fem", "cot", "meanvalue"}));
  app.add_option("--mass", g.mass, "Mass matrix")->check(CLI::IsMember({"lumped", "consistent"}));
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--format", g.formats, "Field formats")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "ply", "json", "pgm"}));
  app.add_flag("--normalize-area", g.normalize_area, "Scale the mesh to unit area before assembly");

  std::function<void()> action;

  auto* basis = app.add_subcommand("basis", "Compute basis functions")->fallthrough();
  basis->require_subcommand(1);
  BasisArgs ba;
  for (const char* kind : {"harmonic", "hamiltonian", "eigen", "diffusion", "spectral", "green"}) {
    auto* sc = basis->add_subcommand(kind)->fallthrough();
    const std::string name = kind;
    if (name != "eigen") {
      sc->add_option("--seed", ba.seeds, "Seed vertex (repeatable)");
      sc->add_option("--seeds-file", ba.seeds_file, "File with one seed index per line");
    }
    if (name == "eigen" || name == "diffusion" || name == "spectral")
      sc->add_option("--k", ba.k, "Eigenpairs")->check(CLI::Range(1, 1 << 20));
    if (name == "diffusion" || name == "green")
      sc->add_option("--t", ba.t, "Diffusion scale")->check(CLI::PositiveNumber);
    if (name == "diffusion" || name == "spectral")
      sc->add_option("--method", ba.method)->check(CLI::IsMember({"chebyshev", "truncated"}));
    if (name == "diffusion" || name == "spectral" || name == "green")
      sc->add_option("--r", ba.r, "Rational degree")->check(CLI::Range(3, 14));
    if (name == "spectral" || name == "green") sc->add_option("--filter", ba.filter, "Filter, e.g. exp:t=0.1");
    if (name == "hamiltonian") {
      sc->add_option("--mu", ba.mu, "Potential weight");
      sc->add_option("--potential", ba.potential, "Potential field CSV");
    }
    if (name == "green")
      sc->add_option("--role", ba.role)->check(CLI::IsMember({"harmonic", "diffusion", "general"}));
    sc->callback([&, name] { action = [&, name] { cmd_basis(name, g, ba, out); }; });
  }

  MetricArgs ma;
  auto* metrics = app.add_subcommand("metrics", "Pairwise comparison matrix")->fallthrough();
  metrics->add_option("metric", ma.metric)->check(CLI::IsMember({"area", "conformal", "kernel"}));
  metrics->add_option("--field", ma.field_files, "Field CSV (repeatable)");
  metrics->add_option("--generate", ma.generate)->check(CLI::IsMember({"diffusion", "eigen"}));
  metrics->add_option("--seed", ma.seeds);
  metrics->add_option("--fps", ma.fps, "Farthest point seeds")->check(CLI::Range(1, 1 << 20));
  metrics->add_option("--t", ma.t)->check(CLI::PositiveNumber);
  metrics->add_option("--k", ma.k)->check(CLI::Range(1, 1 << 20));
  metrics->add_option("--r", ma.r)->check(CLI::Range(3, 14));
  metrics->add_option("--kernel-t", ma.kernel_t)->check(CLI::PositiveNumber);
  metrics->add_flag("--normalize", ma.normalize, "Rescale fields to [0, 1] first");
  metrics->callback([&] { action = [&] { cmd_metrics(g, ma, out); }; });

  SeedArgs sa;
  auto* seeds = app.add_subcommand("seeds", "Farthest point seeds")->fallthrough();
  seeds->add_option("--k", sa.k)->check(CLI::Range(1, 1 << 20));
  seeds->add_option("--start", sa.start, "Start vertex (default: curvature maximum)");
  seeds->add_option("--metric", sa.metric)->check(CLI::IsMember({"euclidean", "geodesic"}));
  seeds->add_option("--t", sa.t, "Also write the coverage curve of diffusion at this scale")
      ->check(CLI::PositiveNumber);
  seeds->add_option("--tau", sa.tau)->check(CLI::Range(0.0, 1.0));
  seeds->add_option("--r", sa.r)->check(CLI::Range(3, 14));
  seeds->callback([&] { action = [&] { cmd_seeds(g, sa, out); }; });

  SeedArgs ca;
  auto* coverage = app.add_subcommand("coverage", "Seed until the supports cover the mesh")->fallthrough();
  coverage->add_option("--k0", ca.k0)->check(CLI::Range(1, 1 << 20));
  coverage->add_option("--t", ca.t)->check(CLI::PositiveNumber);
  coverage->add_option("--tau", ca.tau)->check(CLI::Range(0.0, 1.0));
  coverage->add_option("--r", ca.r)->check(CLI::Range(3, 14));
  coverage->add_option("--metric", ca.metric)->check(CLI::IsMember({"euclidean", "geodesic"}));
  coverage->callback([&] { action = [&] { cmd_coverage(g, ca, out); }; });

  auto* val = app.add_subcommand("validate", "Report mesh problems as JSON")->fallthrough();
  val->callback([&] { action = [&] { cmd_validate(g, out); }; });

  int spec_k = 10;
  auto* spectrum = app.add_subcommand("spectrum", "Smallest generalised eigenvalues")->fallthrough();
  spectrum->add_option("--k", spec_k)->check(CLI::Range(1, 1 << 20));
  spectrum->callback([&] { action = [&] { cmd_spectrum(g, spec_k, out); }; });

  GenArgs ga;
  auto* gen = app.add_subcommand("generate", "Write a procedural mesh as OFF");
  gen->add_option("shape", ga.shape)->required()->check(CLI::IsMember({"icosphere", "torus", "grid"}));
  gen->add_option("file", ga.file)->required();
  gen->add_option("--level", ga.level)->check(CLI::Range(0, 7));
  gen->add_option("--radius", ga.radius)->check(CLI::PositiveNumber);
  gen->add_option("--nx", ga.nx)->check(CLI::Range(1, 4096));
  gen->add_option("--ny", ga.ny)->check(CLI::Range(1, 4096));
  gen->add_option("--size", ga.size)->check(CLI::PositiveNumber);
  gen->add_option("--major-segments", ga.major_segments)->check(CLI::Range(3, 4096));
  gen->add_option("--minor-segments", ga.minor_segments)->check(CLI::Range(3, 4096));
  gen->add_option("--major-radius", ga.major_radius)->check(CLI::PositiveNumber);
  gen->add_option("--minor-radius", ga.minor_radius)->check(CLI::PositiveNumber);
  gen->callback([&] { action = [&] { cmd_generate(ga, out); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  try {
    if (action) action();
    return 0;
  } catch (const specbasis::Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace specbasis::cli
