#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "specbasis/errors.hpp"
#include "specbasis/export.hpp"
#include "specbasis/mesh.hpp"

namespace specbasis {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double to_double(std::string_view tok, int line_no) {
  double v = 0.0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line_no) + ": expected a number, got '" +
                     std::string(tok) + "'");
  return v;
}

long to_int(std::string_view tok, int line_no) {
  long v = 0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line_no) + ": expected an integer, got '" +
                     std::string(tok) + "'");
  return v;
}

// Line reader that drops comments and blank lines and tracks line numbers.
class LineReader {
 public:
  explicit LineReader(const std::string& text, char comment = '#') : text_(text), comment_(comment) {}

  bool next(std::vector<std::string_view>& tokens) {
    while (pos_ < text_.size()) {
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string::npos) end = text_.size();
      std::string_view line(text_.data() + pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      if (comment_ != '\0') {
        auto c = line.find(comment_);
        if (c != std::string_view::npos) line = line.substr(0, c);
      }
      tokens = split_ws(line);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  int line_no() const { return line_no_; }

 private:
  const std::string& text_;
  char comment_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
};

// Appends a polygon, fan-triangulating quads.
void add_polygon(std::vector<Triangle>& tris, const std::vector<int>& poly, int line_no,
                 int& quads) {
  if (poly.size() == 3) {
    tris.push_back({poly[0], poly[1], poly[2]});
  } else if (poly.size() == 4) {
    tris.push_back({poly[0], poly[1], poly[2]});
    tris.push_back({poly[0], poly[2], poly[3]});
    ++quads;
  } else {
    throw UnsupportedFeature("line " + std::to_string(line_no) + ": face with " +
                             std::to_string(poly.size()) + " vertices (only triangles and quads)");
  }
}

std::vector<std::string> quad_warning(int quads) {
  if (quads == 0) return {};
  return {std::to_string(quads) + " quad face(s) fan-triangulated"};
}

TriangleMesh parse_off(const std::string& text) {
  LineReader reader(text);
  std::vector<std::string_view> tok;
  if (!reader.next(tok)) throw ParseError("empty OFF file");
  std::size_t at = 0;
  if (tok[0] == "OFF") {
    at = 1;
  } else if (tok[0].size() > 3 && tok[0].substr(tok[0].size() - 3) == "OFF") {
    throw UnsupportedFeature("OFF variant '" + std::string(tok[0]) + "' is not supported");
  } else {
    throw ParseError("missing OFF header");
  }
  if (at >= tok.size()) {
    if (!reader.next(tok)) throw ParseError("missing OFF counts");
    at = 0;
  }
  if (tok.size() - at < 2) throw ParseError("line " + std::to_string(reader.line_no()) + ": bad OFF counts");
  const long nv = to_int(tok[at], reader.line_no());
  const long nf = to_int(tok[at + 1], reader.line_no());
  if (nv < 0 || nf < 0) throw ParseError("negative OFF counts");

  std::vector<Point> verts;
  verts.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    if (!reader.next(tok)) throw ParseError("unexpected end of file in OFF vertex list");
    if (tok.size() < 3) throw ParseError("line " + std::to_string(reader.line_no()) + ": vertex needs 3 coordinates");
    verts.emplace_back(to_double(tok[0], reader.line_no()), to_double(tok[1], reader.line_no()),
                       to_double(tok[2], reader.line_no()));
  }
  std::vector<Triangle> tris;
  tris.reserve(nf);
  int quads = 0;
  std::vector<int> poly;
  for (long i = 0; i < nf; ++i) {
    if (!reader.next(tok)) throw ParseError("unexpected end of file in OFF face list");
    const long k = to_int(tok[0], reader.line_no());
    if (k < 3) throw ParseError("line " + std::to_string(reader.line_no()) + ": face with fewer than 3 vertices");
    if (static_cast<long>(tok.size()) < k + 1) throw ParseError("line " + std::to_string(reader.line_no()) + ": truncated face");
    poly.clear();
    for (long j = 0; j < k; ++j) poly.push_back(static_cast<int>(to_int(tok[1 + j], reader.line_no())));
    add_polygon(tris, poly, reader.line_no(), quads);
  }
  return TriangleMesh(std::move(verts), std::move(tris), quad_warning(quads));
}

TriangleMesh parse_obj(const std::string& text) {
  LineReader reader(text);
  std::vector<std::string_view> tok;
  std::vector<Point> verts;
  std::vector<Triangle> tris;
  std::vector<int> poly;
  int quads = 0;
  while (reader.next(tok)) {
    if (tok[0] == "v") {
      if (tok.size() < 4) throw ParseError("line " + std::to_string(reader.line_no()) + ": vertex needs 3 coordinates");
      verts.emplace_back(to_double(tok[1], reader.line_no()), to_double(tok[2], reader.line_no()),
                         to_double(tok[3], reader.line_no()));
    } else if (tok[0] == "f") {
      poly.clear();
      for (std::size_t j = 1; j < tok.size(); ++j) {
        auto idx_tok = tok[j].substr(0, tok[j].find('/'));
        long idx = to_int(idx_tok, reader.line_no());
        if (idx < 0) idx = static_cast<long>(verts.size()) + idx;
        else if (idx > 0) idx -= 1;
        else throw ParseError("line " + std::to_string(reader.line_no()) + ": OBJ indices are 1-based");
        poly.push_back(static_cast<int>(idx));
      }
      if (poly.size() < 3) throw ParseError("line " + std::to_string(reader.line_no()) + ": face with fewer than 3 vertices");
      add_polygon(tris, poly, reader.line_no(), quads);
    }
    // other records (vn, vt, g, o, s, usemtl, ...) are ignored
  }
  return TriangleMesh(std::move(verts), std::move(tris), quad_warning(quads));
}

TriangleMesh parse_ply(const std::string& text) {
  LineReader reader(text, '\0');
  std::vector<std::string_view> tok;
  if (!reader.next(tok) || tok[0] != "ply") throw ParseError("missing 'ply' magic");

  struct Element {
    std::string name;
    long count = 0;
    std::vector<std::string> props;
    std::vector<bool> is_list;
  };
  std::vector<Element> elements;
  bool ascii = false;
  while (true) {
    if (!reader.next(tok)) throw ParseError("unterminated PLY header");
    if (tok[0] == "end_header") break;
    if (tok[0] == "comment" || tok[0] == "obj_info") continue;
    if (tok[0] == "format") {
      if (tok.size() < 2) throw ParseError("bad PLY format line");
      if (tok[1] != "ascii") throw UnsupportedFeature("PLY format '" + std::string(tok[1]) + "' (only ascii)");
      ascii = true;
    } else if (tok[0] == "element") {
      if (tok.size() < 3) throw ParseError("bad PLY element line");
      elements.push_back({std::string(tok[1]), to_int(tok[2], reader.line_no()), {}, {}});
    } else if (tok[0] == "property") {
      if (elements.empty()) throw ParseError("PLY property before element");
      const bool list = tok.size() >= 2 && tok[1] == "list";
      elements.back().props.emplace_back(tok.back());
      elements.back().is_list.push_back(list);
    } else {
      throw ParseError("line " + std::to_string(reader.line_no()) + ": unknown PLY header keyword '" +
                       std::string(tok[0]) + "'");
    }
  }
  if (!ascii) throw ParseError("PLY header lacks a format line");

  std::vector<Point> verts;
  std::vector<Triangle> tris;
  std::vector<int> poly;
  int quads = 0;
  for (const auto& el : elements) {
    if (el.name == "vertex") {
      auto find = [&](const char* name) {
        auto it = std::find(el.props.begin(), el.props.end(), name);
        if (it == el.props.end()) throw ParseError(std::string("PLY vertex lacks property ") + name);
        return static_cast<std::size_t>(it - el.props.begin());
      };
      const std::size_t ix = find("x"), iy = find("y"), iz = find("z");
      for (long i = 0; i < el.count; ++i) {
        if (!reader.next(tok)) throw ParseError("unexpected end of PLY vertex data");
        if (tok.size() < el.props.size()) throw ParseError("line " + std::to_string(reader.line_no()) + ": short PLY vertex record");
        verts.emplace_back(to_double(tok[ix], reader.line_no()), to_double(tok[iy], reader.line_no()),
                           to_double(tok[iz], reader.line_no()));
      }
    } else if (el.name == "face") {
      for (long i = 0; i < el.count; ++i) {
        if (!reader.next(tok)) throw ParseError("unexpected end of PLY face data");
        // the vertex index list is taken to be the first list property
        std::size_t at = 0;
        bool found = false;
        for (std::size_t p = 0; p < el.props.size(); ++p) {
          if (el.is_list[p]) {
            const long k = to_int(tok.at(at), reader.line_no());
            if (!found && (el.props[p] == "vertex_indices" || el.props[p] == "vertex_index")) {
              if (static_cast<long>(tok.size()) < static_cast<long>(at) + 1 + k)
                throw ParseError("line " + std::to_string(reader.line_no()) + ": truncated PLY face");
              poly.clear();
              for (long j = 0; j < k; ++j)
                poly.push_back(static_cast<int>(to_int(tok[at + 1 + j], reader.line_no())));
              if (poly.size() < 3) throw ParseError("line " + std::to_string(reader.line_no()) + ": face with fewer than 3 vertices");
              add_polygon(tris, poly, reader.line_no(), quads);
              found = true;
            }
            at += 1 + k;
          } else {
            at += 1;
          }
        }
        if (!found) throw ParseError("PLY face element lacks vertex_indices");
      }
    } else {
      for (long i = 0; i < el.count; ++i)
        if (!reader.next(tok)) throw ParseError("unexpected end of PLY data");
    }
  }
  return TriangleMesh(std::move(verts), std::move(tris), quad_warning(quads));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

MeshFormat parse_mesh_format(const std::string& name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "auto") return MeshFormat::Auto;
  if (lower == "off") return MeshFormat::OFF;
  if (lower == "obj") return MeshFormat::OBJ;
  if (lower == "ply") return MeshFormat::PLY;
  throw InvalidArgument("unknown mesh format '" + name + "'");
}

TriangleMesh parse_mesh(const std::string& text, MeshFormat format) {
  switch (format) {
    case MeshFormat::OFF: return parse_off(text);
    case MeshFormat::OBJ: return parse_obj(text);
    case MeshFormat::PLY: return parse_ply(text);
    case MeshFormat::Auto: break;
  }
  throw InvalidArgument("parse_mesh needs an explicit format");
}

TriangleMesh load_mesh(const std::filesystem::path& path, MeshFormat format) {
  if (format == MeshFormat::Auto) {
    auto ext = path.extension().string();
    if (!ext.empty()) ext = ext.substr(1);
    try {
      format = parse_mesh_format(ext);
    } catch (const InvalidArgument&) {
      throw ParseError("cannot infer mesh format from '" + path.string() + "'");
    }
    if (format == MeshFormat::Auto) throw ParseError("cannot infer mesh format from '" + path.string() + "'");
  }
  return parse_mesh(read_file(path), format);
}

std::string format_off(const TriangleMesh& mesh) {
  std::string out = "OFF\n";
  out += std::to_string(mesh.num_vertices()) + " " + std::to_string(mesh.num_triangles()) + " 0\n";
  for (const auto& p : mesh.vertices()) out += fmt9(p.x()) + " " + fmt9(p.y()) + " " + fmt9(p.z()) + "\n";
  for (const auto& t : mesh.triangles())
    out += "3 " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
  return out;
}

void save_off(const TriangleMesh& mesh, const std::filesystem::path& path) {
  write_file_atomic(path, format_off(mesh));
}

void save_ply(const TriangleMesh& mesh, const std::filesystem::path& path,
              std::span<const std::array<std::uint8_t, 3>> colors) {
  const bool with_color = !colors.empty();
  if (with_color && static_cast<int>(colors.size()) != mesh.num_vertices())
    throw DimensionMismatch("one color per vertex required");
  std::string out = "ply\nformat ascii 1.0\n";
  out += "element vertex " + std::to_string(mesh.num_vertices()) + "\n";
  out += "property float x\nproperty float y\nproperty float z\n";
  if (with_color) out += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out += "element face " + std::to_string(mesh.num_triangles()) + "\n";
  out += "property list uchar int vertex_indices\nend_header\n";
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const auto& p = mesh.vertex(v);
    out += fmt9(p.x()) + " " + fmt9(p.y()) + " " + fmt9(p.z());
    if (with_color) {
      for (auto c : colors[v]) out += " " + std::to_string(c);
    }
    out += "\n";
  }
  for (const auto& t : mesh.triangles())
    out += "3 " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
  write_file_atomic(path, out);
}

}  // namespace specbasis
