// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "planefit/io.h"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>

namespace planefit {
namespace {

namespace fs = std::filesystem;

[[noreturn]] void Fail(const fs::path& path, std::size_t line, const std::string& msg) {
  throw Error(path.string() + ":" + std::to_string(line) + ": " + msg);
}

void AppendDouble(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

void AppendInt(std::string& out, long long v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

bool ParseDouble(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size() && std::isfinite(out);
}

bool ParseInt(std::string_view tok, long long& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

std::vector<std::string_view> Tokens(std::string_view line) {
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

// Splits text into lines, dropping a trailing '\r' and '#' comments.
std::vector<std::string_view> ContentLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

UnitNormal NormalOrFail(const Vec& raw, const fs::path& path, std::size_t line) {
  try {
    return Canonicalize(raw);
  } catch (const Error&) {
    Fail(path, line, "normal is zero or not finite");
  }
}

Vec MakeVec(int dim, const double* c) {
  return dim == 2 ? Vec(c[0], c[1]) : Vec(c[0], c[1], c[2]);
}

// ---- PLY ----

struct PlyProperty {
  std::string name;
  std::string type;
  bool is_list = false;
  std::string count_type;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> props;
};

std::size_t PlyTypeSize(const std::string& t) {
  if (t == "char" || t == "int8" || t == "uchar" || t == "uint8") return 1;
  if (t == "short" || t == "int16" || t == "ushort" || t == "uint16") return 2;
  if (t == "int" || t == "int32" || t == "uint" || t == "uint32" ||
      t == "float" || t == "float32") {
    return 4;
  }
  if (t == "double" || t == "float64") return 8;
  return 0;
}

template <typename T>
double LoadAs(const unsigned char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return static_cast<double>(v);
}

double LoadBinary(const std::string& t, const unsigned char* p) {
  if (t == "char" || t == "int8") return LoadAs<std::int8_t>(p);
  if (t == "uchar" || t == "uint8") return LoadAs<std::uint8_t>(p);
  if (t == "short" || t == "int16") return LoadAs<std::int16_t>(p);
  if (t == "ushort" || t == "uint16") return LoadAs<std::uint16_t>(p);
  if (t == "int" || t == "int32") return LoadAs<std::int32_t>(p);
  if (t == "uint" || t == "uint32") return LoadAs<std::uint32_t>(p);
  if (t == "float" || t == "float32") return LoadAs<float>(p);
  return LoadAs<double>(p);
}

struct PlyFile {
  bool binary = false;
  std::vector<PlyElement> elements;
  std::size_t data_offset = 0;
  std::size_t header_lines = 0;
};

PlyFile ParsePlyHeader(const std::string& bytes, const fs::path& path) {
  PlyFile ply;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool saw_format = false;
  while (true) {
    const std::size_t end = bytes.find('\n', pos);
    if (end == std::string::npos) Fail(path, line_no + 1, "PLY header is not terminated");
    std::string_view line(bytes.data() + pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;
    const auto tok = Tokens(line);
    if (line_no == 1) {
      if (tok.size() != 1 || tok[0] != "ply") Fail(path, 1, "missing 'ply' magic");
      continue;
    }
    if (tok.empty() || tok[0] == "comment" || tok[0] == "obj_info") continue;
    if (tok[0] == "end_header") break;
    if (tok[0] == "format") {
      if (tok.size() < 2) Fail(path, line_no, "malformed format line");
      if (tok[1] == "ascii") {
        ply.binary = false;
      } else if (tok[1] == "binary_little_endian") {
        ply.binary = true;
      } else {
        Fail(path, line_no, "unsupported PLY format '" + std::string(tok[1]) + "'");
      }
      saw_format = true;
    } else if (tok[0] == "element") {
      long long count = 0;
      if (tok.size() != 3 || !ParseInt(tok[2], count) || count < 0) {
        Fail(path, line_no, "malformed element line");
      }
      ply.elements.push_back({std::string(tok[1]), static_cast<std::size_t>(count), {}});
    } else if (tok[0] == "property") {
      if (ply.elements.empty()) Fail(path, line_no, "property before any element");
      PlyProperty prop;
      if (tok.size() == 5 && tok[1] == "list") {
        prop.is_list = true;
        prop.count_type = tok[2];
        prop.type = tok[3];
        prop.name = tok[4];
        if (PlyTypeSize(prop.count_type) == 0) Fail(path, line_no, "unknown PLY type");
      } else if (tok.size() == 3) {
        prop.type = tok[1];
        prop.name = tok[2];
      } else {
        Fail(path, line_no, "malformed property line");
      }
      if (PlyTypeSize(prop.type) == 0) Fail(path, line_no, "unknown PLY type");
      ply.elements.back().props.push_back(prop);
    } else {
      Fail(path, line_no, "unexpected header keyword '" + std::string(tok[0]) + "'");
    }
  }
  if (!saw_format) Fail(path, line_no, "PLY header has no format line");
  ply.data_offset = pos;
  ply.header_lines = line_no;
  return ply;
}

// Visits every instance of every element in file order. `visit` receives the
// element, the instance index, the scalar property values (lists are
// skipped and reported as NaN) and the source line (ASCII) or 0.
template <typename Visit>
void WalkPly(const std::string& bytes, const PlyFile& ply, const fs::path& path,
             Visit&& visit) {
  std::vector<double> values;
  if (ply.binary) {
    static_assert(std::endian::native == std::endian::little,
                  "binary PLY reading assumes a little-endian host");
    const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
    std::size_t off = ply.data_offset;
    for (const PlyElement& el : ply.elements) {
      for (std::size_t i = 0; i < el.count; ++i) {
        values.assign(el.props.size(), std::nan(""));
        for (std::size_t p = 0; p < el.props.size(); ++p) {
          const PlyProperty& prop = el.props[p];
          if (prop.is_list) {
            const std::size_t cs = PlyTypeSize(prop.count_type);
            if (off + cs > bytes.size()) Fail(path, 0, "truncated binary PLY data");
            const double n = LoadBinary(prop.count_type, data + off);
            if (!(n >= 0)) Fail(path, 0, "negative list length in PLY data");
            off += cs + static_cast<std::size_t>(n) * PlyTypeSize(prop.type);
          } else {
            const std::size_t s = PlyTypeSize(prop.type);
            if (off + s > bytes.size()) {
              Fail(path, 0, "truncated binary PLY data in element '" + el.name +
                                "' at index " + std::to_string(i));
            }
            values[p] = LoadBinary(prop.type, data + off);
            off += s;
          }
        }
        visit(el, i, values, std::size_t{0});
      }
    }
    return;
  }
  std::size_t pos = ply.data_offset;
  std::size_t line_no = ply.header_lines;
  for (const PlyElement& el : ply.elements) {
    for (std::size_t i = 0; i < el.count; ++i) {
      std::vector<std::string_view> tok;
      while (tok.empty()) {
        if (pos >= bytes.size()) {
          Fail(path, line_no + 1, "unexpected end of PLY data in element '" + el.name + "'");
        }
        std::size_t end = bytes.find('\n', pos);
        if (end == std::string::npos) end = bytes.size();
        tok = Tokens(std::string_view(bytes.data() + pos, end - pos));
        pos = end + 1;
        ++line_no;
      }
      values.assign(el.props.size(), std::nan(""));
      std::size_t t = 0;
      for (std::size_t p = 0; p < el.props.size(); ++p) {
        const PlyProperty& prop = el.props[p];
        if (t >= tok.size()) Fail(path, line_no, "too few values for element '" + el.name + "'");
        if (prop.is_list) {
          long long n = 0;
          if (!ParseInt(tok[t], n) || n < 0) Fail(path, line_no, "malformed list length");
          t += 1 + static_cast<std::size_t>(n);
          if (t > tok.size()) Fail(path, line_no, "list runs past the end of the line");
        } else {
          if (!ParseDouble(tok[t], values[p])) {
            Fail(path, line_no, "malformed value '" + std::string(tok[t]) + "'");
          }
          ++t;
        }
      }
      if (t != tok.size()) Fail(path, line_no, "too many values for element '" + el.name + "'");
      visit(el, i, values, line_no);
    }
  }
}

int PropIndex(const PlyElement& el, const std::string& name) {
  for (std::size_t p = 0; p < el.props.size(); ++p) {
    if (!el.props[p].is_list && el.props[p].name == name) return static_cast<int>(p);
  }
  return -1;
}

struct VertexLayout {
  int pos[3] = {-1, -1, -1};
  int nrm[3] = {-1, -1, -1};
  int label = -1;
  bool has_normals = false;
};

VertexLayout FindVertexLayout(const PlyFile& ply, int dim, const fs::path& path) {
  for (const PlyElement& el : ply.elements) {
    if (el.name != "vertex") continue;
    VertexLayout lay;
    const char* pn[3] = {"x", "y", "z"};
    const char* nn[3] = {"nx", "ny", "nz"};
    int found_n = 0;
    for (int d = 0; d < dim; ++d) {
      lay.pos[d] = PropIndex(el, pn[d]);
      if (lay.pos[d] < 0) {
        Fail(path, ply.header_lines, std::string("vertex element lacks property '") + pn[d] + "'");
      }
      lay.nrm[d] = PropIndex(el, nn[d]);
      if (lay.nrm[d] >= 0) ++found_n;
    }
    if (found_n != 0 && found_n != dim) {
      Fail(path, ply.header_lines, "vertex element has an incomplete normal");
    }
    lay.has_normals = found_n == dim;
    lay.label = PropIndex(el, "label");
    return lay;
  }
  Fail(path, ply.header_lines, "PLY file has no vertex element");
}

void CheckDim(int dim) {
  if (dim != 2 && dim != 3) throw Error("dimension must be 2 or 3");
}

void WriteBytes(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

template <typename T>
void AppendRaw(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

std::array<std::uint8_t, 3> LabelColor(std::int32_t label) {
  if (label < 0) return {128, 128, 128};
  // Hues spaced by the golden angle stay distinct for many labels.
  const double h = std::fmod(0.1 + 0.61803398874989485 * label, 1.0) * 6.0;
  const double s = 0.75, v = 0.95;
  const int sector = static_cast<int>(h) % 6;
  const double f = h - std::floor(h);
  const double p = v * (1 - s), q = v * (1 - s * f), t = v * (1 - s * (1 - f));
  double r = v, g = t, b = p;
  switch (sector) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
  auto c = [](double x) { return static_cast<std::uint8_t>(std::lround(x * 255.0)); };
  return {c(r), c(g), c(b)};
}

}  // namespace

std::string ReadTextFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error("failed reading '" + path.string() + "'");
  return ss.str();
}

void WriteTextFile(const fs::path& path, const std::string& text) {
  WriteBytes(path, text);
}

PointCloud ReadXyz(const fs::path& path, int dim) {
  CheckDim(dim);
  const std::string text = ReadTextFile(path);
  const auto lines = ContentLines(text);
  std::vector<Vec> pts;
  std::vector<UnitNormal> normals;
  int arity = 0;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto tok = Tokens(lines[ln]);
    if (tok.empty()) continue;
    const int n = static_cast<int>(tok.size());
    if (n != dim && n != 2 * dim) {
      Fail(path, ln + 1, "expected " + std::to_string(dim) + " or " +
                             std::to_string(2 * dim) + " values, found " + std::to_string(n));
    }
    if (arity == 0) arity = n;
    if (n != arity) {
      Fail(path, ln + 1, "mixed dimensions: line has " + std::to_string(n) +
                             " values, earlier lines have " + std::to_string(arity));
    }
    double c[6] = {};
    for (int i = 0; i < n; ++i) {
      if (!ParseDouble(tok[i], c[i])) {
        Fail(path, ln + 1, "malformed number '" + std::string(tok[i]) + "'");
      }
    }
    pts.push_back(MakeVec(dim, c));
    if (n == 2 * dim) normals.push_back(NormalOrFail(MakeVec(dim, c + dim), path, ln + 1));
  }
  if (arity == 2 * dim) return PointCloud(dim, std::move(pts), std::move(normals));
  return PointCloud(dim, std::move(pts));
}

PointCloud ReadPly(const fs::path& path, int dim) {
  CheckDim(dim);
  const std::string bytes = ReadTextFile(path);
  const PlyFile ply = ParsePlyHeader(bytes, path);
  const VertexLayout lay = FindVertexLayout(ply, dim, path);
  std::vector<Vec> pts;
  std::vector<UnitNormal> normals;
  WalkPly(bytes, ply, path,
          [&](const PlyElement& el, std::size_t i, const std::vector<double>& v,
              std::size_t line) {
            if (el.name != "vertex") return;
            double c[3] = {}, n[3] = {};
            for (int d = 0; d < dim; ++d) {
              c[d] = v[lay.pos[d]];
              if (!std::isfinite(c[d])) {
                Fail(path, line, "non-finite coordinate at vertex " + std::to_string(i));
              }
              if (lay.has_normals) n[d] = v[lay.nrm[d]];
            }
            pts.push_back(MakeVec(dim, c));
            if (lay.has_normals) normals.push_back(NormalOrFail(MakeVec(dim, n), path, line));
          });
  if (lay.has_normals) return PointCloud(dim, std::move(pts), std::move(normals));
  return PointCloud(dim, std::move(pts));
}

PointCloud ReadCloud(const fs::path& path, int dim) {
  if (path.extension() == ".ply" || path.extension() == ".PLY") return ReadPly(path, dim);
  return ReadXyz(path, dim);
}

void WriteXyz(const fs::path& path, const PointCloud& cloud) {
  std::string out;
  const int dim = cloud.dim();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (int d = 0; d < dim; ++d) {
      if (d) out += ' ';
      AppendDouble(out, cloud.point(i)[d]);
    }
    if (cloud.has_normals()) {
      for (int d = 0; d < dim; ++d) {
        out += ' ';
        AppendDouble(out, cloud.normal(i)[d]);
      }
    }
    out += '\n';
  }
  WriteBytes(path, out);
}

void WritePly(const fs::path& path, const PointCloud& cloud, PlyEncoding encoding) {
  const int dim = cloud.dim();
  const bool binary = encoding == PlyEncoding::kBinaryLittleEndian;
  std::string out = "ply\nformat ";
  out += binary ? "binary_little_endian" : "ascii";
  out += " 1.0\nelement vertex " + std::to_string(cloud.size()) + "\n";
  const char* pn[3] = {"x", "y", "z"};
  const char* nn[3] = {"nx", "ny", "nz"};
  for (int d = 0; d < dim; ++d) out += std::string("property double ") + pn[d] + "\n";
  if (cloud.has_normals()) {
    for (int d = 0; d < dim; ++d) out += std::string("property double ") + nn[d] + "\n";
  }
  out += "end_header\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    double v[6];
    int n = 0;
    for (int d = 0; d < dim; ++d) v[n++] = cloud.point(i)[d];
    if (cloud.has_normals()) {
      for (int d = 0; d < dim; ++d) v[n++] = cloud.normal(i)[d];
    }
    for (int j = 0; j < n; ++j) {
      if (binary) {
        AppendRaw(out, v[j]);
      } else {
        if (j) out += ' ';
        AppendDouble(out, v[j]);
      }
    }
    if (!binary) out += '\n';
  }
  WriteBytes(path, out);
}

void WriteCloud(const fs::path& path, const PointCloud& cloud) {
  if (path.extension() == ".ply" || path.extension() == ".PLY") {
    WritePly(path, cloud, PlyEncoding::kBinaryLittleEndian);
  } else {
    WriteXyz(path, cloud);
  }
}

void WriteTruth(const fs::path& path, const GroundTruth& truth) {
  truth.Validate();
  const int dim = truth.cloud.dim();
  std::string out = "# planefit-truth dim=" + std::to_string(dim) + "\n";
  for (std::size_t i = 0; i < truth.cloud.size(); ++i) {
    for (int d = 0; d < dim; ++d) {
      AppendDouble(out, truth.cloud.point(i)[d]);
      out += ' ';
    }
    for (int d = 0; d < dim; ++d) {
      AppendDouble(out, truth.cloud.normal(i)[d]);
      out += ' ';
    }
    AppendInt(out, truth.labels ? (*truth.labels)[i] : -1);
    out += ' ';
    out += truth.inlier_mask[i] ? '1' : '0';
    out += '\n';
  }
  WriteBytes(path, out);
}

GroundTruth ReadTruth(const fs::path& path) {
  const std::string text = ReadTextFile(path);
  int dim = 0;
  {
    const std::string_view head = std::string_view(text).substr(0, text.find('\n'));
    const auto at = head.find("dim=");
    if (head.rfind("# planefit-truth", 0) != 0 || at == std::string_view::npos) {
      Fail(path, 1, "missing '# planefit-truth dim=<d>' header");
    }
    long long d = 0;
    if (!ParseInt(Tokens(head.substr(at + 4)).at(0), d) || (d != 2 && d != 3)) {
      Fail(path, 1, "truth dimension must be 2 or 3");
    }
    dim = static_cast<int>(d);
  }
  const auto lines = ContentLines(text);
  std::vector<Vec> pts;
  std::vector<UnitNormal> normals;
  std::vector<std::int32_t> labels;
  std::vector<char> mask;
  const std::size_t arity = static_cast<std::size_t>(2 * dim + 2);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto tok = Tokens(lines[ln]);
    if (tok.empty()) continue;
    if (tok.size() != arity) {
      Fail(path, ln + 1, "expected " + std::to_string(arity) + " values, found " +
                             std::to_string(tok.size()));
    }
    double c[6] = {};
    for (int i = 0; i < 2 * dim; ++i) {
      if (!ParseDouble(tok[i], c[i])) Fail(path, ln + 1, "malformed number");
    }
    long long label = 0, inlier = 0;
    if (!ParseInt(tok[2 * dim], label) || !ParseInt(tok[2 * dim + 1], inlier) ||
        (inlier != 0 && inlier != 1)) {
      Fail(path, ln + 1, "malformed label or inlier flag");
    }
    pts.push_back(MakeVec(dim, c));
    normals.push_back(NormalOrFail(MakeVec(dim, c + dim), path, ln + 1));
    labels.push_back(static_cast<std::int32_t>(label));
    mask.push_back(static_cast<char>(inlier));
  }
  GroundTruth truth;
  truth.cloud = PointCloud(dim, std::move(pts), std::move(normals));
  truth.labels = std::move(labels);
  truth.inlier_mask = std::move(mask);
  return truth;
}

void WritePlanes(const fs::path& path, std::span<const Hyperplane> planes, int dim) {
  std::string out;
  for (const Hyperplane& h : planes) {
    AppendInt(out, h.id);
    for (int d = 0; d < dim; ++d) {
      out += ' ';
      AppendDouble(out, h.normal[d]);
    }
    out += ' ';
    AppendDouble(out, h.offset);
    out += ' ';
    AppendInt(out, static_cast<long long>(h.support.size()));
    out += '\n';
  }
  WriteBytes(path, out);
}

std::vector<Hyperplane> ReadPlanes(const fs::path& path, int dim) {
  CheckDim(dim);
  const std::string text = ReadTextFile(path);
  const auto lines = ContentLines(text);
  std::vector<Hyperplane> planes;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto tok = Tokens(lines[ln]);
    if (tok.empty()) continue;
    if (tok.size() != static_cast<std::size_t>(dim + 3)) {
      Fail(path, ln + 1, "expected " + std::to_string(dim + 3) + " values per plane");
    }
    long long id = 0, count = 0;
    double c[4] = {};
    if (!ParseInt(tok[0], id) || !ParseInt(tok[dim + 2], count) || count < 0) {
      Fail(path, ln + 1, "malformed plane id or support count");
    }
    for (int i = 0; i <= dim; ++i) {
      if (!ParseDouble(tok[1 + i], c[i])) Fail(path, ln + 1, "malformed number");
    }
    Hyperplane h;
    h.id = static_cast<std::int32_t>(id);
    h.normal = NormalOrFail(MakeVec(dim, c), path, ln + 1);
    h.offset = c[dim];
    h.support.resize(static_cast<std::size_t>(count));
    planes.push_back(std::move(h));
  }
  return planes;
}

void WriteLabels(const fs::path& path, std::span<const std::int32_t> labels) {
  std::string out;
  out.reserve(labels.size() * 3);
  for (std::int32_t l : labels) {
    AppendInt(out, l);
    out += '\n';
  }
  WriteBytes(path, out);
}

std::vector<std::int32_t> ReadLabels(const fs::path& path) {
  const std::string text = ReadTextFile(path);
  const auto lines = ContentLines(text);
  std::vector<std::int32_t> labels;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto tok = Tokens(lines[ln]);
    if (tok.empty()) continue;
    long long v = 0;
    if (tok.size() != 1 || !ParseInt(tok[0], v)) Fail(path, ln + 1, "expected one integer label");
    labels.push_back(static_cast<std::int32_t>(v));
  }
  return labels;
}

void WriteNormals(const fs::path& path, std::span<const UnitNormal> normals) {
  std::string out;
  for (const UnitNormal& n : normals) {
    for (int d = 0; d < n.dim(); ++d) {
      if (d) out += ' ';
      AppendDouble(out, n[d]);
    }
    out += '\n';
  }
  WriteBytes(path, out);
}

std::vector<UnitNormal> ReadNormals(const fs::path& path, int dim) {
  CheckDim(dim);
  const std::string text = ReadTextFile(path);
  const auto lines = ContentLines(text);
  std::vector<UnitNormal> normals;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto tok = Tokens(lines[ln]);
    if (tok.empty()) continue;
    if (tok.size() != static_cast<std::size_t>(dim)) {
      Fail(path, ln + 1, "expected " + std::to_string(dim) + " values per normal");
    }
    double c[3] = {};
    for (int d = 0; d < dim; ++d) {
      if (!ParseDouble(tok[d], c[d])) Fail(path, ln + 1, "malformed number");
    }
    normals.push_back(NormalOrFail(MakeVec(dim, c), path, ln + 1));
  }
  return normals;
}

void WriteSegmentsPly(const fs::path& path, const LabeledCloud& labeled) {
  const PointCloud& cloud = labeled.cloud;
  if (labeled.labels.size() != cloud.size()) throw Error("label count does not match the cloud");
  std::string out =
      "ply\nformat binary_little_endian 1.0\nelement vertex " + std::to_string(cloud.size()) +
      "\nproperty double x\nproperty double y\nproperty double z\n"
      "property uchar red\nproperty uchar green\nproperty uchar blue\n"
      "property int label\nend_header\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec& p = cloud.point(i);
    AppendRaw(out, p[0]);
    AppendRaw(out, p[1]);
    AppendRaw(out, cloud.dim() == 3 ? p[2] : 0.0);
    for (std::uint8_t c : LabelColor(labeled.labels[i])) AppendRaw(out, c);
    AppendRaw(out, labeled.labels[i]);
  }
  WriteBytes(path, out);
}

LabeledCloud ReadSegmentsPly(const fs::path& path, int dim) {
  CheckDim(dim);
  const std::string bytes = ReadTextFile(path);
  const PlyFile ply = ParsePlyHeader(bytes, path);
  const VertexLayout lay = FindVertexLayout(ply, dim, path);
  if (lay.label < 0) Fail(path, ply.header_lines, "vertex element lacks a 'label' property");
  std::vector<Vec> pts;
  LabeledCloud out;
  WalkPly(bytes, ply, path,
          [&](const PlyElement& el, std::size_t, const std::vector<double>& v, std::size_t) {
            if (el.name != "vertex") return;
            double c[3] = {};
            for (int d = 0; d < dim; ++d) c[d] = v[lay.pos[d]];
            pts.push_back(MakeVec(dim, c));
            out.labels.push_back(static_cast<std::int32_t>(v[lay.label]));
          });
  out.cloud = PointCloud(dim, std::move(pts));
  return out;
}

TriangleMesh ReadObjMesh(const fs::path& path) {
  const std::string text = ReadTextFile(path);
  const auto lines = ContentLines(text);
  TriangleMesh mesh;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto tok = Tokens(lines[ln]);
    if (tok.empty()) continue;
    if (tok[0] == "v") {
      double c[3] = {};
      if (tok.size() < 4) Fail(path, ln + 1, "vertex needs three coordinates");
      for (int d = 0; d < 3; ++d) {
        if (!ParseDouble(tok[1 + d], c[d])) Fail(path, ln + 1, "malformed vertex coordinate");
      }
      mesh.vertices.push_back(Vec(c[0], c[1], c[2]));
    } else if (tok[0] == "f") {
      if (tok.size() < 4) Fail(path, ln + 1, "face needs at least three vertices");
      std::vector<std::uint32_t> face;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        long long idx = 0;
        if (!ParseInt(tok[i].substr(0, tok[i].find('/')), idx) || idx == 0) {
          Fail(path, ln + 1, "malformed face index '" + std::string(tok[i]) + "'");
        }
        const long long n = static_cast<long long>(mesh.vertices.size());
        const long long zero_based = idx > 0 ? idx - 1 : n + idx;
        if (zero_based < 0 || zero_based >= n) Fail(path, ln + 1, "face index out of range");
        face.push_back(static_cast<std::uint32_t>(zero_based));
      }
      for (std::size_t i = 1; i + 1 < face.size(); ++i) {
        mesh.triangles.push_back({face[0], face[i], face[i + 1]});
      }
    }
  }
  if (mesh.triangles.empty()) Fail(path, lines.size(), "mesh has no faces");
  return mesh;
}

void WriteOutputs(const fs::path& out_dir, const PlaneExtraction& extraction,
                  std::span<const UnitNormal> normals, const std::string& report_json) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create output directory '" + out_dir.string() + "': " + ec.message());
  const int dim = extraction.labeled.cloud.dim();
  WritePlanes(out_dir / "planes.txt", extraction.planes, dim);
  WriteLabels(out_dir / "labels.txt", extraction.labeled.labels);
  WriteNormals(out_dir / "normals.txt", normals);
  WriteTextFile(out_dir / "report.json", report_json);
  WriteSegmentsPly(out_dir / "segments.ply", extraction.labeled);
}

}  // namespace planefit
