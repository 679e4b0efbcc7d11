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

#ifndef PLANEFIT_IO_H_
#define PLANEFIT_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "planefit/metrics.h"
#include "planefit/plane_extraction.h"
#include "planefit/point_cloud.h"
#include "planefit/synthetic.h"

namespace planefit {

enum class PlyEncoding { kAscii, kBinaryLittleEndian };

// Reads whitespace-separated ASCII points, one per line, '#' starting a
// comment. With dim 3 a line is "x y z" or "x y z nx ny nz"; with dim 2 it
// is "x y" or "x y nx ny". Every line must have the same arity. Normals are
// canonicalized. Throws Error naming the path and line on malformed input.
PointCloud ReadXyz(const std::filesystem::path& path, int dim);

// Reads the vertex element of an ASCII or binary little-endian PLY file:
// x, y (and z when dim is 3) are required, nx, ny (nz) optional; every
// other property is skipped. Normals are canonicalized.
PointCloud ReadPly(const std::filesystem::path& path, int dim);

// Dispatches on the extension: ".ply" selects PLY, anything else XYZ.
PointCloud ReadCloud(const std::filesystem::path& path, int dim);

// ASCII output uses 17 significant digits and round-trips exactly.
void WriteXyz(const std::filesystem::path& path, const PointCloud& cloud);
// Coordinates are stored as doubles.
void WritePly(const std::filesystem::path& path, const PointCloud& cloud,
              PlyEncoding encoding);
// ".ply" writes binary PLY, anything else XYZ.
void WriteCloud(const std::filesystem::path& path, const PointCloud& cloud);

// Truth side-file: one line per input point, "x y z nx ny nz label inlier"
// (dim 3) or "x y nx ny label inlier" (dim 2), preceded by a
// "# planefit-truth dim=<d>" header.
void WriteTruth(const std::filesystem::path& path, const GroundTruth& truth);
GroundTruth ReadTruth(const std::filesystem::path& path);

// "id n_1 .. n_d offset support_count" per plane.
void WritePlanes(const std::filesystem::path& path,
                 std::span<const Hyperplane> planes, int dim);
std::vector<Hyperplane> ReadPlanes(const std::filesystem::path& path, int dim);

// One integer per line.
void WriteLabels(const std::filesystem::path& path,
                 std::span<const std::int32_t> labels);
std::vector<std::int32_t> ReadLabels(const std::filesystem::path& path);

// One normal per line, "n_1 .. n_d".
void WriteNormals(const std::filesystem::path& path,
                  std::span<const UnitNormal> normals);
std::vector<UnitNormal> ReadNormals(const std::filesystem::path& path, int dim);

// Binary PLY with double x, y, z, uchar red/green/blue and int label. Each
// plane gets a distinct color, outliers are gray.
void WriteSegmentsPly(const std::filesystem::path& path,
                      const LabeledCloud& labeled);
// Reads the positions and labels written by WriteSegmentsPly.
LabeledCloud ReadSegmentsPly(const std::filesystem::path& path, int dim);

// Writes planes.txt, labels.txt, normals.txt, report.json and segments.ply
// under out_dir, creating it if needed. `normals` holds the reconstructed
// normal of each point.
void WriteOutputs(const std::filesystem::path& out_dir,
                  const PlaneExtraction& extraction,
                  std::span<const UnitNormal> normals,
                  const std::string& report_json);

// Reads the "v" and "f" records of a Wavefront OBJ file. Polygons are
// fan-triangulated; texture and normal indices ("f 1/2/3") and negative
// (relative) indices are accepted, every other record is ignored.
TriangleMesh ReadObjMesh(const std::filesystem::path& path);

// Whole-file helpers that name the path in their errors.
std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace planefit

#endif  // PLANEFIT_IO_H_
