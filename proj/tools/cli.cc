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

#include "cli.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "planefit/downsample.h"
#include "planefit/global_l0.h"
#include "planefit/io.h"
#include "planefit/parallel.h"
#include "planefit/synthetic.h"

namespace planefit::cli {
namespace fs = std::filesystem;
namespace {

struct GenerateArgs {
  std::string scene;
  int points_per_line = 100;
  std::size_t n = 100000;
  double sigma = -1.0;  // absolute, lines only
  double noise = 0.0;   // relative to the scene extent
  double rho = 0.0;
  std::size_t outliers = 0;
  std::string mesh;
  std::uint64_t seed = 1;
  std::string out = "scene";
  std::string format = "ply";
};

struct ReconstructArgs {
  std::string input;
  int dim = 3;
  GlobalL0Config config;
  bool keep_every_round = false;
  double downsample = 0.0;
  std::string truth;
  std::string out = "out";
};

struct EvaluateArgs {
  std::string result;
  std::string truth;
  std::string out;
};

struct SweepArgs {
  std::string scene = "lines2d";
  std::vector<double> noise{0.01};
  std::vector<double> rho{0.0};
  std::vector<double> lambda_g{1000.0};
  std::vector<std::uint64_t> seeds{1};
  int points_per_line = 100;
  std::size_t n = 20000;
  GlobalL0Config config;
  bool keep_every_round = false;
  std::string out;
};

void AddConfigFlags(CLI::App& app, GlobalL0Config& c, bool& keep_every_round) {
  app.add_option("--k", c.k, "Neighbors per point in the fusion graph")->capture_default_str();
  app.add_option("--tau", c.tau, "Minimum support of a plane")->capture_default_str();
  app.add_option("--lambda-l", c.lambda_l, "Terminal local regularization")->capture_default_str();
  app.add_option("--lambda-g", c.lambda_g, "Global regularization multiplier")
      ->capture_default_str();
  app.add_option("--lambda-floor", c.lambda_floor, "Lower clamp of the starting lambda")
      ->capture_default_str();
  app.add_option("--normal-k", c.normal_k, "Neighbors for PCA normals, 0 reuses --k")
      ->capture_default_str();
  app.add_flag("--estimate-normals", c.estimate_normals,
               "Re-estimate normals even if the input has them");
  app.add_flag("--reassign-every-round", keep_every_round,
               "Pull regions below tau onto V in every round, not only the last");
}

SyntheticScene Generate(const GenerateArgs& a) {
  SyntheticScene s;
  if (a.scene == "lines2d") {
    const double sigma = a.sigma >= 0.0 ? a.sigma : a.noise * Lines2dExtent();
    s = GenerateLines2d(a.points_per_line, sigma, a.rho, a.seed);
  } else if (a.scene == "mesh") {
    if (a.mesh.empty()) throw Error("scene 'mesh' needs --mesh <file.obj>");
    s = SampleMesh(ReadObjMesh(a.mesh), a.n, a.noise, a.seed);
  } else {
    s = SamplePolyhedron(ParsePolyhedron(a.scene), a.n, a.noise, a.seed);
  }
  if (a.scene != "lines2d" && a.rho > 0.0) {
    if (a.rho >= 1.0) throw Error("outlier fraction must lie in [0, 1)");
    const double inliers = static_cast<double>(s.cloud.size());
    s = Corrupt(s, static_cast<std::size_t>(std::llround(a.rho / (1.0 - a.rho) * inliers)),
                a.seed + 1);
  }
  if (a.outliers > 0) s = Corrupt(s, a.outliers, a.seed + 2);
  return s;
}

std::string SceneJson(const SyntheticScene& s, const GenerateArgs& a) {
  std::ostringstream o;
  o << std::setprecision(17);
  o << "{\n  \"generator\": \"" << a.scene << "\",\n  \"seed\": " << a.seed
    << ",\n  \"dim\": " << s.cloud.dim() << ",\n  \"points\": " << s.cloud.size()
    << ",\n  \"sigma\": " << s.params.sigma << ",\n  \"outliers\": " << s.params.outliers
    << ",\n  \"outlier_fraction\": " << s.params.outlier_fraction << "\n}\n";
  return o.str();
}

int RunGenerate(const GenerateArgs& a, std::ostream& out) {
  const SyntheticScene s = Generate(a);
  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create '" + dir.string() + "': " + ec.message());
  const fs::path cloud = dir / (a.format == "xyz" ? "cloud.xyz" : "cloud.ply");
  WriteCloud(cloud, s.cloud);
  WriteTruth(dir / "truth.txt", s.truth);
  WriteTextFile(dir / "scene.json", SceneJson(s, a));
  out << "wrote " << s.cloud.size() << " points to " << cloud.string() << "\n";
  return kOk;
}

GroundTruth SubsetTruth(const GroundTruth& t, const std::vector<PointIndex>& kept) {
  std::vector<Vec> pts;
  std::vector<UnitNormal> normals;
  std::vector<std::int32_t> labels;
  GroundTruth out;
  for (PointIndex i : kept) {
    if (i >= t.cloud.size()) throw Error("kept index exceeds the truth size");
    pts.push_back(t.cloud.point(i));
    normals.push_back(t.cloud.normal(i));
    if (t.labels) labels.push_back((*t.labels)[i]);
    out.inlier_mask.push_back(t.inlier_mask[i]);
  }
  out.cloud = PointCloud(t.cloud.dim(), std::move(pts), std::move(normals));
  if (t.labels) out.labels = std::move(labels);
  return out;
}

std::vector<UnitNormal> PerPointNormals(const ReconstructionResult& r) {
  std::vector<UnitNormal> out;
  out.reserve(r.per_point_normal_index.size());
  for (std::uint32_t idx : r.per_point_normal_index) out.push_back(r.selected_normals[idx]);
  return out;
}

struct Reconstruction {
  ReconstructionResult result;
  PlaneExtraction extraction;
  std::vector<PointIndex> kept;  // empty unless down-sampled
  double extraction_ms = 0.0;
};

Reconstruction Reconstruct(const PointCloud& input, const GlobalL0Config& config,
                           double downsample) {
  Reconstruction rec;
  const PointCloud* cloud = &input;
  Downsampled ds;
  if (downsample > 0.0) {
    ds = GridDownsample(input, downsample);
    rec.kept = ds.kept;
    cloud = &ds.cloud;
  }
  rec.result = ReconstructNormals(*cloud, config);
  const auto t0 = std::chrono::steady_clock::now();
  rec.extraction = ExtractPlanes(rec.result.cloud, rec.result.graph, rec.result, config.tau);
  rec.extraction_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

int RunReconstruct(ReconstructArgs a, std::ostream& out) {
  a.config.defer_small_regions = !a.keep_every_round;
  a.config.Validate();
  const PointCloud input = ReadCloud(a.input, a.dim);
  Reconstruction rec = Reconstruct(input, a.config, a.downsample);
  const std::vector<UnitNormal> normals = PerPointNormals(rec.result);

  RunReport report = MakeReport(a.input, a.config, rec.result, rec.extraction);
  report.downsample = a.downsample;
  report.extraction_ms = rec.extraction_ms;
  if (!a.truth.empty()) {
    GroundTruth truth = ReadTruth(a.truth);
    if (!rec.kept.empty()) truth = SubsetTruth(truth, rec.kept);
    report.metrics = ComputeMetrics(truth, normals, rec.extraction.planes, rec.extraction.labeled);
  }
  const fs::path dir(a.out);
  WriteOutputs(dir, rec.extraction, normals, report.ToJson());
  if (!rec.kept.empty()) {
    std::string text;
    for (PointIndex i : rec.kept) text += std::to_string(i) + "\n";
    WriteTextFile(dir / "kept.txt", text);
  }
  out << "|V| = " << report.selected_normals << ", planes = " << report.planes
      << ", outliers = " << report.outliers << ", " << std::fixed << std::setprecision(1)
      << report.timings.total_ms + report.extraction_ms << " ms; wrote " << dir.string() << "\n";
  return kOk;
}

void AppendCsvValue(std::ostream& o, const std::optional<double>& v) {
  o << ',';
  if (v) o << *v;
}

int RunEvaluate(const EvaluateArgs& a, std::ostream& out) {
  const fs::path dir(a.result);
  GroundTruth truth = ReadTruth(a.truth);
  if (fs::exists(dir / "kept.txt")) {
    std::vector<PointIndex> kept;
    for (std::int32_t v : ReadLabels(dir / "kept.txt")) kept.push_back(static_cast<PointIndex>(v));
    truth = SubsetTruth(truth, kept);
  }
  const int dim = truth.cloud.dim();
  const LabeledCloud labeled = ReadSegmentsPly(dir / "segments.ply", dim);
  const std::vector<UnitNormal> normals = ReadNormals(dir / "normals.txt", dim);
  const std::vector<Hyperplane> planes = ReadPlanes(dir / "planes.txt", dim);
  const MetricsBlock m = ComputeMetrics(truth, normals, planes, labeled);

  std::ostringstream csv;
  csv << std::setprecision(10);
  csv << "e_n,e_p,e_q,gce,lce,planes,points\n";
  if (m.e_n) csv << *m.e_n;
  AppendCsvValue(csv, m.e_p);
  AppendCsvValue(csv, m.e_q);
  AppendCsvValue(csv, m.gce);
  AppendCsvValue(csv, m.lce);
  csv << ',' << planes.size() << ',' << labeled.cloud.size() << "\n";
  if (a.out.empty()) {
    out << csv.str();
  } else {
    WriteTextFile(a.out, csv.str());
    out << "wrote " << a.out << "\n";
  }
  return kOk;
}

int RunSweep(const SweepArgs& a, std::ostream& out) {
  GlobalL0Config base = a.config;
  base.defer_small_regions = !a.keep_every_round;
  base.Validate();
  std::ostringstream csv;
  csv << std::setprecision(10);
  csv << "scene,noise,rho,lambda_g,seed,points,selected_normals,planes,e_n,e_p,e_q,gce,lce,"
         "total_ms\n";
  for (double noise : a.noise) {
    for (double rho : a.rho) {
      for (std::uint64_t seed : a.seeds) {
        GenerateArgs g;
        g.scene = a.scene;
        g.noise = noise;
        g.rho = rho;
        g.seed = seed;
        g.points_per_line = a.points_per_line;
        g.n = a.n;
        const SyntheticScene scene = Generate(g);
        for (double lg : a.lambda_g) {
          GlobalL0Config c = base;
          c.lambda_g = lg;
          const auto t0 = std::chrono::steady_clock::now();
          const Reconstruction rec = Reconstruct(scene.cloud, c, 0.0);
          const double ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
          const MetricsBlock m = ComputeMetrics(scene.truth, PerPointNormals(rec.result),
                                                rec.extraction.planes, rec.extraction.labeled);
          csv << a.scene << ',' << noise << ',' << rho << ',' << lg << ',' << seed << ','
              << scene.cloud.size() << ',' << rec.result.selected_normals.size() << ','
              << rec.extraction.planes.size();
          AppendCsvValue(csv, m.e_n);
          AppendCsvValue(csv, m.e_p);
          AppendCsvValue(csv, m.e_q);
          AppendCsvValue(csv, m.gce);
          AppendCsvValue(csv, m.lce);
          csv << ',' << ms << "\n";
        }
      }
    }
  }
  if (a.out.empty()) {
    out << csv.str();
  } else {
    WriteTextFile(a.out, csv.str());
    out << "wrote " << a.out << "\n";
  }
  return kOk;
}

}  // namespace

MetricsBlock ComputeMetrics(const GroundTruth& truth, std::span<const UnitNormal> normals,
                            std::span<const Hyperplane> planes, const LabeledCloud& labeled) {
  truth.Validate();
  if (normals.size() != truth.cloud.size() || labeled.labels.size() != truth.cloud.size()) {
    throw Error("result has " + std::to_string(labeled.labels.size()) + " points but the truth has " +
                std::to_string(truth.cloud.size()));
  }
  MetricsBlock m;
  if (truth.inlier_count() > 0) m.e_n = NormalRmsError(normals, truth);
  if (!planes.empty() && truth.inlier_count() > 0) {
    m.e_p = PlaneRmsError(truth, planes);
    m.e_q = ProjectionRmsError(labeled, planes, truth);
  }
  if (truth.labels && !labeled.labels.empty()) {
    const ConsistencyErrors ce = SegmentConsistency(*truth.labels, labeled.labels);
    m.gce = ce.gce;
    m.lce = ce.lce;
  }
  return m;
}

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"planefit: plane and line reconstruction with shared normals"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Cap on worker threads (also PLANEFIT_THREADS)");

  GenerateArgs gen;
  CLI::App* g = app.add_subcommand("generate", "Write a synthetic scene and its truth");
  g->add_option("scene", gen.scene, "lines2d, dodecahedron, cube, box or mesh")
      ->required()
      ->check(CLI::IsMember({"lines2d", "dodecahedron", "cube", "box", "mesh"}));
  g->add_option("--points-per-line", gen.points_per_line, "Inliers per segment (lines2d)")
      ->capture_default_str();
  g->add_option("--n", gen.n, "Surface samples (polyhedra, mesh)")->capture_default_str();
  g->add_option("--sigma", gen.sigma, "Absolute noise deviation (lines2d)");
  g->add_option("--noise", gen.noise, "Noise deviation relative to the scene extent")
      ->capture_default_str();
  g->add_option("--rho", gen.rho, "Outlier fraction of the emitted total")->capture_default_str();
  g->add_option("--outliers", gen.outliers, "Extra uniform outliers to append");
  g->add_option("--mesh", gen.mesh, "OBJ file for the mesh scene");
  g->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  g->add_option("--out", gen.out, "Output directory")->capture_default_str();
  g->add_option("--format", gen.format, "Cloud file format")
      ->check(CLI::IsMember({"ply", "xyz"}))
      ->capture_default_str();

  ReconstructArgs rec;
  CLI::App* r = app.add_subcommand("reconstruct", "Recover normals and planes of a cloud");
  r->add_option("input", rec.input, "Input .ply or .xyz/.xy file")->required();
  r->add_option("--dim", rec.dim, "Point dimension")->check(CLI::IsMember({2, 3}))
      ->capture_default_str();
  AddConfigFlags(*r, rec.config, rec.keep_every_round);
  r->add_option("--downsample", rec.downsample, "Grid cell size for down-sampling, 0 disables");
  r->add_option("--truth", rec.truth, "Truth file; adds metrics to the report");
  r->add_option("--out", rec.out, "Output directory")->capture_default_str();

  EvaluateArgs ev;
  CLI::App* e = app.add_subcommand("evaluate", "Score a result directory against its truth");
  e->add_option("--result", ev.result, "Directory written by reconstruct")->required();
  e->add_option("--truth", ev.truth, "Truth file written by generate")->required();
  e->add_option("--out", ev.out, "CSV output file (default: standard output)");

  SweepArgs sw;
  CLI::App* s = app.add_subcommand("sweep", "Grid over noise, outliers and lambda_g as CSV");
  s->add_option("--scene", sw.scene, "Scene generator")
      ->check(CLI::IsMember({"lines2d", "dodecahedron", "cube", "box"}))
      ->capture_default_str();
  s->add_option("--noise", sw.noise, "Noise levels relative to the scene extent")->delimiter(',');
  s->add_option("--rho", sw.rho, "Outlier fractions")->delimiter(',');
  s->add_option("--lambda-g", sw.lambda_g, "Global regularization values")->delimiter(',');
  s->add_option("--seeds", sw.seeds, "Seeds")->delimiter(',');
  s->add_option("--points-per-line", sw.points_per_line, "Inliers per segment (lines2d)");
  s->add_option("--n", sw.n, "Surface samples (polyhedra)")->capture_default_str();
  s->add_option("--k", sw.config.k, "Neighbors per point in the fusion graph");
  s->add_option("--tau", sw.config.tau, "Minimum support of a plane");
  s->add_option("--lambda-l", sw.config.lambda_l, "Terminal local regularization");
  s->add_option("--lambda-floor", sw.config.lambda_floor, "Lower clamp of the starting lambda");
  s->add_option("--normal-k", sw.config.normal_k, "Neighbors for PCA normals");
  s->add_flag("--reassign-every-round", sw.keep_every_round,
              "Pull regions below tau onto V in every round");
  s->add_option("--out", sw.out, "CSV output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (threads > 0) SetMaxThreads(threads);
    if (g->parsed()) return RunGenerate(gen, out);
    if (r->parsed()) return RunReconstruct(rec, out);
    if (e->parsed()) return RunEvaluate(ev, out);
    return RunSweep(sw, out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kFailure;
  }
}

}  // namespace planefit::cli
