#include "hct/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

namespace hct {

namespace {

// element counts of the reference mesh families, rows 1..7
constexpr long kReferenceStructured[7] = {32,  128,  512,   2048,
                                          8192, 32768, 131072};
constexpr long kReferenceUnstructured[7] = {28,  124,  512,   2064,
                                            8220, 32964, 130800};

void log_grid(const GridPair& pair) {
  std::fprintf(stderr,
               "[grid %d] source %d elements (reference %ld), target %d "
               "elements (reference %ld)\n",
               pair.grid, pair.source.triangle_count(),
               kReferenceStructured[pair.grid - 1], pair.target.triangle_count(),
               kReferenceUnstructured[pair.grid - 1]);
}

}  // namespace

int grid_cells(int grid) {
  if (grid < 1 || grid > 7) throw Error("grid sequence number must be in 1..7");
  return 4 << (grid - 1);
}

GridPair make_grid_pair(const Domain& domain, int grid, std::uint64_t seed) {
  const int n = grid_cells(grid);
  GridPair pair;
  pair.grid = grid;
  pair.source = generate_structured(domain, n);
  pair.h = pair.source.h();
  // same diameter target; decorrelate the jitter stream across grids
  pair.target = generate_unstructured(domain, pair.h, seed * 31 + grid);
  return pair;
}

void StudyConfig::validate() const {
  if (grid_lo < 1 || grid_hi > 7 || grid_lo > grid_hi)
    throw Error("study: grid range must satisfy 1 <= lo <= hi <= 7");
  for (const int k : degrees)
    if (k < 1 || k > 3) throw Error("study: degrees must be in 1..3");
  if (!quad.valid()) throw Error("study: invalid quadrature spec");
  test_function(function);  // throws for unknown names
}

std::vector<Method> default_methods(int degree) {
  switch (degree) {
    case 1:
      return {Method::TRANS1, Method::TRANS2, Method::TRANS3, Method::LINEAR};
    case 2:
      return {Method::TRANS1, Method::TRANS2, Method::LINEAR, Method::QUADRATIC};
    default:
      return {Method::TRANS1, Method::TRANS2};
  }
}

const std::vector<QuadSpec> kQuadStudySpecs = {
    {15, 0}, {15, 1}, {3, 0}, {3, 1}, {3, 2}, {3, 3}, {6, 1}, {6, 2}};

namespace {

std::vector<Method> methods_for(const StudyConfig& cfg, int degree) {
  if (cfg.methods.empty()) return default_methods(degree);
  std::vector<Method> out;
  for (const Method m : cfg.methods) {
    if (m == Method::TRANS3 && degree != 1) continue;
    if (m == Method::QUADRATIC && degree != 2) continue;
    if (m == Method::LINEAR && degree > 2) continue;
    out.push_back(m);
  }
  return out;
}

double elapsed_seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

StudyRow run_one(const GridPair& pair, const DGField& source, Method method,
                 int k, const QuadSpec& quad, bool timing) {
  const auto t0 = std::chrono::steady_clock::now();
  TransferConfig cfg;
  cfg.method = method;
  cfg.degree = k;
  cfg.quad = quad;
  cfg.limiter_enabled = method == Method::TRANS3;
  const DGField transferred = transfer(source, pair.target, cfg);
  StudyRow row;
  row.grid = pair.grid;
  row.h = pair.h;
  row.elements_src = pair.source.triangle_count();
  row.elements_tgt = pair.target.triangle_count();
  row.method = method_name(method);
  row.k = k;
  row.quad = quad.str();
  row.mv = mass_variation(source, transferred);
  row.l2 = l2_error(source, transferred);
  row.seconds = timing ? elapsed_seconds(t0) : 0.0;
  return row;
}

// orders within each (method, k, quad) series, in row order
void attach_orders(std::vector<StudyRow>& rows) {
  std::map<std::string, const StudyRow*> previous;
  for (StudyRow& row : rows) {
    const std::string key = row.method + "/" + std::to_string(row.k) + "/" + row.quad;
    const auto it = previous.find(key);
    if (it != previous.end()) {
      const StudyRow& prev = *it->second;
      if (prev.l2 > 0.0 && row.l2 > 0.0) {
        row.order = std::log(prev.l2 / row.l2) / std::log(prev.h / row.h);
      } else {
        row.order_undefined = true;
      }
    }
    previous[key] = &row;
  }
}

}  // namespace

std::string StudyReport::csv() const {
  std::string out = "grid,h,elements_src,elements_tgt,method,k,quad,mv,l2,order,seconds\n";
  char buf[256];
  for (const StudyRow& r : rows) {
    std::string order_text;
    if (r.order)
      order_text = (std::snprintf(buf, sizeof buf, "%.4f", *r.order), buf);
    else if (r.order_undefined)
      order_text = "undef";
    std::snprintf(buf, sizeof buf, "%d,%.6f,%ld,%ld,%s,%d,%s,%.6e,%.6e,%s,%.3f\n",
                  r.grid, r.h, r.elements_src, r.elements_tgt, r.method.c_str(),
                  r.k, r.quad.c_str(), r.mv, r.l2, order_text.c_str(), r.seconds);
    out += buf;
  }
  return out;
}

void StudyReport::write_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open CSV for writing: " + path);
  out << csv();
  if (!out) throw Error("failed writing CSV: " + path);
}

StudyReport run_quadrature_study(const StudyConfig& cfg) {
  StudyConfig c = cfg;
  c.function = "u1";
  c.degrees = {1};
  c.validate();
  const TestFunction fn = test_function(c.function);
  const CompositeRule project_rule = realize(QuadSpec{15, 1});

  StudyReport report;
  for (int g = c.grid_lo; g <= c.grid_hi; ++g) {
    const GridPair pair = make_grid_pair(fn.domain, g, c.seed);
    log_grid(pair);
    const DGField source = project_analytic(pair.source, 1, fn.f, project_rule);
    for (const QuadSpec& spec : kQuadStudySpecs)
      report.rows.push_back(
          run_one(pair, source, Method::TRANS1, 1, spec, c.timing));
  }
  if (!c.out_csv.empty()) report.write_csv(c.out_csv);
  return report;
}

namespace {

StudyReport run_method_study(const StudyConfig& cfg, bool with_orders) {
  cfg.validate();
  const TestFunction fn = test_function(cfg.function);
  const CompositeRule project_rule = realize(QuadSpec{15, 1});

  StudyReport report;
  for (int g = cfg.grid_lo; g <= cfg.grid_hi; ++g) {
    const GridPair pair = make_grid_pair(fn.domain, g, cfg.seed);
    log_grid(pair);
    for (const int k : cfg.degrees) {
      const DGField source = project_analytic(pair.source, k, fn.f, project_rule);
      for (const Method m : methods_for(cfg, k))
        report.rows.push_back(run_one(pair, source, m, k, cfg.quad, cfg.timing));
    }
  }
  if (with_orders) {
    // group rows by series across grids
    std::vector<StudyRow> ordered = report.rows;
    attach_orders(ordered);
    report.rows = std::move(ordered);
  }
  if (!cfg.out_csv.empty()) report.write_csv(cfg.out_csv);
  return report;
}

}  // namespace

StudyReport run_mass_study(const StudyConfig& cfg) {
  return run_method_study(cfg, false);
}

StudyReport run_error_study(const StudyConfig& cfg) {
  return run_method_study(cfg, true);
}

namespace {

// midpoint subdivision connectivity for one parent triangle with local
// points [v0, v1, v2, m0, m1, m2] (m_i opposite vertex i)
constexpr int kSubTri[4][3] = {{0, 5, 4}, {5, 1, 3}, {4, 3, 2}, {3, 4, 5}};

}  // namespace

VizExport build_viz(const DGField& field) {
  const TriMesh& mesh = field.mesh();
  VizExport viz;
  const Bary locals[6] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                          {0, 0.5, 0.5}, {0.5, 0, 0.5}, {0.5, 0.5, 0}};
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const int base = static_cast<int>(viz.points.size());
    for (const Bary& b : locals) {
      viz.points.push_back(mesh.map_to_physical(t, b));
      viz.value.push_back(field.evaluate(t, b));
      viz.grad_mag.push_back(field.gradient(t, b).norm());
    }
    for (const auto& sub : kSubTri)
      viz.cells.push_back({base + sub[0], base + sub[1], base + sub[2]});
  }
  return viz;
}

VizExport build_viz(const HctSurrogate& surrogate) {
  const TriMesh& mesh = surrogate.mesh();
  VizExport viz;
  const int nv = mesh.vertex_count();
  viz.points.resize(nv + mesh.edge_count());
  viz.value.resize(viz.points.size());
  viz.grad_mag.resize(viz.points.size());

  for (int v = 0; v < nv; ++v) {
    viz.points[v] = mesh.vertex(v);
    const auto& incident = mesh.vertex_triangles(v);
    const int t = incident.front();
    const auto& tri = mesh.triangle(t);
    Bary b{0, 0, 0};
    for (int i = 0; i < 3; ++i)
      if (tri[i] == v) b[i] = 1.0;
    viz.value[v] = surrogate.value(t, b);
    viz.grad_mag[v] = surrogate.gradient(t, b).norm();
  }
  for (int e = 0; e < mesh.edge_count(); ++e) {
    const Edge& edge = mesh.edge(e);
    const int t = edge.left;
    const auto& tri = mesh.triangle(t);
    Bary b{0, 0, 0};
    for (int i = 0; i < 3; ++i)
      if (tri[i] == edge.v0 || tri[i] == edge.v1) b[i] = 0.5;
    viz.points[nv + e] = (mesh.vertex(edge.v0) + mesh.vertex(edge.v1)) * 0.5;
    viz.value[nv + e] = surrogate.value(t, b);
    viz.grad_mag[nv + e] = surrogate.gradient(t, b).norm();
  }
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangle(t);
    int ids[6];
    for (int i = 0; i < 3; ++i) {
      ids[i] = tri[i];
      ids[3 + i] = nv + mesh.triangle_edge(t, i);
    }
    for (const auto& sub : kSubTri)
      viz.cells.push_back({ids[sub[0]], ids[sub[1]], ids[sub[2]]});
  }
  return viz;
}

void write_vtk(const VizExport& viz, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open VTK file for writing: " + path);
  char buf[128];
  out << "# vtk DataFile Version 3.0\n"
      << "surface export\n"
      << "ASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n"
      << "POINTS " << viz.points.size() << " double\n";
  for (size_t i = 0; i < viz.points.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g %.12g %.12g\n", viz.points[i].x,
                  viz.points[i].y, viz.value[i]);
    out << buf;
  }
  out << "CELLS " << viz.cells.size() << " " << viz.cells.size() * 4 << "\n";
  for (const auto& c : viz.cells)
    out << "3 " << c[0] << " " << c[1] << " " << c[2] << "\n";
  out << "CELL_TYPES " << viz.cells.size() << "\n";
  for (size_t i = 0; i < viz.cells.size(); ++i) out << "5\n";
  out << "POINT_DATA " << viz.points.size() << "\n"
      << "SCALARS value double 1\nLOOKUP_TABLE default\n";
  for (const double v : viz.value) {
    std::snprintf(buf, sizeof buf, "%.12g\n", v);
    out << buf;
  }
  out << "SCALARS grad_mag double 1\nLOOKUP_TABLE default\n";
  for (const double v : viz.grad_mag) {
    std::snprintf(buf, sizeof buf, "%.12g\n", v);
    out << buf;
  }
  if (!out) throw Error("failed writing VTK: " + path);
}

}  // namespace hct
