// Command-line front end: mesh generation, projection, transfer, the study
// drivers and VTK export. HCT_THREADS caps the worker count.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hct/locate.hpp"
#include "hct/metrics.hpp"
#include "hct/study.hpp"

namespace {

hct::Domain parse_domain(const std::string& text) {
  hct::Domain d;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf%c", &d.x0, &d.x1, &d.y0,
                  &d.y1, &extra) != 4 ||
      !d.valid())
    throw CLI::ValidationError("--domain", "expected x0,x1,y0,y1 with x0<x1, y0<y1");
  return d;
}

struct StudyFlags {
  std::string function = "u1";
  std::string grids = "1:6";
  std::string quad = "15x1";
  std::vector<int> degrees = {1, 2};
  std::vector<std::string> methods;
  std::uint64_t seed = 1;
  bool timing = false;
  std::string out;
  std::string config_path;
};

void add_study_flags(CLI::App* cmd, StudyFlags& f, bool with_function = true) {
  if (with_function)
    cmd->add_option("--function", f.function, "test function (u1, u2, u3)");
  cmd->add_option("--grids", f.grids, "grid sequence range lo:hi (rows 1..7)");
  cmd->add_option("--seed", f.seed, "unstructured-mesh jitter seed");
  cmd->add_flag("--timing", f.timing, "record wall times in the seconds column");
  cmd->add_option("--out", f.out, "output CSV path");
  cmd->add_option("--config", f.config_path,
                  "key=value file (function, grids, k, methods, quad, seed, "
                  "timing, out); flags win over file entries");
}

// key=value lines; '#' starts a comment; values fill options the command line
// left at their defaults
void apply_config_file(const CLI::App* cmd, StudyFlags& f) {
  if (f.config_path.empty()) return;
  std::ifstream in(f.config_path);
  if (!in) throw hct::Error("cannot open config file: " + f.config_path);
  auto given = [&](const std::string& name) { return cmd->count("--" + name) > 0; };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const size_t eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw hct::Error(f.config_path + ":" + std::to_string(lineno) +
                       ": expected key=value");
    auto trim = [](std::string s) {
      const size_t a = s.find_first_not_of(" \t\r");
      const size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "function" && !given(key)) f.function = value;
    else if (key == "grids" && !given(key)) f.grids = value;
    else if (key == "quad" && !given(key)) f.quad = value;
    else if (key == "seed" && !given(key)) f.seed = std::stoull(value);
    else if (key == "timing" && !given(key)) f.timing = value == "true" || value == "1";
    else if (key == "out" && !given(key)) f.out = value;
    else if (key == "k" && !given(key)) {
      f.degrees.clear();
      std::istringstream ks(value);
      for (int k; ks >> k;) f.degrees.push_back(k);
    } else if (key == "methods" && !given(key)) {
      f.methods.clear();
      std::istringstream ms(value);
      for (std::string m; ms >> m;) f.methods.push_back(m);
    } else if (key != "function" && key != "grids" && key != "quad" &&
               key != "seed" && key != "timing" && key != "out" && key != "k" &&
               key != "methods") {
      throw hct::Error(f.config_path + ":" + std::to_string(lineno) +
                       ": unknown key '" + key + "'");
    }
  }
}

hct::StudyConfig study_config(const StudyFlags& f) {
  if (f.out.empty()) throw hct::Error("an output CSV path is required (--out)");
  hct::StudyConfig cfg;
  cfg.function = f.function;
  char extra = 0;
  if (std::sscanf(f.grids.c_str(), "%d:%d%c", &cfg.grid_lo, &cfg.grid_hi,
                  &extra) != 2)
    throw CLI::ValidationError("--grids", "expected lo:hi");
  cfg.degrees = f.degrees;
  for (const std::string& m : f.methods) cfg.methods.push_back(hct::parse_method(m));
  cfg.quad = hct::parse_quad_spec(f.quad);
  cfg.seed = f.seed;
  cfg.timing = f.timing;
  cfg.out_csv = f.out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conservative high-order solution transfer between triangular meshes"};
  app.require_subcommand(1);

  // generate-mesh
  std::string gm_kind = "structured", gm_domain = "0,1,0,1", gm_out;
  int gm_n = 4;
  double gm_target_h = 0.25;
  std::uint64_t gm_seed = 1;
  auto* gm = app.add_subcommand("generate-mesh", "write a mesh file");
  gm->add_option("--kind", gm_kind, "structured | unstructured")
      ->check(CLI::IsMember({"structured", "unstructured"}));
  gm->add_option("--domain", gm_domain, "x0,x1,y0,y1");
  gm->add_option("--n", gm_n, "cells per side (structured)");
  gm->add_option("--target-h", gm_target_h, "target diameter (unstructured)");
  gm->add_option("--seed", gm_seed, "jitter seed (unstructured)");
  gm->add_option("--out", gm_out, "output mesh path")->required();

  // project
  std::string pj_mesh, pj_function = "u1", pj_quad = "15x1", pj_out;
  int pj_k = 1;
  auto* pj = app.add_subcommand("project", "project a test function onto a mesh");
  pj->add_option("--mesh", pj_mesh, "mesh file")->required();
  pj->add_option("--function", pj_function, "u1 | u2 | u3");
  pj->add_option("--k", pj_k, "polynomial degree 1..3");
  pj->add_option("--quad", pj_quad, "projection quadrature, e.g. 15x1");
  pj->add_option("--out-field", pj_out, "output field path")->required();

  // transfer
  std::string tr_method = "TRANS2", tr_quad = "15x1", tr_src_mesh, tr_tgt_mesh;
  std::string tr_function, tr_src_field, tr_out, tr_report;
  int tr_k = 1;
  auto* tr = app.add_subcommand("transfer", "move a field between meshes");
  tr->add_option("--method", tr_method, "TRANS1|TRANS2|TRANS3|LINEAR|QUADRATIC");
  tr->add_option("--k", tr_k, "source polynomial degree");
  tr->add_option("--quad", tr_quad, "projection quadrature");
  tr->add_option("--source-mesh", tr_src_mesh)->required();
  tr->add_option("--target-mesh", tr_tgt_mesh)->required();
  tr->add_option("--function", tr_function, "project this function as the source");
  tr->add_option("--source-field", tr_src_field, "or read the source field");
  tr->add_option("--out-field", tr_out, "output field path");
  tr->add_option("--report", tr_report, "metrics CSV path");

  // studies
  StudyFlags qs_flags, ms_flags, es_flags;
  auto* qs = app.add_subcommand("study-quadrature",
                                "mass-conservation sweep over quadrature specs");
  add_study_flags(qs, qs_flags, false);
  auto* ms = app.add_subcommand("study-mass", "mass variation per method and grid");
  add_study_flags(ms, ms_flags);
  ms->add_option("--k", ms_flags.degrees, "degrees to run");
  ms->add_option("--methods", ms_flags.methods, "method subset");
  ms->add_option("--quad", ms_flags.quad, "transfer quadrature");
  auto* es = app.add_subcommand("study-error", "L2 error and convergence orders");
  add_study_flags(es, es_flags);
  es->add_option("--k", es_flags.degrees, "degrees to run");
  es->add_option("--methods", es_flags.methods, "method subset");
  es->add_option("--quad", es_flags.quad, "transfer quadrature");

  // export-viz
  std::string ev_mesh, ev_function = "u2", ev_mode = "hct", ev_quad = "15x1", ev_out;
  std::string ev_field;
  int ev_k = 1;
  auto* ev = app.add_subcommand("export-viz",
                                "midpoint-subdivision VTK surface export");
  ev->add_option("--mesh", ev_mesh, "mesh file")->required();
  ev->add_option("--field", ev_field, "field file (default: project --function)");
  ev->add_option("--function", ev_function, "function to project when no field");
  ev->add_option("--k", ev_k, "projection degree");
  ev->add_option("--quad", ev_quad, "projection quadrature");
  ev->add_option("--mode", ev_mode, "dg (discontinuous) | hct (smoothed)")
      ->check(CLI::IsMember({"dg", "hct"}));
  ev->add_option("--out", ev_out, "output VTK path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gm->parsed()) {
      const hct::Domain domain = parse_domain(gm_domain);
      const hct::TriMesh mesh =
          gm_kind == "structured"
              ? hct::generate_structured(domain, gm_n)
              : hct::generate_unstructured(domain, gm_target_h, gm_seed);
      hct::write_mesh(mesh, gm_out);
      std::printf("%s: %d vertices, %d triangles, h = %.6f\n", gm_out.c_str(),
                  mesh.vertex_count(), mesh.triangle_count(), mesh.h());
    } else if (pj->parsed()) {
      const hct::TriMesh mesh = hct::read_mesh(pj_mesh);
      const hct::TestFunction fn = hct::test_function(pj_function);
      const hct::DGField field = hct::project_analytic(
          mesh, pj_k, fn.f, hct::realize(hct::parse_quad_spec(pj_quad)));
      hct::write_field(field, pj_out);
      std::printf("%s: degree %d, %d elements\n", pj_out.c_str(), pj_k,
                  mesh.triangle_count());
    } else if (tr->parsed()) {
      const hct::TriMesh source_mesh = hct::read_mesh(tr_src_mesh);
      const hct::TriMesh target_mesh = hct::read_mesh(tr_tgt_mesh);
      if (tr_function.empty() == tr_src_field.empty())
        throw hct::Error("transfer: give exactly one of --function / --source-field");
      const hct::DGField source =
          tr_function.empty()
              ? hct::read_field(tr_src_field, source_mesh)
              : hct::project_analytic(source_mesh, tr_k,
                                      hct::test_function(tr_function).f,
                                      hct::realize(hct::QuadSpec{15, 1}));
      hct::TransferConfig cfg;
      cfg.method = hct::parse_method(tr_method);
      cfg.degree = tr_k;
      cfg.quad = hct::parse_quad_spec(tr_quad);
      cfg.limiter_enabled = cfg.method == hct::Method::TRANS3;
      const hct::DGField result = hct::transfer(source, target_mesh, cfg);
      if (!tr_out.empty()) hct::write_field(result, tr_out);
      const double mv = hct::mass_variation(source, result);
      const double l2 = hct::l2_error(source, result);
      std::printf("method %s k %d quad %s: mv = %.6e, l2 = %.6e\n",
                  tr_method.c_str(), tr_k, tr_quad.c_str(), mv, l2);
      if (!tr_report.empty()) {
        std::ofstream rep(tr_report, std::ios::binary);
        if (!rep) throw hct::Error("cannot open report: " + tr_report);
        rep << "method,k,quad,mv,l2\n";
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s,%d,%s,%.6e,%.6e\n", tr_method.c_str(),
                      tr_k, tr_quad.c_str(), mv, l2);
        rep << buf;
      }
    } else if (qs->parsed()) {
      apply_config_file(qs, qs_flags);
      hct::run_quadrature_study(study_config(qs_flags));
      std::printf("wrote %s\n", qs_flags.out.c_str());
    } else if (ms->parsed()) {
      apply_config_file(ms, ms_flags);
      hct::run_mass_study(study_config(ms_flags));
      std::printf("wrote %s\n", ms_flags.out.c_str());
    } else if (es->parsed()) {
      apply_config_file(es, es_flags);
      hct::run_error_study(study_config(es_flags));
      std::printf("wrote %s\n", es_flags.out.c_str());
    } else if (ev->parsed()) {
      const hct::TriMesh mesh = hct::read_mesh(ev_mesh);
      hct::DGField field =
          ev_field.empty()
              ? hct::project_analytic(mesh, ev_k,
                                      hct::test_function(ev_function).f,
                                      hct::realize(hct::parse_quad_spec(ev_quad)))
              : hct::read_field(ev_field, mesh);
      if (ev_mode == "dg") {
        hct::write_vtk(hct::build_viz(field), ev_out);
      } else {
        const hct::HctSurrogate surrogate =
            hct::build_surrogate(field, hct::synchronize(field));
        hct::write_vtk(hct::build_viz(surrogate), ev_out);
      }
      std::printf("wrote %s\n", ev_out.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
