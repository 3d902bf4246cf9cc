#ifndef HCT_STUDY_HPP
#define HCT_STUDY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hct/metrics.hpp"
#include "hct/spline.hpp"
#include "hct/transfer.hpp"

namespace hct {

// Grid sequence: row g (1..7) uses a structured source of 2*(4*2^(g-1))^2
// elements and an unstructured target generated at the matching diameter.
struct GridPair {
  int grid = 0;
  double h = 0.0;       // structured-source diameter
  TriMesh source;       // structured
  TriMesh target;       // unstructured
};
int grid_cells(int grid);  // cells per side, 4*2^(grid-1)
GridPair make_grid_pair(const Domain& domain, int grid, std::uint64_t seed);

struct StudyConfig {
  std::string function = "u1";
  int grid_lo = 1;
  int grid_hi = 6;
  std::vector<int> degrees = {1, 2};
  std::vector<Method> methods;  // empty = the per-degree default lists
  QuadSpec quad{15, 1};
  std::uint64_t seed = 1;
  bool timing = false;  // when off, the seconds column prints 0.000
  std::string out_csv;  // empty = no file

  void validate() const;
};

struct StudyRow {
  int grid = 0;
  double h = 0.0;
  long elements_src = 0;
  long elements_tgt = 0;
  std::string method;
  int k = 0;
  std::string quad;
  double mv = 0.0;
  double l2 = 0.0;
  std::optional<double> order;  // vs previous grid of the same series
  bool order_undefined = false;  // an exact transfer, no order to report
  double seconds = 0.0;
};

struct StudyReport {
  std::vector<StudyRow> rows;
  std::string csv() const;
  void write_csv(const std::string& path) const;
};

// Default method lists of the experiments: k=1 {TRANS1,TRANS2,TRANS3,LINEAR},
// k=2 {TRANS1,TRANS2,LINEAR,QUADRATIC}, k=3 {TRANS1,TRANS2}.
std::vector<Method> default_methods(int degree);

// Mass-conservation sweep over the eight quadrature specs (u1, TRANS1, k=1).
StudyReport run_quadrature_study(const StudyConfig& cfg);
extern const std::vector<QuadSpec> kQuadStudySpecs;

// Mass variation / L2 error per (method, k, grid); the error study also
// carries per-step convergence orders.
StudyReport run_mass_study(const StudyConfig& cfg);
StudyReport run_error_study(const StudyConfig& cfg);

// Midpoint-subdivision export: 4 subelements per element with vertex values
// and gradient magnitudes. The DG form duplicates vertices per element and
// keeps discontinuities; the spline form shares them and is continuous.
struct VizExport {
  std::vector<Vec2> points;
  std::vector<std::array<int, 3>> cells;
  std::vector<double> value;
  std::vector<double> grad_mag;
};
VizExport build_viz(const DGField& field);
VizExport build_viz(const HctSurrogate& surrogate);
void write_vtk(const VizExport& viz, const std::string& path);

}  // namespace hct

#endif
