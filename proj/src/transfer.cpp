#include "hct/transfer.hpp"

#include <algorithm>
#include <cmath>

#include "hct/linalg.hpp"
#include "hct/locate.hpp"
#include "hct/parallel.hpp"
#include "hct/spline.hpp"

namespace hct {

Method parse_method(const std::string& name) {
  if (name == "TRANS1") return Method::TRANS1;
  if (name == "TRANS2") return Method::TRANS2;
  if (name == "TRANS3") return Method::TRANS3;
  if (name == "LINEAR") return Method::LINEAR;
  if (name == "QUADRATIC") return Method::QUADRATIC;
  throw Error("unknown transfer method '" + name +
              "' (TRANS1, TRANS2, TRANS3, LINEAR, QUADRATIC)");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::TRANS1: return "TRANS1";
    case Method::TRANS2: return "TRANS2";
    case Method::TRANS3: return "TRANS3";
    case Method::LINEAR: return "LINEAR";
    case Method::QUADRATIC: return "QUADRATIC";
  }
  return "?";
}

void TransferConfig::validate() const {
  if (degree < 1 || degree > 3)
    throw Error("transfer: degree must be 1, 2 or 3");
  switch (method) {
    case Method::TRANS3:
      if (degree != 1)
        throw Error("TRANS3 requires k = 1 (no k = 2 limiter exists)");
      if (!limiter_enabled)
        throw Error("TRANS3 requires the limiter enabled");
      break;
    case Method::LINEAR:
      if (degree > 2) throw Error("LINEAR is defined for k = 1, 2");
      break;
    case Method::QUADRATIC:
      if (degree != 2) throw Error("QUADRATIC requires k = 2");
      break;
    default:
      break;
  }
  if (method != Method::TRANS3 && limiter_enabled)
    throw Error("the limiter is only part of TRANS3");
  const bool projects = method == Method::TRANS1 || method == Method::TRANS2 ||
                        method == Method::TRANS3;
  if (projects && quad.degree() < 2 * degree)
    throw Error("transfer: quadrature " + quad.str() + " (degree " +
                std::to_string(quad.degree()) + ") too weak for 2k = " +
                std::to_string(2 * degree));
}

int TransferConfig::output_degree() const {
  if (method == Method::LINEAR) return 1;
  if (method == Method::QUADRATIC) return 2;
  return degree;
}

ProjectionSystem project_element(const ModalBasis& basis,
                                 const CompositeRule& rule, double area_ratio,
                                 std::span<const double> integrand) {
  const int nb = basis.size();
  const int nq = rule.size();
  ProjectionSystem sys;
  sys.area_ratio = area_ratio;
  sys.mass.assign(nb * nb, 0.0);
  sys.forcing.assign(nb, 0.0);
  std::vector<double> psi(nb);
  for (int q = 0; q < nq; ++q) {
    basis.eval(rule.points[q][1], rule.points[q][2], psi);
    const double w = area_ratio * rule.weights[q];
    for (int i = 0; i < nb; ++i) {
      sys.forcing[i] += w * integrand[q] * psi[i];
      for (int j = i; j < nb; ++j) sys.mass[i * nb + j] += w * psi[i] * psi[j];
    }
  }
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < i; ++j) sys.mass[i * nb + j] = sys.mass[j * nb + i];
  sys.coeffs = sys.forcing;
  std::vector<double> m(sys.mass);
  cholesky_solve(nb, std::move(m), sys.coeffs);
  return sys;
}

namespace {

DGField transfer_projection(const DGField& source, const TriMesh& target,
                            const TransferConfig& cfg, const Bvh& bvh) {
  const CompositeRule rule = realize(cfg.quad);
  const int nq = rule.size();
  const ModalBasis& basis = ModalBasis::get(cfg.degree);

  // surrogate only for TRANS2
  HctSurrogate surrogate;
  const bool smooth = cfg.method == Method::TRANS2;
  if (smooth) surrogate = build_surrogate(source, synchronize(source));

  DGField out(target, cfg.degree);
  const double ref_area = 0.5;
  parallel_for(target.triangle_count(), [&](int t) {
    std::vector<double> integrand_store(static_cast<size_t>(nq));
    const auto pts = target.triangle_points(t);
    for (int q = 0; q < nq; ++q) {
      const Bary& l = rule.points[q];
      const Vec2 x = pts[0] * l[0] + pts[1] * l[1] + pts[2] * l[2];
      LocateResult loc;
      try {
        loc = locate(bvh, x);
      } catch (const Error& e) {
        throw Error("transfer: target element " + std::to_string(t) +
                    ", quadrature point " + std::to_string(q) + ": " + e.what());
      }
      integrand_store[q] = smooth ? surrogate.value(loc.element, loc.bary)
                                  : source.evaluate(loc.element, loc.bary);
    }
    const ProjectionSystem sys = project_element(
        basis, rule, target.triangle_area(t) / ref_area, integrand_store);
    auto c = out.coeffs(t);
    for (int j = 0; j < out.block(); ++j) c[j] = sys.coeffs[j];
  });
  return out;
}

DGField transfer_interpolation(const DGField& source, const TriMesh& target,
                               const TransferConfig& cfg, const Bvh& bvh) {
  const int out_degree = cfg.output_degree();
  const NodalLayout& layout = NodalLayout::get(out_degree);
  DGField out(target, out_degree);
  const int nn = layout.size();
  parallel_for(target.triangle_count(), [&](int t) {
    std::vector<double> nodal_store(static_cast<size_t>(nn));
    const auto pts = target.triangle_points(t);
    for (int i = 0; i < nn; ++i) {
      const Bary& l = layout.nodes()[i];
      const Vec2 x = pts[0] * l[0] + pts[1] * l[1] + pts[2] * l[2];
      LocateResult loc;
      try {
        loc = locate(bvh, x);
      } catch (const Error& e) {
        throw Error("transfer: target element " + std::to_string(t) +
                    ", nodal point " + std::to_string(i) + ": " + e.what());
      }
      nodal_store[i] = source.evaluate(loc.element, loc.bary);
    }
    layout.nodal_to_modal(nodal_store, out.coeffs(t));
  });
  return out;
}

}  // namespace

DGField transfer(const DGField& source, const TriMesh& target,
                 const TransferConfig& cfg) {
  TransferConfig c = cfg;
  if (c.method == Method::TRANS3) c.limiter_enabled = true;
  c.validate();
  if (source.degree() != c.degree)
    throw Error("transfer: config degree " + std::to_string(c.degree) +
                " does not match the source field degree " +
                std::to_string(source.degree()));
  const Bvh bvh = Bvh::build(source.mesh());

  switch (c.method) {
    case Method::TRANS1:
    case Method::TRANS2:
      return transfer_projection(source, target, c, bvh);
    case Method::TRANS3: {
      TransferConfig raw = c;
      raw.method = Method::TRANS1;
      raw.limiter_enabled = false;
      const DGField unlimited = transfer_projection(source, target, raw, bvh);
      return limit(unlimited, source);
    }
    case Method::LINEAR:
    case Method::QUADRATIC:
      return transfer_interpolation(source, target, c, bvh);
  }
  throw Error("transfer: unreachable");
}

DGField limit(const DGField& target, const DGField& source) {
  if (target.degree() != 1 || source.degree() != 1)
    throw Error("limit: only k = 1 fields are supported");
  const Bvh bvh = Bvh::build(source.mesh());
  const NodalLayout& layout = NodalLayout::get(1);
  const double eps = 1e-9 * source.mesh().bounds().diameter();

  DGField out(target.mesh(), 1);
  parallel_for(target.mesh().triangle_count(), [&](int t) {
    std::array<double, 3> nodal{};
    std::array<double, 3> src_nodal{};
    layout.modal_to_nodal(target.coeffs(t), nodal);
    const auto pts = target.mesh().triangle_points(t);
    bool changed = false;
    for (int i = 0; i < 3; ++i) {
      const std::vector<int> near = bvh.find_near(pts[i], eps);
      if (near.empty()) continue;
      double lo = 1e300, hi = -1e300;
      for (const int se : near) {
        layout.modal_to_nodal(source.coeffs(se), src_nodal);
        for (const double v : src_nodal) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      if (nodal[i] < lo) { nodal[i] = lo; changed = true; }
      if (nodal[i] > hi) { nodal[i] = hi; changed = true; }
    }
    if (changed) {
      layout.nodal_to_modal(nodal, out.coeffs(t));
    } else {
      const auto src = target.coeffs(t);
      auto dst = out.coeffs(t);
      std::copy(src.begin(), src.end(), dst.begin());
    }
  });
  return out;
}

double mass(const DGField& field, const CompositeRule& rule) {
  if (rule.degree < field.degree())
    throw Error("mass: rule degree below the field degree");
  const TriMesh& mesh = field.mesh();
  const int nt = mesh.triangle_count();
  const double ref_area = 0.5;
  std::vector<double> per_element(nt);
  parallel_for(nt, [&](int t) {
    double s = 0.0, comp = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const double y = rule.weights[q] * field.evaluate(t, rule.points[q]) - comp;
      const double tt = s + y;
      comp = (tt - s) - y;
      s = tt;
    }
    per_element[t] = s * (mesh.triangle_area(t) / ref_area);
  });
  return kahan_sum(per_element);
}

}  // namespace hct
