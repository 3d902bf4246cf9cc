#include "hct/metrics.hpp"

#include <cmath>
#include <limits>

#include "hct/linalg.hpp"
#include "hct/locate.hpp"
#include "hct/parallel.hpp"
#include "hct/transfer.hpp"

namespace hct {

double mass_variation(const DGField& source, const DGField& target) {
  const CompositeRule rule = realize(QuadSpec{15, 0});
  return std::fabs(mass(source, rule) - mass(target, rule));
}

double l2_error(const DGField& source, const DGField& target) {
  const BBox& ba = source.mesh().bounds();
  const BBox& bb = target.mesh().bounds();
  const double diam = ba.diameter();
  if ((ba.lo - bb.lo).norm() > 1e-9 * diam || (ba.hi - bb.hi).norm() > 1e-9 * diam)
    throw Error("l2_error: fields live on different domains");
  const Domain domain{ba.lo.x, ba.hi.x, ba.lo.y, ba.hi.y};
  const RectRule rule = tensor_rule_on(domain, 40);

  const Bvh bvh_a = Bvh::build(source.mesh());
  const Bvh bvh_b = Bvh::build(target.mesh());
  const int np = static_cast<int>(rule.points.size());
  std::vector<double> terms(np);
  parallel_for(np, [&](int q) {
    const Vec2& p = rule.points[q];
    const LocateResult la = locate(bvh_a, p);
    const LocateResult lb = locate(bvh_b, p);
    const double u = source.evaluate(la.element, la.bary);
    const double g = target.evaluate(lb.element, lb.bary);
    terms[q] = rule.weights[q] * (u - g) * (u - g);
  });
  return std::sqrt(kahan_sum(terms));
}

std::vector<double> convergence_orders(const std::vector<double>& h,
                                       const std::vector<double>& err) {
  if (h.size() != err.size() || h.size() < 2)
    throw Error("convergence_orders: need >= 2 rows of matching length");
  std::vector<double> orders;
  for (size_t i = 1; i < h.size(); ++i) {
    if (h[i - 1] == h[i]) throw Error("convergence_orders: repeated h");
    if (err[i - 1] <= 0.0 || err[i] <= 0.0) {
      orders.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    orders.push_back(std::log(err[i - 1] / err[i]) / std::log(h[i - 1] / h[i]));
  }
  return orders;
}

double fitted_order(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size() || h.size() < 2)
    throw Error("fitted_order: need >= 2 rows of matching length");
  const int n = static_cast<int>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    if (h[i] <= 0.0 || err[i] <= 0.0)
      throw Error("fitted_order: nonpositive h or error");
    const double x = std::log(h[i]);
    const double y = std::log(err[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace hct
