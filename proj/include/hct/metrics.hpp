#ifndef HCT_METRICS_HPP
#define HCT_METRICS_HPP

#include <vector>

#include "hct/field.hpp"

namespace hct {

// |mass(source) - mass(target)| with the 15-point base rule per element.
double mass_variation(const DGField& source, const DGField& target);

// sqrt of the 40x40 tensor Gauss integral of (u - g)^2 over the common
// domain; each Gauss point is located in both meshes.
double l2_error(const DGField& source, const DGField& target);

// log(E1/E2) / log(h1/h2) between consecutive entries; NaN where an error
// vanishes (order undefined).
std::vector<double> convergence_orders(const std::vector<double>& h,
                                       const std::vector<double>& err);

// Least-squares slope of log(err) against log(h).
double fitted_order(const std::vector<double>& h, const std::vector<double>& err);

}  // namespace hct

#endif
