#include "fastdiff/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fastdiff/errors.hpp"

namespace fastdiff {

QuadratureResult integrate_piecewise(const std::function<double(double)>& f,
                                     const std::vector<double>& breakpoints, double a, double b,
                                     double rel_tol, bool singular_at_a) {
  QuadratureResult res;
  if (!(b > a)) return res;
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Deeper bisection only accumulates rounding noise into the estimate.
  const double piece_tol = std::max(rel_tol * 0.1, 1e-15);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    double err = 0.0, l1 = 0.0, value = 0.0;
    if (i == 0 && singular_at_a) {
      boost::math::quadrature::tanh_sinh<double> ts;
      std::size_t levels = 0;
      try {
        value = ts.integrate(f, lo, hi, piece_tol, &err, &l1, &levels);
      } catch (const std::exception&) {
        throw QuadratureFailure(hi, std::numeric_limits<double>::infinity());
      }
    } else {
      value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 6,
                                                                           piece_tol, &err, &l1);
    }
    res.value += value;
    res.error += err;
    res.l1 += l1;
  }
  if (!std::isfinite(res.value) || res.error > rel_tol * std::max(res.l1, 1e-300))
    throw QuadratureFailure(b, res.error);
  return res;
}

}  // namespace fastdiff
