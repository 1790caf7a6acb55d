#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace fastdiff {

// Cubic Hermite interpolant on strictly increasing knots.
class HermiteTrack {
 public:
  HermiteTrack() = default;
  HermiteTrack(std::vector<double> x, std::vector<double> y, std::vector<double> dy);

  bool empty() const { return x_.empty(); }
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  const std::vector<double>& knots() const { return x_; }

  // Index i with x[i] <= x <= x[i+1]; x must lie in [front, back].
  std::size_t locate(double x) const;

  // Value and first derivative of the interpolant.
  std::pair<double, double> operator()(double x) const;

 private:
  std::vector<double> x_, y_, dy_;
};

}  // namespace fastdiff
