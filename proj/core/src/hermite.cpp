#include "fastdiff/hermite.hpp"

#include <algorithm>
#include <stdexcept>

#include "fastdiff/errors.hpp"

namespace fastdiff {

HermiteTrack::HermiteTrack(std::vector<double> x, std::vector<double> y, std::vector<double> dy)
    : x_(std::move(x)), y_(std::move(y)), dy_(std::move(dy)) {
  if (x_.size() != y_.size() || x_.size() != dy_.size())
    throw std::invalid_argument("HermiteTrack: size mismatch");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("HermiteTrack: knots not increasing");
}

std::size_t HermiteTrack::locate(double x) const {
  if (x_.size() < 2 || !(x >= x_.front()) || !(x <= x_.back()))
    throw OutOfRange("interpolation point outside the sampled range");
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  return i == 0 ? 0 : std::min(i - 1, x_.size() - 2);
}

std::pair<double, double> HermiteTrack::operator()(double x) const {
  const std::size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  const double value = h00 * y_[i] + h10 * h * dy_[i] + h01 * y_[i + 1] + h11 * h * dy_[i + 1];
  const double d00 = 6 * t2 - 6 * t, d10 = 3 * t2 - 4 * t + 1;
  const double d01 = -6 * t2 + 6 * t, d11 = 3 * t2 - 2 * t;
  const double slope =
      (d00 * y_[i] + d01 * y_[i + 1]) / h + d10 * dy_[i] + d11 * dy_[i + 1];
  return {value, slope};
}

}  // namespace fastdiff
