#include "uncover/step_path.hpp"

#include <algorithm>

#include "uncover/errors.hpp"

namespace uncover {

StepPath::StepPath(double initial, std::vector<double> times, std::vector<double> values)
    : initial_(initial), times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size())
    throw DimensionMismatch("StepPath: times and values differ in length");
  if (!std::is_sorted(times_.begin(), times_.end()))
    throw InvalidSpec("StepPath: event times must be sorted");
  if (!times_.empty() && (times_.front() < 0.0 || times_.back() > 1.0))
    throw OutOfDomain("StepPath: event times must lie in [0,1]");
}

double StepPath::eval(double t) const {
  if (t < 0.0 || t > 1.0) throw OutOfDomain("StepPath::eval: t outside [0,1]");
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.begin()) return initial_;
  return values_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

}  // namespace uncover
