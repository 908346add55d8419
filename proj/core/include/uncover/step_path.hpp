#pragma once

#include <vector>

namespace uncover {

// Right-continuous piecewise-constant function on [0,1]: the value is
// `initial` before the first event time and values[i] from times[i] onward.
class StepPath {
 public:
  StepPath() = default;
  StepPath(double initial, std::vector<double> times, std::vector<double> values);

  // Right-continuous evaluation by binary search; throws OutOfDomain unless
  // 0 <= t <= 1.
  double eval(double t) const;

  double initial() const { return initial_; }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& values() const { return values_; }

 private:
  double initial_ = 0;
  std::vector<double> times_;
  std::vector<double> values_;
};

}  // namespace uncover
