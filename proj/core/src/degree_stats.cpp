#include "uncover/degree_stats.hpp"

#include <cmath>

#include "uncover/errors.hpp"

namespace uncover {

DegreeStats degree_stats(const Graph& g) {
  const int n = g.vertex_count();
  DegreeStats s;
  s.degrees.resize(n);
  long long sum = 0;
  for (int v = 0; v < n; ++v) {
    const long long d = g.degree(v);
    s.degrees[v] = static_cast<int>(d);
    sum += d;
    s.square_sum += d * d;
    s.cube_sum += d * d * d;
    s.fourth_sum += d * d * d * d;
    if (d > s.max_degree) s.max_degree = static_cast<int>(d);
  }
  s.mean_degree = static_cast<double>(sum) / n;
  s.second_moment = static_cast<double>(s.square_sum) / n;
  s.variance = s.second_moment - s.mean_degree * s.mean_degree;
  for (int v = 0; v < n; ++v) {
    const double c = s.degrees[v] - s.mean_degree;
    s.centered_square_sum += c * c;
    s.centered_fourth_sum += c * c * c * c;
  }
  return s;
}

LimitParams limit_params(const DegreeStats& stats, int n, Regime regime,
                         std::optional<double> scale) {
  if (n <= 0 || static_cast<int>(stats.degrees.size()) != n)
    throw DimensionMismatch("limit_params: stats do not match n");
  LimitParams p;
  p.regime = regime;
  switch (regime) {
    case Regime::Sparse:
      p.scale = std::sqrt(static_cast<double>(n));
      p.mean_degree = stats.mean_degree;
      p.second_moment = stats.second_moment;
      p.degree_variance = stats.second_moment - stats.mean_degree * stats.mean_degree;
      break;
    case Regime::Regular: {
      const int d = stats.degrees.empty() ? 0 : stats.degrees.front();
      for (int di : stats.degrees)
        if (di != d) throw NotRegular("limit_params: degrees are not all equal");
      if (d < 1) throw NotRegular("limit_params: regular regime needs degree >= 1");
      p.scale = std::sqrt(static_cast<double>(n) * d);
      p.mean_degree = d;
      p.second_moment = static_cast<double>(d) * d;
      p.degree_variance = 0;
      break;
    }
    case Regime::General:
      if (!scale || !(*scale > 0)) throw BadScale("limit_params: scale must be positive");
      p.scale = *scale;
      p.mean_degree = stats.mean_degree;
      p.second_moment = stats.second_moment;
      p.degree_variance = stats.second_moment - stats.mean_degree * stats.mean_degree;
      break;
  }
  const double b2 = p.scale * p.scale;
  p.edge_ratio = static_cast<double>(n) * stats.mean_degree / b2;
  p.variance_ratio = stats.centered_square_sum / b2;
  p.density_ratio = std::sqrt(static_cast<double>(n)) * stats.mean_degree / p.scale;
  return p;
}

}  // namespace uncover
