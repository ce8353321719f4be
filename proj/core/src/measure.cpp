#include "geoswarm/measure.hpp"

#include <cmath>

namespace geoswarm {

EmpiricalMeasure EmpiricalMeasure::uniform(const Manifold& m, std::vector<Point> points) {
  const int n = static_cast<int>(points.size());
  if (n < 1) throw ConfigError("empirical measure needs at least one atom");
  std::vector<double> masses(n, 1.0 / n);
  return weighted(m, std::move(points), std::move(masses));
}

EmpiricalMeasure EmpiricalMeasure::weighted(const Manifold& m, std::vector<Point> points,
                                            std::vector<double> masses) {
  const int n = static_cast<int>(points.size());
  if (n < 1) throw ConfigError("empirical measure needs at least one atom");
  if (masses.size() != points.size())
    throw ConfigError("empirical measure: points and masses differ in length");
  double total = 0.0;
  for (double mi : masses) {
    if (!(mi > 0.0)) throw ConfigError("empirical measure: masses must be positive");
    total += mi;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ConfigError("empirical measure: masses sum to " + std::to_string(total) +
                      ", expected 1 within 1e-12");
  for (int i = 0; i < n; ++i) {
    if (!m.contains(points[i]))
      throw DomainViolation("empirical measure: atom " + std::to_string(i) +
                            " lies outside the admissible domain");
  }
  return EmpiricalMeasure(m, std::move(points), std::move(masses));
}

}  // namespace geoswarm
