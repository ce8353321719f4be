#pragma once

#include <vector>

#include "geoswarm/manifold.hpp"

namespace geoswarm {

// Weighted point cloud sum m_i delta_{x_i}: the system state. Masses are
// positive and sum to 1 within 1e-12; all atoms lie in the admissible domain.
class EmpiricalMeasure {
 public:
  static EmpiricalMeasure uniform(const Manifold& m, std::vector<Point> points);
  static EmpiricalMeasure weighted(const Manifold& m, std::vector<Point> points,
                                   std::vector<double> masses);

  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& masses() const { return masses_; }
  const Manifold& manifold() const { return m_; }

 private:
  EmpiricalMeasure(Manifold m, std::vector<Point> pts, std::vector<double> ms)
      : m_(std::move(m)), points_(std::move(pts)), masses_(std::move(ms)) {}
  Manifold m_;
  std::vector<Point> points_;
  std::vector<double> masses_;
};

}  // namespace geoswarm
