#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "geoswarm/errors.hpp"

namespace geoswarm {

class Point;
class Tangent;

enum class ManifoldKind { SphereHemisphere, CylinderBand, Euclidean, CircleArc, Product };

// Geometry descriptor with exact Riemannian primitives on the admissible
// domains used throughout:
//   SphereHemisphere(k, eps): S^k cap D_eps = { d(x, N) < pi/2 - eps }, N the north pole
//   CircleArc(eps)          : the k = 1 case of the above
//   CylinderBand(eps)       : wrapping chart (0, pi - eps) x R, an isometry to the plane strip
//   Euclidean(k)            : R^k, no domain restriction
//   Product(left, right)    : componentwise operations, d = sqrt(d_L^2 + d_R^2)
// Values are immutable and cheap to copy (shared descriptor node). All
// operations are pure; values may be shared freely across threads.
class Manifold {
 public:
  static Manifold sphere_hemisphere(int dim, double epsilon);
  static Manifold circle_arc(double epsilon);
  static Manifold cylinder_band(double epsilon);
  static Manifold euclidean(int dim);
  static Manifold product(const Manifold& left, const Manifold& right);

  ManifoldKind kind() const;
  int dim() const;          // intrinsic dimension
  int ambient_dim() const;  // width of ambient() vectors
  int coord_dim() const;    // width of Point::coords() storage
  double epsilon() const;   // compact-factor domain parameter; 0 for euclidean
  Manifold left() const;
  Manifold right() const;
  std::string describe() const;

  // Domain reference point: north pole for sphere/circle, chart midpoint
  // ((pi - eps)/2, 0) for the cylinder band, origin for euclidean space.
  Point center() const;

  // Validating constructors. point() requires unit norm (1e-12) on sphere
  // factors but not domain membership; from_ambient() retracts an arbitrary
  // ambient vector (normalize / re-chart), used by the projected integrator.
  Point point(std::vector<double> coords) const;
  Point from_ambient(std::span<const double> ambient) const;
  Tangent tangent(const Point& base, std::vector<double> vec) const;

  double distance(const Point& x, const Point& y) const;
  Tangent log(const Point& x, const Point& y) const;
  Point exp(const Point& x, const Tangent& v) const;
  Tangent grad_dist_sq(const Point& x, const Point& y) const;
  Tangent project_tangent(const Point& x, std::span<const double> ambient_u) const;

  bool contains(const Point& x) const;
  bool contains(const Point& x, const Point& disk_center, double disk_radius) const;

  // n points with d(p, center) <= radius, deterministic in seed. Sphere caps
  // are sampled uniformly w.r.t. surface measure (inverse CDF in the polar
  // angle about the center, no rejection); cylinder/euclidean disks uniformly
  // w.r.t. volume; products by per-factor sampling with a radius rejection.
  std::vector<Point> sample_disk(const Point& center, double radius, int n,
                                 std::uint64_t seed) const;

  bool same_as(const Manifold& other) const { return node_ == other.node_; }

  struct Node;  // internal descriptor, exposed for the flat-state integrator
  const Node& node() const { return *node_; }

 private:
  explicit Manifold(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// A location on a manifold. Storage is the authoritative coordinate
// representation of each factor:
//   sphere / circle : ambient unit vector (R^{k+1} / R^2)
//   cylinder band   : chart pair (x, z), x in (0, pi - eps)
//   euclidean       : the coordinates themselves
//   product         : concatenation of factor storage
// ambient() expands cylinder factors to (cos x, sin x, z).
class Point {
 public:
  const std::vector<double>& coords() const { return c_; }
  const Manifold& manifold() const { return m_; }
  std::vector<double> ambient() const;

 private:
  friend class Manifold;
  Point(Manifold m, std::vector<double> c) : m_(std::move(m)), c_(std::move(c)) {}
  Manifold m_;
  std::vector<double> c_;
};

// Tangent vector at a base point, stored in the same per-factor layout as
// Point (sphere factors: ambient vector orthogonal to the base; cylinder
// factors: components on the orthonormal frame {e_x, e_z}). The layout is
// orthonormal, so the Riemannian norm is the plain Euclidean norm of vec().
class Tangent {
 public:
  Tangent(Point base, std::vector<double> vec) : base_(std::move(base)), v_(std::move(vec)) {}

  const Point& base() const { return base_; }
  const std::vector<double>& vec() const { return v_; }
  std::vector<double> ambient() const;
  double norm() const;

 private:
  Point base_;
  std::vector<double> v_;
};

double dot(const Tangent& a, const Tangent& b);

// Low-level operations on raw coordinate spans. These carry no domain checks
// and are the single floating-point path shared by the public operations, the
// integrator and the product recursion (product operations are bitwise equal
// to componentwise operations by construction).
namespace detail {

double dist_span(const Manifold::Node& m, std::span<const double> x, std::span<const double> y);
void log_span(const Manifold::Node& m, std::span<const double> x, std::span<const double> y,
              std::span<double> out);
void exp_span(const Manifold::Node& m, std::span<const double> x, std::span<const double> v,
              std::span<double> out);
void project_span(const Manifold::Node& m, std::span<const double> x, std::span<const double> u,
                  std::span<double> out);
bool contains_span(const Manifold::Node& m, std::span<const double> x);
void ambient_span(const Manifold::Node& m, std::span<const double> x, std::span<double> out);
void retract_span(const Manifold::Node& m, std::span<const double> amb, std::span<double> out);
void tangent_ambient_span(const Manifold::Node& m, std::span<const double> base,
                          std::span<const double> v, std::span<double> out);

// theta / sin(theta) and its derivative, with series branches below 1e-4
// (removable singularity at 0)
double f_theta(double theta);
double f_theta_prime(double theta);
double sinc(double t);

}  // namespace detail

struct Manifold::Node {
  ManifoldKind kind;
  int dim = 0;
  int ambient = 0;
  int width = 0;
  double eps = 0.0;
  std::shared_ptr<const Node> left, right;
};

}  // namespace geoswarm
