#include "geoswarm/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "geoswarm/rng.hpp"

namespace geoswarm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDomainSlack = 1e-12;    // open-set membership margin
constexpr double kDiskSlack = 1e-12;      // closed-disk membership margin
constexpr double kAntipodalGuard = 1e-6;  // log is refused within this of pi
constexpr double kSeriesThreshold = 1e-4;

double clamp_unit(double c) { return std::clamp(c, -1.0, 1.0); }

double dot_n(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_n(std::span<const double> a) { return std::sqrt(dot_n(a, a)); }

using Node = Manifold::Node;

std::span<const double> left_slice(const Node& m, std::span<const double> x) {
  return x.subspan(0, m.left->width);
}
std::span<const double> right_slice(const Node& m, std::span<const double> x) {
  return x.subspan(m.left->width, m.right->width);
}
std::span<double> left_slice(const Node& m, std::span<double> x) {
  return x.subspan(0, m.left->width);
}
std::span<double> right_slice(const Node& m, std::span<double> x) {
  return x.subspan(m.left->width, m.right->width);
}

std::string coords_str(std::span<const double> x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

}  // namespace

namespace detail {

double f_theta(double theta) {
  if (theta < kSeriesThreshold) {
    const double t2 = theta * theta;
    return 1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0;
  }
  return theta / std::sin(theta);
}

double f_theta_prime(double theta) {
  if (theta < kSeriesThreshold) {
    const double t2 = theta * theta;
    return theta / 3.0 + 7.0 * t2 * theta / 90.0;
  }
  const double s = std::sin(theta);
  return (s - theta * std::cos(theta)) / (s * s);
}

double sinc(double t) {
  if (std::abs(t) < kSeriesThreshold) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

// Angle between unit vectors from chord lengths: exactly zero for identical
// inputs and well conditioned at both ends of [0, pi], unlike acos of the dot
// product near theta = 0.
double sphere_angle(std::span<const double> x, std::span<const double> y) {
  double diff2 = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    const double s = x[i] + y[i];
    diff2 += d * d;
    sum2 += s * s;
  }
  if (diff2 <= 2.0) return 2.0 * std::asin(0.5 * std::sqrt(diff2));
  return 2.0 * std::acos(std::min(1.0, 0.5 * std::sqrt(sum2)));
}

double dist_span(const Node& m, std::span<const double> x, std::span<const double> y) {
  switch (m.kind) {
    case ManifoldKind::SphereHemisphere:
    case ManifoldKind::CircleArc:
      return sphere_angle(x, y);
    case ManifoldKind::CylinderBand:
    case ManifoldKind::Euclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case ManifoldKind::Product: {
      const double dl = dist_span(*m.left, left_slice(m, x), left_slice(m, y));
      const double dr = dist_span(*m.right, right_slice(m, x), right_slice(m, y));
      return std::sqrt(dl * dl + dr * dr);
    }
  }
  return 0.0;
}

void log_span(const Node& m, std::span<const double> x, std::span<const double> y,
              std::span<double> out) {
  switch (m.kind) {
    case ManifoldKind::SphereHemisphere:
    case ManifoldKind::CircleArc: {
      const double theta = sphere_angle(x, y);
      if (theta >= kPi - kAntipodalGuard)
        throw NearAntipodal("log map requested at angle " + std::to_string(theta) +
                            " within the antipodal guard");
      const double c = clamp_unit(dot_n(x, y));
      const double f = f_theta(theta);
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = f * (y[i] - c * x[i]);
      return;
    }
    case ManifoldKind::CylinderBand:
    case ManifoldKind::Euclidean:
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = y[i] - x[i];
      return;
    case ManifoldKind::Product:
      log_span(*m.left, left_slice(m, x), left_slice(m, y), left_slice(m, out));
      log_span(*m.right, right_slice(m, x), right_slice(m, y), right_slice(m, out));
      return;
  }
}

void exp_span(const Node& m, std::span<const double> x, std::span<const double> v,
              std::span<double> out) {
  switch (m.kind) {
    case ManifoldKind::SphereHemisphere:
    case ManifoldKind::CircleArc: {
      const double t = norm_n(v);
      if (t == 0.0) {
        std::copy(x.begin(), x.end(), out.begin());
        return;
      }
      const double ct = std::cos(t);
      const double sc = sinc(t);
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = ct * x[i] + sc * v[i];
      const double n = norm_n(out);
      for (auto& o : out) o /= n;
      return;
    }
    case ManifoldKind::CylinderBand:
    case ManifoldKind::Euclidean:
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + v[i];
      return;
    case ManifoldKind::Product:
      exp_span(*m.left, left_slice(m, x), left_slice(m, v), left_slice(m, out));
      exp_span(*m.right, right_slice(m, x), right_slice(m, v), right_slice(m, out));
      return;
  }
}

void project_span(const Node& m, std::span<const double> x, std::span<const double> u,
                  std::span<double> out) {
  switch (m.kind) {
    case ManifoldKind::SphereHemisphere:
    case ManifoldKind::CircleArc: {
      const double c = dot_n(u, x);
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = u[i] - c * x[i];
      return;
    }
    case ManifoldKind::CylinderBand: {
      // frame e_x = (-sin x, cos x, 0), e_z = (0, 0, 1) at chart point (x, z)
      const double sx = std::sin(x[0]);
      const double cx = std::cos(x[0]);
      out[0] = -sx * u[0] + cx * u[1];
      out[1] = u[2];
      return;
    }
    case ManifoldKind::Euclidean:
      std::copy(u.begin(), u.end(), out.begin());
      return;
    case ManifoldKind::Product: {
      project_span(*m.left, left_slice(m, x), u.subspan(0, m.left->ambient),
                   left_slice(m, out));
      project_span(*m.right, right_slice(m, x), u.subspan(m.left->ambient, m.right->ambient),
                   right_slice(m, out));
      return;
    }
  }
}

bool contains_span(const Node& m, std::span<const double> x) {
  switch (m.kind) {
    case ManifoldKind::SphereHemisphere:
    case ManifoldKind::CircleArc: {
      const double d_north = std::acos(clamp_unit(x[x.size() - 1]));
      return d_north < kPi / 2.0 - m.eps - kDomainSlack;
    }
    case ManifoldKind::CylinderBand:
      return x[0] > kDomainSlack && x[0] < kPi - m.eps - kDomainSlack;
    case ManifoldKind::Euclidean:
      return true;
    case ManifoldKind::Product:
      return contains_span(*m.left, left_slice(m, x)) &&
             contains_span(*m.right, right_slice(m, x));
  }
  return false;
}

void ambient_span(const Node& m, std::span<const double> x, std::span<double> out) {
  switch (m.kind) {
    case ManifoldKind::SphereHemisphere:
    case ManifoldKind::CircleArc:
    case ManifoldKind::Euclidean:
      std::copy(x.begin(), x.end(), out.begin());
      return;
    case ManifoldKind::CylinderBand:
      out[0] = std::cos(x[0]);
      out[1] = std::sin(x[0]);
      out[2] = x[1];
      return;
    case ManifoldKind::Product:
      ambient_span(*m.left, left_slice(m, x), out.subspan(0, m.left->ambient));
      ambient_span(*m.right, right_slice(m, x), out.subspan(m.left->ambient, m.right->ambient));
      return;
  }
}

void retract_span(const Node& m, std::span<const double> amb, std::span<double> out) {
  switch (m.kind) {
    case ManifoldKind::SphereHemisphere:
    case ManifoldKind::CircleArc: {
      const double n = norm_n(amb);
      for (std::size_t i = 0; i < amb.size(); ++i) out[i] = amb[i] / n;
      return;
    }
    case ManifoldKind::CylinderBand:
      out[0] = std::atan2(amb[1], amb[0]);
      out[1] = amb[2];
      return;
    case ManifoldKind::Euclidean:
      std::copy(amb.begin(), amb.end(), out.begin());
      return;
    case ManifoldKind::Product:
      retract_span(*m.left, amb.subspan(0, m.left->ambient), left_slice(m, out));
      retract_span(*m.right, amb.subspan(m.left->ambient, m.right->ambient),
                   right_slice(m, out));
      return;
  }
}

void tangent_ambient_span(const Node& m, std::span<const double> base, std::span<const double> v,
                          std::span<double> out) {
  switch (m.kind) {
    case ManifoldKind::SphereHemisphere:
    case ManifoldKind::CircleArc:
    case ManifoldKind::Euclidean:
      std::copy(v.begin(), v.end(), out.begin());
      return;
    case ManifoldKind::CylinderBand: {
      const double sx = std::sin(base[0]);
      const double cx = std::cos(base[0]);
      out[0] = -sx * v[0];
      out[1] = cx * v[0];
      out[2] = v[1];
      return;
    }
    case ManifoldKind::Product:
      tangent_ambient_span(*m.left, left_slice(m, base), left_slice(m, v),
                           out.subspan(0, m.left->ambient));
      tangent_ambient_span(*m.right, right_slice(m, base), right_slice(m, v),
                           out.subspan(m.left->ambient, m.right->ambient));
      return;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Point / Tangent

std::vector<double> Point::ambient() const {
  const Node& n = m_.node();
  std::vector<double> out(n.ambient);
  detail::ambient_span(n, c_, out);
  return out;
}

std::vector<double> Tangent::ambient() const {
  const Node& n = base_.manifold().node();
  std::vector<double> out(n.ambient);
  detail::tangent_ambient_span(n, base_.coords(), v_, out);
  return out;
}

double Tangent::norm() const { return norm_n(v_); }

double dot(const Tangent& a, const Tangent& b) { return dot_n(a.vec(), b.vec()); }

// ---------------------------------------------------------------------------
// Manifold construction

Manifold Manifold::sphere_hemisphere(int dim, double epsilon) {
  if (dim < 1) throw ConfigError("sphere dimension must be >= 1");
  if (!(epsilon > 0.0 && epsilon < kPi / 2.0))
    throw ConfigError("sphere epsilon must lie in (0, pi/2)");
  auto n = std::make_shared<Node>();
  n->kind = ManifoldKind::SphereHemisphere;
  n->dim = dim;
  n->ambient = dim + 1;
  n->width = dim + 1;
  n->eps = epsilon;
  return Manifold(std::move(n));
}

Manifold Manifold::circle_arc(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < kPi / 2.0))
    throw ConfigError("circle epsilon must lie in (0, pi/2)");
  auto n = std::make_shared<Node>();
  n->kind = ManifoldKind::CircleArc;
  n->dim = 1;
  n->ambient = 2;
  n->width = 2;
  n->eps = epsilon;
  return Manifold(std::move(n));
}

Manifold Manifold::cylinder_band(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < kPi))
    throw ConfigError("cylinder epsilon must lie in (0, pi)");
  auto n = std::make_shared<Node>();
  n->kind = ManifoldKind::CylinderBand;
  n->dim = 2;
  n->ambient = 3;
  n->width = 2;
  n->eps = epsilon;
  return Manifold(std::move(n));
}

Manifold Manifold::euclidean(int dim) {
  if (dim < 1) throw ConfigError("euclidean dimension must be >= 1");
  auto n = std::make_shared<Node>();
  n->kind = ManifoldKind::Euclidean;
  n->dim = dim;
  n->ambient = dim;
  n->width = dim;
  return Manifold(std::move(n));
}

Manifold Manifold::product(const Manifold& left, const Manifold& right) {
  auto n = std::make_shared<Node>();
  n->kind = ManifoldKind::Product;
  n->dim = left.dim() + right.dim();
  n->ambient = left.ambient_dim() + right.ambient_dim();
  n->width = left.coord_dim() + right.coord_dim();
  n->left = left.node_;
  n->right = right.node_;
  return Manifold(std::move(n));
}

ManifoldKind Manifold::kind() const { return node_->kind; }
int Manifold::dim() const { return node_->dim; }
int Manifold::ambient_dim() const { return node_->ambient; }
int Manifold::coord_dim() const { return node_->width; }
double Manifold::epsilon() const { return node_->eps; }

Manifold Manifold::left() const {
  if (!node_->left) throw ConfigError("left(): not a product manifold");
  return Manifold(node_->left);
}

Manifold Manifold::right() const {
  if (!node_->right) throw ConfigError("right(): not a product manifold");
  return Manifold(node_->right);
}

std::string Manifold::describe() const {
  std::ostringstream os;
  switch (node_->kind) {
    case ManifoldKind::SphereHemisphere:
      os << "sphere(dim=" << node_->dim << ", eps=" << node_->eps << ")";
      break;
    case ManifoldKind::CircleArc:
      os << "circle(eps=" << node_->eps << ")";
      break;
    case ManifoldKind::CylinderBand:
      os << "cylinder(eps=" << node_->eps << ")";
      break;
    case ManifoldKind::Euclidean:
      os << "euclidean(dim=" << node_->dim << ")";
      break;
    case ManifoldKind::Product:
      os << "product(" << left().describe() << ", " << right().describe() << ")";
      break;
  }
  return os.str();
}

namespace {

void center_span(const Node& m, std::span<double> out) {
  switch (m.kind) {
    case ManifoldKind::SphereHemisphere:
    case ManifoldKind::CircleArc:
      std::fill(out.begin(), out.end(), 0.0);
      out[out.size() - 1] = 1.0;
      return;
    case ManifoldKind::CylinderBand:
      out[0] = (kPi - m.eps) / 2.0;
      out[1] = 0.0;
      return;
    case ManifoldKind::Euclidean:
      std::fill(out.begin(), out.end(), 0.0);
      return;
    case ManifoldKind::Product:
      center_span(*m.left, left_slice(m, out));
      center_span(*m.right, right_slice(m, out));
      return;
  }
}

void validate_coords(const Node& m, std::span<const double> c) {
  switch (m.kind) {
    case ManifoldKind::SphereHemisphere:
    case ManifoldKind::CircleArc: {
      const double n = norm_n(c);
      if (std::abs(n - 1.0) > 1e-12)
        throw ConfigError("sphere point is not a unit vector: |coords| = " + std::to_string(n));
      return;
    }
    case ManifoldKind::CylinderBand:
    case ManifoldKind::Euclidean:
      return;
    case ManifoldKind::Product:
      validate_coords(*m.left, left_slice(m, c));
      validate_coords(*m.right, right_slice(m, c));
      return;
  }
}

}  // namespace

Point Manifold::center() const {
  std::vector<double> c(node_->width);
  center_span(*node_, c);
  return Point(*this, std::move(c));
}

Point Manifold::point(std::vector<double> coords) const {
  if (static_cast<int>(coords.size()) != node_->width)
    throw ConfigError("point has " + std::to_string(coords.size()) + " coordinates, expected " +
                      std::to_string(node_->width));
  for (double v : coords)
    if (!std::isfinite(v)) throw NonFiniteValue("point coordinate is not finite");
  validate_coords(*node_, coords);
  return Point(*this, std::move(coords));
}

Point Manifold::from_ambient(std::span<const double> ambient) const {
  if (static_cast<int>(ambient.size()) != node_->ambient)
    throw ConfigError("ambient vector has wrong dimension");
  std::vector<double> c(node_->width);
  detail::retract_span(*node_, ambient, c);
  return Point(*this, std::move(c));
}

Tangent Manifold::tangent(const Point& base, std::vector<double> vec) const {
  if (static_cast<int>(vec.size()) != node_->width)
    throw ConfigError("tangent vector has wrong dimension");
  return Tangent(base, std::move(vec));
}

// ---------------------------------------------------------------------------
// Operations

namespace {

void require_in_domain(const Node& m, const Point& p, const char* op) {
  if (!detail::contains_span(m, p.coords()))
    throw DomainViolation(std::string(op) + ": point " + coords_str(p.coords()) +
                          " is outside the admissible domain");
}

}  // namespace

double Manifold::distance(const Point& x, const Point& y) const {
  require_in_domain(*node_, x, "distance");
  require_in_domain(*node_, y, "distance");
  return detail::dist_span(*node_, x.coords(), y.coords());
}

Tangent Manifold::log(const Point& x, const Point& y) const {
  require_in_domain(*node_, x, "log");
  require_in_domain(*node_, y, "log");
  std::vector<double> v(node_->width);
  detail::log_span(*node_, x.coords(), y.coords(), v);
  return Tangent(x, std::move(v));
}

Point Manifold::exp(const Point& x, const Tangent& v) const {
  require_in_domain(*node_, x, "exp");
  std::vector<double> c(node_->width);
  detail::exp_span(*node_, x.coords(), v.vec(), c);
  if (!detail::contains_span(*node_, c))
    throw DomainViolation("exp: result " + coords_str(c) + " exits the admissible domain");
  return Point(*this, std::move(c));
}

Tangent Manifold::grad_dist_sq(const Point& x, const Point& y) const {
  Tangent l = log(x, y);
  std::vector<double> v = l.vec();
  for (auto& c : v) c *= -2.0;
  return Tangent(x, std::move(v));
}

Tangent Manifold::project_tangent(const Point& x, std::span<const double> ambient_u) const {
  if (static_cast<int>(ambient_u.size()) != node_->ambient)
    throw ConfigError("project_tangent: ambient vector has wrong dimension");
  std::vector<double> v(node_->width);
  detail::project_span(*node_, x.coords(), ambient_u, v);
  return Tangent(x, std::move(v));
}

bool Manifold::contains(const Point& x) const {
  return detail::contains_span(*node_, x.coords());
}

bool Manifold::contains(const Point& x, const Point& disk_center, double disk_radius) const {
  if (!contains(x)) return false;
  const double d = detail::dist_span(*node_, x.coords(), disk_center.coords());
  return d <= disk_radius + kDiskSlack;
}

// ---------------------------------------------------------------------------
// Disk sampling

namespace {

// Gaussian vector projected to the tangent space at c and normalized: uniform
// direction on the unit tangent sphere.
void sample_direction(const Node& m, std::span<const double> c, Rng& rng, std::span<double> out) {
  switch (m.kind) {
    case ManifoldKind::SphereHemisphere:
    case ManifoldKind::CircleArc: {
      while (true) {
        for (auto& o : out) o = rng.gaussian();
        const double proj = dot_n(out, c);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] -= proj * c[i];
        const double n = norm_n(out);
        if (n > 1e-8) {
          for (auto& o : out) o /= n;
          return;
        }
      }
    }
    case ManifoldKind::CylinderBand:
    case ManifoldKind::Euclidean: {
      while (true) {
        for (auto& o : out) o = rng.gaussian();
        const double n = norm_n(out);
        if (n > 1e-8) {
          for (auto& o : out) o /= n;
          return;
        }
      }
    }
    case ManifoldKind::Product:
      return;  // products sample per factor
  }
}

// Polar-angle CDF inversion for the uniform measure on a geodesic cap of
// radius r in S^k: density proportional to sin^{k-1}(theta) on [0, r].
double sample_cap_angle(int k, double r, Rng& rng) {
  const double u = rng.uniform01();
  if (k == 1) return u * r;
  if (k == 2) return std::acos(1.0 - u * (1.0 - std::cos(r)));
  // k >= 3: invert the incomplete integral of sin^{k-1} by bisection on a
  // Simpson evaluation; deterministic and rejection-free
  auto integral = [k](double t) {
    const int panels = 256;
    const double h = t / panels;
    double s = 0.0;
    for (int i = 0; i < panels; ++i) {
      const double a = i * h, b = a + h, mid = a + h / 2.0;
      auto f = [k](double th) { return std::pow(std::sin(th), k - 1); };
      s += (f(a) + 4.0 * f(mid) + f(b)) * h / 6.0;
    }
    return s;
  };
  const double total = integral(r);
  double lo = 0.0, hi = r;
  for (int it = 0; it < 60; ++it) {
    const double mid = (lo + hi) / 2.0;
    if (integral(mid) < u * total)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2.0;
}

void check_disk_fits(const Node& m, std::span<const double> c, double r) {
  switch (m.kind) {
    case ManifoldKind::SphereHemisphere:
    case ManifoldKind::CircleArc: {
      const double d_north = std::acos(clamp_unit(c[c.size() - 1]));
      if (!(d_north + r < kPi / 2.0 - m.eps - kDomainSlack))
        throw DomainViolation("sample_disk: cap of radius " + std::to_string(r) +
                              " about " + coords_str(c) + " exits the admissible domain");
      return;
    }
    case ManifoldKind::CylinderBand: {
      if (!(c[0] - r > kDomainSlack && c[0] + r < kPi - m.eps - kDomainSlack))
        throw DomainViolation("sample_disk: disk of radius " + std::to_string(r) +
                              " about chart point " + coords_str(c) + " exits the band");
      return;
    }
    case ManifoldKind::Euclidean:
      return;
    case ManifoldKind::Product:
      // the geodesic ball contains the (d_left, 0) and (0, d_right) slices, so
      // it fits iff each factor cap of the full radius fits
      check_disk_fits(*m.left, left_slice(m, c), r);
      check_disk_fits(*m.right, right_slice(m, c), r);
      return;
  }
}

void sample_one(const Node& m, std::span<const double> c, double r, Rng& rng,
                std::span<double> out) {
  switch (m.kind) {
    case ManifoldKind::SphereHemisphere:
    case ManifoldKind::CircleArc: {
      std::vector<double> dir(m.width);
      sample_direction(m, c, rng, dir);
      const double theta = sample_cap_angle(m.dim, r, rng);
      for (auto& d : dir) d *= theta;
      detail::exp_span(m, c, dir, out);
      return;
    }
    case ManifoldKind::CylinderBand: {
      const double phi = rng.uniform(0.0, 2.0 * kPi);
      const double s = r * std::sqrt(rng.uniform01());
      out[0] = c[0] + s * std::cos(phi);
      out[1] = c[1] + s * std::sin(phi);
      return;
    }
    case ManifoldKind::Euclidean: {
      std::vector<double> dir(m.width);
      sample_direction(m, c, rng, dir);
      const double s = r * std::pow(rng.uniform01(), 1.0 / m.dim);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = c[i] + s * dir[i];
      return;
    }
    case ManifoldKind::Product: {
      // uniform on the geodesic ball: independent factor caps + radius rejection
      while (true) {
        sample_one(*m.left, left_slice(m, c), r, rng, left_slice(m, out));
        sample_one(*m.right, right_slice(m, c), r, rng, right_slice(m, out));
        const double d = detail::dist_span(m, c, {out.data(), out.size()});
        if (d <= r) return;
      }
    }
  }
}

}  // namespace

std::vector<Point> Manifold::sample_disk(const Point& center, double radius, int n,
                                         std::uint64_t seed) const {
  if (n < 0) throw ConfigError("sample_disk: n must be nonnegative");
  if (radius < 0.0) throw ConfigError("sample_disk: radius must be nonnegative");
  require_in_domain(*node_, center, "sample_disk");
  std::vector<Point> pts;
  pts.reserve(n);
  if (radius == 0.0) {
    for (int i = 0; i < n; ++i) pts.push_back(center);
    return pts;
  }
  check_disk_fits(*node_, center.coords(), radius);
  Rng rng(seed);
  std::vector<double> c(node_->width);
  for (int i = 0; i < n; ++i) {
    sample_one(*node_, center.coords(), radius, rng, c);
    pts.push_back(Point(*this, c));
  }
  return pts;
}


}  // namespace geoswarm
