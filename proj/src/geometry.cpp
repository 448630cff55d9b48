#include "planar_sio/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jet.hpp"

namespace psio {

namespace {

constexpr double kCornerTol = 1e-13;

double wrap(double s, double period) {
  double r = std::fmod(s, period);
  if (r < 0.0) r += period;
  if (r >= period) r -= period;
  return r;
}

double wrap_angle(double theta) { return wrap(theta, 2.0 * kPi); }

// Illinois-modified regula falsi on a bracket with g(lo) > 0 > g(hi).
template <typename F>
double bracketed_root(F&& g, double lo, double hi, double glo, double ghi) {
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    const double t = (lo * ghi - hi * glo) / (ghi - glo);
    const double gt = g(t);
    if (gt == 0.0 || std::abs(hi - lo) < 1e-15 * std::max(1.0, std::abs(hi))) return t;
    if ((gt > 0.0) == (glo > 0.0)) {
      lo = t;
      glo = gt;
      if (side == -1) ghi *= 0.5;
      side = -1;
    } else {
      hi = t;
      ghi = gt;
      if (side == 1) glo *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------- disc

class CircleCurve final : public BoundaryCurve {
 public:
  double length() const override { return 2.0 * kPi; }
  cplx point(double s) const override { return std::polar(1.0, s); }
  cplx derivative(double s, int order) const override {
    if (order < 0) throw GeometryError("circle: negative derivative order");
    return ipow(kI, order) * std::polar(1.0, s);
  }
  int smoothness() const override { return std::numeric_limits<int>::max(); }
};

class UnitDisc final : public PlanarDomain {
 public:
  const BoundaryCurve& boundary() const override { return curve_; }
  bool contains(cplx z) const override { return std::norm(z) < 1.0; }
  double distance_to_boundary(cplx z) const override { return 1.0 - std::abs(z); }
  double area() const override { return kPi; }
  Box bounding_box() const override { return {-1.0, 1.0, -1.0, 1.0}; }
  double diameter() const override { return 2.0; }
  const std::string& label() const override { return label_; }

  double ray_exit(cplx origin, double theta, double delta) const override {
    const cplx dir = std::polar(1.0, theta);
    const double b = std::real(std::conj(origin) * dir);
    const double radius = 1.0 - delta;
    const double disc = b * b - std::norm(origin) + radius * radius;
    if (disc < 0.0) throw GeometryError("disc: ray origin outside the shrunken region");
    return -b + std::sqrt(disc);
  }
  std::vector<double> ray_breakpoints(cplx, double) const override { return {}; }

 private:
  CircleCurve curve_;
  std::string label_ = "disc";
};

// ---------------------------------------------------------------- star

class StarCurve final : public BoundaryCurve {
 public:
  static constexpr int kJetOrder = 12;

  StarCurve(double a, int m) : a_(a), m_(m) {
    // Fourier coefficients of v(θ) = |dζ/dθ|. v is analytic and 2π/m periodic,
    // so a modest DFT resolves it to machine precision.
    constexpr int samples = 1024;
    std::vector<double> v(samples);
    for (int j = 0; j < samples; ++j) v[j] = speed(2.0 * kPi * j / samples);
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= samples;
    mean_speed_ = mean;
    for (int k = m; k < samples / 2; k += m) {
      double ck = 0.0, sk = 0.0;
      for (int j = 0; j < samples; ++j) {
        const double t = 2.0 * kPi * j * k / samples;
        ck += v[j] * std::cos(t);
        sk += v[j] * std::sin(t);
      }
      ck *= 2.0 / samples;
      sk *= 2.0 / samples;
      if (std::hypot(ck, sk) > 1e-16 * mean) modes_.push_back({k, ck, sk});
    }
    length_ = 2.0 * kPi * mean_speed_;
  }

  double length() const override { return length_; }

  cplx point(double s) const override { return polar_point(theta_of_s(s)); }

  cplx derivative(double s, int order) const override {
    if (order < 0 || order > kJetOrder) {
      throw GeometryError("star: derivative order outside supported range");
    }
    const double theta = theta_of_s(s);
    if (order == 0) return polar_point(theta);
    if (order == 1) {
      const cplx d = polar_derivative(theta);
      return d / std::abs(d);
    }
    return arclength_jet(theta, order);
  }

  int smoothness() const override { return kJetOrder; }

  double radius(double theta) const { return 1.0 + a_ * std::cos(m_ * theta); }
  double radius_prime(double theta) const { return -a_ * m_ * std::sin(m_ * theta); }
  double radius_second(double theta) const { return -a_ * m_ * m_ * std::cos(m_ * theta); }

  cplx polar_point(double theta) const { return radius(theta) * std::polar(1.0, theta); }
  cplx polar_derivative(double theta) const {
    return cplx(radius_prime(theta), radius(theta)) * std::polar(1.0, theta);
  }
  cplx polar_second(double theta) const {
    return cplx(radius_second(theta) - radius(theta), 2.0 * radius_prime(theta)) *
           std::polar(1.0, theta);
  }
  double speed(double theta) const { return std::hypot(radius(theta), radius_prime(theta)); }

  /// Arclength from θ = 0.
  double s_of_theta(double theta) const {
    double s = mean_speed_ * theta;
    const cplx step = std::polar(1.0, m_ * theta);
    cplx phase = 1.0;
    int k = 0;
    for (const auto& md : modes_) {
      while (k < md.k) {
        phase *= step;
        k += m_;
      }
      s += (md.c * phase.imag() - md.s * (phase.real() - 1.0)) / md.k;
    }
    return s;
  }

  double theta_of_s(double s) const {
    s = wrap(s, length_);
    double theta = 2.0 * kPi * s / length_;
    for (int it = 0; it < 50; ++it) {
      const double step = (s_of_theta(theta) - s) / speed(theta);
      theta -= step;
      if (std::abs(step) < 1e-9) {
        theta -= (s_of_theta(theta) - s) / speed(theta);
        break;
      }
    }
    return theta;
  }

 private:
  struct Mode {
    int k;
    double c;
    double s;
  };

  cplx arclength_jet(double theta0, int order) const {
    using detail::Jet;
    const int k = order;
    Jet cos_jet(k + 1), phase(k + 1);
    double fact = 1.0;
    double mpow = 1.0;
    for (int n = 0; n <= k + 1; ++n) {
      if (n > 0) {
        fact *= n;
        mpow *= m_;
      }
      cos_jet[n] = mpow / fact * std::cos(m_ * theta0 + n * kPi / 2.0);
      phase[n] = std::polar(1.0, theta0) * ipow(kI, n) / fact;
    }
    Jet r = Jet(k + 1, 1.0) + a_ * cos_jet;
    const Jet zeta = r * phase;
    const Jet dzeta = zeta.derivative();
    const Jet speed_jet = (dzeta * dzeta.conj()).sqrt();
    const Jet arclength = speed_jet.integral();  // order k + 1, zero constant
    Jet arclength_k(k);
    for (int n = 0; n <= k; ++n) arclength_k[n] = arclength[n];
    const Jet theta_of_sigma = arclength_k.revert();
    Jet zeta_k(k);
    for (int n = 0; n <= k; ++n) zeta_k[n] = zeta[n];
    const Jet z = zeta_k.compose(theta_of_sigma);
    double kfact = 1.0;
    for (int n = 2; n <= order; ++n) kfact *= n;
    return kfact * z[order];
  }

  double a_;
  int m_;
  double mean_speed_ = 0.0;
  double length_ = 0.0;
  std::vector<Mode> modes_;
};

class SmoothStar final : public PlanarDomain {
 public:
  SmoothStar(double a, int m) : a_(a), m_(m), curve_(a, m) {
    label_ = "star(a=" + std::to_string(a) + ",m=" + std::to_string(m) + ")";
    constexpr int n = 1024;
    std::vector<cplx> pts(n);
    box_ = {1e300, -1e300, 1e300, -1e300};
    for (int j = 0; j < n; ++j) {
      pts[j] = curve_.polar_point(2.0 * kPi * j / n);
      box_.xmin = std::min(box_.xmin, pts[j].real());
      box_.xmax = std::max(box_.xmax, pts[j].real());
      box_.ymin = std::min(box_.ymin, pts[j].imag());
      box_.ymax = std::max(box_.ymax, pts[j].imag());
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) diameter_ = std::max(diameter_, std::abs(pts[i] - pts[j]));
    }
  }

  const BoundaryCurve& boundary() const override { return curve_; }

  bool contains(cplx z) const override {
    const double r = std::abs(z);
    if (r == 0.0) return true;
    return r < curve_.radius(std::arg(z));
  }

  double distance_to_boundary(cplx z) const override {
    constexpr int coarse = 256;
    double best_theta = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < coarse; ++j) {
      const double theta = 2.0 * kPi * j / coarse;
      const double d = std::norm(curve_.polar_point(theta) - z);
      if (d < best) {
        best = d;
        best_theta = theta;
      }
    }
    double theta = best_theta;
    for (int it = 0; it < 30; ++it) {
      const cplx diff = curve_.polar_point(theta) - z;
      const cplx d1 = curve_.polar_derivative(theta);
      const cplx d2 = curve_.polar_second(theta);
      const double g = std::real(std::conj(diff) * d1);
      const double gp = std::norm(d1) + std::real(std::conj(diff) * d2);
      if (gp <= 0.0) break;
      const double step = g / gp;
      theta -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const double refined = std::abs(curve_.polar_point(theta) - z);
    const double d = std::min(refined, std::sqrt(best));
    return contains(z) ? d : -d;
  }

  double area() const override { return kPi * (1.0 + 0.5 * a_ * a_); }
  Box bounding_box() const override { return box_; }
  double diameter() const override { return diameter_; }
  const std::string& label() const override { return label_; }

  double ray_exit(cplx origin, double theta, double delta) const override {
    if (delta > 0.0) return PlanarDomain::ray_exit(origin, theta, delta);
    const cplx dir = std::polar(1.0, theta);
    auto g = [&](double t) {
      const cplx w = origin + t * dir;
      const double r = std::abs(w);
      return curve_.radius(std::arg(w)) - r;  // positive inside
    };
    double lo = 0.0;
    double hi = std::abs(origin) + 1.0 + a_ + 0.5;
    double glo = g(lo);
    double ghi = g(hi);
    if (glo <= 0.0) throw GeometryError("star: ray origin outside the domain");
    // Safeguarded Newton.
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
      const cplx w = origin + t * dir;
      const double r = std::abs(w);
      const double phi = std::arg(w);
      const double gt = curve_.radius(phi) - r;
      if (gt > 0.0) {
        lo = t;
        glo = gt;
      } else {
        hi = t;
        ghi = gt;
      }
      const double dr = std::real(std::conj(w) * dir) / r;
      const double dphi = std::imag(std::conj(w) * dir) / (r * r);
      const double gp = curve_.radius_prime(phi) * dphi - dr;
      double next = (gp != 0.0) ? t - gt / gp : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - t) < 1e-15 * std::max(1.0, t)) return next;
      t = next;
    }
    (void)glo;
    (void)ghi;
    return t;
  }

  std::vector<double> ray_breakpoints(cplx, double) const override { return {}; }

 private:
  double a_;
  int m_;
  StarCurve curve_;
  std::string label_;
  Box box_{};
  double diameter_ = 0.0;
};

// ---------------------------------------------------------------- square

class SquareCurve final : public BoundaryCurve {
 public:
  double length() const override { return 4.0; }

  cplx point(double s) const override {
    s = wrap(s, 4.0);
    const int edge = std::min(3, static_cast<int>(s));
    const double t = s - edge;
    return kVertex[edge] + t * kDirection[edge];
  }

  cplx derivative(double s, int order) const override {
    if (order == 0) return point(s);
    if (order != 1) {
      throw GeometryError("square: boundary is only W^{1,inf}; derivative order " +
                          std::to_string(order) + " is undefined");
    }
    const double w = wrap(s, 4.0);
    const double nearest = std::round(w);
    if (std::abs(w - nearest) < kCornerTol) {
      throw GeometryError("square: tangent requested at corner s=" + std::to_string(nearest));
    }
    return kDirection[std::min(3, static_cast<int>(w))];
  }

  int smoothness() const override { return 1; }
  std::vector<double> corners() const override { return {0.0, 1.0, 2.0, 3.0}; }

  static constexpr cplx kVertex[4] = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  static constexpr cplx kDirection[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
};

class UnitSquare final : public PlanarDomain {
 public:
  const BoundaryCurve& boundary() const override { return curve_; }
  bool contains(cplx z) const override {
    return z.real() > 0.0 && z.real() < 1.0 && z.imag() > 0.0 && z.imag() < 1.0;
  }
  double distance_to_boundary(cplx z) const override {
    return std::min({z.real(), 1.0 - z.real(), z.imag(), 1.0 - z.imag()});
  }
  double area() const override { return 1.0; }
  Box bounding_box() const override { return {0.0, 1.0, 0.0, 1.0}; }
  double diameter() const override { return std::sqrt(2.0); }
  const std::string& label() const override { return label_; }

  double ray_exit(cplx origin, double theta, double delta) const override {
    if (!in_shrunken(origin, delta)) {
      throw GeometryError("square: ray origin outside the shrunken region");
    }
    const double lo = delta;
    const double hi = 1.0 - delta;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    double t = std::numeric_limits<double>::infinity();
    if (c > 0.0) t = std::min(t, (hi - origin.real()) / c);
    if (c < 0.0) t = std::min(t, (lo - origin.real()) / c);
    if (s > 0.0) t = std::min(t, (hi - origin.imag()) / s);
    if (s < 0.0) t = std::min(t, (lo - origin.imag()) / s);
    return t;
  }

  std::vector<double> ray_breakpoints(cplx origin, double delta) const override {
    const double lo = delta;
    const double hi = 1.0 - delta;
    std::vector<double> angles;
    for (cplx v : {cplx(lo, lo), cplx(hi, lo), cplx(hi, hi), cplx(lo, hi)}) {
      angles.push_back(wrap_angle(std::arg(v - origin)));
    }
    std::sort(angles.begin(), angles.end());
    return angles;
  }

 private:
  SquareCurve curve_;
  std::string label_ = "square";
};

}  // namespace

double PlanarDomain::ray_exit(cplx origin, double theta, double delta) const {
  const double outer = ray_exit(origin, theta, 0.0);
  if (delta <= 0.0) return outer;
  const cplx dir = std::polar(1.0, theta);
  auto g = [&](double t) { return distance_to_boundary(origin + t * dir) - delta; };
  const double g0 = g(0.0);
  if (g0 <= 0.0) throw GeometryError(label() + ": ray origin outside the shrunken region");
  return bracketed_root(g, 0.0, outer, g0, -delta);
}

std::vector<double> PlanarDomain::ray_breakpoints(cplx, double) const { return {}; }

DomainPtr make_unit_disc() { return std::make_shared<UnitDisc>(); }

DomainPtr make_smooth_star(double a, int m) {
  if (m < 1) throw PreconditionError("make_smooth_star: frequency m must be >= 1");
  const double bound = 1.0 / (static_cast<double>(m) * m + 1.0);
  if (!(a >= 0.0) || a > bound * (1.0 + 1e-12)) {
    throw PreconditionError("make_smooth_star: amplitude a=" + std::to_string(a) +
                            " must satisfy 0 <= a <= 1/(m^2+1) = " + std::to_string(bound));
  }
  return std::make_shared<SmoothStar>(a, m);
}

DomainPtr make_unit_square() { return std::make_shared<UnitSquare>(); }

int winding_number(const BoundaryCurve& curve, cplx z, int samples) {
  double total = 0.0;
  cplx prev = curve.point(0.0) - z;
  for (int j = 1; j <= samples; ++j) {
    const cplx cur = curve.point(curve.length() * j / samples) - z;
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

}  // namespace psio
