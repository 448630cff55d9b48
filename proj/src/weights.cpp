#include "planar_sio/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

namespace psio {

Weight::Weight(double alpha, cplx z0, double scale) : alpha_(alpha), z0_(z0), scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(alpha)) {
    throw PreconditionError("weight needs a finite exponent and a positive finite scale");
  }
  if (alpha != 0.0) singular_.push_back(z0);
}

double Weight::eval(cplx z) const {
  if (alpha_ == 0.0) return scale_;
  return scale_ * std::pow(std::abs(z - z0_), alpha_);
}

double Weight::eval_near(std::size_t i, cplx offset) const {
  if (i >= singular_.size()) throw PreconditionError("weight has no singular point " + std::to_string(i));
  return scale_ * std::pow(std::abs(offset), alpha_);
}

std::string Weight::descriptor() const {
  std::ostringstream os;
  os.precision(17);
  if (alpha_ == 0.0) {
    os << "const";
  } else {
    os << "power(" << alpha_ << ", " << z0_.real() << "+" << z0_.imag() << "i)";
  }
  if (scale_ != 1.0) os << "*" << scale_;
  return os.str();
}

Weight Weight::scaled(double c) const { return Weight(alpha_, z0_, scale_ * c); }

Weight Weight::power(double e) const { return Weight(alpha_ * e, z0_, std::pow(scale_, e)); }

Weight make_constant_weight(double c) { return Weight(0.0, 0.0, c); }
Weight make_power_weight(double alpha, cplx z0) { return Weight(alpha, z0, 1.0); }

DiscSampler default_sampler(const PlanarDomain& domain, int random_discs, std::uint64_t seed) {
  DiscSampler s;
  const Box b = domain.bounding_box();
  const double cx = 0.5 * (b.xmin + b.xmax);
  const double cy = 0.5 * (b.ymin + b.ymax);
  const double hx = b.xmax - b.xmin;
  const double hy = b.ymax - b.ymin;
  s.centers = {cx - hx, cx + hx, cy - hy, cy + hy};
  s.r_min = 1e-3 * domain.diameter();
  s.r_max = domain.diameter();
  s.random_discs = random_discs;
  s.seed = seed;
  return s;
}

namespace {

struct Averages {
  double w = 0.0;
  double dual = 0.0;
  bool divergent = false;
};

// Polar mesh about the disc centre; used when no singular point is inside.
Averages smooth_averages(const Weight& w, const Weight& dual, cplx c, double r, int n_theta,
                         int n_radial) {
  const GaussRule& g = gauss_legendre(n_radial);
  CompensatedSum<double> area, sw, sd;
  for (int j = 0; j < n_theta; ++j) {
    const cplx dir = std::polar(1.0, 2.0 * kPi * j / n_theta);
    for (int k = 0; k < n_radial; ++k) {
      const double t = 0.5 * r * (g.nodes[k] + 1.0);
      const double wt = 0.5 * r * g.weights[k] * t;
      const cplx z = c + t * dir;
      area.add(wt);
      sw.add(wt * w(z));
      sd.add(wt * dual(z));
    }
  }
  return {sw.value() / area.value(), sd.value() / area.value(), false};
}

// Radial integral ∫_0^R g(t) t dt along one ray from the singular point,
// over shells [R 2^{-k-1}, R 2^{-k}]. Reports divergence when the shell
// contributions stop decaying.
double shell_integral(const Weight& w, std::size_t sing, cplx dir, double R, int gauss,
                      bool& divergent) {
  constexpr int kMaxShells = 1000;
  const GaussRule& g = gauss_legendre(gauss);
  CompensatedSum<double> acc;
  double prev = 0.0;
  for (int k = 0; k < kMaxShells; ++k) {
    const double hi = std::ldexp(R, -k);
    const double lo = 0.5 * hi;
    double shell = 0.0;
    for (int i = 0; i < gauss; ++i) {
      const double t = lo + 0.5 * (hi - lo) * (g.nodes[i] + 1.0);
      shell += 0.5 * (hi - lo) * g.weights[i] * t * w.eval_near(sing, t * dir);
    }
    acc.add(shell);
    if (k >= 4) {
      const double ratio = shell / prev;
      if (!(ratio < 1.0) || !std::isfinite(shell)) {
        divergent = true;
        return std::numeric_limits<double>::infinity();
      }
      const double tail = shell * ratio / (1.0 - ratio);
      if (tail <= 1e-17 * acc.value()) return acc.value();
    }
    prev = shell;
  }
  divergent = true;
  return std::numeric_limits<double>::infinity();
}

Averages singular_averages(const Weight& w, const Weight& dual, cplx c, double r, std::size_t sing,
                           int n_theta, int gauss) {
  const cplx d = w.singular_points()[sing] - c;
  CompensatedSum<double> area, sw, sd;
  Averages out;
  for (int j = 0; j < n_theta; ++j) {
    const cplx dir = std::polar(1.0, 2.0 * kPi * j / n_theta);
    const double b = (std::conj(d) * dir).real();
    const double R = -b + std::sqrt(std::max(0.0, b * b - std::norm(d) + r * r));
    const double wt = 2.0 * kPi / n_theta;
    area.add(wt * 0.5 * R * R);
    bool div = false;
    sw.add(wt * shell_integral(w, sing, dir, R, gauss, div));
    sd.add(wt * shell_integral(dual, sing, dir, R, gauss, div));
    out.divergent = out.divergent || div;
  }
  if (out.divergent) {
    out.w = out.dual = std::numeric_limits<double>::infinity();
    return out;
  }
  out.w = sw.value() / area.value();
  out.dual = sd.value() / area.value();
  return out;
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

DiscProduct disc_product(const Weight& w, double p, cplx center, double radius,
                         const DiscSampler& res) {
  if (!(p > 1.0)) throw PreconditionError("A_p product needs p > 1");
  if (!(radius > 0.0)) throw PreconditionError("A_p product needs a positive disc radius");
  // The product is invariant under μ → cμ, so it is formed from the unit-scale shape.
  const Weight shape(w.alpha(), w.z0(), 1.0);
  const Weight dual = shape.power(1.0 / (1.0 - p));
  DiscProduct out;
  out.center = center;
  out.radius = radius;

  std::optional<std::size_t> inside;
  for (std::size_t i = 0; i < w.singular_points().size(); ++i) {
    if (std::abs(w.singular_points()[i] - center) < radius) {
      inside = i;
      break;
    }
  }
  auto level = [&](int m) {
    const int nt = res.n_theta << m;
    if (inside) return singular_averages(shape, dual, center, radius, *inside, nt, 8 << std::min(m, 2));
    return smooth_averages(shape, dual, center, radius, nt, res.n_radial << m);
  };
  Averages coarse = level(0);
  Averages fine = coarse;
  out.converged = false;
  for (int m = 1; m <= res.max_doublings && !coarse.divergent; ++m) {
    fine = level(m);
    if (fine.divergent) break;
    if (close(coarse.w, fine.w, res.tolerance) && close(coarse.dual, fine.dual, res.tolerance)) {
      out.converged = true;
      break;
    }
    coarse = fine;
  }
  if (w.is_constant()) out.converged = true;
  out.divergent = coarse.divergent || fine.divergent;
  if (out.divergent) {
    out.avg_weight = out.avg_dual = out.value = std::numeric_limits<double>::infinity();
    out.converged = false;
    return out;
  }
  out.avg_weight = w.scale() * fine.w;
  out.avg_dual = std::pow(w.scale(), 1.0 / (1.0 - p)) * fine.dual;
  // Jensen: the product is at least 1; rounding may dip below.
  out.value = std::max(1.0, fine.w * std::pow(fine.dual, p - 1.0));
  return out;
}

ApEstimate estimate_Ap(const Weight& w, double p, const DiscSampler& sampler) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw PreconditionError("estimate_Ap: p must satisfy 1 < p < inf");
  }
  if (sampler.random_discs < 0 || !(sampler.r_min > 0.0) || !(sampler.r_max >= sampler.r_min)) {
    throw PreconditionError("estimate_Ap: invalid disc sampler");
  }
  struct Disc {
    cplx c;
    double r;
  };
  std::vector<Disc> discs;
  for (const cplx& s : w.singular_points()) {
    const int n = std::max(1, sampler.singular_radii);
    for (int k = 0; k < n; ++k) {
      const double t = n == 1 ? 1.0 : static_cast<double>(k) / (n - 1);
      discs.push_back({s, sampler.r_max * std::pow(sampler.r_min / sampler.r_max, t)});
    }
  }
  const std::size_t n_singular = discs.size();
  std::mt19937_64 rng(sampler.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const Box& b = sampler.centers;
  const double log_ratio = std::log(sampler.r_max / sampler.r_min);
  for (int i = 0; i < sampler.random_discs; ++i) {
    const double x = b.xmin + (b.xmax - b.xmin) * u01(rng);
    const double y = b.ymin + (b.ymax - b.ymin) * u01(rng);
    const double r = sampler.r_min * std::exp(log_ratio * u01(rng));
    discs.push_back({cplx(x, y), r});
  }

  std::vector<DiscProduct> products(discs.size());
  parallel_for(discs.size(), [&](std::size_t i) {
    products[i] = disc_product(w, p, discs[i].c, discs[i].r, sampler);
  });

  ApEstimate est;
  est.p = p;
  est.value = 1.0;
  std::size_t next_mark = 1;
  for (std::size_t i = 0; i < products.size(); ++i) {
    const DiscProduct& d = products[i];
    if (d.divergent) est.divergent = true;
    if (!d.converged && !d.divergent) ++est.unconverged_discs;
    est.value = std::max(est.value, d.value);
    est.discs_sampled = static_cast<int>(i + 1);
    if (i + 1 == next_mark || i + 1 == products.size()) {
      est.refinement_trace.emplace_back(est.discs_sampled, est.value);
      next_mark *= 2;
    }
  }
  est.singular_discs.assign(products.begin(), products.begin() + n_singular);
  return est;
}

}  // namespace psio
