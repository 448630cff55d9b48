#include "planar_sio/functions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>

namespace psio {

namespace {

constexpr int kUnbounded = 64;

class MonomialModel final : public FunctionModel {
 public:
  MonomialModel(int p, int q) : p_(p), q_(q) {}
  cplx wirtinger(int a, int b, cplx z) const override {
    if (a > p_ || b > q_) return 0.0;
    return falling_factorial(p_, a) * falling_factorial(q_, b) * ipow(z, p_ - a) *
           ipow(std::conj(z), q_ - b);
  }
  int max_order() const override { return kUnbounded; }

 private:
  int p_;
  int q_;
};

class PoleModel final : public FunctionModel {
 public:
  explicit PoleModel(cplx pole) : pole_(pole) {}
  cplx wirtinger(int a, int b, cplx z) const override {
    if (b > 0) return 0.0;
    double fact = 1.0;
    for (int i = 2; i <= a; ++i) fact *= i;
    const double sign = (a % 2 == 0) ? 1.0 : -1.0;
    return sign * fact / ipow(z - pole_, a + 1);
  }
  int max_order() const override { return kUnbounded; }

 private:
  cplx pole_;
};

// f = G(q), q = |w|²/r², w = z - c, G(q) = exp(-1/(1-q)).
// G^{(n)}(q) = e^{-t} P_n(t) with t = 1/(1-q), P_{n+1} = t²(P_n' - P_n).
// ∂^a ∂̄^b f = Σ_j C(a,j) C(b,j) j! r^{-2(a+b-j)} G^{(a+b-j)}(q) conj(w)^{a-j} w^{b-j}.
class BumpModel final : public FunctionModel {
 public:
  static constexpr int kOrder = 10;

  BumpModel(cplx center, double radius) : center_(center), radius_(radius) {
    poly_.push_back({1.0});
    for (int n = 0; n < kOrder; ++n) {
      const auto& p = poly_.back();
      // t² (P' - P), coefficients indexed by power of t.
      std::vector<double> next(p.size() + 2, 0.0);
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (k > 0) next[k - 1 + 2] += k * p[k];
        next[k + 2] -= p[k];
      }
      poly_.push_back(std::move(next));
    }
  }

  cplx wirtinger(int a, int b, cplx z) const override {
    const cplx w = z - center_;
    const double q = std::norm(w) / (radius_ * radius_);
    if (q >= 1.0) return 0.0;
    const double t = 1.0 / (1.0 - q);
    const double base = std::exp(-t);
    cplx total = 0.0;
    const double r2 = radius_ * radius_;
    for (int j = 0; j <= std::min(a, b); ++j) {
      const int n = a + b - j;
      double pn = 0.0;
      const auto& coeffs = poly_[n];
      for (std::size_t k = coeffs.size(); k-- > 0;) pn = pn * t + coeffs[k];
      double fact = 1.0;
      for (int i = 2; i <= j; ++i) fact *= i;
      total += binomial(a, j) * binomial(b, j) * fact * std::pow(r2, -n) * base * pn *
               ipow(std::conj(w), a - j) * ipow(w, b - j);
    }
    return total;
  }
  int max_order() const override { return kOrder; }

 private:
  cplx center_;
  double radius_;
  std::vector<std::vector<double>> poly_;
};

class CorruptedModel final : public FunctionModel {
 public:
  CorruptedModel(TestFunction base, int a, int b, double factor)
      : base_(std::move(base)), a_(a), b_(b), factor_(factor) {}
  cplx wirtinger(int a, int b, cplx z) const override {
    const cplx v = base_.wirtinger(a, b, z);
    return (a == a_ && b == b_) ? factor_ * v : v;
  }
  int max_order() const override { return base_.k_max(); }

 private:
  TestFunction base_;
  int a_;
  int b_;
  double factor_;
};

std::string monomial_label(int p, int q) {
  if (p == 0 && q == 0) return "1";
  std::ostringstream os;
  if (p > 0) os << "z" << (p > 1 ? "^" + std::to_string(p) : "");
  if (p > 0 && q > 0) os << "*";
  if (q > 0) os << "zb" << (q > 1 ? "^" + std::to_string(q) : "");
  return os.str();
}

}  // namespace

TestFunction::TestFunction(std::shared_ptr<const FunctionModel> model, std::string label)
    : label_(std::move(label)) {
  terms_.push_back({1.0, std::move(model), 0, 0});
}

cplx TestFunction::wirtinger(int a, int b, cplx z) const {
  if (a < 0 || b < 0) throw PreconditionError("wirtinger: negative order");
  if (a + b > k_max()) {
    throw PreconditionError("wirtinger: order " + std::to_string(a + b) + " exceeds k_max " +
                            std::to_string(k_max()) + " of " + label_);
  }
  cplx total = 0.0;
  for (const auto& t : terms_) total += t.coeff * t.model->wirtinger(a + t.da, b + t.db, z);
  return total;
}

void TestFunction::wirtinger(int a, int b, std::span<const cplx> z, std::span<cplx> out) const {
  if (a + b > k_max()) {
    throw PreconditionError("wirtinger: order exceeds k_max of " + label_);
  }
  std::fill(out.begin(), out.end(), cplx{});
  for (const auto& t : terms_) {
    const FunctionModel& m = *t.model;
    for (std::size_t i = 0; i < z.size(); ++i) out[i] += t.coeff * m.wirtinger(a + t.da, b + t.db, z[i]);
  }
}

int TestFunction::k_max() const {
  int k = kUnbounded;
  for (const auto& t : terms_) k = std::min(k, t.model->max_order() - t.da - t.db);
  return k;
}

TestFunction TestFunction::derivative(int a, int b) const {
  if (a + b > k_max()) throw PreconditionError("derivative: order exceeds k_max of " + label_);
  TestFunction r = *this;
  for (auto& t : r.terms_) {
    t.da += a;
    t.db += b;
  }
  r.label_ = "d^" + std::to_string(a) + "db^" + std::to_string(b) + "(" + label_ + ")";
  return r;
}

TestFunction TestFunction::scaled(cplx c) const {
  TestFunction r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  std::ostringstream os;
  os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)*" << label_;
  r.label_ = os.str();
  return r;
}

TestFunction TestFunction::relabeled(std::string label) const {
  TestFunction r = *this;
  r.label_ = std::move(label);
  return r;
}

TestFunction operator+(const TestFunction& f, const TestFunction& g) {
  TestFunction r = f;
  r.terms_.insert(r.terms_.end(), g.terms_.begin(), g.terms_.end());
  r.label_ = f.label_ + "+" + g.label_;
  return r;
}

TestFunction monomial(int p, int q) {
  if (p < 0 || q < 0) throw PreconditionError("monomial: negative exponent");
  return TestFunction(std::make_shared<MonomialModel>(p, q), monomial_label(p, q));
}

TestFunction simple_pole(cplx pole) {
  std::ostringstream os;
  os << "1/(z-(" << pole.real() << (pole.imag() < 0 ? "" : "+") << pole.imag() << "i))";
  return TestFunction(std::make_shared<PoleModel>(pole), os.str());
}

TestFunction bump(cplx center, double radius) {
  if (!(radius > 0.0)) throw PreconditionError("bump: radius must be positive");
  std::ostringstream os;
  os << "bump(" << center.real() << "," << center.imag() << ";" << radius << ")";
  return TestFunction(std::make_shared<BumpModel>(center, radius), os.str());
}

TestFunction bump(const PlanarDomain& domain, cplx center, double radius) {
  if (!domain.contains(center) || domain.distance_to_boundary(center) <= radius) {
    throw PreconditionError("bump: support disc touches the boundary of " + domain.label());
  }
  return bump(center, radius);
}

std::vector<TestFunction> family_polynomial(int max_degree) {
  if (max_degree < 0) throw PreconditionError("family_polynomial: negative degree");
  std::vector<TestFunction> out;
  for (int d = 0; d <= max_degree; ++d) {
    for (int p = d; p >= 0; --p) out.push_back(monomial(p, d - p));
  }
  return out;
}

TestFunction with_corrupted_derivative(const TestFunction& f, int a, int b, double factor) {
  std::ostringstream os;
  os << f.label() << "[corrupt d^" << a << "db^" << b << "x" << factor << "]";
  return TestFunction(std::make_shared<CorruptedModel>(f, a, b, factor), os.str());
}

double real_derivative_norm_sq(std::span<const cplx> by_a) {
  const int j = static_cast<int>(by_a.size()) - 1;
  double acc = 0.0;
  for (int a = 0; a <= j; ++a) acc += binomial(j, a) * std::norm(by_a[a]);
  return std::ldexp(acc, j);
}

FdCheckReport fd_check(const TestFunction& f, int samples, cplx center, double radius,
                       std::uint64_t seed, int max_order, double step, double flag_threshold) {
  FdCheckReport report;
  if (max_order < 0) max_order = std::min(f.k_max(), 3);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int n = 0; n < samples; ++n) {
    const double rho = radius * std::sqrt(uni(rng));
    const cplx z = center + std::polar(rho, 2.0 * kPi * uni(rng));
    for (int order = 1; order <= max_order; ++order) {
      for (int a = 0; a <= order; ++a) {
        const int b = order - a;
        // Differentiate the next-lower derivative in x and y, then combine.
        const int la = a > 0 ? a - 1 : a;
        const int lb = a > 0 ? b : b - 1;
        const cplx dx = (f.wirtinger(la, lb, z + step) - f.wirtinger(la, lb, z - step)) / (2.0 * step);
        const cplx dy = (f.wirtinger(la, lb, z + kI * step) - f.wirtinger(la, lb, z - kI * step)) /
                        (2.0 * step);
        const cplx fd = a > 0 ? 0.5 * (dx - kI * dy) : 0.5 * (dx + kI * dy);
        const cplx exact = f.wirtinger(a, b, z);
        const double err = std::abs(fd - exact) / std::max(1.0, std::abs(exact));
        ++report.comparisons;
        if (err > report.max_error) {
          report.max_error = err;
          report.worst_a = a;
          report.worst_b = b;
          report.worst_point = z;
        }
      }
    }
  }
  report.passed = report.max_error <= flag_threshold;
  return report;
}

}  // namespace psio
