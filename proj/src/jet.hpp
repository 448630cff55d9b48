#pragma once

// Truncated Taylor series in one real variable with complex coefficients.
// Used to push derivatives through the arclength reparameterization.

#include <cmath>
#include <vector>

#include "planar_sio/numeric.hpp"

namespace psio::detail {

class Jet {
 public:
  explicit Jet(int order) : c_(order + 1, cplx{}) {}
  Jet(int order, cplx constant) : c_(order + 1, cplx{}) { c_[0] = constant; }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  cplx& operator[](int n) { return c_[n]; }
  cplx operator[](int n) const { return c_[n]; }

  friend Jet operator+(Jet a, const Jet& b) {
    for (int n = 0; n <= a.order(); ++n) a.c_[n] += b[n];
    return a;
  }
  friend Jet operator-(Jet a, const Jet& b) {
    for (int n = 0; n <= a.order(); ++n) a.c_[n] -= b[n];
    return a;
  }
  friend Jet operator*(cplx s, Jet a) {
    for (auto& x : a.c_) x *= s;
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.order());
    for (int n = 0; n <= r.order(); ++n) {
      cplx acc{};
      for (int k = 0; k <= n; ++k) acc += a[k] * b[n - k];
      r.c_[n] = acc;
    }
    return r;
  }

  Jet conj() const {
    Jet r(order());
    for (int n = 0; n <= order(); ++n) r.c_[n] = std::conj(c_[n]);
    return r;
  }

  /// d/dh, losing the top coefficient.
  Jet derivative() const {
    Jet r(order() - 1);
    for (int n = 0; n < order(); ++n) r.c_[n] = (n + 1.0) * c_[n + 1];
    return r;
  }

  /// Antiderivative with zero constant term, gaining one order.
  Jet integral() const {
    Jet r(order() + 1);
    for (int n = 0; n <= order(); ++n) r.c_[n + 1] = c_[n] / (n + 1.0);
    return r;
  }

  /// Principal square root; the constant term must be nonzero.
  Jet sqrt() const {
    Jet r(order());
    r.c_[0] = std::sqrt(c_[0]);
    for (int n = 1; n <= order(); ++n) {
      cplx acc = c_[n];
      for (int k = 1; k < n; ++k) acc -= r.c_[k] * r.c_[n - k];
      r.c_[n] = acc / (2.0 * r.c_[0]);
    }
    return r;
  }

  /// this(inner(h)); inner must have zero constant term.
  Jet compose(const Jet& inner) const {
    const int k = inner.order();
    Jet result(k, c_[std::min(order(), k)]);
    for (int n = std::min(order(), k) - 1; n >= 0; --n) {
      result = result * inner;
      result.c_[0] += c_[n];
    }
    return result;
  }

  /// Series reversion: returns g with this(g(x)) = x. Requires zero constant
  /// term and nonzero linear term.
  Jet revert() const {
    const int k = order();
    Jet higher = *this;
    higher.c_[0] = 0.0;
    const cplx lead = higher.c_[1];
    higher.c_[1] = 0.0;
    Jet identity(k);
    if (k >= 1) identity.c_[1] = 1.0;
    Jet g = (1.0 / lead) * identity;
    for (int it = 0; it < k; ++it) {
      g = (1.0 / lead) * (identity - higher.compose(g));
    }
    return g;
  }

 private:
  std::vector<cplx> c_;
};

}  // namespace psio::detail
