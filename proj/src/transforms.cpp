#include "planar_sio/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace psio {

namespace {

constexpr int K = kMaxTraceCurveOrder;
const cplx kTwoPiI(0.0, 2.0 * kPi);

using Powers = std::array<std::int8_t, 2 * K>;

Powers no_powers() {
  Powers p{};
  p.fill(0);
  return p;
}

// Keeps the rule when it carries enough curve derivatives, else builds a deeper one.
const BoundaryQuadrature& rule_for(const BoundaryQuadrature& rule, const BoundaryCurve& curve,
                                   int order, BoundaryQuadrature& scratch) {
  if (order <= rule.derivative_order()) return rule;
  if (order > curve.smoothness()) {
    throw GeometryError("boundary trace needs curve derivative of order " + std::to_string(order) +
                        " but the curve is only of class " + std::to_string(curve.smoothness()) +
                        " (corner collision)");
  }
  scratch = boundary_rule(curve, rule.resolution, order);
  return scratch;
}

}  // namespace

BoundaryTrace BoundaryTrace::of(const TestFunction& f) {
  BoundaryTrace g;
  g.f_ = f;
  if (!f.is_zero()) g.terms_.push_back({cplx(1.0), 0, 0, no_powers()});
  return g;
}

void BoundaryTrace::add_term(const Term& t) {
  if (t.coeff != cplx(0.0)) terms_.push_back(t);
}

void BoundaryTrace::simplify() {
  // |ζ'| = 1 on an arclength parameterisation: cancel ζ' against conj ζ'.
  std::map<std::tuple<int, int, Powers>, cplx> merged;
  for (Term t : terms_) {
    const std::int8_t common = std::min(t.powers[0], t.powers[K]);
    t.powers[0] = static_cast<std::int8_t>(t.powers[0] - common);
    t.powers[K] = static_cast<std::int8_t>(t.powers[K] - common);
    merged[{t.a, t.b, t.powers}] += t.coeff;
  }
  terms_.clear();
  for (const auto& [key, c] : merged) {
    if (c != cplx(0.0)) terms_.push_back({c, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
  }
}

BoundaryTrace BoundaryTrace::times_conj_tangent_power(int n) const {
  BoundaryTrace g = *this;
  for (auto& t : g.terms_) t.powers[K] = static_cast<std::int8_t>(t.powers[K] + n);
  g.simplify();
  return g;
}

BoundaryTrace BoundaryTrace::tangential() const {
  BoundaryTrace g;
  g.f_ = f_;
  for (const Term& t : terms_) {
    // d/ds of the curve monomial.
    for (int side = 0; side < 2; ++side) {
      for (int j = 1; j <= K; ++j) {
        const int idx = side * K + j - 1;
        const int p = t.powers[idx];
        if (p == 0) continue;
        if (j == K) throw PreconditionError("boundary trace exceeds the supported curve derivative order");
        Term d = t;
        d.coeff *= static_cast<double>(p);
        d.powers[idx] = static_cast<std::int8_t>(p - 1);
        d.powers[idx + 1] = static_cast<std::int8_t>(d.powers[idx + 1] + 1);
        g.add_term(d);
      }
    }
    // Chain rule on f(ζ(s)): ∂f·ζ' + ∂̄f·conj ζ'.
    Term da = t;
    da.a += 1;
    da.powers[0] = static_cast<std::int8_t>(da.powers[0] + 1);
    g.add_term(da);
    Term db = t;
    db.b += 1;
    db.powers[K] = static_cast<std::int8_t>(db.powers[K] + 1);
    g.add_term(db);
  }
  for (auto& t : g.terms_) t.powers[K] = static_cast<std::int8_t>(t.powers[K] + 1);
  g.simplify();
  return g;
}

int BoundaryTrace::function_order() const {
  int order = 0;
  for (const Term& t : terms_) order = std::max(order, t.a + t.b);
  return order;
}

int BoundaryTrace::curve_order() const {
  int order = 1;
  for (const Term& t : terms_) {
    for (int j = 1; j <= K; ++j) {
      if (t.powers[j - 1] != 0 || t.powers[K + j - 1] != 0) order = std::max(order, j);
    }
  }
  return order;
}

cplx BoundaryTrace::value_at(const BoundaryQuadrature& rule, std::size_t i) const {
  if (curve_order() > rule.derivative_order()) {
    throw GeometryError("boundary rule lacks curve derivative of order " + std::to_string(curve_order()));
  }
  CompensatedSum<cplx> acc;
  const cplx z = rule.points()[i];
  for (const Term& t : terms_) {
    cplx v = t.coeff * f_.wirtinger(t.a, t.b, z);
    for (int j = 1; j <= K; ++j) {
      if (t.powers[j - 1]) v *= ipow(rule.derivs[j][i], t.powers[j - 1]);
      if (t.powers[K + j - 1]) v *= ipow(std::conj(rule.derivs[j][i]), t.powers[K + j - 1]);
    }
    acc.add(v);
  }
  return acc.value();
}

std::vector<cplx> BoundaryTrace::sample(const BoundaryQuadrature& rule) const {
  if (curve_order() > rule.derivative_order()) {
    throw GeometryError("boundary rule lacks curve derivative of order " + std::to_string(curve_order()));
  }
  const std::size_t n = rule.size();
  std::vector<cplx> out(n, cplx(0.0));
  std::vector<cplx> fv(n);
  for (const Term& t : terms_) {
    f_.wirtinger(t.a, t.b, rule.points(), fv);
    for (std::size_t i = 0; i < n; ++i) {
      cplx v = t.coeff * fv[i];
      for (int j = 1; j <= K; ++j) {
        if (t.powers[j - 1]) v *= ipow(rule.derivs[j][i], t.powers[j - 1]);
        if (t.powers[K + j - 1]) v *= ipow(std::conj(rule.derivs[j][i]), t.powers[K + j - 1]);
      }
      out[i] += v;
    }
  }
  return out;
}

BoundaryTrace build_tilde_f(const TestFunction& f) {
  if (f.k_max() < 1 && !f.is_zero()) {
    throw PreconditionError("build_tilde_f: " + f.label() + " has no first derivatives");
  }
  return BoundaryTrace::of(f).tangential();
}

std::string to_string(Operator op) {
  switch (op) {
    case Operator::T: return "T";
    case Operator::H: return "H";
    case Operator::S: return "S";
    case Operator::Stilde: return "Stilde";
    case Operator::L: return "L";
  }
  return "?";
}

Operator operator_from_string(const std::string& name) {
  for (Operator op : {Operator::T, Operator::H, Operator::S, Operator::Stilde, Operator::L}) {
    if (to_string(op) == name) return op;
  }
  throw PreconditionError("unknown operator '" + name + "' (expected T, H, S, Stilde or L)");
}

TargetKit::TargetKit(const PlanarDomain& domain, const BoundaryQuadrature& rule,
                     const QuadratureSpec& spec, cplx z, bool with_stencil)
    : z_(z) {
  const std::size_t n = rule.size();
  k_cauchy_.resize(n);
  k_beurling_.resize(n);
  k_conj_.resize(n);
  CompensatedSum<cplx> c_acc;
  CompensatedSum<cplx> b_acc;
  const cplx zb = std::conj(z);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx zeta = rule.points()[i];
    const cplx tan = rule.tangents()[i];
    const cplx inv = 1.0 / (zeta - z);
    const double w = rule.weights[i];
    k_cauchy_[i] = w * tan * inv / kTwoPiI;
    k_beurling_[i] = w * tan * inv * inv / kTwoPiI;
    k_conj_[i] = w * std::conj(tan) * inv / kTwoPiI;
    c_acc.add(w * (std::conj(zeta) - zb) * inv * tan);
    b_acc.add(w * std::conj(zeta) * inv * inv * tan);
  }
  t_one_ = -c_acc.value() / (2.0 * kI) / kPi;
  h_one_ = -b_acc.value() / (2.0 * kI) / kPi;
  if (with_stencil) {
    stencil_ = polar_rule(domain, z, spec.N, spec.stencil_radial(), spec.grading, 0.0);
    inv_offset_.resize(stencil_.size());
    inv_offset_sq_.resize(stencil_.size());
    for (std::size_t i = 0; i < stencil_.size(); ++i) {
      inv_offset_[i] = 1.0 / stencil_.offsets[i];
      inv_offset_sq_[i] = inv_offset_[i] * inv_offset_[i];
    }
  }
}

namespace {

cplx dot(const std::vector<cplx>& k, std::span<const cplx> g) {
  if (g.size() != k.size()) throw PreconditionError("boundary samples do not match the rule");
  CompensatedSum<cplx> acc;
  for (std::size_t i = 0; i < k.size(); ++i) acc.add(k[i] * g[i]);
  return acc.value();
}

}  // namespace

cplx TargetKit::S(std::span<const cplx> samples) const { return dot(k_cauchy_, samples); }
cplx TargetKit::Stilde(std::span<const cplx> samples) const { return dot(k_beurling_, samples); }
cplx TargetKit::L(std::span<const cplx> samples) const { return dot(k_conj_, samples); }

TargetKit::Solid TargetKit::solid(std::span<const cplx> node_values, cplx fz) const {
  if (node_values.size() != stencil_.size()) {
    throw PreconditionError("stencil values do not match the target stencil");
  }
  CompensatedSum<cplx> t_acc;
  CompensatedSum<cplx> h_acc;
  for (std::size_t i = 0; i < stencil_.size(); ++i) {
    const cplx diff = stencil_.weights[i] * (node_values[i] - fz);
    t_acc.add(diff * inv_offset_[i]);
    h_acc.add(diff * inv_offset_sq_[i]);
  }
  return {-t_acc.value() / kPi + fz * t_one_, -h_acc.value() / kPi + fz * h_one_};
}

TargetKit::Solid TargetKit::solid(const TestFunction& f) const {
  if (f.is_zero()) return {cplx(0.0), cplx(0.0)};
  std::vector<cplx> vals(stencil_.size());
  f.wirtinger(0, 0, stencil_.nodes, vals);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!std::isfinite(vals[i].real()) || !std::isfinite(vals[i].imag())) {
      throw QuadratureError(f.label() + " is not finite at a stencil node near target");
    }
  }
  return solid(vals, f(z_));
}

TransformContext::TransformContext(DomainPtr domain, QuadratureSpec spec, int curve_order)
    : domain_(std::move(domain)), spec_(spec),
      rule_(boundary_rule(domain_->boundary(), spec.M, curve_order)) {}

TargetKit TransformContext::kit(cplx z, bool with_stencil) const {
  require_standoff(*domain_, z, spec_);
  return TargetKit(*domain_, rule_, spec_, z, with_stencil);
}

cplx TransformContext::T(const TestFunction& f, cplx z) const { return kit(z).solid(f).T; }

cplx TransformContext::H(const TestFunction& f, cplx z) const {
  if (f.is_zero()) {
    require_standoff(*domain_, z, spec_);
    return 0.0;
  }
  if (f.k_max() < 1) return -integrate_pv(f, z, *domain_, spec_).value / kPi;
  return kit(z).solid(f).H;
}

cplx TransformContext::S(const BoundaryTrace& g, cplx z) const {
  BoundaryQuadrature scratch;
  const auto& r = rule_for(rule_, domain_->boundary(), g.curve_order(), scratch);
  require_standoff(*domain_, z, spec_);
  return TargetKit(*domain_, r, spec_, z, false).S(g.sample(r));
}

cplx TransformContext::Stilde(const BoundaryTrace& g, cplx z) const {
  BoundaryQuadrature scratch;
  const auto& r = rule_for(rule_, domain_->boundary(), g.curve_order(), scratch);
  require_standoff(*domain_, z, spec_);
  return TargetKit(*domain_, r, spec_, z, false).Stilde(g.sample(r));
}

cplx TransformContext::L(const BoundaryTrace& g, cplx z) const {
  BoundaryQuadrature scratch;
  const auto& r = rule_for(rule_, domain_->boundary(), g.curve_order(), scratch);
  require_standoff(*domain_, z, spec_);
  return TargetKit(*domain_, r, spec_, z, false).L(g.sample(r));
}

cplx TransformContext::t_of_one(cplx z) const { return kit(z, false).t_of_one(); }
cplx TransformContext::h_of_one(cplx z) const { return kit(z, false).h_of_one(); }

cplx TransformContext::derivative_S(const BoundaryTrace& g, cplx z, int k) const {
  if (k < 0) throw PreconditionError("derivative_S: negative order");
  if (k == 0) return S(g, z);
  BoundaryTrace h = g;
  for (int j = 1; j < k; ++j) h = h.tangential();
  if (h.function_order() > g.function().k_max() && !g.function().is_zero()) {
    throw PreconditionError("derivative_S: " + g.function().label() + " lacks Wirtinger order " +
                            std::to_string(h.function_order()));
  }
  return Stilde(h, z);
}

cplx TransformContext::derivative_H(const TestFunction& f, cplx z, int a, int b) const {
  if (a < 0 || b < 0) throw PreconditionError("derivative_H: negative multi-index");
  if (f.is_zero()) {
    require_standoff(*domain_, z, spec_);
    return 0.0;
  }
  if (a + b > f.k_max()) {
    throw PreconditionError("derivative_H: " + f.label() + " has derivatives only to order " +
                            std::to_string(f.k_max()));
  }
  if (b >= 1) {
    require_standoff(*domain_, z, spec_);
    return f.wirtinger(a + 1, b - 1, z);
  }
  if (a == 0) return H(f, z);
  const BoundaryTrace g = BoundaryTrace::of(f).times_conj_tangent_power(2);
  return derivative_H(f.derivative(1, 0), z, a - 1, 0) - derivative_S(g, z, a);
}

cplx TransformContext::derivative_T(const TestFunction& f, cplx z, int a, int b) const {
  if (a < 0 || b < 0) throw PreconditionError("derivative_T: negative multi-index");
  if (f.is_zero()) {
    require_standoff(*domain_, z, spec_);
    return 0.0;
  }
  if (a + b > f.k_max() + 1 || (b >= 1 && a + b - 1 > f.k_max())) {
    throw PreconditionError("derivative_T: " + f.label() + " has derivatives only to order " +
                            std::to_string(f.k_max()));
  }
  if (b >= 1) {
    require_standoff(*domain_, z, spec_);
    return f.wirtinger(a, b - 1, z);
  }
  if (a == 0) return T(f, z);
  return derivative_H(f, z, a - 1, 0);
}

cplx compute_T(const TestFunction& f, DomainPtr domain, cplx z, const QuadratureSpec& spec) {
  return TransformContext(std::move(domain), spec, 1).T(f, z);
}
cplx compute_H(const TestFunction& f, DomainPtr domain, cplx z, const QuadratureSpec& spec) {
  return TransformContext(std::move(domain), spec, 1).H(f, z);
}
cplx compute_S(const BoundaryTrace& g, DomainPtr domain, cplx z, const QuadratureSpec& spec) {
  return TransformContext(std::move(domain), spec, g.curve_order()).S(g, z);
}
cplx compute_Stilde(const BoundaryTrace& g, DomainPtr domain, cplx z, const QuadratureSpec& spec) {
  return TransformContext(std::move(domain), spec, g.curve_order()).Stilde(g, z);
}
cplx compute_L(const BoundaryTrace& g, DomainPtr domain, cplx z, const QuadratureSpec& spec) {
  return TransformContext(std::move(domain), spec, g.curve_order()).L(g, z);
}
cplx t_of_one(DomainPtr domain, cplx z, const QuadratureSpec& spec) {
  return TransformContext(std::move(domain), spec, 1).t_of_one(z);
}
cplx h_of_one(DomainPtr domain, cplx z, const QuadratureSpec& spec) {
  return TransformContext(std::move(domain), spec, 1).h_of_one(z);
}

TransformField evaluate(const TransformRequest& request, DomainPtr domain) {
  const TransformContext ctx(std::move(domain), request.spec, 1);
  const TestFunction& f = request.f;
  TransformField field;
  field.op = request.op;
  field.targets = request.targets;
  field.N = request.spec.N;
  field.M = request.spec.M;
  field.values.resize(request.targets.size());
  for (cplx z : request.targets) require_standoff(ctx.domain(), z, ctx.spec());

  const bool check = request.check_identity && f.k_max() >= 2;
  const auto& rule = ctx.boundary();
  const bool boundary_op = request.op != Operator::T && request.op != Operator::H;
  const std::vector<cplx> g = boundary_op ? BoundaryTrace::of(f).sample(rule) : std::vector<cplx>{};
  std::vector<cplx> g_identity;
  if (check) {
    switch (request.op) {
      case Operator::T:
      case Operator::H:
      case Operator::S:
      case Operator::Stilde:
        g_identity = BoundaryTrace::of(f).sample(rule);
        break;
      case Operator::L:
        g_identity = BoundaryTrace::of(f).times_conj_tangent_power(2).sample(rule);
        break;
    }
  }
  std::vector<double> residual(request.targets.size(), 0.0);
  parallel_for(request.targets.size(), [&](std::size_t i) {
    const cplx z = request.targets[i];
    const bool needs_stencil = !boundary_op || (check && request.op != Operator::L);
    const TargetKit kit(ctx.domain(), rule, ctx.spec(), z, needs_stencil);
    cplx v = 0.0;
    switch (request.op) {
      case Operator::T: v = kit.solid(f).T; break;
      case Operator::H:
        v = f.k_max() >= 1 || f.is_zero() ? kit.solid(f).H : ctx.H(f, z);
        break;
      case Operator::S: v = kit.S(g); break;
      case Operator::Stilde: v = kit.Stilde(g); break;
      case Operator::L: v = kit.L(g); break;
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw QuadratureError("transform value is not finite at a target");
    }
    field.values[i] = v;
    if (!check) return;
    cplx r = 0.0;
    switch (request.op) {
      case Operator::T:
      case Operator::H:
        r = kit.solid(f).H - kit.solid(f.derivative(1, 0)).T + kit.L(g_identity);
        break;
      case Operator::S: r = v - f(z) + kit.solid(f.derivative(0, 1)).T; break;
      case Operator::Stilde: r = v + kit.solid(f.derivative(0, 1)).H - f.wirtinger(1, 0, z); break;
      case Operator::L: r = v - kit.S(g_identity); break;
    }
    residual[i] = std::abs(r);
  });
  if (check) {
    field.identity_checked = true;
    for (double r : residual) field.identity_residual = std::max(field.identity_residual, r);
  }
  return field;
}

}  // namespace psio
