#include "planar_sio/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

namespace psio {

std::vector<cplx> sample_targets(const PlanarDomain& domain, int n, double standoff,
                                 std::uint64_t seed) {
  if (n < 0) throw PreconditionError("sample_targets: negative count");
  std::mt19937_64 rng(seed);
  const Box b = domain.bounding_box();
  std::uniform_real_distribution<double> ux(b.xmin, b.xmax);
  std::uniform_real_distribution<double> uy(b.ymin, b.ymax);
  std::vector<cplx> out;
  const int band = n / 5;
  long attempts = 0;
  while (static_cast<int>(out.size()) < n) {
    if (++attempts > 10'000'000) {
      throw PreconditionError("sample_targets: no room for targets at standoff " + std::to_string(standoff) +
                              " in " + domain.label());
    }
    const cplx z(ux(rng), uy(rng));
    if (!domain.contains(z)) continue;
    const double d = domain.distance_to_boundary(z);
    if (d < standoff) continue;
    if (static_cast<int>(out.size()) < band && d > 2.0 * standoff) continue;
    out.push_back(z);
  }
  return out;
}

std::vector<TestFunction> ratio_family(int n) {
  if (n < 1) throw PreconditionError("ratio_family: need at least one function");
  int degree = 0;
  while ((degree + 1) * (degree + 2) / 2 < n) ++degree;
  auto fam = family_polynomial(degree);
  fam.resize(n);
  return fam;
}

// ---------------------------------------------------------------- identities

namespace {

enum IdentityIndex { kCG, kDzS, kRecursion, kLS, kDbarT, kTangential, kIdentityCount };

const char* identity_name(int i) {
  switch (i) {
    case kCG: return "cauchy_green";
    case kDzS: return "dz_s";
    case kRecursion: return "recursion";
    case kLS: return "ls";
    case kDbarT: return "dbar_t";
    case kTangential: return "tangential";
  }
  return "?";
}

double identity_tolerance(const IdentityTolerances& t, int i) {
  switch (i) {
    case kCG: return t.cauchy_green;
    case kDzS: return t.dz_s;
    case kRecursion: return t.recursion;
    case kLS: return t.ls;
    case kDbarT: return t.dbar_t;
    case kTangential: return t.tangential;
  }
  return 0.0;
}

std::string describe(cplx z) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

}  // namespace

IdentityReport run_identity_suite(DomainPtr domain, const std::vector<TestFunction>& family,
                                  const QuadratureSpec& spec, const IdentitySuiteConfig& config) {
  IdentityReport report;
  report.domain = domain->label();
  report.N = spec.N;
  report.M = spec.M;

  const Box box = domain->bounding_box();
  const cplx mid(0.5 * (box.xmin + box.xmax), 0.5 * (box.ymin + box.ymax));
  for (const auto& f : family) {
    const auto fd = fd_check(f, 20, mid, 0.25 * domain->diameter(), config.seed);
    if (!fd.passed) {
      report.fd_prechecks_passed = false;
      report.passed = false;
      if (report.first_failure.empty()) {
        report.first_failure = "fd_check / " + f.label() + " / " + describe(fd.worst_point);
      }
    }
  }

  const TransformContext ctx(domain, spec, 3);
  const auto& rule = ctx.boundary();
  const auto targets =
      sample_targets(*domain, config.targets, spec.delta_frac * domain->diameter(), config.seed);
  const std::size_t nf = family.size();
  const std::size_t nt = targets.size();

  std::vector<std::vector<cplx>> g(nf), gl(nf), tilde(nf);
  for (std::size_t j = 0; j < nf; ++j) {
    const auto tr = BoundaryTrace::of(family[j]);
    g[j] = tr.sample(rule);
    gl[j] = tr.times_conj_tangent_power(2).sample(rule);
    if (static_cast<int>(j) < config.tangential_functions) tilde[j] = build_tilde_f(family[j]).sample(rule);
  }

  const double h = config.fd_step;
  const double l_sign = config.fault == Fault::flip_L_sign ? -1.0 : 1.0;
  // res[t][f][identity]; NaN marks "not evaluated".
  std::vector<std::vector<std::array<double, kIdentityCount>>> res(
      nt, std::vector<std::array<double, kIdentityCount>>(nf));
  parallel_for(nt, [&](std::size_t t) {
    const cplx z = targets[t];
    const TargetKit kit = ctx.kit(z);
    const cplx shifts[4] = {h, -h, cplx(0, h), cplx(0, -h)};
    std::vector<TargetKit> fd;
    for (cplx s : shifts) fd.emplace_back(ctx.domain(), rule, spec, z + s, true);
    const bool tangential_target = static_cast<int>(t) < config.tangential_targets;
    for (std::size_t j = 0; j < nf; ++j) {
      const auto& f = family[j];
      auto& r = res[t][j];
      r.fill(std::nan(""));
      const auto sf = kit.solid(f);
      const auto sdb = kit.solid(f.derivative(0, 1));
      const auto sd = kit.solid(f.derivative(1, 0));
      const cplx L = l_sign * kit.L(g[j]);
      r[kCG] = std::abs(kit.S(g[j]) - f(z) + sdb.T);
      r[kDzS] = std::abs(kit.Stilde(g[j]) + sdb.H - f.wirtinger(1, 0, z));
      r[kRecursion] = std::abs(sf.H - sd.T + L);
      r[kLS] = std::abs(L - kit.S(gl[j]));
      cplx T4[4];
      for (int s = 0; s < 4; ++s) T4[s] = fd[s].solid(f).T;
      const cplx dx = (T4[0] - T4[1]) / (2 * h);
      const cplx dy = (T4[2] - T4[3]) / (2 * h);
      r[kDbarT] = std::abs(0.5 * (dx + kI * dy) - f(z));
      if (tangential_target && static_cast<int>(j) < config.tangential_functions) {
        cplx S4[4];
        for (int s = 0; s < 4; ++s) S4[s] = fd[s].Stilde(g[j]);
        const cplx d = 0.5 * ((S4[0] - S4[1]) / (2 * h) - kI * (S4[2] - S4[3]) / (2 * h));
        const cplx exact = kit.Stilde(tilde[j]);
        r[kTangential] = std::abs(d - exact) / std::max(1.0, std::abs(exact));
      }
    }
  });

  for (int id = 0; id < kIdentityCount; ++id) {
    for (std::size_t j = 0; j < nf; ++j) {
      IdentityRow row;
      row.identity = identity_name(id);
      row.function = family[j].label();
      row.tolerance = identity_tolerance(config.tol, id);
      int count = 0;
      double sum = 0.0;
      for (std::size_t t = 0; t < nt; ++t) {
        const double v = res[t][j][id];
        if (std::isnan(v)) continue;
        ++count;
        sum += v;
        if (v > row.max_residual || count == 1) {
          row.max_residual = v;
          row.worst_target = targets[t];
        }
      }
      if (count == 0) continue;
      row.mean_residual = sum / count;
      row.passed = row.max_residual < row.tolerance;
      if (!row.passed) {
        report.passed = false;
        if (report.first_failure.empty()) {
          report.first_failure = row.identity + " / " + row.function + " / " + describe(row.worst_target);
        }
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

// --------------------------------------------------------------- ratio study

DomainQuadrature field_rule(const PlanarDomain& domain, const QuadratureSpec& spec,
                            const Weight& weight) {
  std::optional<cplx> center;
  if (!weight.singular_points().empty()) center = weight.singular_points().front();
  cplx c;
  const double delta = spec.delta_frac * domain.diameter();
  if (center && domain.in_shrunken(*center, delta)) {
    c = *center;
  } else {
    const Box b = domain.bounding_box();
    c = cplx(0.5 * (b.xmin + b.xmax), 0.5 * (b.ymin + b.ymax));
  }
  return polar_rule(domain, c, std::max(16, spec.N / 8), std::max(8, spec.N / 32), spec.grading, delta);
}

namespace {

int output_order(const RatioCase& c) {
  switch (c.op) {
    case Operator::H: return c.k;
    case Operator::T: return c.k + 1;
    case Operator::S: return c.k;
    case Operator::Stilde: return 0;
    case Operator::L: break;
  }
  throw PreconditionError("ratio study: L has no norm pairing");
}

int input_order(const RatioCase& c) { return c.op == Operator::Stilde ? 1 : c.k; }

void validate(const RatioCase& c) {
  if (c.k < 0) throw PreconditionError("ratio study: negative order k");
  if (c.op == Operator::L) throw PreconditionError("ratio study: L has no norm pairing");
  if (c.op == Operator::S && c.k < 1) {
    throw PreconditionError("ratio study: S is studied on W^{k,p} with k >= 1");
  }
  if (c.op == Operator::Stilde && c.k != 1) {
    throw PreconditionError("ratio study: Stilde pairs W^{1,p} with L^p, so k must be 1");
  }
  if (!(c.p > 1.0)) throw PreconditionError("ratio study: p must exceed 1");
}

using FieldKey = std::tuple<int, int, int>;  // (operator, a, b)

struct Needs {
  int t = -1;  // highest total order of T derivatives
  int h = -1;
  int s = -1;
  bool stilde = false;
};

// Transform derivative fields at the nodes of `rule`, per function.
std::vector<std::map<FieldKey, std::vector<cplx>>> compute_bank(
    const PlanarDomain& domain, const QuadratureSpec& spec, const DomainQuadrature& rule,
    const std::vector<TestFunction>& family, const Needs& needs) {
  const int A = std::max(needs.h, needs.t - 1);  // highest ∂^a H f needed
  const int curve = std::max({3, A + 1, needs.s + 1});
  const BoundaryQuadrature brule = boundary_rule(domain.boundary(), spec.M, curve);
  const std::size_t nf = family.size();
  const std::size_t nn = rule.size();

  struct Traces {
    std::vector<cplx> f;
    std::vector<std::vector<cplx>> tau;                 // tau[m] = τ^{m-1} f, m >= 1
    std::vector<std::vector<std::vector<cplx>>> hcorr;  // hcorr[i][m] = τ^{m-1}(conj ζ'² ∂^i f)
  };
  std::vector<Traces> traces(nf);
  for (std::size_t j = 0; j < nf; ++j) {
    const auto& f = family[j];
    Traces& tr = traces[j];
    tr.f = BoundaryTrace::of(f).sample(brule);
    tr.tau.resize(std::max(0, needs.s) + 1);
    BoundaryTrace cur = BoundaryTrace::of(f);
    for (int m = 1; m <= needs.s; ++m) {
      if (m > 1) cur = cur.tangential();
      tr.tau[m] = cur.sample(brule);
    }
    tr.hcorr.resize(std::max(0, A));
    for (int i = 0; i < A; ++i) {
      tr.hcorr[i].resize(A - i + 1);
      BoundaryTrace c = BoundaryTrace::of(f.derivative(i, 0)).times_conj_tangent_power(2);
      for (int m = 1; i + m <= A; ++m) {
        if (m > 1) c = c.tangential();
        tr.hcorr[i][m] = c.sample(brule);
      }
    }
  }

  std::vector<std::map<FieldKey, std::vector<cplx>>> bank(nf);
  auto reserve = [&](int op, int order) {
    for (std::size_t j = 0; j < nf; ++j) {
      for (int n = 0; n <= order; ++n) {
        for (int a = 0; a <= n; ++a) bank[j][{op, a, n - a}].assign(nn, cplx(0.0));
      }
    }
  };
  reserve(static_cast<int>(Operator::T), needs.t);
  reserve(static_cast<int>(Operator::H), needs.h);
  reserve(static_cast<int>(Operator::S), needs.s);
  if (needs.stilde) reserve(static_cast<int>(Operator::Stilde), 0);

  const bool solid = A >= 0 || needs.t >= 0;
  parallel_for(nn, [&](std::size_t i) {
    const cplx z = rule.nodes[i];
    const TargetKit kit(domain, brule, spec, z, solid);
    std::vector<TargetKit::Solid> s(std::max(A, 0) + 1);
    std::vector<cplx> dH(std::max(A, 0) + 1);
    for (std::size_t j = 0; j < nf; ++j) {
      const auto& f = family[j];
      const Traces& tr = traces[j];
      auto& out = bank[j];
      if (solid) {
        for (int a = 0; a <= std::max(A, 0); ++a) s[a] = kit.solid(f.derivative(a, 0));
        for (int a = 0; a <= A; ++a) {
          cplx v = s[a].H;
          for (int q = 0; q < a; ++q) v -= kit.Stilde(tr.hcorr[q][a - q]);
          dH[a] = v;
        }
      }
      for (int n = 0; n <= needs.t; ++n) {
        for (int a = 0; a <= n; ++a) {
          const int b = n - a;
          cplx v;
          if (b >= 1) v = f.wirtinger(a, b - 1, z);
          else if (a == 0) v = s[0].T;
          else v = dH[a - 1];
          out[{static_cast<int>(Operator::T), a, b}][i] = v;
        }
      }
      for (int n = 0; n <= needs.h; ++n) {
        for (int a = 0; a <= n; ++a) {
          const int b = n - a;
          out[{static_cast<int>(Operator::H), a, b}][i] = b >= 1 ? f.wirtinger(a + 1, b - 1, z) : dH[a];
        }
      }
      for (int a = 0; a <= needs.s; ++a) {
        out[{static_cast<int>(Operator::S), a, 0}][i] = a == 0 ? kit.S(tr.f) : kit.Stilde(tr.tau[a]);
      }
      if (needs.stilde) out[{static_cast<int>(Operator::Stilde), 0, 0}][i] = kit.Stilde(tr.f);
    }
  });
  return bank;
}

struct Sweep {
  std::vector<double> numerators;
  std::vector<double> denominators;
  std::vector<double> ratios;
};

std::vector<Sweep> sweep(const PlanarDomain& domain, const std::vector<TestFunction>& family,
                         const QuadratureSpec& spec, const std::vector<RatioCase>& cases) {
  // Group cases sharing a grading centre so each field bank is computed once.
  std::map<std::pair<double, double>, std::vector<std::size_t>> groups;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& sp = cases[c].weight.singular_points();
    const cplx key = sp.empty() ? cplx(NAN, NAN) : sp.front();
    groups[{key.real(), key.imag()}].push_back(c);
  }
  std::vector<Sweep> out(cases.size());
  for (const auto& [key, idx] : groups) {
    const Weight& grading_weight = cases[idx.front()].weight;
    const DomainQuadrature rule = field_rule(domain, spec, grading_weight);
    Needs needs;
    for (std::size_t c : idx) {
      const auto& rc = cases[c];
      const int ko = output_order(rc);
      if (rc.op == Operator::T) needs.t = std::max(needs.t, ko);
      if (rc.op == Operator::H) needs.h = std::max(needs.h, ko);
      if (rc.op == Operator::S) needs.s = std::max(needs.s, ko);
      if (rc.op == Operator::Stilde) needs.stilde = true;
    }
    const auto bank = compute_bank(domain, spec, rule, family, needs);
    for (std::size_t c : idx) {
      const auto& rc = cases[c];
      const int ko = output_order(rc);
      const int ki = input_order(rc);
      const DomainQuadrature full = norm_rule(domain, spec, 0.0, rc.weight);
      Sweep& sw = out[c];
      for (std::size_t j = 0; j < family.size(); ++j) {
        WirtingerSamples data;
        data.by_order.resize(ko + 1);
        for (int n = 0; n <= ko; ++n) {
          for (int a = 0; a <= n; ++a) {
            auto it = bank[j].find({static_cast<int>(rc.op), a, n - a});
            data.by_order[n].push_back(it != bank[j].end() ? it->second
                                                           : std::vector<cplx>(rule.size(), cplx(0.0)));
          }
        }
        const double num = weighted_sobolev_norm(data, rc.weight, rc.p, rule).value;
        const double den = weighted_sobolev_norm(family[j], rc.weight, rc.p, ki, full).value;
        sw.numerators.push_back(num);
        sw.denominators.push_back(den);
        sw.ratios.push_back(num / den);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<RatioStudy> run_ratio_studies(DomainPtr domain, const std::vector<TestFunction>& family,
                                          const QuadratureSpec& spec,
                                          const std::vector<RatioCase>& cases,
                                          const RatioStudyConfig& config) {
  if (family.size() < 10) {
    throw PreconditionError("ratio study: need at least 10 functions, got " + std::to_string(family.size()));
  }
  for (const auto& f : family) {
    if (f.is_zero()) throw PreconditionError("ratio study: the zero function has no ratio");
  }
  for (const auto& c : cases) validate(c);
  const auto coarse = sweep(*domain, family, spec, cases);
  const auto fine = sweep(*domain, family, spec.refined(), cases);
  std::vector<RatioStudy> out;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& rc = cases[c];
    RatioStudy st;
    st.op = rc.op;
    st.domain = domain->label();
    st.weight = rc.weight.descriptor();
    st.alpha = rc.weight.alpha();
    st.p = rc.p;
    st.k_in = input_order(rc);
    st.k_out = output_order(rc);
    st.N = spec.N;
    for (const auto& f : family) st.labels.push_back(f.label());
    st.numerators_N = coarse[c].numerators;
    st.denominators = coarse[c].denominators;
    st.ratios_N = coarse[c].ratios;
    st.ratios_2N = fine[c].ratios;
    bool finite = true;
    for (std::size_t j = 0; j < family.size(); ++j) {
      finite = finite && std::isfinite(st.ratios_N[j]) && std::isfinite(st.ratios_2N[j]);
      st.sup_N = std::max(st.sup_N, st.ratios_N[j]);
      st.sup_2N = std::max(st.sup_2N, st.ratios_2N[j]);
    }
    st.stability = st.sup_N > 0.0 ? std::abs(st.sup_N - st.sup_2N) / st.sup_N
                                   : (st.sup_2N == 0.0 ? 0.0 : INFINITY);
    st.threshold = rc.weight.is_constant() ? config.stability_unweighted : config.stability_weighted;
    st.weight_in_Ap_range = rc.weight.alpha() > -2.0 && rc.weight.alpha() < 2.0 * (rc.p - 1.0);
    st.passed = finite && st.stability < st.threshold;
    out.push_back(std::move(st));
  }
  return out;
}

RatioStudy run_ratio_study(const RatioCase& c, DomainPtr domain,
                           const std::vector<TestFunction>& family, const QuadratureSpec& spec,
                           const RatioStudyConfig& config) {
  return run_ratio_studies(std::move(domain), family, spec, {c}, config).front();
}

// ------------------------------------------------------------- corner blowup

namespace {

std::vector<double> dh_one_along(const TransformContext& ctx, const std::vector<cplx>& probes) {
  const auto one = monomial(0, 0);
  std::vector<double> out(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) { out[i] = std::abs(ctx.derivative_H(one, probes[i], 1, 0)); });
  return out;
}

LineFit loglog_fit(const std::vector<double>& d, const std::vector<double>& v) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < d.size(); ++i) {
    x.push_back(std::log(d[i]));
    y.push_back(std::log(v[i]));
  }
  return fit_line(x, y);
}

}  // namespace

BlowupFit run_corner_blowup(const BlowupConfig& config) {
  if (config.points < 8) throw PreconditionError("blowup fit needs at least 8 points");
  if (!(config.d_min > 0.0) || !(config.d_max > config.d_min)) {
    throw PreconditionError("blowup fit needs 0 < d_min < d_max");
  }
  if (std::log10(config.d_max / config.d_min) < 1.5) {
    throw PreconditionError("blowup fit distances must span at least 1.5 decades");
  }
  BlowupFit fit;
  fit.vertex = 0.0;
  const cplx diag = std::polar(1.0, kPi / 4);
  std::vector<cplx> probes;
  for (int i = 0; i < config.points; ++i) {
    const double t = static_cast<double>(i) / (config.points - 1);
    const double d = config.d_max * std::pow(config.d_min / config.d_max, t);
    fit.distances.push_back(d);
    probes.push_back(fit.vertex + d * diag);
  }
  QuadratureSpec spec;
  spec.delta_frac = 0.001;
  spec.M = config.M;
  const auto square = make_unit_square();
  fit.values = dh_one_along(TransformContext(square, spec, 1), probes);
  spec.M = 2 * config.M;
  fit.values_2M = dh_one_along(TransformContext(square, spec, 1), probes);

  const LineFit lf = loglog_fit(fit.distances, fit.values);
  fit.beta = -lf.slope;
  fit.intercept = lf.intercept;
  fit.r_squared = lf.r_squared;
  fit.beta_2M = -loglog_fit(fit.distances, fit.values_2M).slope;
  fit.beta_shift = std::abs(fit.beta_2M - fit.beta);
  fit.conclusive = fit.r_squared > config.r2_min;

  // Disc control, ∂H(1) ≡ 0, at M with 2π·d_min·M/L >= 40.
  const auto disc = make_unit_disc();
  int Mc = config.M;
  while (2.0 * kPi * config.d_min * Mc / disc->boundary().length() < 40.0) Mc *= 2;
  QuadratureSpec cspec;
  cspec.delta_frac = 0.001;
  cspec.M = Mc;
  fit.control_M = Mc;
  std::vector<cplx> cprobes;
  for (double d : fit.distances) cprobes.push_back(cplx(1.0 - d, 0.0));
  fit.control_values = dh_one_along(TransformContext(disc, cspec, 1), cprobes);
  for (double v : fit.control_values) fit.control_max = std::max(fit.control_max, v);
  fit.control_passed = fit.control_max < config.control_tol;

  fit.passed = fit.conclusive && fit.beta >= config.beta_lo && fit.beta <= config.beta_hi &&
               fit.beta_shift < config.beta_shift_max && fit.control_passed;
  return fit;
}

// --------------------------------------------------------- convergence table

ConvergenceReport run_convergence_report(const ConvergenceConfig& config) {
  ConvergenceReport rep;
  const auto disc = make_unit_disc();
  QuadratureSpec spec;
  const auto z2 = BoundaryTrace::of(monomial(2, 0));
  const auto pole = BoundaryTrace::of(simple_pole(2.0));

  auto add_series = [&](const std::string& name, const std::string& knob, const std::vector<int>& res,
                        cplx exact, auto&& compute) {
    double prev = 0.0;
    for (std::size_t i = 0; i < res.size(); ++i) {
      ConvergenceRow row;
      row.example = name;
      row.knob = knob;
      row.resolution = res[i];
      row.value = compute(res[i]);
      row.exact = exact;
      row.error = std::abs(row.value - exact);
      if (i > 0 && prev > config.noise_floor && row.error > config.noise_floor) {
        row.order = std::log2(prev / row.error);
      }
      if (i > 0 && row.error > prev && prev > config.noise_floor) row.flagged = true;
      if (row.flagged && rep.passed) {
        rep.passed = false;
        rep.failure = name + ": error grew at " + knob + " = " + std::to_string(res[i]);
      }
      prev = row.error;
      rep.rows.push_back(row);
    }
  };
  auto boundary_value = [&](const BoundaryTrace& g, cplx z, Operator op) {
    return [&g, z, op, &disc, &spec](int M) {
      const auto rule = boundary_rule(disc->boundary(), M, 1);
      const TargetKit kit(*disc, rule, spec, z, false);
      const auto s = g.sample(rule);
      return op == Operator::S ? kit.S(s) : op == Operator::Stilde ? kit.Stilde(s) : kit.L(s);
    };
  };
  add_series("S(z^2)(0.5)", "M", config.M_values, 0.25, boundary_value(z2, 0.5, Operator::S));
  add_series("Stilde(z^2)(0.5)", "M", config.M_values, 1.0, boundary_value(z2, 0.5, Operator::Stilde));
  add_series("L(1/(z-2))(0.5)", "M", config.M_values, 1.0 / 6.0, boundary_value(pole, 0.5, Operator::L));
  const cplx zt(0.3, 0.4);
  add_series("T(1)(0.3+0.4i) direct", "N", config.N_values, std::conj(zt), [&](int N) {
    const auto st = polar_rule(*disc, zt, N, std::max(8, N / 8), spec.grading, 0.0);
    CompensatedSum<cplx> acc;
    for (std::size_t i = 0; i < st.size(); ++i) acc.add(-st.weights[i] / st.offsets[i]);
    return acc.value() / kPi;
  });

  auto check = [&](const std::string& name, int res, double bound) {
    for (const auto& r : rep.rows) {
      if (r.example == name && r.resolution == res && !(r.error < bound) && rep.passed) {
        rep.passed = false;
        rep.failure = name + ": error " + std::to_string(r.error) + " at resolution " + std::to_string(res);
      }
    }
  };
  check("S(z^2)(0.5)", 64, 1e-10);
  check("L(1/(z-2))(0.5)", 64, 1e-10);
  for (const auto& r : rep.rows) {
    if (r.example.rfind("T(1)", 0) == 0 && r.order != 0.0 && r.order < 2.0 && rep.passed) {
      rep.passed = false;
      rep.failure = r.example + ": empirical order " + std::to_string(r.order) + " below 2";
    }
  }
  return rep;
}

// ------------------------------------------------------------- A_p estimates

std::vector<ApRow> run_ap_estimates(const std::vector<Weight>& weights, const std::vector<double>& ps,
                                    const DiscSampler& sampler) {
  std::vector<ApRow> rows;
  for (const auto& w : weights) {
    for (double p : ps) {
      ApRow row;
      row.weight = w.descriptor();
      row.alpha = w.alpha();
      row.p = p;
      row.estimate = estimate_Ap(w, p, sampler);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace psio
