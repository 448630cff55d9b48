#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "planar_sio/experiments.hpp"

using namespace psio;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool passed = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string fixed(double x, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// The suite is shared by criteria 2 and 3; it is computed on first use.
const std::vector<IdentityReport>& identity_reports() {
  static const std::vector<IdentityReport> reports = [] {
    IdentitySuiteConfig cfg;
    cfg.targets = 50;
    cfg.tangential_functions = 10;
    cfg.tangential_targets = 20;
    std::vector<IdentityReport> out;
    for (auto d : {make_unit_disc(), make_smooth_star(0.1, 3)}) {
      out.push_back(run_identity_suite(d, family_polynomial(4), {}, cfg));
    }
    return out;
  }();
  return reports;
}

Verdict criterion_1() {
  const auto disc = make_unit_disc();
  const TransformContext ctx(disc, {});
  const auto targets = sample_targets(*disc, 50, 0.2, 1);
  const auto one = monomial(0, 0);
  double et = 0.0, eh = 0.0;
  for (cplx z : targets) {
    et = std::max(et, std::abs(ctx.T(one, z) - std::conj(z)));
    eh = std::max(eh, std::abs(ctx.H(one, z)));
  }
  return {et < 1e-6 && eh < 1e-6, "max |T(1) - conj z| = " + sci(et) + ", max |H(1)| = " + sci(eh) +
                                      " over 50 targets, N = 256"};
}

Verdict criterion_2() {
  Verdict v{true, ""};
  std::map<std::string, double> worst;
  for (const auto& rep : identity_reports()) {
    if (!rep.fd_prechecks_passed) {
      v.passed = false;
      v.detail = rep.domain + ": fd prechecks failed; ";
    }
    for (const auto& row : rep.rows) {
      if (row.identity == "tangential") continue;
      worst[row.identity] = std::max(worst[row.identity], row.max_residual / row.tolerance);
      if (!row.passed && v.passed) {
        v.passed = false;
        v.detail = rep.domain + ": " + row.identity + " / " + row.function + " residual " + sci(row.max_residual) +
                   "; ";
      }
    }
  }
  v.detail += "worst residual/tolerance:";
  for (const auto& [id, r] : worst) v.detail += " " + id + " " + sci(r);
  v.detail += " (degree <= 4, disc and star)";
  return v;
}

Verdict criterion_3() {
  Verdict v{true, ""};
  double worst = 0.0;
  int rows = 0;
  for (const auto& rep : identity_reports()) {
    for (const auto& row : rep.rows) {
      if (row.identity != "tangential") continue;
      ++rows;
      worst = std::max(worst, row.max_residual);
      if (!row.passed) v.passed = false;
    }
  }
  v.passed = v.passed && rows == 20;
  v.detail = "max relative gap " + sci(worst) + " over " + std::to_string(rows) +
             " function-domain pairs x 20 targets (tolerance 1e-3)";
  return v;
}

Verdict criterion_4() {
  const auto st = run_ratio_study({Operator::H, 0, make_constant_weight(), 2.0}, make_unit_disc(),
                                  ratio_family(20), {});
  return {st.sup_N <= 1.02 && std::isfinite(st.sup_N),
          "sup ||Hf||_L2(D_0.02) / ||f||_L2(D) = " + fixed(st.sup_N, 6) + " over 20 functions (bound 1.02)"};
}

Verdict stability_verdict(const std::vector<RatioStudy>& studies, double bound) {
  Verdict v{true, ""};
  double worst = 0.0;
  for (const auto& s : studies) {
    bool finite = true;
    for (std::size_t j = 0; j < s.ratios_N.size(); ++j) {
      finite = finite && std::isfinite(s.ratios_N[j]) && std::isfinite(s.ratios_2N[j]);
    }
    worst = std::max(worst, s.stability);
    if (!finite || !(s.stability < bound) || s.labels.size() < 10) {
      if (v.passed) {
        v.detail = to_string(s.op) + " on " + s.domain + " with " + s.weight + " k=" + std::to_string(s.k_in) +
                   ": stability " + sci(s.stability) + "; ";
      }
      v.passed = false;
    }
  }
  v.detail += std::to_string(studies.size()) + " studies, worst |sup_N - sup_2N|/sup_N = " + sci(worst);
  return v;
}

std::vector<Weight> criterion_weights() {
  return {make_power_weight(-1.0, 0.0), make_constant_weight(), make_power_weight(1.0, 0.0)};
}

Verdict criterion_5() {
  std::vector<RatioCase> cases;
  for (const auto& w : criterion_weights()) {
    for (int k : {0, 1}) {
      cases.push_back({Operator::H, k, w, 2.0});
      cases.push_back({Operator::T, k, w, 2.0});
    }
  }
  return stability_verdict(run_ratio_studies(make_unit_disc(), ratio_family(20), {}, cases), 0.10);
}

Verdict criterion_6() {
  std::vector<RatioCase> cases;
  for (const auto& w : criterion_weights()) {
    cases.push_back({Operator::S, 1, w, 2.0});
    cases.push_back({Operator::Stilde, 1, w, 2.0});
  }
  std::vector<RatioStudy> all;
  for (auto d : {make_unit_disc(), make_smooth_star(0.1, 3)}) {
    auto st = run_ratio_studies(d, ratio_family(20), {}, cases);
    all.insert(all.end(), st.begin(), st.end());
  }
  return stability_verdict(all, 0.10);
}

Verdict criterion_7() {
  const auto fit = run_corner_blowup();
  const bool ok = fit.beta >= 0.8 && fit.beta <= 1.2 && fit.r_squared > 0.98 && fit.control_max < 1e-8;
  return {ok, "beta = " + fixed(fit.beta) + ", R^2 = " + fixed(fit.r_squared, 5) + ", disc control max " +
                  sci(fit.control_max) + " (M = " + std::to_string(fit.control_M) + ")"};
}

Verdict criterion_8() {
  const auto disc = make_unit_disc();
  const DiscSampler sampler = default_sampler(*disc, 2000, 1);
  bool const_ok = true;
  for (double p : {1.25, 1.5, 2.0, 3.0, 4.0}) {
    const auto e = estimate_Ap(make_constant_weight(), p, sampler);
    const_ok = const_ok && e.value == 1.0 && !e.divergent;
    const auto scaled = estimate_Ap(make_constant_weight(3.7), p, sampler);
    const_ok = const_ok && scaled.value == 1.0;
  }
  const auto mod = estimate_Ap(make_power_weight(1.0, 0.0), 2.0, sampler);
  double gap = mod.singular_discs.empty() ? INFINITY : 0.0;
  for (const auto& d : mod.singular_discs) gap = std::max(gap, std::abs(d.value - 4.0 / 3.0));
  const auto bad = estimate_Ap(make_power_weight(-3.0, 0.0), 2.0, sampler);
  const bool ok = const_ok && gap < 1e-3 && bad.divergent;
  return {ok, std::string("mu = 1 gives exactly 1: ") + (const_ok ? "yes" : "no") +
                  "; |z| singular-disc products within " + sci(gap) + " of 4/3; |z|^-3 at p = 2 " +
                  (bad.divergent ? "flagged divergent" : "NOT flagged")};
}

Verdict criterion_9() {
  const auto disc = make_unit_disc();
  QuadratureSpec spec;
  const auto rule = boundary_rule(disc->boundary(), 64, 1);
  const TargetKit kit(*disc, rule, spec, 0.5, false);
  const double es = std::abs(kit.S(BoundaryTrace::of(monomial(2, 0)).sample(rule)) - 0.25);
  const double el = std::abs(kit.L(BoundaryTrace::of(simple_pole(2.0)).sample(rule)) - 1.0 / 6.0);
  return {es < 1e-10 && el < 1e-10, "M = 64: |S(z^2)(0.5) - 0.25| = " + sci(es) + ", |L(1/(z-2))(0.5) - 1/6| = " +
                                        sci(el)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict criterion_10() {
  const fs::path base = fs::path(PSIO_ACCEPTANCE_WORKDIR) / "determinism";
  fs::remove_all(base);
  std::vector<fs::path> runs{base / "run_a", base / "run_b"};
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const std::string cmd = std::string("\"") + PSIO_CLI + "\" all --config \"" + PSIO_VERIFY_CONFIG +
                            "\" --seed 7 --out \"" + runs[r].string() + "\" --threads " + (r == 0 ? "1" : "2") +
                            " > \"" + (base / ("log_" + std::to_string(r) + ".txt")).string() + "\" 2>&1";
    fs::create_directories(base);
    const int rc = std::system(cmd.c_str());
    if (rc != 0) return {false, "run " + std::to_string(r + 1) + " exited with status " + std::to_string(rc)};
  }
  std::set<std::string> names;
  for (const auto& run : runs) {
    for (const auto& e : fs::directory_iterator(run)) names.insert(e.path().filename().string());
  }
  int compared = 0;
  for (const auto& n : names) {
    const auto ext = fs::path(n).extension();
    if (ext != ".csv" && ext != ".svg") continue;
    if (!fs::exists(runs[0] / n) || !fs::exists(runs[1] / n)) return {false, n + " missing from one run"};
    if (slurp(runs[0] / n) != slurp(runs[1] / n)) return {false, n + " differs between runs"};
    ++compared;
  }
  return {compared > 0, std::to_string(compared) + " CSV/SVG files byte-identical across two runs (1 and 2 threads)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"disc closed forms T(1) = conj z, H(1) = 0", criterion_1},
      {"identity suite on disc and star", criterion_2},
      {"tangential derivative of Stilde", criterion_3},
      {"L2 contraction of H", criterion_4},
      {"weighted H and T ratio stability", criterion_5},
      {"S and Stilde ratio stability, disc and star", criterion_6},
      {"square corner blow-up of dH(1)", criterion_7},
      {"A_p estimator checks", criterion_8},
      {"spectral boundary quadrature at M = 64", criterion_9},
      {"CLI determinism", criterion_10},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  set_thread_count(resolve_thread_count(0));

  int failures = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const int id = static_cast<int>(c) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[c].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!v.passed) ++failures;
    std::cout << "criterion " << id << ": " << (v.passed ? "PASS" : "FAIL") << " | " << criteria[c].first << " | "
              << v.detail << " | " << fixed(secs, 1) << " s" << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
