#include "planar_sio/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace psio {

using nlohmann::json;

namespace {

const std::vector<std::string> kStudies{"verify", "ratios", "blowup", "converge", "ap"};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

std::string show(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  require_object(j, path);
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
      fail(join(path, key), "unknown key");
    }
  }
}

double get_number(const json& j, const std::string& path, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) fail(join(path, key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(join(path, key), "expected a finite number");
  return x;
}

int get_int(const json& j, const std::string& path, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
  return v.get<int>();
}

std::string get_string(const json& j, const std::string& path, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_string()) fail(join(path, key), "expected a string");
  return v.get<std::string>();
}

double positive(const json& j, const std::string& path, const char* key, double fallback) {
  const double x = get_number(j, path, key, fallback);
  if (!(x > 0.0)) fail(join(path, key), "must be positive, got " + show(x));
  return x;
}

int positive_int(const json& j, const std::string& path, const char* key, int fallback) {
  const int x = get_int(j, path, key, fallback);
  if (x <= 0) fail(join(path, key), "must be a positive integer, got " + std::to_string(x));
  return x;
}

double exponent_p(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double p = v.get<double>();
  if (!(p > 1.0) || !std::isfinite(p)) fail(path, "exponent p must satisfy 1 < p < inf");
  return p;
}

std::vector<int> int_list(const json& j, const std::string& path, const char* key, std::vector<int> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  const std::string p = join(path, key);
  if (!v.is_array() || v.empty()) fail(p, "expected a non-empty array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer() || v[i].get<int>() <= 0) fail(at(p, i), "expected a positive integer");
    out.push_back(v[i].get<int>());
  }
  return out;
}

// Accept an object or an array of objects.
std::vector<std::pair<const json*, std::string>> one_or_many(const json& j, const std::string& path) {
  std::vector<std::pair<const json*, std::string>> out;
  if (j.is_array()) {
    if (j.empty()) fail(path, "expected at least one entry");
    for (std::size_t i = 0; i < j.size(); ++i) out.emplace_back(&j[i], at(path, i));
  } else {
    out.emplace_back(&j, path);
  }
  return out;
}

DomainPtr domain_from(const json& j, const std::string& path) {
  allow_keys(j, path, {"kind", "a", "m"});
  const std::string kind = get_string(j, path, "kind", "");
  if (kind == "disc") {
    if (j.contains("a") || j.contains("m")) fail(path, "a and m apply only to kind \"star\"");
    return make_unit_disc();
  }
  if (kind == "square") {
    if (j.contains("a") || j.contains("m")) fail(path, "a and m apply only to kind \"star\"");
    return make_unit_square();
  }
  if (kind == "star") {
    const double a = get_number(j, path, "a", 0.1);
    const int m = get_int(j, path, "m", 3);
    try {
      return make_smooth_star(a, m);
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  fail(join(path, "kind"), "expected \"disc\", \"star\" or \"square\"");
}

Weight weight_from(const json& j, const std::string& path) {
  allow_keys(j, path, {"kind", "alpha", "z0", "scale"});
  const std::string kind = get_string(j, path, "kind", "");
  const double scale = positive(j, path, "scale", 1.0);
  if (kind == "const") {
    if (j.contains("alpha") || j.contains("z0")) fail(path, "alpha and z0 apply only to kind \"power\"");
    return make_constant_weight(scale);
  }
  if (kind == "power") {
    if (!j.contains("alpha")) fail(join(path, "alpha"), "required for a power weight");
    const double alpha = get_number(j, path, "alpha", 0.0);
    cplx z0 = 0.0;
    if (j.contains("z0")) {
      const auto& z = j.at("z0");
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        fail(join(path, "z0"), "expected [re, im]");
      }
      z0 = cplx(z[0].get<double>(), z[1].get<double>());
    }
    return Weight(alpha, z0, scale);
  }
  fail(join(path, "kind"), "expected \"const\" or \"power\"");
}

void parse_tolerances(const json& j, const std::string& path, IdentityTolerances& t) {
  allow_keys(j, path, {"cauchy_green", "dz_s", "recursion", "ls", "dbar_t", "tangential"});
  t.cauchy_green = positive(j, path, "cauchy_green", t.cauchy_green);
  t.dz_s = positive(j, path, "dz_s", t.dz_s);
  t.recursion = positive(j, path, "recursion", t.recursion);
  t.ls = positive(j, path, "ls", t.ls);
  t.dbar_t = positive(j, path, "dbar_t", t.dbar_t);
  t.tangential = positive(j, path, "tangential", t.tangential);
}

void parse_experiment(const json& j, const std::string& path, RunConfig& c) {
  allow_keys(j, path, {"studies", "seed", "verify", "ratios", "blowup", "converge", "ap"});
  if (j.contains("studies")) {
    const auto& s = j.at("studies");
    const std::string sp = join(path, "studies");
    if (!s.is_array()) fail(sp, "expected an array of study names");
    c.studies.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s[i].is_string()) fail(at(sp, i), "expected a string");
      const std::string name = s[i].get<std::string>();
      if (std::find(kStudies.begin(), kStudies.end(), name) == kStudies.end()) {
        fail(at(sp, i), "unknown study \"" + name + "\"");
      }
      if (!c.wants(name)) c.studies.push_back(name);
    }
  }
  if (j.contains("seed")) {
    const auto& s = j.at("seed");
    if (!s.is_number_unsigned()) fail(join(path, "seed"), "expected a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (j.contains("verify")) {
    const std::string p = join(path, "verify");
    const auto& v = j.at("verify");
    allow_keys(v, p, {"targets", "fd_step", "tangential_functions", "tangential_targets", "tolerances"});
    c.verify.targets = positive_int(v, p, "targets", c.verify.targets);
    c.verify.fd_step = positive(v, p, "fd_step", c.verify.fd_step);
    c.verify.tangential_functions = positive_int(v, p, "tangential_functions", c.verify.tangential_functions);
    c.verify.tangential_targets = positive_int(v, p, "tangential_targets", c.verify.tangential_targets);
    if (v.contains("tolerances")) parse_tolerances(v.at("tolerances"), join(p, "tolerances"), c.verify.tol);
  }
  if (j.contains("ratios")) {
    const std::string p = join(path, "ratios");
    const auto& r = j.at("ratios");
    allow_keys(r, p, {"cases", "stability_unweighted", "stability_weighted"});
    c.ratios.stability_unweighted = positive(r, p, "stability_unweighted", c.ratios.stability_unweighted);
    c.ratios.stability_weighted = positive(r, p, "stability_weighted", c.ratios.stability_weighted);
    if (r.contains("cases")) {
      const std::string cp = join(p, "cases");
      const auto& cases = r.at("cases");
      if (!cases.is_array() || cases.empty()) fail(cp, "expected a non-empty array");
      c.ratio_cases.clear();
      for (std::size_t i = 0; i < cases.size(); ++i) {
        const std::string ip = at(cp, i);
        const auto& e = cases[i];
        allow_keys(e, ip, {"op", "k", "p"});
        RatioCaseSpec rc;
        try {
          rc.op = operator_from_string(get_string(e, ip, "op", "H"));
        } catch (const PreconditionError&) {
          fail(join(ip, "op"), "expected one of H, T, S, Stilde");
        }
        rc.k = get_int(e, ip, "k", rc.op == Operator::T || rc.op == Operator::H ? 0 : 1);
        rc.p = e.contains("p") ? exponent_p(e.at("p"), join(ip, "p")) : 2.0;
        if (rc.op == Operator::L) fail(join(ip, "op"), "L has no norm pairing");
        if (rc.k < 0) fail(join(ip, "k"), "must be non-negative");
        if (rc.op == Operator::S && rc.k < 1) fail(join(ip, "k"), "S is studied on W^{k,p} with k >= 1");
        if (rc.op == Operator::Stilde && rc.k != 1) fail(join(ip, "k"), "Stilde pairs W^{1,p} with L^p, k must be 1");
        c.ratio_cases.push_back(rc);
      }
    }
  }
  if (j.contains("blowup")) {
    const std::string p = join(path, "blowup");
    const auto& b = j.at("blowup");
    allow_keys(b, p, {"points", "d_min", "d_max", "M", "beta_lo", "beta_hi", "r2_min", "beta_shift_max",
                      "control_tol"});
    auto& o = c.blowup;
    o.points = positive_int(b, p, "points", o.points);
    o.d_min = positive(b, p, "d_min", o.d_min);
    o.d_max = positive(b, p, "d_max", o.d_max);
    o.M = positive_int(b, p, "M", o.M);
    o.beta_lo = positive(b, p, "beta_lo", o.beta_lo);
    o.beta_hi = positive(b, p, "beta_hi", o.beta_hi);
    o.r2_min = positive(b, p, "r2_min", o.r2_min);
    o.beta_shift_max = positive(b, p, "beta_shift_max", o.beta_shift_max);
    o.control_tol = positive(b, p, "control_tol", o.control_tol);
    if (o.points < 8) fail(join(p, "points"), "the fit needs at least 8 points");
    if (!(o.d_max > o.d_min) || std::log10(o.d_max / o.d_min) < 1.5) {
      fail(join(p, "d_min"), "distances must span at least 1.5 decades");
    }
    if (!(o.beta_hi > o.beta_lo)) fail(join(p, "beta_hi"), "must exceed beta_lo");
  }
  if (j.contains("converge")) {
    const std::string p = join(path, "converge");
    const auto& v = j.at("converge");
    allow_keys(v, p, {"M_values", "N_values", "noise_floor"});
    c.converge.M_values = int_list(v, p, "M_values", c.converge.M_values);
    c.converge.N_values = int_list(v, p, "N_values", c.converge.N_values);
    c.converge.noise_floor = positive(v, p, "noise_floor", c.converge.noise_floor);
  }
  if (j.contains("ap")) {
    const std::string p = join(path, "ap");
    const auto& a = j.at("ap");
    allow_keys(a, p, {"p", "random_discs"});
    c.ap_random_discs = positive_int(a, p, "random_discs", c.ap_random_discs);
    if (a.contains("p")) {
      const auto& ps = a.at("p");
      const std::string pp = join(p, "p");
      if (!ps.is_array() || ps.empty()) fail(pp, "expected a non-empty array of exponents");
      c.ap_p.clear();
      for (std::size_t i = 0; i < ps.size(); ++i) c.ap_p.push_back(exponent_p(ps[i], at(pp, i)));
    }
  }
}

int line_of(const std::string& text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

}  // namespace

bool RunConfig::wants(const std::string& study) const {
  return std::find(studies.begin(), studies.end(), study) != studies.end();
}

std::vector<RatioCase> RunConfig::expanded_ratio_cases() const {
  std::vector<RatioCase> out;
  for (const auto& w : weights) {
    for (const auto& c : ratio_cases) out.push_back({c.op, c.k, w, c.p});
  }
  return out;
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) +
                      ": JSON syntax error: " + e.what());
  }
  allow_keys(root, "config", {"domain", "weight", "function", "quadrature", "experiment", "output"});

  RunConfig c;
  c.studies = kStudies;
  c.ratio_cases = {{Operator::H, 0, 2.0}, {Operator::T, 0, 2.0}};

  if (root.contains("domain")) {
    for (const auto& [j, path] : one_or_many(root.at("domain"), "domain")) c.domains.push_back(domain_from(*j, path));
  } else {
    c.domains.push_back(make_unit_disc());
  }
  if (root.contains("weight")) {
    for (const auto& [j, path] : one_or_many(root.at("weight"), "weight")) c.weights.push_back(weight_from(*j, path));
  } else {
    c.weights.push_back(make_constant_weight());
  }

  const json fn = root.value("function", json::object());
  allow_keys(fn, "function", {"family", "max_degree", "count"});
  const std::string family = get_string(fn, "function", "family", "polynomial");
  if (family == "polynomial") {
    if (fn.contains("count")) fail("function.count", "applies only to family \"monomials\"");
    const int deg = get_int(fn, "function", "max_degree", 4);
    if (deg < 0 || deg > 10) fail("function.max_degree", "must lie in [0, 10]");
    c.family = family_polynomial(deg);
    c.family_label = "polynomial(max_degree=" + std::to_string(deg) + ")";
  } else if (family == "monomials") {
    if (fn.contains("max_degree")) fail("function.max_degree", "applies only to family \"polynomial\"");
    const int n = positive_int(fn, "function", "count", 20);
    if (n > 66) fail("function.count", "at most 66 monomials");
    c.family = ratio_family(n);
    c.family_label = "monomials(count=" + std::to_string(n) + ")";
  } else {
    fail("function.family", "expected \"polynomial\" or \"monomials\"");
  }

  const json q = root.value("quadrature", json::object());
  allow_keys(q, "quadrature", {"N", "M", "delta_frac", "grading"});
  c.quadrature.N = positive_int(q, "quadrature", "N", c.quadrature.N);
  c.quadrature.M = positive_int(q, "quadrature", "M", c.quadrature.M);
  c.quadrature.delta_frac = positive(q, "quadrature", "delta_frac", c.quadrature.delta_frac);
  c.quadrature.grading = positive(q, "quadrature", "grading", c.quadrature.grading);
  if (c.quadrature.N < 8) fail("quadrature.N", "must be at least 8");
  if (c.quadrature.M < 8) fail("quadrature.M", "must be at least 8");
  if (c.quadrature.delta_frac >= 0.5) fail("quadrature.delta_frac", "must be below 0.5");

  if (root.contains("experiment")) parse_experiment(root.at("experiment"), "experiment", c);

  if (root.contains("output")) {
    const auto& o = root.at("output");
    allow_keys(o, "output", {"dir"});
    c.output_dir = get_string(o, "output", "dir", c.output_dir);
    if (c.output_dir.empty()) fail("output.dir", "must not be empty");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

namespace {

std::vector<double> spec_numbers(const std::string& spec, const std::string& body, std::size_t count) {
  std::vector<double> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ConfigError(spec + ": malformed number \"" + item + "\"");
    out.push_back(v);
  }
  if (out.size() != count) {
    throw ConfigError(spec + ": expected " + std::to_string(count) + " comma-separated numbers");
  }
  return out;
}

std::pair<std::string, std::string> split_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, ""};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

}  // namespace

DomainPtr parse_domain_spec(const std::string& spec) {
  const auto [kind, body] = split_spec(spec);
  if (kind == "disc" && body.empty()) return make_unit_disc();
  if (kind == "square" && body.empty()) return make_unit_square();
  if (kind == "star") {
    const auto v = spec_numbers(spec, body, 2);
    if (v[1] != std::floor(v[1])) throw ConfigError(spec + ": m must be an integer");
    try {
      return make_smooth_star(v[0], static_cast<int>(v[1]));
    } catch (const Error& e) {
      throw ConfigError(spec + ": " + e.what());
    }
  }
  throw ConfigError(spec + ": expected disc, square or star:a,m");
}

TestFunction parse_function_spec(const std::string& spec) {
  const auto [kind, body] = split_spec(spec);
  if (kind == "monomial") {
    const auto v = spec_numbers(spec, body, 2);
    if (v[0] < 0 || v[1] < 0 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) {
      throw ConfigError(spec + ": exponents must be non-negative integers");
    }
    return monomial(static_cast<int>(v[0]), static_cast<int>(v[1]));
  }
  if (kind == "bump") {
    const auto v = spec_numbers(spec, body, 3);
    if (!(v[2] > 0.0)) throw ConfigError(spec + ": radius must be positive");
    return bump(cplx(v[0], v[1]), v[2]);
  }
  if (kind == "pole") {
    const auto v = spec_numbers(spec, body, 2);
    return simple_pole(cplx(v[0], v[1]));
  }
  throw ConfigError(spec + ": expected monomial:p,q, bump:cx,cy,r or pole:re,im");
}

}  // namespace psio
