#include "planar_sio/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace psio {

namespace fs = std::filesystem;

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot write " + path);
  }
  CsvWriter& row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) out_ << ',';
      out_ << c;
      first = false;
    }
    out_ << '\n';
    return *this;
  }

 private:
  std::ofstream out_;
};

std::string num(double x) { return csv_number(x); }
std::string num(int x) { return std::to_string(x); }
std::string flag(bool b) { return b ? "1" : "0"; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

}  // namespace

void write_identity_csv(const std::string& path, const std::vector<IdentityReport>& reports) {
  CsvWriter w(path);
  w.row({"domain", "N", "M", "identity", "function", "max_residual", "mean_residual", "worst_re", "worst_im",
         "tolerance", "passed"});
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      w.row({csv_text(r.domain), num(r.N), num(r.M), row.identity, csv_text(row.function), num(row.max_residual),
             num(row.mean_residual), num(row.worst_target.real()), num(row.worst_target.imag()),
             num(row.tolerance), flag(row.passed)});
    }
  }
}

void write_ratio_csv(const std::string& path, const std::vector<RatioStudy>& studies) {
  CsvWriter w(path);
  w.row({"operator", "domain", "weight", "alpha", "p", "k_in", "k_out", "function", "numerator", "denominator",
         "ratio_N", "ratio_2N"});
  for (const auto& s : studies) {
    for (std::size_t j = 0; j < s.labels.size(); ++j) {
      w.row({to_string(s.op), csv_text(s.domain), csv_text(s.weight), num(s.alpha), num(s.p), num(s.k_in),
             num(s.k_out), csv_text(s.labels[j]), num(s.numerators_N[j]), num(s.denominators[j]),
             num(s.ratios_N[j]), num(s.ratios_2N[j])});
    }
  }
}

void write_ratio_summary_csv(const std::string& path, const std::vector<RatioStudy>& studies) {
  CsvWriter w(path);
  w.row({"operator", "domain", "weight", "alpha", "p", "k_in", "k_out", "N", "functions", "sup_N", "sup_2N",
         "stability", "threshold", "weight_in_Ap_range", "passed"});
  for (const auto& s : studies) {
    w.row({to_string(s.op), csv_text(s.domain), csv_text(s.weight), num(s.alpha), num(s.p), num(s.k_in),
           num(s.k_out), num(s.N), num(static_cast<int>(s.labels.size())), num(s.sup_N), num(s.sup_2N),
           num(s.stability), num(s.threshold), flag(s.weight_in_Ap_range), flag(s.passed)});
  }
}

void write_blowup_csv(const std::string& path, const BlowupFit& fit) {
  CsvWriter w(path);
  w.row({"distance", "abs_dH1_square", "abs_dH1_square_2M", "abs_dH1_disc_control"});
  for (std::size_t i = 0; i < fit.distances.size(); ++i) {
    w.row({num(fit.distances[i]), num(fit.values[i]), num(fit.values_2M[i]), num(fit.control_values[i])});
  }
}

void write_blowup_fit_csv(const std::string& path, const BlowupFit& fit) {
  CsvWriter w(path);
  w.row({"vertex_re", "vertex_im", "points", "beta", "intercept", "r_squared", "beta_2M", "beta_shift",
         "conclusive", "control_M", "control_max", "control_passed", "passed"});
  w.row({num(fit.vertex.real()), num(fit.vertex.imag()), num(static_cast<int>(fit.distances.size())),
         num(fit.beta), num(fit.intercept), num(fit.r_squared), num(fit.beta_2M), num(fit.beta_shift),
         flag(fit.conclusive), num(fit.control_M), num(fit.control_max), flag(fit.control_passed),
         flag(fit.passed)});
}

void write_convergence_csv(const std::string& path, const ConvergenceReport& report) {
  CsvWriter w(path);
  w.row({"example", "knob", "resolution", "value_re", "value_im", "exact_re", "exact_im", "error", "order",
         "flagged"});
  for (const auto& r : report.rows) {
    w.row({csv_text(r.example), r.knob, num(r.resolution), num(r.value.real()), num(r.value.imag()),
           num(r.exact.real()), num(r.exact.imag()), num(r.error), num(r.order), flag(r.flagged)});
  }
}

void write_ap_csv(const std::string& path, const std::vector<ApRow>& rows) {
  CsvWriter w(path);
  w.row({"weight", "alpha", "p", "discs_sampled", "value", "divergent", "unconverged_discs",
         "singular_disc_max"});
  for (const auto& r : rows) {
    double sing = 0.0;
    for (const auto& d : r.estimate.singular_discs) sing = std::max(sing, d.value);
    w.row({csv_text(r.weight), num(r.alpha), num(r.p), num(r.estimate.discs_sampled), num(r.estimate.value),
           flag(r.estimate.divergent), num(r.estimate.unconverged_discs), num(sing)});
  }
}

void write_ap_trace_csv(const std::string& path, const std::vector<ApRow>& rows) {
  CsvWriter w(path);
  w.row({"weight", "p", "discs", "running_sup"});
  for (const auto& r : rows) {
    for (const auto& [n, v] : r.estimate.refinement_trace) w.row({csv_text(r.weight), num(r.p), num(n), num(v)});
  }
}

void write_transform_csv(const std::string& path, const TransformField& field) {
  CsvWriter w(path);
  w.row({"z_re", "z_im", "value_re", "value_im"});
  for (std::size_t i = 0; i < field.targets.size(); ++i) {
    w.row({num(field.targets[i].real()), num(field.targets[i].imag()), num(field.values[i].real()),
           num(field.values[i].imag())});
  }
}

// -------------------------------------------------------------------- SVG

namespace {

std::string fix(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string tick_label(double v, bool log) {
  char buf[32];
  if (log) {
    std::snprintf(buf, sizeof buf, "1e%d", static_cast<int>(std::lround(v)));
  } else {
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  }
  return buf;
}

std::vector<double> ticks(double lo, double hi, bool log) {
  std::vector<double> out;
  if (log) {
    const int a = static_cast<int>(std::ceil(lo - 1e-9));
    const int b = static_cast<int>(std::floor(hi + 1e-9));
    const int step = std::max(1, (b - a) / 8 + 1);
    for (int e = a; e <= b; e += step) out.push_back(e);
    if (!out.empty()) return out;
  }
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) out.push_back(t);
  return out;
}

class SvgPlot {
 public:
  SvgPlot(std::string title, std::string xlabel, std::string ylabel, bool logx, bool logy)
      : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)), logx_(logx), logy_(logy) {}

  void add(std::string name, const std::vector<double>& x, const std::vector<double>& y, bool line = true) {
    Series s{std::move(name), {}, {}, line};
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
      if (!std::isfinite(x[i]) || !std::isfinite(y[i])) continue;
      if ((logx_ && x[i] <= 0) || (logy_ && y[i] <= 0)) continue;
      s.x.push_back(logx_ ? std::log10(x[i]) : x[i]);
      s.y.push_back(logy_ ? std::log10(y[i]) : y[i]);
    }
    series_.push_back(std::move(s));
  }

  std::string render() const {
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : series_) {
      for (double v : s.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
      for (double v : s.y) y0 = std::min(y0, v), y1 = std::max(y1, v);
    }
    if (!(x0 <= x1)) x0 = 0, x1 = 1;
    if (!(y0 <= y1)) y0 = 0, y1 = 1;
    if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
    if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
    const double px = 0.04 * (x1 - x0), py = 0.06 * (y1 - y0);
    x0 -= px, x1 += px, y0 -= py, y1 += py;

    const double W = 760, H = 480, L = 80, R = 220, T = 40, B = 60;
    auto sx = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
    auto sy = [&](double v) { return H - B - (v - y0) / (y1 - y0) * (H - T - B); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << fix((W - R + L) / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
       << xml(title_) << "</text>\n";
    os << "<rect x=\"" << fix(L) << "\" y=\"" << fix(T) << "\" width=\"" << fix(W - L - R) << "\" height=\""
       << fix(H - T - B) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ticks(x0, x1, logx_)) {
      os << "<line x1=\"" << fix(sx(t)) << "\" y1=\"" << fix(H - B) << "\" x2=\"" << fix(sx(t)) << "\" y2=\""
         << fix(T) << "\" stroke=\"#dddddd\"/>\n";
      os << "<text x=\"" << fix(sx(t)) << "\" y=\"" << fix(H - B + 16) << "\" text-anchor=\"middle\">"
         << tick_label(t, logx_) << "</text>\n";
    }
    for (double t : ticks(y0, y1, logy_)) {
      os << "<line x1=\"" << fix(L) << "\" y1=\"" << fix(sy(t)) << "\" x2=\"" << fix(W - R) << "\" y2=\""
         << fix(sy(t)) << "\" stroke=\"#dddddd\"/>\n";
      os << "<text x=\"" << fix(L - 6) << "\" y=\"" << fix(sy(t) + 4) << "\" text-anchor=\"end\">"
         << tick_label(t, logy_) << "</text>\n";
    }
    os << "<text x=\"" << fix((W - R + L) / 2) << "\" y=\"" << fix(H - 16) << "\" text-anchor=\"middle\">"
       << xml(xlabel_) << "</text>\n";
    os << "<text x=\"18\" y=\"" << fix((H - B + T) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << fix((H - B + T) / 2) << ")\">" << xml(ylabel_) << "</text>\n";
    for (std::size_t k = 0; k < series_.size(); ++k) {
      const auto& s = series_[k];
      const char* color = kPalette[k % std::size(kPalette)];
      if (s.line && s.x.size() > 1) {
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) os << (i ? " " : "") << fix(sx(s.x[i])) << "," << fix(sy(s.y[i]));
        os << "\"/>\n";
      }
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        os << "<circle cx=\"" << fix(sx(s.x[i])) << "\" cy=\"" << fix(sy(s.y[i])) << "\" r=\"3\" fill=\"" << color
           << "\"/>\n";
      }
      const double ly = T + 14 + 18 * static_cast<double>(k);
      os << "<line x1=\"" << fix(W - R + 12) << "\" y1=\"" << fix(ly - 4) << "\" x2=\"" << fix(W - R + 32)
         << "\" y2=\"" << fix(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
      os << "<text x=\"" << fix(W - R + 38) << "\" y=\"" << fix(ly) << "\">" << xml(s.name) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
  }

 private:
  struct Series {
    std::string name;
    std::vector<double> x, y;
    bool line = true;
  };
  std::string title_, xlabel_, ylabel_;
  bool logx_, logy_;
  std::vector<Series> series_;
};

}  // namespace

std::string blowup_svg(const BlowupFit& fit) {
  char title[96];
  std::snprintf(title, sizeof title, "|dH(1)| near the square vertex, beta = %.3f, R2 = %.4f", fit.beta,
                fit.r_squared);
  SvgPlot plot(title, "distance to vertex", "|dH(1)|", true, true);
  plot.add("square, M", fit.distances, fit.values, false);
  plot.add("square, 2M", fit.distances, fit.values_2M, false);
  std::vector<double> line;
  for (double d : fit.distances) line.push_back(std::exp(fit.intercept) * std::pow(d, -fit.beta));
  plot.add("least-squares fit", fit.distances, line);
  return plot.render();
}

std::string convergence_svg(const ConvergenceReport& report) {
  SvgPlot plot("Convergence against closed forms", "resolution (M or N)", "absolute error", true, true);
  std::vector<std::string> names;
  for (const auto& r : report.rows) {
    if (std::find(names.begin(), names.end(), r.example) == names.end()) names.push_back(r.example);
  }
  for (const auto& name : names) {
    std::vector<double> x, y;
    for (const auto& r : report.rows) {
      if (r.example != name) continue;
      x.push_back(r.resolution);
      y.push_back(std::max(r.error, 1e-17));
    }
    plot.add(name, x, y);
  }
  return plot.render();
}

std::string ratio_svg(const std::vector<RatioStudy>& studies) {
  const double W = std::max(520.0, 120.0 + 56.0 * static_cast<double>(studies.size()));
  const double H = 440, L = 70, R = 30, T = 40, B = 150;
  double top = 0.0;
  for (const auto& s : studies) {
    if (std::isfinite(s.sup_N)) top = std::max(top, s.sup_N);
    if (std::isfinite(s.sup_2N)) top = std::max(top, s.sup_2N);
  }
  if (!(top > 0.0)) top = 1.0;
  top *= 1.1;
  auto sy = [&](double v) { return H - B - std::min(v, top) / top * (H - T - B); };
  const double slot = (W - L - R) / std::max<std::size_t>(1, studies.size());

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fix(W) << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fix(W / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
     << "Sup ratios at N (left) and 2N (right)</text>\n";
  for (double t : ticks(0.0, top, false)) {
    os << "<line x1=\"" << fix(L) << "\" y1=\"" << fix(sy(t)) << "\" x2=\"" << fix(W - R) << "\" y2=\""
       << fix(sy(t)) << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << fix(L - 6) << "\" y=\"" << fix(sy(t) + 4) << "\" text-anchor=\"end\">"
       << tick_label(t, false) << "</text>\n";
  }
  os << "<line x1=\"" << fix(L) << "\" y1=\"" << fix(H - B) << "\" x2=\"" << fix(W - R) << "\" y2=\"" << fix(H - B)
     << "\" stroke=\"black\"/>\n";
  for (std::size_t k = 0; k < studies.size(); ++k) {
    const auto& s = studies[k];
    const double x = L + slot * static_cast<double>(k) + 0.15 * slot;
    const double bw = 0.35 * slot;
    const double vals[2] = {s.sup_N, s.sup_2N};
    for (int b = 0; b < 2; ++b) {
      const double v = std::isfinite(vals[b]) ? vals[b] : top;
      os << "<rect x=\"" << fix(x + b * bw) << "\" y=\"" << fix(sy(v)) << "\" width=\"" << fix(bw) << "\" height=\""
         << fix(H - B - sy(v)) << "\" fill=\"" << (s.passed ? kPalette[b] : "#aaaaaa") << "\"/>\n";
    }
    char label[160];
    std::snprintf(label, sizeof label, "%s k=%d %s %s", to_string(s.op).c_str(), s.k_in, s.weight.c_str(),
                  s.domain.c_str());
    const double lx = x + bw, ly = H - B + 10;
    os << "<text x=\"" << fix(lx) << "\" y=\"" << fix(ly) << "\" text-anchor=\"end\" transform=\"rotate(-50 "
       << fix(lx) << " " << fix(ly) << ")\">" << xml(label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

// ----------------------------------------------------------------- driver

void write_manifest(const std::string& path, const RunSummary& summary) {
  nlohmann::ordered_json j;
  j["command"] = summary.command;
  j["seed"] = summary.seed;
  j["passed"] = summary.passed;
  j["studies"] = nlohmann::ordered_json::array();
  for (const auto& s : summary.studies) {
    nlohmann::ordered_json e;
    e["name"] = s.name;
    e["passed"] = s.passed;
    e["detail"] = s.detail;
    e["files"] = s.files;
    j["studies"].push_back(e);
  }
  write_text(path, j.dump(2) + "\n");
}

namespace {

StudyOutcome run_verify(const RunConfig& c, const fs::path& dir) {
  StudyOutcome o{"verify", true, "", {}};
  IdentitySuiteConfig cfg = c.verify;
  cfg.seed = c.seed;
  std::vector<IdentityReport> reports;
  for (const auto& d : c.domains) {
    reports.push_back(run_identity_suite(d, c.family, c.quadrature, cfg));
    const auto& r = reports.back();
    if (!r.passed) {
      o.passed = false;
      if (o.detail.empty()) o.detail = r.domain + ": " + r.first_failure;
    }
  }
  if (o.passed) {
    o.detail = std::to_string(reports.size()) + " domain(s), " + std::to_string(c.family.size()) +
               " functions, all identities within tolerance";
  }
  write_identity_csv((dir / "identity_suite.csv").string(), reports);
  o.files.push_back("identity_suite.csv");
  return o;
}

StudyOutcome run_ratios(const RunConfig& c, const fs::path& dir) {
  StudyOutcome o{"ratios", true, "", {}};
  std::vector<RatioStudy> all;
  const auto cases = c.expanded_ratio_cases();
  for (const auto& d : c.domains) {
    auto st = run_ratio_studies(d, c.family, c.quadrature, cases, c.ratios);
    all.insert(all.end(), st.begin(), st.end());
  }
  int failed = 0;
  double worst = 0.0;
  for (const auto& s : all) {
    worst = std::max(worst, s.stability);
    if (!s.passed) {
      ++failed;
      if (o.detail.empty()) {
        o.detail = to_string(s.op) + " on " + s.domain + " with " + s.weight + ": stability " +
                   csv_number(s.stability) + " >= " + csv_number(s.threshold);
      }
    }
  }
  o.passed = failed == 0;
  if (o.passed) o.detail = std::to_string(all.size()) + " studies, worst stability " + csv_number(worst);
  write_ratio_csv((dir / "ratios.csv").string(), all);
  write_ratio_summary_csv((dir / "ratio_summary.csv").string(), all);
  write_text((dir / "ratios.svg").string(), ratio_svg(all));
  o.files = {"ratios.csv", "ratio_summary.csv", "ratios.svg"};
  return o;
}

StudyOutcome run_blowup(const RunConfig& c, const fs::path& dir) {
  StudyOutcome o{"blowup", true, "", {}};
  const BlowupFit fit = run_corner_blowup(c.blowup);
  o.passed = fit.passed;
  char buf[200];
  std::snprintf(buf, sizeof buf, "beta %.4f, R2 %.5f, beta shift at 2M %.2e, disc control max %.2e%s", fit.beta,
                fit.r_squared, fit.beta_shift, fit.control_max, fit.conclusive ? "" : " (inconclusive fit)");
  o.detail = buf;
  write_blowup_csv((dir / "blowup.csv").string(), fit);
  write_blowup_fit_csv((dir / "blowup_fit.csv").string(), fit);
  write_text((dir / "blowup.svg").string(), blowup_svg(fit));
  o.files = {"blowup.csv", "blowup_fit.csv", "blowup.svg"};
  return o;
}

StudyOutcome run_converge(const RunConfig& c, const fs::path& dir) {
  StudyOutcome o{"converge", true, "", {}};
  const ConvergenceReport rep = run_convergence_report(c.converge);
  o.passed = rep.passed;
  o.detail = rep.passed ? std::to_string(rep.rows.size()) + " rows, no flags" : rep.failure;
  write_convergence_csv((dir / "convergence.csv").string(), rep);
  write_text((dir / "convergence.svg").string(), convergence_svg(rep));
  o.files = {"convergence.csv", "convergence.svg"};
  return o;
}

StudyOutcome run_ap(const RunConfig& c, const fs::path& dir) {
  StudyOutcome o{"ap", true, "", {}};
  const DiscSampler sampler = default_sampler(*c.domains.front(), c.ap_random_discs, c.seed);
  const auto rows = run_ap_estimates(c.weights, c.ap_p, sampler);
  for (const auto& r : rows) {
    const bool in_range = r.alpha > -2.0 && r.alpha < 2.0 * (r.p - 1.0);
    const bool ok = in_range ? std::isfinite(r.estimate.value) && !r.estimate.divergent : r.estimate.divergent;
    if (!ok && o.passed) {
      o.passed = false;
      o.detail = r.weight + " at p = " + csv_number(r.p) +
                 (in_range ? ": estimate diverged inside the A_p range" : ": divergence not flagged");
    }
  }
  if (o.passed) o.detail = std::to_string(rows.size()) + " estimates consistent with the A_p range";
  write_ap_csv((dir / "ap_estimates.csv").string(), rows);
  write_ap_trace_csv((dir / "ap_trace.csv").string(), rows);
  o.files = {"ap_estimates.csv", "ap_trace.csv"};
  return o;
}

}  // namespace

RunSummary run_studies(const RunConfig& config, const std::string& command,
                       const std::vector<std::string>& studies, std::ostream& log) {
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  RunSummary summary;
  summary.command = command;
  summary.seed = config.seed;
  for (const auto& name : studies) {
    StudyOutcome o;
    if (name == "verify") o = run_verify(config, dir);
    else if (name == "ratios") o = run_ratios(config, dir);
    else if (name == "blowup") o = run_blowup(config, dir);
    else if (name == "converge") o = run_converge(config, dir);
    else if (name == "ap") o = run_ap(config, dir);
    else throw ConfigError("unknown study \"" + name + "\"");
    log << (o.passed ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    summary.passed = summary.passed && o.passed;
    summary.studies.push_back(std::move(o));
  }
  write_manifest((dir / "manifest.json").string(), summary);
  return summary;
}

}  // namespace psio
