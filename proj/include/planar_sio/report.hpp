#pragma once

// Artifact emission: CSV tables (17 significant digits), hand-written SVG
// plots and the run manifest. Every writer is deterministic byte-for-byte.

#include <iosfwd>
#include <string>
#include <vector>

#include "planar_sio/config.hpp"

namespace psio {

/// "%.17g", with "inf"/"nan" spelled out.
std::string csv_number(double x);

void write_identity_csv(const std::string& path, const std::vector<IdentityReport>& reports);
void write_ratio_csv(const std::string& path, const std::vector<RatioStudy>& studies);
void write_ratio_summary_csv(const std::string& path, const std::vector<RatioStudy>& studies);
void write_blowup_csv(const std::string& path, const BlowupFit& fit);
void write_blowup_fit_csv(const std::string& path, const BlowupFit& fit);
void write_convergence_csv(const std::string& path, const ConvergenceReport& report);
void write_ap_csv(const std::string& path, const std::vector<ApRow>& rows);
void write_ap_trace_csv(const std::string& path, const std::vector<ApRow>& rows);
void write_transform_csv(const std::string& path, const TransformField& field);

std::string blowup_svg(const BlowupFit& fit);
std::string convergence_svg(const ConvergenceReport& report);
std::string ratio_svg(const std::vector<RatioStudy>& studies);

struct StudyOutcome {
  std::string name;
  bool passed = true;
  std::string detail;
  std::vector<std::string> files;  // relative to the output directory
};

struct RunSummary {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<StudyOutcome> studies;
  bool passed = true;
};

/// Runs the named studies in order, writes their artifacts and manifest.json
/// under config.output_dir, and logs one line per study to `log`.
RunSummary run_studies(const RunConfig& config, const std::string& command,
                       const std::vector<std::string>& studies, std::ostream& log);

void write_manifest(const std::string& path, const RunSummary& summary);

}  // namespace psio
