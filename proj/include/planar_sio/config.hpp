#pragma once

// Run configuration: a strict JSON schema for the planar-sio driver.
//
//   {
//     "domain":     {"kind": "disc"} | {"kind": "star", "a": 0.1, "m": 3} | {"kind": "square"} | [ ... ],
//     "weight":     {"kind": "const"} | {"kind": "power", "alpha": -1, "z0": [0, 0]} | [ ... ],
//     "function":   {"family": "polynomial", "max_degree": 4} | {"family": "monomials", "count": 20},
//     "quadrature": {"N": 256, "M": 1024, "delta_frac": 0.02, "grading": 2},
//     "experiment": {"studies": [...], "seed": 1, "verify": {...}, "ratios": {...},
//                    "blowup": {...}, "converge": {...}, "ap": {...}},
//     "output":     {"dir": "out"}
//   }

#include <cstdint>
#include <string>
#include <vector>

#include "planar_sio/experiments.hpp"

namespace psio {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RatioCaseSpec {
  Operator op = Operator::H;
  int k = 0;
  double p = 2.0;
};

struct RunConfig {
  std::vector<DomainPtr> domains;
  std::vector<Weight> weights;
  std::vector<TestFunction> family;
  std::string family_label;
  QuadratureSpec quadrature;
  std::vector<std::string> studies;  // subset of verify, ratios, blowup, converge, ap
  std::uint64_t seed = 1;
  IdentitySuiteConfig verify;
  std::vector<RatioCaseSpec> ratio_cases;
  RatioStudyConfig ratios;
  BlowupConfig blowup;
  ConvergenceConfig converge;
  std::vector<double> ap_p{1.5, 2.0, 3.0};
  int ap_random_discs = 10000;
  std::string output_dir = "out";

  bool wants(const std::string& study) const;
  /// Ratio cases crossed with every configured weight.
  std::vector<RatioCase> expanded_ratio_cases() const;
};

/// Throws ConfigError naming the line (syntax) or the field path (schema).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

DomainPtr parse_domain_spec(const std::string& spec);      // disc | star:a,m | square
TestFunction parse_function_spec(const std::string& spec);  // monomial:p,q | bump:cx,cy,r | pole:re,im

}  // namespace psio
