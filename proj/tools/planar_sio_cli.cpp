#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "planar_sio/report.hpp"

using namespace psio;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct CommonOptions {
  std::string config;
  std::string out;
  int threads = 0;
  long long seed = -1;
};

void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--config", o.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "Output directory (overrides output.dir)");
  sub->add_option("--threads", o.threads, "Worker threads (default: PLANAR_SIO_THREADS, then all cores)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "Seed for target and disc sampling (overrides experiment.seed)")
      ->check(CLI::NonNegativeNumber);
}

void apply_threads(int requested) {
  int n = resolve_thread_count(requested);
  if (requested <= 0 && std::getenv("PLANAR_SIO_THREADS") == nullptr) {
    n = std::max(1u, std::thread::hardware_concurrency());
  }
  set_thread_count(n);
}

int run_named(const std::string& command, const CommonOptions& o) {
  RunConfig config = load_config(o.config);
  if (!o.out.empty()) config.output_dir = o.out;
  if (o.seed >= 0) config.seed = static_cast<std::uint64_t>(o.seed);
  apply_threads(o.threads);
  std::vector<std::string> studies;
  if (command == "all") {
    studies = config.studies;
  } else {
    studies = {command};
  }
  const RunSummary summary = run_studies(config, command, studies, std::cout);
  std::cout << (summary.passed ? "all studies passed" : "tolerance failure") << "; manifest at "
            << (std::filesystem::path(config.output_dir) / "manifest.json").string() << std::endl;
  return summary.passed ? kExitPass : kExitFail;
}

struct TransformOptions {
  std::string op = "T";
  std::string domain = "disc";
  std::string function = "monomial:1,0";
  int grid = 21;
  int N = 256;
  int M = 1024;
  double delta_frac = 0.02;
  std::string out = "transform.csv";
  int threads = 0;
  bool check = false;
};

int run_transform(const TransformOptions& o) {
  apply_threads(o.threads);
  const Operator op = operator_from_string(o.op);
  const DomainPtr domain = parse_domain_spec(o.domain);
  const TestFunction f = parse_function_spec(o.function);
  TransformRequest req;
  req.op = op;
  req.f = f;
  req.spec.N = o.N;
  req.spec.M = o.M;
  req.spec.delta_frac = o.delta_frac;
  req.check_identity = o.check;
  const Box b = domain->bounding_box();
  const double standoff = o.delta_frac * domain->diameter();
  for (int j = 0; j < o.grid; ++j) {
    for (int i = 0; i < o.grid; ++i) {
      const double tx = o.grid == 1 ? 0.5 : static_cast<double>(i) / (o.grid - 1);
      const double ty = o.grid == 1 ? 0.5 : static_cast<double>(j) / (o.grid - 1);
      const cplx z(b.xmin + tx * (b.xmax - b.xmin), b.ymin + ty * (b.ymax - b.ymin));
      if (domain->contains(z) && domain->distance_to_boundary(z) >= standoff) req.targets.push_back(z);
    }
  }
  if (req.targets.empty()) throw ConfigError("--targets-grid: no grid point clears the standoff");
  const TransformField field = evaluate(req, domain);
  const std::filesystem::path out(o.out);
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  write_transform_csv(out.string(), field);
  std::cout << o.op << " of " << f.label() << " on " << domain->label() << " at " << field.targets.size()
            << " targets written to " << out.string() << std::endl;
  if (field.identity_checked) {
    std::cout << "identity residual " << csv_number(field.identity_residual) << std::endl;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planar-sio: singular integral operators on planar domains"};
  app.require_subcommand(1);

  CommonOptions common;
  const char* named[][2] = {{"verify", "Identity-residual suite"},
                            {"ratios", "Weighted operator-norm ratio studies"},
                            {"blowup", "Square-corner blow-up fit with disc control"},
                            {"converge", "Convergence tables against closed forms"},
                            {"all", "Every study listed in experiment.studies"}};
  for (const auto& [name, help] : named) add_common(app.add_subcommand(name, help), common);

  TransformOptions topt;
  auto* tr = app.add_subcommand("transform", "Evaluate one operator on a grid of interior targets");
  tr->add_option("--op", topt.op, "T, H, S, Stilde or L")->check(CLI::IsMember({"T", "H", "S", "Stilde", "L"}));
  tr->add_option("--domain", topt.domain, "disc | star:a,m | square");
  tr->add_option("--function", topt.function, "monomial:p,q | bump:cx,cy,r | pole:re,im");
  tr->add_option("--targets-grid", topt.grid, "Grid points per side over the bounding box")
      ->check(CLI::PositiveNumber);
  tr->add_option("--N", topt.N, "Angular stencil resolution")->check(CLI::Range(8, 1 << 16));
  tr->add_option("--M", topt.M, "Boundary nodes")->check(CLI::Range(8, 1 << 22));
  tr->add_option("--delta-frac", topt.delta_frac, "Target standoff as a fraction of the diameter")
      ->check(CLI::Range(1e-6, 0.5));
  tr->add_option("--out", topt.out, "Output CSV path");
  tr->add_option("--threads", topt.threads, "Worker threads")->check(CLI::PositiveNumber);
  tr->add_flag("--check-identity", topt.check, "Report the operator's identity residual");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    for (const auto& [name, help] : named) {
      if (app.got_subcommand(name)) return run_named(name, common);
    }
    return run_transform(topt);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << std::endl;
    return kExitConfig;
  } catch (const PreconditionError& e) {
    std::cerr << "configuration error: " << e.what() << std::endl;
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitFail;
  }
}
