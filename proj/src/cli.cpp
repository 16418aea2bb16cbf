#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "svag/data_io.hpp"
#include "svag/errors.hpp"
#include "svag/harness.hpp"
#include "svag/theory.hpp"

namespace svag {

namespace {

double parse_number(const std::string& token) {
  try {
    std::size_t consumed = 0;
    const double value = std::stod(token, &consumed);
    if (consumed != token.size()) throw ConfigError("malformed number '" + token + "'");
    return value;
  } catch (const std::logic_error&) {
    throw ConfigError("malformed number '" + token + "'");
  }
}

// Grid spec: either "a,b,c" (explicit values) or "lo:hi:count[:log]".
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> values;
  if (spec.find(',') != std::string::npos) {
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ',')) values.push_back(parse_number(tok));
    return values;
  }
  std::vector<std::string> parts;
  std::istringstream in(spec);
  std::string tok;
  while (std::getline(in, tok, ':')) parts.push_back(tok);
  if (parts.size() < 3 || parts.size() > 4)
    throw ConfigError("grid spec must be 'lo:hi:count[:log]' or a comma list");
  const double lo = parse_number(parts[0]);
  const double hi = parse_number(parts[1]);
  const long count = static_cast<long>(parse_number(parts[2]));
  const bool log_scale = parts.size() == 4 && parts[3] == "log";
  if (parts.size() == 4 && !log_scale) throw ConfigError("grid spec suffix must be 'log'");
  if (count < 1) throw ConfigError("grid count must be at least 1");
  if (log_scale && (lo <= 0.0 || hi <= 0.0))
    throw ConfigError("log grid requires positive endpoints");
  if (count == 1) return {lo};
  for (long k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(count - 1);
    values.push_back(log_scale ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                               : lo + t * (hi - lo));
  }
  return values;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open output '" + path + "'");
  return out;
}

void run_bound(const std::string& regime, std::size_t n, double theta, double L, bool certify,
               std::optional<double> lambda_opt, std::optional<double> xi_opt) {
  const StepSizeBound bound =
      regime == "coco" ? bound_cocoercive(n, theta, L) : bound_smooth(n, theta, L);
  std::cout << format_number(bound.value) << '\n';
  if (!certify) return;

  const double lambda = lambda_opt ? *lambda_opt : 0.9 * bound.value;
  const CertificateMatrices cert = build_certificate(n, theta, lambda, L);
  PositivityCheck check;
  double xi = 0.0;
  if (regime == "coco") {
    check = check_positivity_cocoercive(cert);
  } else {
    xi = xi_opt ? *xi_opt : feasible_xi(n, theta, lambda, L).value_or(0.0);
    check = check_positivity_smooth(cert, xi);
  }
  std::cout << "certificate: lambda=" << format_number(lambda);
  if (regime == "smooth") std::cout << " xi=" << format_number(xi);
  std::cout << " min_eig=" << format_number(check.min_eig)
            << " positive=" << (check.positive ? "yes" : "no")
            << " h_min_eig=" << format_number(check.h_min_eig) << '\n';
}

void run_parse_check(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  const auto records = parse_libsvm(in);
  std::int32_t dim = 0;
  for (const auto& record : records)
    if (!record.entries.empty()) dim = std::max(dim, record.entries.back().first);
  std::cout << "ok: records=" << records.size() << " dim=" << dim << '\n';
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Finite-sum variance-reduced solvers (SVAG/ASVAG) with step-size certificates"};
  app.require_subcommand(1);

  // bound
  auto* bound_cmd =
      app.add_subcommand("bound", "Print the step-size bound; optionally certify it");
  std::string regime;
  std::size_t bound_n = 0;
  double bound_theta = 0.0, bound_L = 1.0;
  double bound_lambda = 0.0, bound_xi = 0.0;
  bool certify = false;
  bound_cmd->add_option("--regime", regime, "coco (root finding) or smooth (minimization)")
      ->required()
      ->check(CLI::IsMember({"coco", "smooth"}));
  bound_cmd->add_option("--n", bound_n, "number of components")->required();
  bound_cmd->add_option("--theta", bound_theta, "innovation weight")->required();
  bound_cmd->add_option("--L", bound_L, "smoothness constant")->required();
  bound_cmd->add_flag("--certify", certify,
                      "also run the matrix positivity certificate at --lambda");
  auto* lambda_opt = bound_cmd->add_option(
      "--lambda", bound_lambda, "step size for the certificate (default 0.9 * bound)");
  auto* xi_opt = bound_cmd->add_option(
      "--xi", bound_xi, "xi for the smooth certificate (default: half the available slack)");
  bound_cmd->callback([&] {
    run_bound(regime, bound_n, bound_theta, bound_L, certify,
              lambda_opt->count() ? std::optional<double>(bound_lambda) : std::nullopt,
              xi_opt->count() ? std::optional<double>(bound_xi) : std::nullopt);
  });

  // run
  auto* run_cmd = app.add_subcommand("run", "Run a seeded experiment and write the trace CSV");
  std::string config_path, run_output;
  run_cmd->add_option("--config", config_path, "JSON experiment config")->required();
  run_cmd->add_option("--output", run_output, "output CSV path (default: stdout)");
  run_cmd->callback([&] {
    const ExperimentResult result = run_experiment(load_experiment_config(config_path));
    if (run_output.empty()) {
      write_experiment_csv(result, std::cout);
    } else {
      auto out = open_output(run_output);
      write_experiment_csv(result, out);
    }
  });

  // sweep
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Rotation (lambda, theta) sweep: relative distance after 100 n iterations");
  std::size_t sweep_n = 100;
  double sweep_tau = 179.0;
  std::string theta_spec = "-0.5:2:26";
  std::string lambda_spec = "1e-4:1:25:log";
  std::uint64_t sweep_seed = 0;
  std::string sweep_output;
  sweep_cmd->add_option("--n", sweep_n, "number of components");
  sweep_cmd->add_option("--tau", sweep_tau, "rotation angle in degrees (180 is degenerate)");
  sweep_cmd->add_option("--theta-frac", theta_spec,
                        "theta/n grid, 'lo:hi:count[:log]' or comma list");
  sweep_cmd->add_option("--lambda-l", lambda_spec,
                        "lambda*L grid, 'lo:hi:count[:log]' or comma list");
  sweep_cmd->add_option("--seed", sweep_seed, "stream seed");
  sweep_cmd->add_option("--output", sweep_output, "output CSV path (default: stdout)");
  sweep_cmd->callback([&] {
    std::vector<double> theta_grid = parse_grid(theta_spec);
    for (double& t : theta_grid) t *= static_cast<double>(sweep_n);
    const SweepResult result =
        rotation_sweep(sweep_n, sweep_tau, parse_grid(lambda_spec), theta_grid, sweep_seed);
    if (sweep_output.empty()) {
      write_sweep_csv(result, std::cout);
    } else {
      auto out = open_output(sweep_output);
      write_sweep_csv(result, out);
    }
  });

  // parse-check
  auto* parse_cmd = app.add_subcommand("parse-check", "Validate a LibSVM file");
  std::string parse_path;
  parse_cmd->add_option("file", parse_path, "LibSVM text file")->required();
  parse_cmd->callback([&] { run_parse_check(parse_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[usage]: " << e.what() << '\n';
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error[config]: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error[data]: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "error[numeric]: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace svag
