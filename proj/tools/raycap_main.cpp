// raycap: envelope-fading information numerics.
//
//   raycap sweep  — power sweep over an SNR grid (CSV or JSON)
//   raycap quad   — print a quadrature rule's nodes and weights
//   raycap check  — run the reference-vs-closed-form validation report
//
// Exit codes: 0 success, 1 failed validation check, 2 usage error,
// 3 numerical convergence failure.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "raycap/errors.hpp"
#include "raycap/quadrature.hpp"
#include "raycap/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConvergence = 3;

// Writes to stdout unless a path was given.
class OutputTarget {
 public:
  bool open(const std::string& path) {
    if (path.empty()) {
      return true;
    }
    file_.open(path, std::ios::out | std::ios::trunc);
    return file_.good();
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct SweepCli {
  raycap::SweepOptions options;
  std::string format = "csv";
  std::string output_path;
  std::uint64_t seed = 42;  // accepted for interface symmetry; the sweep
                            // itself is deterministic and draws no samples
};

int run_sweep(const SweepCli& cli) {
  OutputTarget target;
  if (!target.open(cli.output_path)) {
    std::cerr << "raycap: cannot open output file '" << cli.output_path
              << "'\n";
    return kExitUsage;
  }
  std::ostream& out = target.stream();

  std::vector<double> grid;
  try {
    grid = raycap::sweep_grid(cli.options);
  } catch (const std::invalid_argument& error) {
    std::cerr << "raycap: " << error.what() << "\n";
    return kExitUsage;
  }

  const raycap::QuadratureRule outer =
      raycap::half_range_hermite_rule(cli.options.quad_order);
  const raycap::QuadratureRule inner =
      raycap::half_range_hermite_rule(cli.options.inner_order);

  const bool csv = cli.format == "csv";
  std::vector<raycap::SweepRow> rows;
  rows.reserve(grid.size());
  if (csv) {
    raycap::write_sweep_csv_header(out);
  }
  for (double omega_sq : grid) {
    try {
      raycap::SweepRow row =
          raycap::compute_sweep_row(omega_sq, cli.options, outer, inner);
      if (csv) {
        raycap::write_sweep_csv_row(out, row);
      } else {
        rows.push_back(std::move(row));
      }
    } catch (const raycap::convergence_error& error) {
      // Flush what finished, mark the failure, and report it in the exit
      // status: partial data stays usable.
      const std::string message = "convergence failure at omega_sq=" +
                                  std::to_string(omega_sq) + ": " +
                                  error.what();
      if (csv) {
        out << "# " << message << "\n";
      } else {
        raycap::write_sweep_json(out, rows, message);
      }
      out.flush();
      std::cerr << "raycap: " << message << "\n";
      return kExitConvergence;
    }
  }
  if (!csv) {
    raycap::write_sweep_json(out, rows, "");
  }
  out.flush();
  return kExitOk;
}

int run_quad(int order, const std::string& domain,
             const std::string& output_path) {
  OutputTarget target;
  if (!target.open(output_path)) {
    std::cerr << "raycap: cannot open output file '" << output_path << "'\n";
    return kExitUsage;
  }
  raycap::QuadratureRule rule;
  try {
    rule = domain == "half" ? raycap::half_range_hermite_rule(order)
                            : raycap::full_range_hermite_rule(order);
  } catch (const std::exception& error) {
    std::cerr << "raycap: " << error.what() << "\n";
    return kExitUsage;
  }
  std::ostream& out = target.stream();
  char buffer[96];
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    std::snprintf(buffer, sizeof(buffer), "%.15g,%.15g\n", rule.nodes[i],
                  rule.weights[i]);
    out << buffer;
  }
  out.flush();
  return kExitOk;
}

int run_check(const raycap::CheckOptions& options,
              const std::string& output_path) {
  OutputTarget target;
  if (!target.open(output_path)) {
    std::cerr << "raycap: cannot open output file '" << output_path << "'\n";
    return kExitUsage;
  }
  bool all_pass = false;
  const std::string report = raycap::run_check_report(options, &all_pass);
  target.stream() << report;
  target.stream().flush();
  return all_pass ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Mutual information of the non-coherent Rayleigh-fading envelope "
      "channel with a Gaussian input: closed forms, bounds, and reference "
      "integrators."};
  app.require_subcommand(1);

  // --- sweep ---
  SweepCli sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Evaluate the information quantities over a power grid");
  sweep_cmd->add_option("--snr-db-min", sweep.options.snr_db_min,
                        "Grid start in dB (default -10)");
  sweep_cmd->add_option("--snr-db-max", sweep.options.snr_db_max,
                        "Grid end in dB, inclusive (default 35)");
  sweep_cmd
      ->add_option("--snr-db-step", sweep.options.snr_db_step,
                   "Grid step in dB (default 0.5)")
      ->check(CLI::PositiveNumber);
  sweep_cmd
      ->add_option("--omega-sq", sweep.options.omega_sq_list,
                   "Explicit mean-power values; replaces the dB grid and is "
                   "the only way to get a zero-power row")
      ->delimiter(',');
  sweep_cmd
      ->add_option("--quad-order", sweep.options.quad_order,
                   "Mixture (outer) rule order (default 15)")
      ->check(CLI::Range(1, 15));
  sweep_cmd
      ->add_option("--inner-order", sweep.options.inner_order,
                   "Entropy (inner) rule order (default 15)")
      ->check(CLI::Range(1, 15));
  sweep_cmd->add_flag("--with-discrete", sweep.options.with_discrete,
                      "Also optimize the two-point discrete input per row "
                      "(fills cap_discrete2 and pct_lost_vs_cap)");
  sweep_cmd
      ->add_option("--format", sweep.format, "Output format (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--output", sweep.output_path,
                        "Write to a file instead of stdout");
  sweep_cmd->add_option("--seed", sweep.seed,
                        "Seed for sampling-based tools (unused by sweep)");
  sweep_cmd
      ->add_option("--tol", sweep.options.tol,
                   "Tolerance for the discrete-capacity search (default 1e-9)")
      ->check(CLI::PositiveNumber);

  // --- quad ---
  int quad_order = 15;
  std::string quad_domain = "half";
  std::string quad_output;
  CLI::App* quad_cmd = app.add_subcommand(
      "quad", "Print a rule's node,weight rows to 15 significant digits");
  quad_cmd->add_option("order", quad_order, "Rule order q")->required();
  quad_cmd->add_option("domain", quad_domain, "half (default) or full")
      ->check(CLI::IsMember({"half", "full"}));
  quad_cmd->add_option("--output", quad_output,
                       "Write to a file instead of stdout");

  // --- check ---
  raycap::CheckOptions check;
  std::string check_output;
  CLI::App* check_cmd = app.add_subcommand(
      "check", "Run the reference-vs-closed-form validation report (JSON)");
  check_cmd
      ->add_option("--tol", check.tol,
                   "Reference-integrator tolerance (default 1e-9)")
      ->check(CLI::PositiveNumber);
  check_cmd->add_option("--seed", check.seed,
                        "Monte-Carlo seed (default 42)");
  check_cmd
      ->add_option("--quad-order", check.quad_order,
                   "Mixture (outer) rule order (default 15)")
      ->check(CLI::Range(1, 15));
  check_cmd
      ->add_option("--inner-order", check.inner_order,
                   "Entropy (inner) rule order (default 15)")
      ->check(CLI::Range(1, 15));
  check_cmd->add_option("--output", check_output,
                        "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::CallForAllHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitUsage;
  }

  try {
    if (sweep_cmd->parsed()) {
      return run_sweep(sweep);
    }
    if (quad_cmd->parsed()) {
      return run_quad(quad_order, quad_domain, quad_output);
    }
    return run_check(check, check_output);
  } catch (const raycap::convergence_error& error) {
    std::cerr << "raycap: convergence failure: " << error.what() << "\n";
    return kExitConvergence;
  } catch (const raycap::evaluation_error& error) {
    std::cerr << "raycap: evaluation failure: " << error.what() << "\n";
    return kExitConvergence;
  } catch (const std::invalid_argument& error) {
    std::cerr << "raycap: " << error.what() << "\n";
    return kExitUsage;
  } catch (const raycap::domain_error& error) {
    std::cerr << "raycap: " << error.what() << "\n";
    return kExitUsage;
  }
}
