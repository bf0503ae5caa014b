#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"BB84 mismatched-measurement simulator and key-rate analyzer"};
  app.require_subcommand(1);
  app.fallthrough();

  mmbb84::cli::CommonOptions options;
  std::string format_name = "csv";
  app.add_option("--seed", options.seed, "Override the configured RNG seed");
  app.add_option("--out", options.out, "Write output to a file instead of stdout");
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string run_config;
  CLI::App* run = app.add_subcommand("run", "Run one protocol session from a JSON config");
  run->add_option("config", run_config, "Path to the run configuration JSON")->required();

  std::string bounds_channel;
  CLI::App* bounds =
      app.add_subcommand("bounds", "Analytic error rates and key-rate bounds for a channel");
  bounds->add_option("channel", bounds_channel, "Channel JSON (path or inline)")->required();

  std::string sweep_spec;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep to CSV");
  sweep->add_option("spec", sweep_spec, "Path to the sweep specification JSON")->required();

  mmbb84::cli::CssVerifyOptions css;
  CLI::App* css_verify =
      app.add_subcommand("css-verify", "Check the codeword mixture identities numerically");
  css_verify->add_option("--n", css.n, "Block length (qubits), at most 6")->required();
  css_verify->add_option("--dim-c1", css.dim_c1, "Dimension of the outer code")->required();
  css_verify->add_option("--dim-c2", css.dim_c2, "Dimension of the inner code")->required();
  css_verify->add_option("--trials", css.trials, "Number of random nested code pairs");

  CLI::App* selftest =
      app.add_subcommand("selftest", "Property suites: trade-off, uncertainty, decoder");

  CLI11_PARSE(app, argc, argv);
  options.format =
      format_name == "json" ? mmbb84::cli::Format::Json : mmbb84::cli::Format::Csv;

  if (run->parsed()) {
    return mmbb84::cli::cmd_run(run_config, options, std::cerr);
  }
  if (bounds->parsed()) {
    return mmbb84::cli::cmd_bounds(bounds_channel, options, std::cerr);
  }
  if (sweep->parsed()) {
    return mmbb84::cli::cmd_sweep(sweep_spec, options, std::cerr);
  }
  if (css_verify->parsed()) {
    return mmbb84::cli::cmd_css_verify(css, options, std::cerr);
  }
  if (selftest->parsed()) {
    return mmbb84::cli::cmd_selftest(options, std::cerr);
  }
  return 2;
}
