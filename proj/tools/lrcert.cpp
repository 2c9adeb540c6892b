#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lrcert/config.hpp"
#include "lrcert/errors.hpp"
#include "lrcert/runner.hpp"

namespace {

void print_error(const std::string& kind, const std::string& message, const std::string& command) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  j["command"] = command;
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify entanglement-growth bounds after local quenches"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<double> mu;
  std::optional<int> workers;
  for (const auto& name : lrcert::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "YAML run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sub->add_option("--mu", mu, "single decay rate mu (overrides decay.mu)");
    sub->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lrcert::kExitError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  lrcert::RunConfig config;
  try {
    config = lrcert::load_config(config_path, lrcert::dimension_cap_from_env());
  } catch (const lrcert::Error& e) {
    print_error(e.kind(), e.what(), command);
    return lrcert::kExitError;
  }

  lrcert::RunOptions options;
  options.out_dir = out_dir;
  options.mu = mu;
  options.workers = workers;
  const auto result = lrcert::run(config, command, options);
  if (result.exit_code == lrcert::kExitError) {
    std::cerr << result.error_json << '\n';
    return result.exit_code;
  }
  std::cout << result.stdout_text;
  for (const auto& path : result.artifacts) std::cerr << "wrote " << path << '\n';
  return result.exit_code;
}
