#include "cli/runner.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <thread>

int main(int argc, char** argv) {
  using namespace casimir::cli;

  CLI::App app{"Dispersion forces between atoms and dilute gas media"};
  app.set_version_flag("--version", kToolVersion);
  std::string mode;
  RunOptions opts;
  opts.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("mode", mode, "pair-potential | slab-force | sweep | validate")
      ->required()
      ->check(CLI::IsMember({"pair-potential", "slab-force", "sweep", "validate"}));
  app.add_option("--config", opts.config_path, "JSON configuration file")->required();
  app.add_option("--out", opts.out_dir, "output directory")->capture_default_str();
  app.add_option("--workers", opts.workers, "concurrent evaluations")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }
  opts.mode = parse_mode(mode);
  return run(opts, std::cout, std::cerr);
}
