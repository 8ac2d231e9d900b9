#include <CLI11.hpp>
#include <exception>
#include <fmt/format.h>
#include <iostream>

#include "critcurve/config.hpp"
#include "critcurve/error.hpp"
#include "critcurve/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments for a weakly coupled system of damped wave equations"};
  std::string mode, config_path, out_dir;
  int jobs = 0;
  bool svg = false;
  app.add_option("mode", mode, "simulate | sweep | linear-decay | blowup-scan | ineq-check | rates")->required();
  app.add_option("--config", config_path, "critcurve-config v1 document")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (overrides [run] out)");
  app.add_option("--jobs", jobs, "sweep workers (overrides [run] jobs)")->check(CLI::PositiveNumber);
  app.add_flag("--svg", svg, "also write phase_diagram.svg for sweeps");
  CLI11_PARSE(app, argc, argv);

  try {
    const critcurve::Mode requested = critcurve::parse_mode(mode);
    critcurve::RunConfig config = critcurve::load_config(config_path);
    critcurve::require(config.mode == requested,
                       fmt::format("config declares mode {} but {} was requested", critcurve::to_string(config.mode),
                                   mode));
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (jobs > 0) config.jobs = jobs;
    if (svg) config.svg = true;
    return critcurve::run(config, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "critcurve: " << e.what() << '\n';
    return 2;
  }
}
