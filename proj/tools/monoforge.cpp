#include <chrono>
#include <iostream>

#include <omp.h>

#include "cli_common.hpp"

#include "monoforge/errors.hpp"

using namespace monoforge::cli;

namespace {

void print_summary(const Report& rep, const Json& report) {
  std::size_t passed = 0;
  for (const auto& c : rep.checks()) {
    const bool ok = c["pass"].get<bool>();
    passed += ok;
    std::cerr << (ok ? "PASS " : "FAIL ") << c["id"].get<std::string>() << '\n';
  }
  std::cerr << report["command"].get<std::string>() << ": " << passed << '/' << rep.checks().size()
            << " checks passed\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monoforge: monotone lower-bound constructions, samplers and checkers"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  Context ctx;
  app.add_option("--seed", ctx.g.seed, "64-bit seed (required for randomized runs)");
  app.add_option("--trials", ctx.g.trials, "Monte Carlo trials / samples");
  app.add_option("--mode", ctx.g.mode, "exact | mc");
  app.add_option("--out", ctx.g.out, "write the JSON report here instead of stdout");
  app.add_option("--preset", ctx.g.preset, "experiment preset name");
  app.add_option("--threads", ctx.g.threads, "OpenMP threads (speed only)");
  app.add_flag("--timing", ctx.g.timing, "include wall time in the report");
  app.add_flag("--quiet", ctx.g.quiet, "no human summary on stderr");
  app.set_version_flag("--version", MONOFORGE_VERSION);

  register_poly(app, ctx);
  register_code(app, ctx);
  register_rank(app, ctx);
  register_approx(app, ctx);
  register_experiment(app, ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (!ctx.action) {
    if (!ctx.g.preset.empty()) {
      ctx.command = "experiment";
      ctx.action = [&ctx](Report& rep) { run_preset(ctx.g.preset, ctx, rep); };
    } else {
      std::cerr << app.help();
      return 2;
    }
  }

  try {
    if (ctx.g.threads < 0) throw UsageError("--threads must be positive");
    if (ctx.g.threads > 0) omp_set_num_threads(ctx.g.threads);
    ctx.exact_mode();  // validates --mode early

    Report rep(ctx.command);
    const auto start = std::chrono::steady_clock::now();
    ctx.action(rep);
    std::optional<double> wall;
    if (ctx.g.timing)
      wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const Json report = rep.to_json(ctx.g.seed, wall);
    const std::string text = report.dump(2) + "\n";
    if (ctx.g.out.empty())
      std::cout << text;
    else
      write_text(ctx.g.out, text);
    if (!ctx.g.quiet) print_summary(rep, report);
    return rep.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
