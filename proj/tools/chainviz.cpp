// Command-line front end: render Monte Carlo plots of harmonic-chain states.
//
// Exit status: 0 success, 1 usage or parse error, 2 runtime/numeric error,
// 3 I/O error.

#include <cstdio>
#include <exception>
#include <string>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "chainviz/render.hpp"
#include "chainviz/run.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitIo = 3;

void list_presets() {
  for (const auto& p : chainviz::figure_presets()) {
    if (p.oscillator2d) {
      fmt::print("{:6}  2D oscillator nu=({},{})  {}\n", p.name, p.oscillator2d->nu1,
                 p.oscillator2d->nu2, p.description);
    } else {
      fmt::print("{:6}  N={:<3} {:16}  {}\n", p.name, p.n_sites, p.state, p.description);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace chainviz;

  CLI::App app{"Monte Carlo visualization of quantum harmonic chain states"};
  app.set_version_flag("--version", std::string(kToolVersion));

  RunConfig config;
  std::string preset;
  std::string color_mode = "diverging_real";
  std::string format = "svg";
  double window = 0.0;
  bool mode2d = false;
  int nu1 = 0;
  int nu2 = 0;
  bool show_presets = false;

  app.add_option("--preset", preset, "Figure preset (see --list-presets)");
  app.add_flag("--list-presets", show_presets, "List figure presets and exit");
  auto* n_opt = app.add_option("--n", config.chain.n_sites, "Number of sites N (odd)");
  app.add_option("--mass", config.chain.mass, "Mass m")->capture_default_str();
  app.add_option("--kappa", config.chain.kappa, "On-site stiffness kappa")->capture_default_str();
  app.add_option("--gamma", config.chain.gamma, "Neighbour coupling gamma")->capture_default_str();
  auto* state_opt = app.add_option("--state", config.state_src,
                                   "State expression, e.g. \"(a[1] + i a[-1]) vac\"");
  app.add_option("--samples", config.render.sample_count, "Number of samples M")
      ->capture_default_str();
  auto* window_opt =
      app.add_option("--window", window, "Half-width L of the sampling window (default 3 widths)");
  app.add_option("--seed", config.render.seed, "RNG seed")->capture_default_str();
  app.add_option("--width", config.render.width, "Canvas width in pixels")->capture_default_str();
  app.add_option("--height", config.render.height, "Canvas height in pixels")
      ->capture_default_str();
  app.add_option("--color-mode", color_mode, "diverging_real or phase_hue")
      ->check(CLI::IsMember({"diverging_real", "phase_hue"}))
      ->capture_default_str();
  app.add_option("--format", format, "Format written to --out: svg or table")
      ->check(CLI::IsMember({"svg", "table"}))
      ->capture_default_str();
  app.add_option("--out", config.output_path, "Output file");
  app.add_option("--dump-samples", config.samples_path, "Also write the sample table here");
  app.add_option("--dump-state", config.state_dump_path, "Write the Fock-state terms here");
  app.add_option("--dump-basis", config.basis_dump_path, "Write the mode basis here");
  auto* mode2d_opt = app.add_flag("--mode2d", mode2d, "Render the 2D oscillator instead");
  auto* nu1_opt = app.add_option("--nu1", nu1, "2D oscillator quantum number nu1");
  auto* nu2_opt = app.add_option("--nu2", nu2, "2D oscillator quantum number nu2");
  app.add_option("--threads", config.threads, "Evaluation threads (0 = all cores)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (show_presets) {
    list_presets();
    return 0;
  }

  try {
    if (!preset.empty()) {
      apply_preset(find_preset(preset), config);
      // Explicit flags win over the preset.
      if (n_opt->count() > 0) config.chain.n_sites = static_cast<int>(n_opt->as<int>());
      if (state_opt->count() > 0) config.state_src = state_opt->as<std::string>();
    }
    if (mode2d_opt->count() > 0 || nu1_opt->count() > 0 || nu2_opt->count() > 0) {
      if (!mode2d && !config.oscillator2d) {
        throw std::invalid_argument("--nu1/--nu2 require --mode2d");
      }
      Oscillator2d levels = config.oscillator2d.value_or(Oscillator2d{});
      if (nu1_opt->count() > 0) levels.nu1 = nu1;
      if (nu2_opt->count() > 0) levels.nu2 = nu2;
      config.oscillator2d = levels;
    }
    config.render.color_mode = parse_color_mode(color_mode);
    config.render.output_format =
        format == "table" ? OutputFormat::sample_table : OutputFormat::vector_graphic;
    if (window_opt->count() > 0) config.window = window;
    if (config.output_path.empty() && config.samples_path.empty()) {
      throw std::invalid_argument("nothing to write: give --out and/or --dump-samples");
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "chainviz: {}\n", e.what());
    return kExitUsage;
  }

  try {
    const RunResult result = run(config);
    fmt::print("{}\n", result.summary);
    return 0;
  } catch (const ParseError& e) {
    fmt::print(stderr, "chainviz: bad state expression {}\n", e.what());
    fmt::print(stderr, "  {}\n  {:>{}}\n", config.state_src, "^", e.position() + 1);
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "chainviz: {}\n", e.what());
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    fmt::print(stderr, "chainviz: {}\n", e.what());
    return kExitUsage;
  } catch (const IoError& e) {
    fmt::print(stderr, "chainviz: {}\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    fmt::print(stderr, "chainviz: {}\n", e.what());
    return kExitRuntime;
  }
}
