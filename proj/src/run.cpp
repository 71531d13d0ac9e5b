#include "chainviz/run.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "chainviz/fock_state.hpp"
#include "chainviz/render.hpp"

namespace chainviz {

namespace {

namespace fs = std::filesystem;

// Chain figures sample within one widest-mode width: at N >= 11 a wider
// uniform window leaves only a handful of the 20000 lines visibly coloured.
// Figures 7 and 8 do not state N; they reuse N = 11 from the localized
// one-particle figure.
constexpr double kChainPresetWidths = 1.0;
constexpr std::array kPresets{
    FigurePreset{"fig1", 2, "", Oscillator2d{2, 1}, kDefaultWindowWidths,
                 "2D oscillator eigenstate (2,1), scatter"},
    FigurePreset{"fig2", 15, "vac", std::nullopt, kChainPresetWidths, "ground state"},
    FigurePreset{"fig3", 15, "a[0] vac", std::nullopt, kChainPresetWidths,
                 "one particle at rest"},
    FigurePreset{"fig4", 15, "a[0] a[0] vac", std::nullopt, kChainPresetWidths,
                 "two particles at rest"},
    FigurePreset{"fig5", 15, "a[1] vac", std::nullopt, kChainPresetWidths,
                 "one particle with k = 1"},
    FigurePreset{"fig6", 11, "b[5] vac", std::nullopt, kChainPresetWidths,
                 "particle localized at n = 5"},
    FigurePreset{"fig7", 11, "b[3] b[8] vac", std::nullopt, kChainPresetWidths,
                 "particles localized at 3 and 8"},
    FigurePreset{"fig8a", 11, "b[5] b[6] vac", std::nullopt, kChainPresetWidths,
                 "particles localized at 5 and 6"},
    FigurePreset{"fig8b", 11, "b[5] b[5] vac", std::nullopt, kChainPresetWidths,
                 "two particles localized at 5"},
};

struct PendingFile {
  fs::path target;
  std::string contents;
};

// Stage every file next to its target, then rename. On failure all staged
// files are removed and nothing is renamed.
void commit_files(const std::vector<PendingFile>& files) {
  std::vector<fs::path> staged;
  auto discard = [&] {
    std::error_code ignored;
    for (const auto& p : staged) fs::remove(p, ignored);
  };
  for (const auto& file : files) {
    fs::path tmp = file.target;
    tmp += ".partial";
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (os) {
      staged.push_back(tmp);
      os.write(file.contents.data(), static_cast<std::streamsize>(file.contents.size()));
      os.close();
    }
    if (!os) {
      discard();
      throw IoError(fmt::format("cannot write '{}'", file.target.string()));
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::error_code ec;
    fs::rename(staged[i], files[i].target, ec);
    if (ec) {
      discard();
      throw IoError(fmt::format("cannot write '{}': {}", files[i].target.string(), ec.message()));
    }
  }
}

std::string document_for(const SampleBatch& batch, OutputFormat format) {
  return format == OutputFormat::sample_table ? dump_samples(batch) : render(batch);
}

}  // namespace

std::span<const FigurePreset> figure_presets() { return kPresets; }

const FigurePreset& find_preset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument(fmt::format("unknown preset '{}'", name));
}

void apply_preset(const FigurePreset& preset, RunConfig& config) {
  config.oscillator2d = preset.oscillator2d;
  config.window_widths = preset.window_widths;
  if (preset.oscillator2d) {
    config.render.mode = PlotMode::scatter2d;
  } else {
    config.chain.n_sites = preset.n_sites;
    config.state_src = std::string(preset.state);
    config.render.mode = PlotMode::parallel_axes;
  }
}

SampleBatch sample_chain_state(const FockState& state, const ModeBasis& basis,
                               const RenderSpec& spec, std::string label, unsigned threads) {
  SampleBatch batch;
  batch.spec = spec;
  batch.state_label = std::move(label);
  batch.points = draw_samples(spec, basis.size());
  batch.values = EvalContext(state, basis).evaluate_batch(batch.points, threads);
  return batch;
}

double default_window_2d(double kappa, double mass) {
  const double omega = std::sqrt(kappa / mass);
  return kDefaultWindowWidths / std::sqrt(mass * omega);
}

SampleBatch sample_oscillator2d(const Oscillator2d& levels, double kappa, double mass,
                                const RenderSpec& spec) {
  if (levels.nu1 < 0 || levels.nu2 < 0) {
    throw std::invalid_argument("quantum numbers must be non-negative");
  }
  SampleBatch batch;
  batch.spec = spec;
  batch.spec.mode = PlotMode::scatter2d;
  batch.state_label = fmt::format("osc2d({},{})", levels.nu1, levels.nu2);
  batch.points = draw_samples(batch.spec, 2);
  batch.values.reserve(spec.sample_count);
  for (Eigen::Index i = 0; i < batch.points.rows(); ++i) {
    batch.values.emplace_back(oscillator2d(levels.nu1, levels.nu2, kappa, mass,
                                           batch.points(i, 0), batch.points(i, 1)));
  }
  return batch;
}

std::string run_oscillator2d(const Oscillator2d& levels, const RenderSpec& render,
                             double kappa, double mass) {
  return render_scatter2d(sample_oscillator2d(levels, kappa, mass, render));
}

RunResult run(const RunConfig& config) {
  if (config.output_path.empty() && config.samples_path.empty() &&
      config.state_dump_path.empty() && config.basis_dump_path.empty()) {
    throw std::invalid_argument("no output requested");
  }
  RenderSpec spec = config.render;
  std::vector<PendingFile> files;
  SampleBatch batch;
  std::string label;
  int n_dims = 0;

  if (config.oscillator2d) {
    const auto& p = config.chain;
    if (!(p.mass > 0.0) || !(p.kappa > 0.0)) {
      throw std::invalid_argument("mass and kappa must be positive");
    }
    spec.mode = PlotMode::scatter2d;
    spec.window = config.window.value_or(config.window_widths / kDefaultWindowWidths *
                                         default_window_2d(p.kappa, p.mass));
    spec.validate(2);
    batch = sample_oscillator2d(*config.oscillator2d, p.kappa, p.mass, spec);
    label = batch.state_label;
    n_dims = 2;
  } else {
    config.chain.validate();
    const StateExpr expr = parse_state_expr(config.state_src, config.chain.n_sites);
    label = to_string(expr);
    const ModeBasis basis(config.chain);
    const FockState state = evaluate_state_expr(expr, basis);
    if (state.empty()) throw std::domain_error("state '" + label + "' is identically zero");
    spec.window = config.window.value_or(config.window_widths * basis.max_mode_width());
    spec.validate(basis.size());
    batch = sample_chain_state(state, basis, spec, label, config.threads);
    n_dims = basis.size();

    if (!config.state_dump_path.empty()) {
      std::ostringstream os;
      write_state(os, state);
      files.push_back({config.state_dump_path, os.str()});
    }
    if (!config.basis_dump_path.empty()) {
      std::ostringstream os;
      write_basis(os, basis);
      files.push_back({config.basis_dump_path, os.str()});
    }
  }

  if (!config.output_path.empty()) {
    files.push_back({config.output_path, document_for(batch, spec.output_format)});
  }
  if (!config.samples_path.empty()) files.push_back({config.samples_path, dump_samples(batch)});
  commit_files(files);

  RunResult result;
  result.samples = batch.size();
  const std::string& shown = config.output_path.empty() ? config.samples_path : config.output_path;
  result.summary = fmt::format("N={} state={} samples={} seed={} window={:.6g} out={}", n_dims,
                               label, batch.size(), spec.seed, spec.window, shown);
  return result;
}

}  // namespace chainviz
