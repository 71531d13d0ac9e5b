#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "chainviz/chain.hpp"
#include "chainviz/psi_eval.hpp"
#include "chainviz/sampling.hpp"
#include "chainviz/state_expr.hpp"

namespace chainviz {

/// Output could not be written. Maps to exit status 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Separable 2D oscillator eigenstate (nu1, nu2), rendered as a scatter plot.
struct Oscillator2d {
  int nu1 = 0;
  int nu2 = 0;
};

struct RunConfig {
  ChainParams chain;
  std::string state_src = "vac";
  std::optional<Oscillator2d> oscillator2d;  // replaces the chain when set
  RenderSpec render;
  /// When unset, render.window is replaced by window_widths times the
  /// widest mode width.
  std::optional<double> window;
  double window_widths = kDefaultWindowWidths;
  unsigned threads = 0;

  std::string output_path;  // render.output_format is written here
  std::string samples_path;
  std::string state_dump_path;
  std::string basis_dump_path;
};

/// Named command line for one published figure.
struct FigurePreset {
  std::string_view name;
  int n_sites;  // 2 for the 2D oscillator
  std::string_view state;
  std::optional<Oscillator2d> oscillator2d;
  double window_widths;
  std::string_view description;
};

std::span<const FigurePreset> figure_presets();
/// Throws std::invalid_argument for unknown names.
const FigurePreset& find_preset(std::string_view name);
/// Applies a preset's N, state, mode, and window width to `config`.
void apply_preset(const FigurePreset& preset, RunConfig& config);

/// Evaluated samples for a chain state.
SampleBatch sample_chain_state(const FockState& state, const ModeBasis& basis,
                               const RenderSpec& spec, std::string label, unsigned threads = 0);

/// Evaluated samples for the 2D oscillator eigenstate (nu1, nu2).
SampleBatch sample_oscillator2d(const Oscillator2d& levels, double kappa, double mass,
                                const RenderSpec& spec);

/// 3 (m w)^(-1/2) with w = sqrt(kappa / m).
double default_window_2d(double kappa, double mass);

/// Renders the 2D oscillator scatter plot document.
std::string run_oscillator2d(const Oscillator2d& levels, const RenderSpec& render,
                             double kappa = 1.0, double mass = 1.0);

struct RunResult {
  std::string summary;  // one line
  std::size_t samples = 0;
};

/// Full pipeline: parse, build, sample, render, then write every requested
/// output. Files are staged and renamed into place, so a failed run leaves
/// no partial output. Throws ParseError / std::invalid_argument for bad
/// input, IoError for write failures, and other std::exception for numeric
/// failures.
RunResult run(const RunConfig& config);

}  // namespace chainviz
