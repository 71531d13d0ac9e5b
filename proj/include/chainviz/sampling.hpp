#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "chainviz/chain.hpp"

namespace chainviz {

enum class PlotMode { parallel_axes, scatter2d };
enum class ColorMode { diverging_real, phase_hue };
enum class OutputFormat { vector_graphic, sample_table };

std::string_view to_string(PlotMode mode);
std::string_view to_string(ColorMode mode);
PlotMode parse_plot_mode(std::string_view text);
ColorMode parse_color_mode(std::string_view text);

/// Identifier of the sampling algorithm, embedded in every output:
/// std::mt19937_64 seeded with `seed`, each draw mapped to
/// u = (x >> 11) * 2^-53 and then to L (2u - 1). Coordinates are drawn
/// point-major (all N coordinates of sample 0 first).
inline constexpr std::string_view kRngId = "mt19937_64/u53/v1";

inline constexpr std::size_t kDefaultSampleCount = 20000;
/// Default half-width of the sampling window in units of the widest mode.
inline constexpr double kDefaultWindowWidths = 3.0;

struct RenderSpec {
  std::size_t sample_count = kDefaultSampleCount;
  double window = 1.0;  // samples lie in [-window, window]^N
  std::uint64_t seed = 0;
  PlotMode mode = PlotMode::parallel_axes;
  ColorMode color_mode = ColorMode::diverging_real;
  int width = 1200;
  int height = 600;
  OutputFormat output_format = OutputFormat::vector_graphic;

  /// Throws std::invalid_argument on bad counts, window, or canvas, or when
  /// scatter2d is requested for n_dims != 2.
  void validate(int n_dims) const;
};

/// Evaluated samples ready for rendering. Row i of `points` is q_i and
/// values[i] = Psi(q_i).
struct SampleBatch {
  Eigen::MatrixXd points;
  std::vector<std::complex<double>> values;
  RenderSpec spec;
  std::string state_label;

  int dims() const { return static_cast<int>(points.cols()); }
  std::size_t size() const { return values.size(); }
};

/// M x N matrix of i.i.d. uniform coordinates on [-L, L]. Bit-identical for
/// identical (seed, M, N, L).
Eigen::MatrixXd draw_samples(const RenderSpec& spec, int n_dims);

/// 3 * max_k (m Omega_k)^(-1/2).
double default_window(const ModeBasis& basis);

}  // namespace chainviz
