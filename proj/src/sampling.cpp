#include "chainviz/sampling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace chainviz {

std::string_view to_string(PlotMode mode) {
  return mode == PlotMode::scatter2d ? "scatter2d" : "parallel_axes";
}

std::string_view to_string(ColorMode mode) {
  return mode == ColorMode::phase_hue ? "phase_hue" : "diverging_real";
}

PlotMode parse_plot_mode(std::string_view text) {
  if (text == "parallel_axes") return PlotMode::parallel_axes;
  if (text == "scatter2d") return PlotMode::scatter2d;
  throw std::invalid_argument("unknown plot mode '" + std::string(text) + "'");
}

ColorMode parse_color_mode(std::string_view text) {
  if (text == "diverging_real" || text == "diverging") return ColorMode::diverging_real;
  if (text == "phase_hue" || text == "phase") return ColorMode::phase_hue;
  throw std::invalid_argument("unknown color mode '" + std::string(text) + "'");
}

void RenderSpec::validate(int n_dims) const {
  if (sample_count < 1) throw std::invalid_argument("sample count must be at least 1");
  if (!(window > 0.0) || !std::isfinite(window)) {
    throw std::invalid_argument("window must be positive and finite");
  }
  if (width < 64 || height < 64) throw std::invalid_argument("canvas must be at least 64x64");
  if (n_dims < 1) throw std::invalid_argument("need at least one dimension");
  if (mode == PlotMode::scatter2d && n_dims != 2) {
    throw std::invalid_argument("scatter2d needs exactly two dimensions");
  }
}

Eigen::MatrixXd draw_samples(const RenderSpec& spec, int n_dims) {
  spec.validate(n_dims);
  std::mt19937_64 engine(spec.seed);
  const auto rows = static_cast<Eigen::Index>(spec.sample_count);
  Eigen::MatrixXd points(rows, n_dims);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < n_dims; ++j) {
      const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
      points(i, j) = spec.window * (2.0 * u - 1.0);
    }
  }
  return points;
}

double default_window(const ModeBasis& basis) {
  return kDefaultWindowWidths * basis.max_mode_width();
}

}  // namespace chainviz
