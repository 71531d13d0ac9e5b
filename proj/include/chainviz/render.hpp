#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "chainviz/sampling.hpp"

namespace chainviz {

inline constexpr std::string_view kToolVersion = "chainviz 1.0.0";

struct Rgb {
  std::uint8_t r = 255;
  std::uint8_t g = 255;
  std::uint8_t b = 255;
  bool operator==(const Rgb&) const = default;
};

inline constexpr Rgb kBackground{255, 255, 255};
inline constexpr Rgb kWarm{178, 24, 43};
inline constexpr Rgb kCool{33, 102, 172};

/// Linear white-centred map: +1 -> kWarm, 0 -> background, -1 -> kCool.
/// Input is clamped to [-1, 1].
Rgb diverging_color(double scaled);

/// Hue from arg z, saturation |z| / max_abs, full value. Zero (or
/// max_abs == 0) gives the background.
Rgb phase_color(std::complex<double> z, double max_abs);

std::string hex(Rgb c);

/// Per-sample colours under the batch's colour mode, normalized to the batch
/// maximum of |Re Psi| (diverging_real) or |Psi| (phase_hue).
std::vector<Rgb> sample_colors(const SampleBatch& batch);

/// Sample indices in draw order: ascending |Psi|, ties by index.
std::vector<std::size_t> draw_order(const SampleBatch& batch);

/// Parallel-axes SVG: one polyline per sample across N vertical axes.
/// Throws std::invalid_argument on an empty batch, std::domain_error on
/// non-finite values.
std::string render_parallel_axes(const SampleBatch& batch, std::string_view state_label);

/// Scatter SVG of (q_1, q_2). Throws std::invalid_argument unless N == 2.
std::string render_scatter2d(const SampleBatch& batch);

/// Dispatches on batch.spec.mode.
std::string render(const SampleBatch& batch);

/// Comma-separated sample table. One header line
///   # n=..,seed=..,window=..,rng=..,samples=..,state=..
/// then one row per sample: q_1..q_N, Re Psi, Im Psi (17 significant digits).
std::string dump_samples(const SampleBatch& batch);

/// Reads a dump_samples table. Seed, window, and sample count come from the
/// header; the remaining RenderSpec fields are taken from `base`.
/// Throws std::runtime_error on malformed input.
SampleBatch read_samples(std::istream& is, const RenderSpec& base = {});

}  // namespace chainviz
