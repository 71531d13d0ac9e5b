#include "chainviz/render.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace chainviz {

namespace {

using Buffer = fmt::memory_buffer;

constexpr double kMarginLeft = 60.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 36.0;
constexpr double kMarginBottom = 48.0;

std::uint8_t blend(std::uint8_t from, std::uint8_t to, double t) {
  return static_cast<std::uint8_t>(std::lround(from + t * (static_cast<double>(to) - from)));
}

Rgb blend(Rgb from, Rgb to, double t) {
  return {blend(from.r, to.r, t), blend(from.g, to.g, t), blend(from.b, to.b, t)};
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void check_batch(const SampleBatch& batch) {
  if (batch.size() == 0) throw std::invalid_argument("cannot render an empty batch");
  if (static_cast<std::size_t>(batch.points.rows()) != batch.size()) {
    throw std::invalid_argument("batch points and values differ in length");
  }
  for (const auto& v : batch.values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::domain_error("batch contains a non-finite wavefunction value");
    }
  }
}

void open_document(Buffer& out, const SampleBatch& batch, std::string_view state_label) {
  const auto& spec = batch.spec;
  fmt::format_to(std::back_inserter(out),
                 "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
                 "viewBox=\"0 0 {0} {1}\">\n",
                 spec.width, spec.height);
  fmt::format_to(std::back_inserter(out),
                 "<metadata>\n"
                 "tool={}\nrng={}\nseed={}\nsamples={}\nwindow={:.17g}\nn={}\n"
                 "mode={}\ncolor_mode={}\nstate={}\n"
                 "</metadata>\n",
                 kToolVersion, kRngId, spec.seed, batch.size(), spec.window, batch.dims(),
                 to_string(spec.mode), to_string(spec.color_mode), xml_escape(state_label));
  fmt::format_to(std::back_inserter(out),
                 "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n", spec.width,
                 spec.height, hex(kBackground));
}

void write_title(Buffer& out, const SampleBatch& batch, std::string_view state_label) {
  fmt::format_to(std::back_inserter(out),
                 "<text x=\"{:.2f}\" y=\"22\" font-family=\"sans-serif\" font-size=\"14\" "
                 "fill=\"#222222\">{}  (N = {})</text>\n",
                 kMarginLeft, xml_escape(state_label), batch.dims());
}

}  // namespace

Rgb diverging_color(double scaled) {
  const double t = std::clamp(scaled, -1.0, 1.0);
  if (t >= 0.0) return blend(kBackground, kWarm, t);
  return blend(kBackground, kCool, -t);
}

Rgb phase_color(std::complex<double> z, double max_abs) {
  if (!(max_abs > 0.0)) return kBackground;
  const double saturation = std::clamp(std::abs(z) / max_abs, 0.0, 1.0);
  double hue = std::arg(z) / (2.0 * std::numbers::pi);  // (-1/2, 1/2]
  if (hue < 0.0) hue += 1.0;
  const double sector = hue * 6.0;
  const int i = static_cast<int>(std::floor(sector)) % 6;
  const double f = sector - std::floor(sector);
  // HSV with V = 1.
  const double p = 1.0 - saturation;
  const double q = 1.0 - saturation * f;
  const double t = 1.0 - saturation * (1.0 - f);
  double r = 1.0, g = 1.0, b = 1.0;
  switch (i) {
    case 0: r = 1.0; g = t; b = p; break;
    case 1: r = q; g = 1.0; b = p; break;
    case 2: r = p; g = 1.0; b = t; break;
    case 3: r = p; g = q; b = 1.0; break;
    case 4: r = t; g = p; b = 1.0; break;
    default: r = 1.0; g = p; b = q; break;
  }
  auto channel = [](double x) { return static_cast<std::uint8_t>(std::lround(255.0 * x)); };
  return {channel(r), channel(g), channel(b)};
}

std::string hex(Rgb c) { return fmt::format("#{:02x}{:02x}{:02x}", c.r, c.g, c.b); }

std::vector<Rgb> sample_colors(const SampleBatch& batch) {
  std::vector<Rgb> colors;
  colors.reserve(batch.size());
  if (batch.spec.color_mode == ColorMode::phase_hue) {
    double max_abs = 0.0;
    for (const auto& v : batch.values) max_abs = std::max(max_abs, std::abs(v));
    for (const auto& v : batch.values) colors.push_back(phase_color(v, max_abs));
    return colors;
  }
  double max_re = 0.0;
  for (const auto& v : batch.values) max_re = std::max(max_re, std::abs(v.real()));
  for (const auto& v : batch.values) {
    colors.push_back(max_re > 0.0 ? diverging_color(v.real() / max_re) : kBackground);
  }
  return colors;
}

std::vector<std::size_t> draw_order(const SampleBatch& batch) {
  std::vector<double> magnitude(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) magnitude[i] = std::abs(batch.values[i]);
  std::vector<std::size_t> order(batch.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (magnitude[a] != magnitude[b]) return magnitude[a] < magnitude[b];
    return a < b;
  });
  return order;
}

std::string render_parallel_axes(const SampleBatch& batch, std::string_view state_label) {
  check_batch(batch);
  const auto& spec = batch.spec;
  const int n = batch.dims();
  const double plot_w = spec.width - kMarginLeft - kMarginRight;
  const double plot_h = spec.height - kMarginTop - kMarginBottom;
  const double window = spec.window;

  auto x_of = [&](int site) {
    if (n == 1) return kMarginLeft + 0.5 * plot_w;
    return kMarginLeft + plot_w * (site - 1) / (n - 1);
  };
  auto y_of = [&](double q) { return kMarginTop + plot_h * (window - q) / (2.0 * window); };

  Buffer out;
  open_document(out, batch, state_label);
  write_title(out, batch, state_label);

  // Axes and labels: site n along x, displacement q along y.
  fmt::format_to(std::back_inserter(out),
                 "<g stroke=\"#bbbbbb\" stroke-width=\"0.8\" font-family=\"sans-serif\" "
                 "font-size=\"11\" fill=\"#444444\">\n");
  for (int site = 1; site <= n; ++site) {
    const double x = x_of(site);
    fmt::format_to(std::back_inserter(out),
                   "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\"/>"
                   "<text x=\"{0:.2f}\" y=\"{3:.2f}\" stroke=\"none\" "
                   "text-anchor=\"middle\">{4}</text>\n",
                   x, kMarginTop, kMarginTop + plot_h, kMarginTop + plot_h + 16.0, site);
  }
  for (double q : {-window, 0.0, window}) {
    fmt::format_to(std::back_inserter(out),
                   "<text x=\"{:.2f}\" y=\"{:.2f}\" stroke=\"none\" "
                   "text-anchor=\"end\">{:.3g}</text>\n",
                   kMarginLeft - 8.0, y_of(q) + 4.0, q);
  }
  fmt::format_to(std::back_inserter(out),
                 "<text x=\"{:.2f}\" y=\"{:.2f}\" stroke=\"none\" "
                 "text-anchor=\"middle\">n</text>\n"
                 "<text x=\"14\" y=\"{:.2f}\" stroke=\"none\">q</text>\n</g>\n",
                 kMarginLeft + 0.5 * plot_w, kMarginTop + plot_h + 38.0,
                 kMarginTop + 0.5 * plot_h);

  const auto colors = sample_colors(batch);
  fmt::format_to(std::back_inserter(out), "<g fill=\"none\" stroke-width=\"0.6\">\n");
  for (std::size_t i : draw_order(batch)) {
    fmt::format_to(std::back_inserter(out), "<polyline data-abs=\"{:.6e}\" stroke=\"{}\" points=\"",
                   std::abs(batch.values[i]), hex(colors[i]));
    for (int site = 1; site <= n; ++site) {
      fmt::format_to(std::back_inserter(out), "{}{:.2f},{:.2f}", site == 1 ? "" : " ",
                     x_of(site), y_of(batch.points(static_cast<Eigen::Index>(i), site - 1)));
    }
    fmt::format_to(std::back_inserter(out), "\"/>\n");
  }
  fmt::format_to(std::back_inserter(out), "</g>\n</svg>\n");
  return fmt::to_string(out);
}

std::string render_scatter2d(const SampleBatch& batch) {
  if (batch.dims() != 2) throw std::invalid_argument("scatter plot needs a two-dimensional batch");
  check_batch(batch);
  const auto& spec = batch.spec;
  const double side = std::min(spec.width - kMarginLeft - kMarginRight,
                               spec.height - kMarginTop - kMarginBottom);
  const double window = spec.window;
  auto x_of = [&](double q) { return kMarginLeft + side * (q + window) / (2.0 * window); };
  auto y_of = [&](double q) { return kMarginTop + side * (window - q) / (2.0 * window); };

  Buffer out;
  open_document(out, batch, batch.state_label);
  write_title(out, batch, batch.state_label);
  fmt::format_to(std::back_inserter(out),
                 "<g stroke=\"#bbbbbb\" stroke-width=\"0.8\" fill=\"none\">\n"
                 "<rect x=\"{0:.2f}\" y=\"{1:.2f}\" width=\"{2:.2f}\" height=\"{2:.2f}\"/>\n"
                 "<line x1=\"{0:.2f}\" y1=\"{3:.2f}\" x2=\"{4:.2f}\" y2=\"{3:.2f}\"/>\n"
                 "<line x1=\"{5:.2f}\" y1=\"{1:.2f}\" x2=\"{5:.2f}\" y2=\"{6:.2f}\"/>\n</g>\n",
                 kMarginLeft, kMarginTop, side, y_of(0.0), kMarginLeft + side, x_of(0.0),
                 kMarginTop + side);
  fmt::format_to(std::back_inserter(out),
                 "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444444\">"
                 "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">q1</text>"
                 "<text x=\"14\" y=\"{:.2f}\">q2</text></g>\n",
                 kMarginLeft + 0.5 * side, kMarginTop + side + 30.0, kMarginTop + 0.5 * side);

  const auto colors = sample_colors(batch);
  fmt::format_to(std::back_inserter(out), "<g stroke=\"none\">\n");
  for (std::size_t i : draw_order(batch)) {
    const auto row = static_cast<Eigen::Index>(i);
    fmt::format_to(std::back_inserter(out),
                   "<circle data-abs=\"{:.6e}\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"1.6\" "
                   "fill=\"{}\"/>\n",
                   std::abs(batch.values[i]), x_of(batch.points(row, 0)),
                   y_of(batch.points(row, 1)), hex(colors[i]));
  }
  fmt::format_to(std::back_inserter(out), "</g>\n</svg>\n");
  return fmt::to_string(out);
}

std::string render(const SampleBatch& batch) {
  if (batch.spec.mode == PlotMode::scatter2d) return render_scatter2d(batch);
  return render_parallel_axes(batch, batch.state_label);
}

std::string dump_samples(const SampleBatch& batch) {
  if (static_cast<std::size_t>(batch.points.rows()) != batch.size()) {
    throw std::invalid_argument("batch points and values differ in length");
  }
  Buffer out;
  fmt::format_to(std::back_inserter(out), "# n={},seed={},window={:.17g},rng={},samples={},state={}\n",
                 batch.dims(), batch.spec.seed, batch.spec.window, kRngId, batch.size(),
                 batch.state_label);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    for (int j = 0; j < batch.dims(); ++j) {
      fmt::format_to(std::back_inserter(out), "{:.17g},", batch.points(row, j));
    }
    fmt::format_to(std::back_inserter(out), "{:.17g},{:.17g}\n", batch.values[i].real(),
                   batch.values[i].imag());
  }
  return fmt::to_string(out);
}

SampleBatch read_samples(std::istream& is, const RenderSpec& base) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("# ", 0) != 0) {
    throw std::runtime_error("sample table is missing its header");
  }
  SampleBatch batch;
  batch.spec = base;
  int n = -1;
  std::size_t expected = 0;

  // "state=" is last and may itself contain '=' or ','; split the rest on ','.
  const auto state_pos = header.find(",state=");
  if (state_pos == std::string::npos) throw std::runtime_error("sample header lacks state");
  batch.state_label = header.substr(state_pos + 7);
  std::istringstream fields(header.substr(2, state_pos - 2));
  std::string field;
  try {
    while (std::getline(fields, field, ',')) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw std::runtime_error("bad header field '" + field + "'");
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (key == "n") n = std::stoi(value);
      else if (key == "seed") batch.spec.seed = std::stoull(value);
      else if (key == "window") batch.spec.window = std::stod(value);
      else if (key == "samples") expected = std::stoull(value);
      else if (key == "rng" && value != kRngId) throw std::runtime_error("unknown rng " + value);
    }
  } catch (const std::logic_error& e) {
    throw std::runtime_error(std::string("bad sample header: ") + e.what());
  }
  if (n < 1) throw std::runtime_error("sample header lacks a dimension");

  std::vector<double> coords;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::logic_error&) {
        throw std::runtime_error("bad number '" + cell + "' in sample table");
      }
    }
    if (row.size() != static_cast<std::size_t>(n) + 2) {
      throw std::runtime_error("sample row has the wrong number of columns");
    }
    coords.insert(coords.end(), row.begin(), row.begin() + n);
    batch.values.emplace_back(row[n], row[n + 1]);
  }
  if (batch.values.size() != expected) throw std::runtime_error("sample count mismatch");
  batch.points.resize(static_cast<Eigen::Index>(batch.values.size()), n);
  for (std::size_t i = 0; i < batch.values.size(); ++i) {
    for (int j = 0; j < n; ++j) batch.points(static_cast<Eigen::Index>(i), j) = coords[i * n + j];
  }
  batch.spec.sample_count = batch.values.size();
  return batch;
}

}  // namespace chainviz
