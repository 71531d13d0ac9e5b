#include "chainviz/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace chainviz {

namespace {

// 2 pi (j mod N) / N, reduced first so that the phase is exact for large k*n.
double reduced_phase(long long j, int n_sites) {
  long long r = j % n_sites;
  if (r < 0) r += n_sites;
  return 2.0 * std::numbers::pi * static_cast<double>(r) / n_sites;
}

}  // namespace

void ChainParams::validate() const {
  if (n_sites < 1 || n_sites % 2 == 0) {
    throw std::invalid_argument("n_sites must be a positive odd integer, got " +
                                std::to_string(n_sites));
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("mass must be positive");
  }
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("kappa must be positive");
  }
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be non-negative");
  }
}

int mode_slot(const ChainParams& params, ModeIndex k) {
  const int half = params.max_mode();
  if (k.value < -half || k.value > half) {
    throw std::out_of_range(fmt::format("mode index {} outside [{}, {}]", k.value, -half, half));
  }
  return k.value + half;
}

int site_row(const ChainParams& params, SiteIndex n) {
  if (n.value < 1 || n.value > params.n_sites) {
    throw std::out_of_range(
        fmt::format("site index {} outside [1, {}]", n.value, params.n_sites));
  }
  return n.value - 1;
}

Eigen::MatrixXd build_coupling_matrix(const ChainParams& params) {
  params.validate();
  const int n = params.n_sites;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  if (n == 1) {
    // A single site is its own neighbour on both sides: the coupling cancels.
    d(0, 0) = params.kappa;
    return d;
  }
  for (int i = 0; i < n; ++i) {
    d(i, i) = params.kappa + 2.0 * params.gamma;
    d(i, (i + 1) % n) -= params.gamma;
    d(i, (i + n - 1) % n) -= params.gamma;
  }
  return d;
}

std::vector<double> mode_spectrum(const ChainParams& params) {
  params.validate();
  const int half = params.max_mode();
  std::vector<double> omegas(params.n_sites);
  for (int k = -half; k <= half; ++k) {
    // |k| makes omega_k == omega_{-k} bit-for-bit.
    const double phase = reduced_phase(std::abs(k), params.n_sites);
    omegas[k + half] = params.kappa + 2.0 * params.gamma * (1.0 - std::cos(phase));
  }
  return omegas;
}

ModeBasis::ModeBasis(const ChainParams& params)
    : params_(params), omegas_(mode_spectrum(params)) {
  const int n = params_.n_sites;
  const int half = params_.max_mode();

  frequencies_.reserve(n);
  for (double w : omegas_) frequencies_.push_back(std::sqrt(w / params_.mass));

  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  basis_.resize(n, n);
  for (int k = -half; k <= half; ++k) {
    for (int site = 1; site <= n; ++site) {
      const double phase = reduced_phase(static_cast<long long>(k) * site, n);
      basis_(site - 1, k + half) = norm * (std::cos(phase) + std::sin(phase));
    }
  }
}

double ModeBasis::mode_width(int slot) const {
  return 1.0 / std::sqrt(params_.mass * frequencies_.at(slot));
}

double ModeBasis::max_mode_width() const {
  // Largest width belongs to the softest mode.
  const double soft = *std::min_element(frequencies_.begin(), frequencies_.end());
  return 1.0 / std::sqrt(params_.mass * soft);
}

double ModeBasis::min_mode_width() const {
  const double stiff = *std::max_element(frequencies_.begin(), frequencies_.end());
  return 1.0 / std::sqrt(params_.mass * stiff);
}

Eigen::VectorXd ModeBasis::to_normal_coords(const Eigen::VectorXd& q) const {
  if (q.size() != size()) {
    throw std::invalid_argument(
        fmt::format("expected a {}-vector, got length {}", size(), q.size()));
  }
  return basis_.transpose() * q;
}

Eigen::VectorXd ModeBasis::from_normal_coords(const Eigen::VectorXd& normal) const {
  if (normal.size() != size()) {
    throw std::invalid_argument(
        fmt::format("expected a {}-vector, got length {}", size(), normal.size()));
  }
  return basis_ * normal;
}

void write_basis(std::ostream& os, const ModeBasis& basis) {
  const auto& p = basis.params();
  fmt::print(os, "# n={} mass={:.17g} kappa={:.17g} gamma={:.17g}\n", p.n_sites, p.mass,
             p.kappa, p.gamma);
  fmt::print(os, "# columns k={}..{}\n", -p.max_mode(), p.max_mode());
  os << "# omega";
  for (double w : basis.omegas()) fmt::print(os, " {:.17g}", w);
  os << '\n';
  const auto& m = basis.basis();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      fmt::print(os, "{}{:.17g}", c == 0 ? "" : " ", m(r, c));
    }
    os << '\n';
  }
}

}  // namespace chainviz
