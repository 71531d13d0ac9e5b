#include "chainviz/psi_eval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace chainviz {

namespace {

constexpr double kResidualFloor = 1e-6;

// Hermite functions divided by their Gaussian factor:
//   h_nu(x) = H_nu(x) / sqrt(2^nu nu!),
// via h_{n+1} = sqrt(2/(n+1)) x h_n - sqrt(n/(n+1)) h_{n-1}. Stays O(1) where
// the unnormalized H_nu would overflow.
void fill_reduced_hermite(double x, std::uint32_t max_order, double* out) {
  out[0] = 1.0;
  if (max_order == 0) return;
  out[1] = std::numbers::sqrt2 * x;
  for (std::uint32_t n = 1; n < max_order; ++n) {
    const double dn = n;
    out[n + 1] = std::sqrt(2.0 / (dn + 1.0)) * x * out[n] - std::sqrt(dn / (dn + 1.0)) * out[n - 1];
  }
}

void require_positive(double omega_ang, double mass) {
  if (!(omega_ang > 0.0) || !(mass > 0.0)) {
    throw std::invalid_argument("oscillator frequency and mass must be positive");
  }
}

}  // namespace

double hermite_phys(int order, double x) {
  if (order < 0) throw std::invalid_argument("Hermite order must be non-negative");
  if (order == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int n = 1; n < order; ++n) {
    const double next = 2.0 * x * cur - 2.0 * n * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double eigenfunction_1d(int order, double omega_ang, double mass, double x) {
  if (order < 0) throw std::invalid_argument("oscillator level must be non-negative");
  require_positive(omega_ang, mass);
  const double m_omega = mass * omega_ang;
  const double xi = std::sqrt(m_omega) * x;
  std::vector<double> h(static_cast<std::size_t>(order) + 1);
  fill_reduced_hermite(xi, static_cast<std::uint32_t>(order), h.data());
  return std::pow(m_omega / std::numbers::pi, 0.25) * h[order] * std::exp(-0.5 * xi * xi);
}

EvalContext::EvalContext(const FockState& state, const ModeBasis& basis)
    : basis_(basis), max_order_(state.max_order()) {
  if (!(state.params() == basis.params())) {
    throw std::invalid_argument("state and basis describe different chains");
  }
  const double mass = basis.params().mass;
  for (double w : basis.frequencies()) {
    sqrt_m_omega_.push_back(std::sqrt(mass * w));
    log_norm_ += 0.25 * std::log(mass * w / std::numbers::pi);
  }
  terms_.reserve(state.size());
  for (const auto& [occ, amp] : state.terms()) {
    Term term{amp, {}};
    for (std::size_t s = 0; s < occ.nu.size(); ++s) {
      if (occ.nu[s] != 0) term.factors.push_back({static_cast<int>(s), occ.nu[s]});
    }
    terms_.push_back(std::move(term));
  }
}

ScaledValue EvalContext::evaluate_with(const Eigen::VectorXd& q,
                                       std::vector<double>& table) const {
  const Eigen::VectorXd normal = basis_.to_normal_coords(q);
  const std::size_t stride = max_order_ + 1;
  table.resize(stride * sqrt_m_omega_.size());

  double exponent = log_norm_;
  for (std::size_t s = 0; s < sqrt_m_omega_.size(); ++s) {
    const double xi = sqrt_m_omega_[s] * normal[static_cast<Eigen::Index>(s)];
    exponent -= 0.5 * xi * xi;
    fill_reduced_hermite(xi, max_order_, table.data() + s * stride);
  }

  std::complex<double> mantissa{};
  for (const Term& term : terms_) {
    double product = 1.0;
    for (const Factor& f : term.factors) product *= table[f.slot * stride + f.order];
    mantissa += term.amplitude * product;
  }
  return {exponent, mantissa};
}

ScaledValue EvalContext::evaluate_scaled(const Eigen::VectorXd& q) const {
  std::vector<double> table;
  return evaluate_with(q, table);
}

std::vector<std::complex<double>> EvalContext::evaluate_batch(const Eigen::MatrixXd& points,
                                                              unsigned threads) const {
  if (points.cols() != basis_.size()) {
    throw std::invalid_argument("sample points have the wrong dimension");
  }
  const auto count = static_cast<std::size_t>(points.rows());
  std::vector<std::complex<double>> values(count);

  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> table;
    Eigen::VectorXd q(points.cols());
    for (std::size_t i = begin; i < end; ++i) {
      q = points.row(static_cast<Eigen::Index>(i)).transpose();
      values[i] = evaluate_with(q, table).value();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    work(0, count);
    return values;
  }
  {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (std::size_t begin = 0; begin < count; begin += chunk) {
      workers.emplace_back(work, begin, std::min(count, begin + chunk));
    }
  }
  return values;
}

std::complex<double> evaluate(const FockState& state, const ModeBasis& basis,
                              const Eigen::VectorXd& q) {
  return EvalContext(state, basis).evaluate(q);
}

double default_fd_step(const ModeBasis& basis) { return 1e-3 * basis.min_mode_width(); }

double hamiltonian_residual(const FockState& state, const ModeBasis& basis,
                            const Eigen::VectorXd& q, double h) {
  if (state.size() != 1) {
    throw std::invalid_argument("residual needs a single-occupation eigenstate");
  }
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const EvalContext ctx(state, basis);
  const ScaledValue centre = ctx.evaluate_scaled(q);

  // Floor relative to the vacuum peak, exp(log_norm), in log space.
  const double vacuum_peak_log = ctx.evaluate_scaled(Eigen::VectorXd::Zero(q.size())).log_scale;
  if (std::abs(centre.mantissa) == 0.0 ||
      std::log(std::abs(centre.mantissa)) + centre.log_scale <
          std::log(kResidualFloor) + vacuum_peak_log) {
    throw std::domain_error("|Psi(q)| below the residual floor");
  }

  auto ratio = [&](const Eigen::VectorXd& p) {
    const ScaledValue v = ctx.evaluate_scaled(p);
    return v.mantissa / centre.mantissa * std::exp(v.log_scale - centre.log_scale);
  };

  std::complex<double> laplacian{};
  Eigen::VectorXd shifted = q;
  for (Eigen::Index n = 0; n < q.size(); ++n) {
    shifted[n] = q[n] + h;
    const auto up = ratio(shifted);
    shifted[n] = q[n] - h;
    const auto down = ratio(shifted);
    shifted[n] = q[n];
    laplacian += (up - 2.0) + down;
  }
  laplacian /= h * h;

  const Eigen::MatrixXd d = build_coupling_matrix(basis.params());
  const double potential = 0.5 * q.dot(d * q);
  const double mass = basis.params().mass;
  const std::complex<double> local_energy = -laplacian / (2.0 * mass) + potential;
  const double energy = energy_eigenvalue(state.terms().begin()->first, basis);
  return std::abs(local_energy - energy);
}

double oscillator2d(int nu1, int nu2, double kappa, double mass, double q1, double q2) {
  if (nu1 < 0 || nu2 < 0) throw std::invalid_argument("quantum numbers must be non-negative");
  require_positive(kappa, mass);
  const double omega = std::sqrt(kappa / mass);
  return eigenfunction_1d(nu1, omega, mass, q1) * eigenfunction_1d(nu2, omega, mass, q2);
}

}  // namespace chainviz
