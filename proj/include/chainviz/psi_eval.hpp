#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "chainviz/chain.hpp"
#include "chainviz/fock_state.hpp"

namespace chainviz {

/// Physicists' Hermite polynomial H_order(x) by three-term recurrence.
double hermite_phys(int order, double x);

/// Normalized 1D oscillator eigenfunction
///   phi_nu(x) = (m W / pi)^(1/4) (2^nu nu!)^(-1/2) H_nu(sqrt(m W) x) exp(-m W x^2 / 2)
/// with angular frequency W and mass m. Throws std::invalid_argument for
/// non-positive W or m.
double eigenfunction_1d(int order, double omega_ang, double mass, double x);

/// A wavefunction value split as mantissa * exp(log_scale). The Gaussian
/// envelope shared by all terms lives in log_scale, so products over many
/// modes do not underflow.
struct ScaledValue {
  double log_scale = 0.0;
  std::complex<double> mantissa{};

  std::complex<double> value() const { return mantissa * std::exp(log_scale); }
};

/// Precomputed evaluation plan for one state on one basis.
///
/// Each term is reduced to its excited modes only; per-mode polynomial
/// tables are built once per point and shared by every term. Immutable and
/// safe to share between threads.
class EvalContext {
 public:
  /// Throws std::invalid_argument if state and basis describe different chains.
  EvalContext(const FockState& state, const ModeBasis& basis);

  const ModeBasis& basis() const { return basis_; }
  std::uint32_t max_order() const { return max_order_; }

  ScaledValue evaluate_scaled(const Eigen::VectorXd& q) const;
  std::complex<double> evaluate(const Eigen::VectorXd& q) const {
    return evaluate_scaled(q).value();
  }

  /// Evaluates every row of `points` (M x N). Work is split across
  /// `threads` workers (0 = hardware concurrency); the result does not
  /// depend on the thread count.
  std::vector<std::complex<double>> evaluate_batch(const Eigen::MatrixXd& points,
                                                   unsigned threads = 0) const;

 private:
  struct Factor {
    int slot;
    std::uint32_t order;
  };
  struct Term {
    std::complex<double> amplitude;
    std::vector<Factor> factors;
  };

  ScaledValue evaluate_with(const Eigen::VectorXd& q, std::vector<double>& table) const;

  ModeBasis basis_;
  std::uint32_t max_order_ = 0;
  std::vector<Term> terms_;
  std::vector<double> sqrt_m_omega_;  // per slot
  double log_norm_ = 0.0;             // sum_k log((m W_k / pi)^(1/4))
};

/// Psi(q) for `state`. Builds a one-off EvalContext; use EvalContext
/// directly for repeated evaluation.
std::complex<double> evaluate(const FockState& state, const ModeBasis& basis,
                              const Eigen::VectorXd& q);

/// Default finite-difference step: 1e-3 times the narrowest mode width.
double default_fd_step(const ModeBasis& basis);

/// Deviation |(H Psi)(q) / Psi(q) - E| for a single-occupation eigenstate.
///
/// The kinetic term uses central second differences with step `h` in every
/// site coordinate; the potential is (1/2) q^T D q. Throws
/// std::invalid_argument if the state is not a single occupation term, and
/// std::domain_error if |Psi(q)| is below 1e-6 of the vacuum peak Psi_0(0).
double hamiltonian_residual(const FockState& state, const ModeBasis& basis,
                            const Eigen::VectorXd& q, double h);

/// Separable 2D oscillator eigenstate phi_nu1(q1) phi_nu2(q2) with the
/// common angular frequency sqrt(kappa / m).
double oscillator2d(int nu1, int nu2, double kappa, double mass, double q1, double q2);

}  // namespace chainviz
