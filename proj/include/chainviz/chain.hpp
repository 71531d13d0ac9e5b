#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace chainviz {

/// Physical configuration of a periodic chain of N coupled oscillators.
///
/// Each mass is bound to its rest position with stiffness `kappa` and to
/// its two neighbours with stiffness `gamma`. Only odd N is supported.
struct ChainParams {
  int n_sites = 1;
  double mass = 1.0;
  double kappa = 1.0;
  double gamma = 1.0;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;

  /// Largest mode index, (N-1)/2.
  int max_mode() const { return (n_sites - 1) / 2; }

  bool operator==(const ChainParams&) const = default;
};

/// Wave number k of a normal mode, in [-(N-1)/2, (N-1)/2].
struct ModeIndex {
  int value = 0;
  bool operator==(const ModeIndex&) const = default;
};

/// 1-based site label n in [1, N].
struct SiteIndex {
  int value = 1;
  bool operator==(const SiteIndex&) const = default;
};

/// Column/slot for mode k: k + (N-1)/2. Throws std::out_of_range.
int mode_slot(const ChainParams& params, ModeIndex k);

/// Inverse of mode_slot.
inline ModeIndex slot_mode(const ChainParams& params, int slot) {
  return ModeIndex{slot - params.max_mode()};
}

/// Row for site n: n - 1. Throws std::out_of_range.
int site_row(const ChainParams& params, SiteIndex n);

/// Circulant matrix D of the potential energy (1/2) q^T D q.
Eigen::MatrixXd build_coupling_matrix(const ChainParams& params);

/// Closed-form eigenvalues omega_k = kappa + 2 gamma (1 - cos(2 pi k / N)),
/// ordered by slot (k = -(N-1)/2 first).
std::vector<double> mode_spectrum(const ChainParams& params);

/// Real orthonormal normal-mode basis of the chain.
///
/// Column `mode_slot(k)` of `basis()` holds
///   f_n^(k) = (cos(2 pi k n / N) + sin(2 pi k n / N)) / sqrt(N),  n = 1..N,
/// which diagonalizes D. Immutable once built.
class ModeBasis {
 public:
  explicit ModeBasis(const ChainParams& params);

  const ChainParams& params() const { return params_; }
  int size() const { return params_.n_sites; }

  /// Eigenvalue of D (a stiffness) for mode k.
  double omega(ModeIndex k) const { return omegas_[mode_slot(params_, k)]; }
  /// Angular frequency sqrt(omega_k / m) of the decoupled oscillator.
  double frequency(ModeIndex k) const { return frequencies_[mode_slot(params_, k)]; }

  const std::vector<double>& omegas() const { return omegas_; }
  const std::vector<double>& frequencies() const { return frequencies_; }
  const Eigen::MatrixXd& basis() const { return basis_; }

  /// Basis entry f_n^(k).
  double entry(ModeIndex k, SiteIndex n) const {
    return basis_(site_row(params_, n), mode_slot(params_, k));
  }

  /// Ground-state width (m Omega_k)^(-1/2) of mode k, by slot.
  double mode_width(int slot) const;
  double max_mode_width() const;
  double min_mode_width() const;

  /// Q = basis^T q. Throws std::invalid_argument on length mismatch.
  Eigen::VectorXd to_normal_coords(const Eigen::VectorXd& q) const;
  /// q = basis Q. Throws std::invalid_argument on length mismatch.
  Eigen::VectorXd from_normal_coords(const Eigen::VectorXd& normal) const;

 private:
  ChainParams params_;
  std::vector<double> omegas_;
  std::vector<double> frequencies_;
  Eigen::MatrixXd basis_;
};

/// Debug dump: parameters, spectrum, then the basis row-major with 17
/// significant digits. Not a stable format.
void write_basis(std::ostream& os, const ModeBasis& basis);

}  // namespace chainviz
