#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library's numerical paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace chainviz::oracle {

/// Sorted eigenvalues from a dense symmetric eigensolver.
inline std::vector<double> dense_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

/// Coupling matrix assembled straight from the classical energy: every bond
/// (n, n+1 mod N) contributes gamma/2 (q_n - q_{n+1})^2.
inline Eigen::MatrixXd coupling_from_bonds(int n, double kappa, double gamma) {
  Eigen::MatrixXd d = kappa * Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    d(i, i) += gamma;
    d(j, j) += gamma;
    d(i, j) -= gamma;
    d(j, i) -= gamma;
  }
  return d;
}

/// Real basis vector from the complex plane waves
/// f_n^(k) = exp(-2 pi i k n / N) / sqrt(N), combined as
/// ((1+i) f^(k) + (1-i) f^(-k)) / 2 for n = 1..N.
inline Eigen::VectorXd real_mode_from_plane_waves(int n_sites, int k) {
  using C = std::complex<double>;
  Eigen::VectorXd v(n_sites);
  for (int n = 1; n <= n_sites; ++n) {
    auto f = [&](int kk) {
      return std::exp(C(0.0, -2.0 * std::numbers::pi * kk * n / n_sites)) /
             std::sqrt(static_cast<double>(n_sites));
    };
    const C value = 0.5 * (C(1.0, 1.0) * f(k) + C(1.0, -1.0) * f(-k));
    v[n - 1] = value.real();
  }
  return v;
}

/// Physicists' Hermite polynomial from the explicit series
/// H_n(x) = n! sum_m (-1)^m (2x)^(n-2m) / (m! (n-2m)!).
inline double hermite_series(int n, double x) {
  double sum = 0.0;
  for (int m = 0; 2 * m <= n; ++m) {
    const double term = std::pow(-1.0, m) * std::pow(2.0 * x, n - 2 * m) /
                        (std::tgamma(m + 1.0) * std::tgamma(n - 2 * m + 1.0));
    sum += term;
  }
  return std::tgamma(n + 1.0) * sum;
}

/// Composite Simpson rule with `intervals` (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int intervals = 20000) {
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

/// Count of strict sign changes in a scan, skipping exact zeros.
inline int sign_changes(const std::vector<double>& values) {
  int changes = 0;
  int last = 0;
  for (double v : values) {
    const int s = (v > 0.0) - (v < 0.0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

}  // namespace chainviz::oracle
