#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <utility>
#include <vector>

#include "chainviz/chain.hpp"

namespace chainviz {

using Amplitude = std::complex<double>;

/// Quantum numbers nu_k, one per mode, stored by slot (k = -(N-1)/2 first).
/// Ordered lexicographically by slot, which is the canonical term order.
struct Occupation {
  std::vector<std::uint32_t> nu;

  int total() const;
  /// Highest single-mode quantum number.
  std::uint32_t max_order() const;

  auto operator<=>(const Occupation&) const = default;
};

/// Finite superposition of occupation-number states with complex amplitudes.
///
/// Immutable value type. Terms with an amplitude of exactly zero are never
/// stored, and the occupation basis is treated as orthonormal (the
/// sqrt(nu+1) ladder convention).
class FockState {
 public:
  using Terms = std::map<Occupation, Amplitude>;

  explicit FockState(ChainParams params);
  /// Throws std::invalid_argument if an occupation has the wrong length.
  FockState(ChainParams params, Terms terms);

  const ChainParams& params() const { return params_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Largest nu_k over all terms; 0 for the vacuum or an empty state.
  std::uint32_t max_order() const;

  bool operator==(const FockState&) const = default;

 private:
  ChainParams params_;
  Terms terms_;
};

/// Ground state: all nu_k = 0 with amplitude 1.
FockState vacuum(const ChainParams& params);

/// a_k^dagger: (nu, c) -> (nu + e_k, c sqrt(nu_k + 1)).
FockState apply_create(const FockState& state, ModeIndex k);

/// b_n^dagger = sum_k f_n^(k) a_k^dagger, an excitation localized at site n.
FockState apply_create_local(const FockState& state, const ModeBasis& basis, SiteIndex n);

/// Term-wise sum of c_i * state_i. Throws on mismatched chain parameters.
FockState linear_combine(const std::vector<std::pair<Amplitude, FockState>>& parts);

FockState scale(const FockState& state, Amplitude factor);

/// <a, b>, antilinear in the first argument.
Amplitude inner_product(const FockState& a, const FockState& b);

double norm(const FockState& state);

/// sum_k Omega_k (nu_k + 1/2) in units with hbar = 1.
double energy_eigenvalue(const Occupation& occ, const ModeBasis& basis);

/// One term per line: "re im nu_{-(N-1)/2} ... nu_{(N-1)/2}", 17 significant
/// digits, in canonical order.
void write_state(std::ostream& os, const FockState& state);
/// Inverse of write_state. Throws std::runtime_error on malformed input.
FockState read_state(std::istream& is, const ChainParams& params);

}  // namespace chainviz
