#include "chainviz/fock_state.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace chainviz {

namespace {

void prune_zeros(FockState::Terms& terms) {
  std::erase_if(terms, [](const auto& kv) { return kv.second == Amplitude{}; });
}

void require_same_params(const ChainParams& a, const ChainParams& b) {
  if (!(a == b)) throw std::invalid_argument("states belong to different chains");
}

}  // namespace

int Occupation::total() const {
  return static_cast<int>(std::accumulate(nu.begin(), nu.end(), std::uint64_t{0}));
}

std::uint32_t Occupation::max_order() const {
  return nu.empty() ? 0 : *std::max_element(nu.begin(), nu.end());
}

FockState::FockState(ChainParams params) : params_(params) { params_.validate(); }

FockState::FockState(ChainParams params, Terms terms)
    : params_(params), terms_(std::move(terms)) {
  params_.validate();
  for (const auto& [occ, amp] : terms_) {
    if (occ.nu.size() != static_cast<std::size_t>(params_.n_sites)) {
      throw std::invalid_argument("occupation length does not match chain size");
    }
  }
  prune_zeros(terms_);
}

std::uint32_t FockState::max_order() const {
  std::uint32_t result = 0;
  for (const auto& [occ, amp] : terms_) result = std::max(result, occ.max_order());
  return result;
}

FockState vacuum(const ChainParams& params) {
  Occupation zero{std::vector<std::uint32_t>(params.n_sites, 0)};
  return FockState(params, {{std::move(zero), Amplitude{1.0, 0.0}}});
}

FockState apply_create(const FockState& state, ModeIndex k) {
  const int slot = mode_slot(state.params(), k);
  FockState::Terms out;
  for (const auto& [occ, amp] : state.terms()) {
    Occupation raised = occ;
    const double ladder = std::sqrt(static_cast<double>(++raised.nu[slot]));
    out.emplace(std::move(raised), amp * ladder);
  }
  return FockState(state.params(), std::move(out));
}

FockState apply_create_local(const FockState& state, const ModeBasis& basis, SiteIndex n) {
  require_same_params(state.params(), basis.params());
  const int row = site_row(state.params(), n);
  const int slots = state.params().n_sites;

  FockState::Terms out;
  for (const auto& [occ, amp] : state.terms()) {
    for (int slot = 0; slot < slots; ++slot) {
      Occupation raised = occ;
      const double ladder = std::sqrt(static_cast<double>(++raised.nu[slot]));
      // Multiply by the basis weight before the ladder factor: products of
      // weights then commute bit-exactly, so b_m b_n and b_n b_m agree.
      out[std::move(raised)] += (amp * basis.basis()(row, slot)) * ladder;
    }
  }
  return FockState(state.params(), std::move(out));
}

FockState linear_combine(const std::vector<std::pair<Amplitude, FockState>>& parts) {
  if (parts.empty()) throw std::invalid_argument("linear_combine needs at least one state");
  const ChainParams& params = parts.front().second.params();
  FockState::Terms out;
  for (const auto& [coeff, state] : parts) {
    require_same_params(params, state.params());
    for (const auto& [occ, amp] : state.terms()) out[occ] += coeff * amp;
  }
  return FockState(params, std::move(out));
}

FockState scale(const FockState& state, Amplitude factor) {
  return linear_combine({{factor, state}});
}

Amplitude inner_product(const FockState& a, const FockState& b) {
  require_same_params(a.params(), b.params());
  Amplitude sum{};
  for (const auto& [occ, amp] : a.terms()) {
    if (auto it = b.terms().find(occ); it != b.terms().end()) {
      sum += std::conj(amp) * it->second;
    }
  }
  return sum;
}

double norm(const FockState& state) { return std::sqrt(inner_product(state, state).real()); }

double energy_eigenvalue(const Occupation& occ, const ModeBasis& basis) {
  const auto& freqs = basis.frequencies();
  if (occ.nu.size() != freqs.size()) {
    throw std::invalid_argument("occupation length does not match chain size");
  }
  double energy = 0.0;
  for (std::size_t s = 0; s < freqs.size(); ++s) {
    energy += freqs[s] * (static_cast<double>(occ.nu[s]) + 0.5);
  }
  return energy;
}

void write_state(std::ostream& os, const FockState& state) {
  for (const auto& [occ, amp] : state.terms()) {
    fmt::print(os, "{:.17g} {:.17g}", amp.real(), amp.imag());
    for (auto v : occ.nu) fmt::print(os, " {}", v);
    os << '\n';
  }
}

FockState read_state(std::istream& is, const ChainParams& params) {
  FockState::Terms terms;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    double re = 0.0;
    double im = 0.0;
    Occupation occ;
    occ.nu.resize(params.n_sites);
    bool ok = static_cast<bool>(fields >> re >> im);
    for (auto& v : occ.nu) {
      long long value = -1;
      ok = ok && static_cast<bool>(fields >> value) && value >= 0;
      v = static_cast<std::uint32_t>(value);
    }
    std::string rest;
    if (!ok || (fields >> rest)) {
      throw std::runtime_error(fmt::format("malformed state line {}", line_no));
    }
    terms[std::move(occ)] += Amplitude{re, im};
  }
  return FockState(params, std::move(terms));
}

}  // namespace chainviz
