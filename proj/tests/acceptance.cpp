// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <fmt/core.h>
#include <fmt/ranges.h>

#include "chainviz/chain.hpp"
#include "chainviz/fock_state.hpp"
#include "chainviz/psi_eval.hpp"
#include "chainviz/run.hpp"
#include "chainviz/sampling.hpp"
#include "oracles.hpp"

using namespace chainviz;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ChainParams chain(int n, double kappa = 1.0, double gamma = 1.0) {
  return ChainParams{n, 1.0, kappa, gamma};
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CHAINVIZ_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / fmt::format("chainviz_accept_{}", ::getpid());
  fs::create_directories(dir);
  return dir;
}

Outcome spectrum_oracle() {
  const auto start = Clock::now();
  double worst = 0.0;
  bool symmetric = true;
  for (int n = 1; n <= 31; n += 2) {
    for (auto [kappa, gamma] : {std::pair{1.0, 0.0}, {1.0, 1.0}, {2.0, 0.5}}) {
      const auto p = chain(n, kappa, gamma);
      const auto w = mode_spectrum(p);
      for (int k = 1; k <= p.max_mode(); ++k) {
        symmetric = symmetric && w[mode_slot(p, ModeIndex{k})] == w[mode_slot(p, ModeIndex{-k})];
      }
      auto sorted = w;
      std::sort(sorted.begin(), sorted.end());
      const auto ref = oracle::dense_eigenvalues(build_coupling_matrix(p));
      for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(sorted[i] - ref[i]) / ref[i]);
    }
  }
  const double t = seconds_since(start);
  return {worst < 1e-9 && symmetric && t < 1.0,
          fmt::format("max rel err {:.2e}, w_k == w_-k exact: {}, {:.3f} s", worst, symmetric, t)};
}

Outcome nodal_anchor() {
  const ModeBasis b(chain(15));
  const auto start = Clock::now();
  auto f = [&](int n) { return b.entry(ModeIndex{1}, SiteIndex{n}); };
  std::vector<int> between;
  for (int n = 1; n < 15; ++n) {
    if (sign(f(n)) != sign(f(n + 1))) between.push_back(n);
  }
  const double t = seconds_since(start);
  const bool ok = between == std::vector<int>{5, 13} && t < 1e-3;
  return {ok, fmt::format("sign changes after n = {}, {:.1f} us", fmt::join(between, ", "), t * 1e6)};
}

Outcome vacuum_maximum() {
  const auto start = Clock::now();
  const ModeBasis b(chain(15));
  const EvalContext ctx(vacuum(b.params()), b);
  const double peak = ctx.evaluate(Eigen::VectorXd::Zero(15)).real();
  RenderSpec spec;
  spec.sample_count = 100000;
  spec.window = default_window(b);
  spec.seed = 1;
  const auto values = ctx.evaluate_batch(draw_samples(spec, 15));
  double largest = 0.0;
  for (const auto& v : values) largest = std::max(largest, std::abs(v));
  const double t = seconds_since(start);
  return {peak > 0.0 && largest <= peak && t < 5.0,
          fmt::format("Psi0(0) = {:.6e}, max sampled |Psi0| = {:.3e}, {:.2f} s", peak, largest, t)};
}

Outcome one_particle_sign() {
  const ModeBasis b(chain(15));
  const EvalContext ctx(apply_create(vacuum(b.params()), ModeIndex{0}), b);
  const double sigma = b.mode_width(mode_slot(b.params(), ModeIndex{0}));
  int agree = 0;
  for (int j = 1; j <= 50; ++j) {
    for (int s : {-1, 1}) {
      const double c = s * 3.0 * sigma * j / 50.0;
      const auto v = ctx.evaluate_scaled(Eigen::VectorXd::Constant(15, c));
      agree += sign(v.mantissa.real()) == sign(c);
    }
  }
  return {agree == 100, fmt::format("{}/100 values of c agree in sign", agree)};
}

Outcome two_particle_nodes() {
  const ModeBasis b(chain(15));
  const EvalContext ctx(apply_create(apply_create(vacuum(b.params()), ModeIndex{0}), ModeIndex{0}), b);
  const double sigma = b.mode_width(mode_slot(b.params(), ModeIndex{0}));
  auto psi = [&](double t) {
    return ctx.evaluate_scaled(Eigen::VectorXd::Constant(15, t)).mantissa.real();
  };
  std::vector<double> scan;
  for (int i = 0; i < 1000; ++i) scan.push_back(psi(-5 * sigma + 10 * sigma * i / 999.0));
  const int changes = oracle::sign_changes(scan);
  const bool ok = psi(0.0) < 0 && scan.front() > 0 && scan.back() > 0 && changes == 2;
  return {ok, fmt::format("Psi(0) {} 0, ends positive: {}, {} sign changes", psi(0.0) < 0 ? "<" : ">=",
                          scan.front() > 0 && scan.back() > 0, changes)};
}

Outcome localized_sign_law() {
  const ModeBasis b(chain(11, 1.0, 0.0));
  const EvalContext ctx(apply_create_local(vacuum(b.params()), b, SiteIndex{5}), b);
  RenderSpec spec;
  spec.sample_count = 10000;
  spec.window = default_window(b);
  spec.seed = 5;
  const Eigen::MatrixXd pts = draw_samples(spec, 11);
  int checked = 0, agree = 0;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    const double q5 = pts(i, 4);
    if (std::abs(q5) <= 1e-6) continue;
    ++checked;
    agree += sign(ctx.evaluate_scaled(pts.row(i).transpose()).mantissa.real()) == sign(q5);
  }
  return {checked > 9900 && agree == checked, fmt::format("{}/{} points agree", agree, checked)};
}

Outcome hamiltonian_residuals() {
  const auto start = Clock::now();
  std::mt19937_64 rng(77);
  double worst = 0.0;
  int states = 0, rejected = 0;
  bool enough = true;
  for (int n : {3, 5, 7}) {
    const ModeBasis b(chain(n));
    const auto v = vacuum(b.params());
    std::vector<FockState> eigenstates{v};
    for (int k1 = -b.params().max_mode(); k1 <= b.params().max_mode(); ++k1) {
      const auto one = apply_create(v, ModeIndex{k1});
      eigenstates.push_back(one);
      for (int k2 = k1; k2 <= b.params().max_mode(); ++k2) {
        eigenstates.push_back(apply_create(one, ModeIndex{k2}));
      }
    }
    const double h = default_fd_step(b);
    for (const auto& s : eigenstates) {
      ++states;
      const double e = energy_eigenvalue(s.terms().begin()->first, b);
      int accepted = 0;
      for (int attempt = 0; attempt < 1000 && accepted < 20; ++attempt) {
        const Eigen::VectorXd q = oracle::random_vector(rng, n, b.max_mode_width());
        try {
          worst = std::max(worst, hamiltonian_residual(s, b, q, h) / e);
          ++accepted;
        } catch (const std::domain_error&) {
          ++rejected;
        }
      }
      enough = enough && accepted == 20;
    }
  }
  const double t = seconds_since(start);
  return {enough && worst < 1e-4 && t < 30.0,
          fmt::format("{} eigenstates x 20 points, max relative residual {:.2e} ({} rejected), {:.2f} s",
                      states, worst, rejected, t)};
}

Outcome monte_carlo_normalization() {
  constexpr std::size_t kSamples = 1000000;
  RenderSpec spec;
  spec.sample_count = kSamples;
  spec.seed = 8;
  std::vector<std::string> parts;
  bool ok = true;
  auto record = [&](const std::string& name, double integral) {
    ok = ok && std::abs(integral - 1.0) < 0.02;
    parts.push_back(fmt::format("{} {:.4f}", name, integral));
  };

  // Two dimensions: the separable oscillator, sigma = 1 for kappa = m = 1.
  spec.window = 6.0;
  const Eigen::MatrixXd pts2 = draw_samples(spec, 2);
  for (auto [nu1, label] : {std::pair{0, "N=2 vac"}, {1, "N=2 a0+vac"}}) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < pts2.rows(); ++i) {
      const double v = oscillator2d(nu1, 0, 1.0, 1.0, pts2(i, 0), pts2(i, 1));
      sum += v * v;
    }
    record(label, sum / kSamples * 144.0);
  }

  // One site: the chain itself.
  const ModeBasis b(chain(1));
  spec.window = 6.0 * b.max_mode_width();
  const Eigen::MatrixXd pts1 = draw_samples(spec, 1);
  const auto v = vacuum(b.params());
  for (auto [state, label] : {std::pair{v, "N=1 vac"}, {apply_create(v, ModeIndex{0}), "N=1 a0+vac"}}) {
    double sum = 0.0;
    for (const auto& z : EvalContext(state, b).evaluate_batch(pts1)) sum += std::norm(z);
    record(label, sum / kSamples * 2.0 * spec.window);
  }
  return {ok, fmt::format("{}", fmt::join(parts, ", "))};
}

Outcome bosonic_symmetry() {
  const ModeBasis b(chain(11));
  const auto v = vacuum(b.params());
  int identical = 0;
  for (int n1 = 1; n1 <= 11; ++n1) {
    for (int n2 = 1; n2 <= 11; ++n2) {
      const auto lhs = apply_create_local(apply_create_local(v, b, SiteIndex{n2}), b, SiteIndex{n1});
      const auto rhs = apply_create_local(apply_create_local(v, b, SiteIndex{n1}), b, SiteIndex{n2});
      identical += lhs.terms() == rhs.terms();
    }
  }
  return {identical == 121, fmt::format("{}/121 ordered pairs bit-identical", identical)};
}

Outcome end_to_end_determinism(const fs::path& dir) {
  bool ok = true;
  std::vector<std::string> parts;
  for (const char* preset : {"fig2", "fig6"}) {
    std::string docs[2][2];
    for (int pass = 0; pass < 2; ++pass) {
      const fs::path svg = dir / fmt::format("{}_{}.svg", preset, pass);
      const fs::path csv = dir / fmt::format("{}_{}.csv", preset, pass);
      const int code = run_cli(fmt::format("--preset {} --seed 42 --threads {} --out {} --dump-samples {}",
                                           preset, pass == 0 ? 1 : 0, svg.string(), csv.string()));
      ok = ok && code == 0;
      docs[pass][0] = slurp(svg);
      docs[pass][1] = slurp(csv);
    }
    const bool same = !docs[0][0].empty() && docs[0][0] == docs[1][0] && docs[0][1] == docs[1][1];
    ok = ok && same;
    parts.push_back(fmt::format("{} {}", preset, same ? "identical" : "DIFFERENT"));
  }
  return {ok, fmt::format("{} (svg + table, two runs, 1 vs all threads)", fmt::join(parts, ", "))};
}

Outcome scatter_axis_crossings() {
  // Psi_{2,1} vanishes on the whole q1 axis (phi_1(0) = 0), so each scan runs
  // parallel to its axis just off it.
  const double l = default_window_2d(1.0, 1.0);
  std::vector<double> along_q1, along_q2;
  for (int i = 0; i < 1000; ++i) {
    const double x = -l + 2 * l * i / 999.0;
    along_q1.push_back(oscillator2d(2, 1, 1.0, 1.0, x, 0.5));
    along_q2.push_back(oscillator2d(2, 1, 1.0, 1.0, 0.0, x));
  }
  const int c1 = oracle::sign_changes(along_q1);
  const int c2 = oracle::sign_changes(along_q2);
  return {c1 == 2 && c2 == 1,
          fmt::format("{} crossings along q1 (q2 = 0.5), {} along q2 (q1 = 0)", c1, c2)};
}

Outcome performance(const fs::path& dir) {
  auto start = Clock::now();
  const int code = run_cli(fmt::format("--preset fig2 --seed 42 --out {}", (dir / "perf.svg").string()));
  const double end_to_end = seconds_since(start);

  // Scaling is timed on a many-term state so each run is long enough to measure.
  const ModeBasis b(chain(15));
  const auto v = vacuum(b.params());
  const EvalContext ctx(apply_create_local(apply_create_local(v, b, SiteIndex{3}), b, SiteIndex{8}), b);
  auto timed = [&](std::size_t m) {
    RenderSpec spec;
    spec.sample_count = m;
    spec.window = b.max_mode_width();
    const Eigen::MatrixXd pts = draw_samples(spec, 15);
    double best = 1e9;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = Clock::now();
      const auto values = ctx.evaluate_batch(pts, 1);
      best = std::min(best, seconds_since(t0));
      if (values.size() != m) return -1.0;
    }
    return best;
  };
  const double t1 = timed(20000);
  const double t4 = timed(80000);
  const double ratio = t4 / t1;
  const bool linear = ratio > 4.0 / 1.5 && ratio < 4.0 * 1.5;
  return {code == 0 && end_to_end < 10.0 && linear,
          fmt::format("fig2 end to end {:.2f} s; evaluation 20000 -> 80000 samples: {:.3f} s -> {:.3f} s "
                      "(x{:.2f}, linear = x4)",
                      end_to_end, t1, t4, ratio)};
}

}  // namespace

int main() {
  const fs::path dir = scratch_dir();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"spectrum matches dense eigensolver", spectrum_oracle},
      {"k = 1 standing-wave nodes at N = 15", nodal_anchor},
      {"vacuum maximum at the origin", vacuum_maximum},
      {"one particle at rest follows the uniform shift", one_particle_sign},
      {"two particles at rest: two nodes on the diagonal", two_particle_nodes},
      {"localized particle sign follows q5 (gamma = 0)", localized_sign_law},
      {"Hamiltonian residual of low eigenstates", hamiltonian_residuals},
      {"Monte Carlo normalization", monte_carlo_normalization},
      {"localized creators commute bit-exactly", bosonic_symmetry},
      {"end-to-end determinism of fig2/fig6", [&] { return end_to_end_determinism(dir); }},
      {"2D eigenstate (2,1) axis crossings", scatter_axis_crossings},
      {"performance envelope", [&] { return performance(dir); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, fmt::format("exception: {}", e.what())};
    }
    failures += !outcome.pass;
    fmt::print("[{}] #{:<2} {}: {}\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
               outcome.detail);
    std::fflush(stdout);
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
