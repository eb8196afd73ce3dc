#include "camel_lab/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "camel_lab/errors.hpp"
#include "camel_lab/parallel.hpp"

namespace camel {

PhaseVector sample_ball(std::mt19937_64& rng, int order, double R, double decay) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> a(2 * order + 1), b(2 * order + 1);
  double norm2 = 0.0;
  for (int j = -order; j <= order; ++j) {
    const double w = std::pow(std::sqrt(double(j) * j + 1.0), -decay);
    a[j + order] = w * gauss(rng);
    b[j + order] = w * gauss(rng);
    norm2 += a[j + order] * a[j + order] + b[j + order] * b[j + order];
  }
  const double scale = R * std::sqrt(unit(rng)) / std::max(std::sqrt(norm2), 1e-300);
  for (auto& x : a) x *= scale;
  for (auto& x : b) x *= scale;
  return PhaseVector(order, std::move(a), std::move(b));
}

std::vector<double> isotonic_nonincreasing(std::span<const double> y) {
  struct Block {
    double sum;
    std::size_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  for (double v : y) {
    blocks.push_back({v, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() < blocks.back().mean()) {
      blocks[blocks.size() - 2].sum += blocks.back().sum;
      blocks[blocks.size() - 2].count += blocks.back().count;
      blocks.pop_back();
    }
  }
  std::vector<double> out;
  out.reserve(y.size());
  for (const auto& blk : blocks) out.insert(out.end(), blk.count, blk.mean());
  return out;
}

ConvergenceReport epsilon_curve(const NonlinearitySpec& spec, double R, double T,
                                const std::vector<int>& n_values, int samples, std::uint64_t seed,
                                int N_probe, std::size_t m, double decay) {
  if (!(R > 0.0)) throw ValidationError("epsilon_curve: R must be > 0");
  if (!(T >= 0.0)) throw ValidationError("epsilon_curve: T must be >= 0");
  if (samples < 1) throw ValidationError("epsilon_curve: samples must be >= 1");
  if (n_values.empty()) throw ValidationError("epsilon_curve: n_values is empty");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 0 || (i > 0 && n_values[i] <= n_values[i - 1])) {
      throw ValidationError("epsilon_curve: n_values must be non-negative and increasing");
    }
  }
  if (N_probe < n_values.back()) throw ValidationError("epsilon_curve: N_probe must be >= max(n_values)");
  const std::size_t grid = m == 0 ? min_grid_size(N_probe) : m;
  if (!grid_size_ok(grid, N_probe)) throw ValidationError("epsilon_curve: grid too small for N_probe");

  std::vector<std::vector<double>> per_sample(static_cast<std::size_t>(samples));
  parallel_for(per_sample.size(), [&](std::size_t s) {
    std::mt19937_64 rng(task_seed(seed, s));
    const double t = T * (2.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng) - 1.0);
    const PhaseVector u = sample_ball(rng, N_probe, R, decay);
    const PhaseVector full = grad_h(spec, t, u, grid);
    auto& row = per_sample[s];
    for (int n : n_values) row.push_back(e_norm(full - grad_h_trunc(spec, t, u, n, grid)));
  });

  ConvergenceReport report;
  report.spec = spec.name();
  report.R = R;
  report.T = T;
  report.N_probe = N_probe;
  report.samples = samples;
  report.seed = seed;
  report.decay = decay;
  report.n_values = n_values;
  report.errors.assign(n_values.size(), 0.0);
  for (const auto& row : per_sample) {
    for (std::size_t i = 0; i < row.size(); ++i) report.errors[i] = std::max(report.errors[i], row[i]);
  }
  report.isotonic_errors = isotonic_nonincreasing(report.errors);
  return report;
}

double approx_error(const NonlinearitySpec& spec, double t, int n, int N_ref, double R, int samples,
                    std::uint64_t seed, const FlowConfig& cfg, double decay) {
  if (!(R > 0.0)) throw ValidationError("approx_error: R must be > 0");
  if (n < 0 || n > N_ref) throw ValidationError("approx_error: need 0 <= n <= N_ref");
  if (samples < 1) throw ValidationError("approx_error: samples must be >= 1");
  if (n == N_ref) return 0.0;

  std::vector<double> worst(static_cast<std::size_t>(samples), 0.0);
  parallel_for(worst.size(), [&](std::size_t s) {
    std::mt19937_64 rng(task_seed(seed, s));
    const PhaseVector u = sample_ball(rng, N_ref, R, decay);
    FlowConfig ref = cfg, coarse = cfg;
    ref.n = N_ref;
    coarse.n = n;
    worst[s] = e_norm(interaction_flow(u, t, ref, spec) - interaction_flow(u, t, coarse, spec));
  });
  return *std::max_element(worst.begin(), worst.end());
}

double gronwall_constant(std::span<const double> approx_errors, std::span<const double> eps) {
  if (approx_errors.size() != eps.size()) throw ValidationError("gronwall_constant: size mismatch");
  double c = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (eps[i] > 0.0) c = std::max(c, approx_errors[i] / eps[i]);
  }
  return c;
}

std::string to_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  char buf[64];
  auto num = [&buf](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  out << "# spec=" << report.spec << "\n# R=" << num(report.R) << "\n# T=" << num(report.T)
      << "\n# N_probe=" << report.N_probe << "\n# samples=" << report.samples
      << "\n# seed=" << report.seed << "\n# decay=" << num(report.decay) << "\n";
  out << "n,raw_error,isotonic_error\n";
  for (std::size_t i = 0; i < report.n_values.size(); ++i) {
    out << report.n_values[i] << ',' << num(report.errors[i]) << ',' << num(report.isotonic_errors[i])
        << '\n';
  }
  return out.str();
}

}  // namespace camel
