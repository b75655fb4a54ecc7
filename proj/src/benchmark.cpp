#include "gael/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

#include "gael/parallel.hpp"

namespace gael {

void GnSpec::validate() const {
  if (!(p_out >= 0.0 && p_out <= 0.5))
    throw std::invalid_argument("p_out must lie in [0, 0.5], got " + std::to_string(p_out));
}

GnNetwork generate_gn(const GnSpec& spec, Rng& rng, std::size_t max_attempts) {
  spec.validate();
  const double p_in = spec.intra_pair_probability();
  const double p_cross = spec.inter_pair_probability();

  std::vector<Label> truth(kGnNodes);
  for (NodeId v = 0; v < kGnNodes; ++v) truth[v] = static_cast<Label>(v / kGnGroupSize);

  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Edge> edges;
    std::vector<std::size_t> degree(kGnNodes, 0);
    for (NodeId v = 0; v < kGnNodes; ++v) {
      for (NodeId w = v + 1; w < kGnNodes; ++w) {
        if (rng.bernoulli(truth[v] == truth[w] ? p_in : p_cross)) {
          edges.push_back({v, w});
          ++degree[v];
          ++degree[w];
        }
      }
    }
    if (std::find(degree.begin(), degree.end(), 0) != degree.end()) continue;
    return {Graph(kGnNodes, std::move(edges)), Partition(truth)};
  }
  throw DataError("no GN network without isolated nodes after " + std::to_string(max_attempts) + " attempts");
}

std::vector<SweepRow> sweep(std::span<const double> p_out_values, std::size_t reps, const GaConfig& cfg,
                            std::uint64_t seed, unsigned threads, const SweepObserver& on_run) {
  if (reps == 0) throw std::invalid_argument("sweep needs at least one repetition");
  for (double p : p_out_values) GnSpec{p}.validate();
  cfg.validate();

  struct Cell {
    double accuracy = 0.0;
    double q = 0.0;
  };
  const std::size_t points = p_out_values.size();
  std::vector<Cell> cells(points * reps);
  parallel_for(cells.size(), threads, [&](std::size_t index) {
    const std::size_t a = index / reps, r = index % reps;
    Rng network_rng = Rng::derived(seed, {a, r, 0});
    const auto net = generate_gn(GnSpec{p_out_values[a]}, network_rng);
    GaConfig run_cfg = cfg;
    run_cfg.seed = derive_seed(seed, {a, r, 1});
    run_cfg.threads = 1;
    const auto report = run(net.graph, run_cfg);
    cells[index] = {accuracy(report.best, net.truth), report.best_q};
    if (on_run) on_run(a, r, report);
  });

  std::vector<SweepRow> rows;
  rows.reserve(points);
  for (std::size_t a = 0; a < points; ++a) {
    SweepRow row{p_out_values[a], reps};
    for (std::size_t r = 0; r < reps; ++r) {
      row.mean_accuracy += cells[a * reps + r].accuracy;
      row.mean_q += cells[a * reps + r].q;
    }
    row.mean_accuracy /= static_cast<double>(reps);
    row.mean_q /= static_cast<double>(reps);
    if (reps > 1) {
      double ss = 0.0;
      for (std::size_t r = 0; r < reps; ++r) {
        const double d = cells[a * reps + r].accuracy - row.mean_accuracy;
        ss += d * d;
      }
      row.std_accuracy = std::sqrt(ss / static_cast<double>(reps - 1));
    }
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "p_out,reps,mean_accuracy,std_accuracy,mean_q\n";
  const auto flags = out.flags();
  const auto precision = out.precision();
  for (const auto& row : rows) {
    out << std::fixed << std::setprecision(4) << row.p_out << ',' << row.reps << ',' << std::setprecision(6)
        << row.mean_accuracy << ',' << row.std_accuracy << ',' << row.mean_q << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace gael
