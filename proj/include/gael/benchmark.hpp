#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "gael/ga_engine.hpp"
#include "gael/graph.hpp"
#include "gael/partition.hpp"
#include "gael/rng.hpp"

namespace gael {

inline constexpr std::size_t kGnNodes = 128;
inline constexpr std::size_t kGnGroups = 4;
inline constexpr std::size_t kGnGroupSize = kGnNodes / kGnGroups;
inline constexpr double kGnExpectedDegree = 16.0;

/// Planted four-group benchmark. p_out is the expected fraction of a node's
/// edges that leave its group.
struct GnSpec {
  double p_out = 0.0;

  double z_out() const noexcept { return kGnExpectedDegree * p_out; }
  double z_in() const noexcept { return kGnExpectedDegree - z_out(); }
  double intra_pair_probability() const noexcept { return z_in() / (kGnGroupSize - 1); }
  double inter_pair_probability() const noexcept {
    return z_out() / static_cast<double>(kGnNodes - kGnGroupSize);
  }
  /// Throws std::invalid_argument unless 0 <= p_out <= 0.5.
  void validate() const;
};

struct GnNetwork {
  Graph graph;
  Partition truth;  // node i belongs to group i / 32
};

/// Independent coin flip per node pair. Graphs with an isolated node are
/// redrawn up to max_attempts times, then DataError is thrown.
GnNetwork generate_gn(const GnSpec& spec, Rng& rng, std::size_t max_attempts = 1000);

struct SweepRow {
  double p_out = 0.0;
  std::size_t reps = 0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // sample standard deviation; 0 for one rep
  double mean_q = 0.0;
};

/// For each p_out, generates `reps` networks and runs the GA on each.
/// Cell (a, r) uses streams derived from (seed, a, r) for the network and
/// the GA run, so rows do not depend on `threads`. cfg.seed and cfg.threads
/// are overridden per cell. Throws std::invalid_argument if reps == 0.
///
/// on_run, if set, sees every cell's report. It is called from worker
/// threads, at most once per (a, r).
using SweepObserver = std::function<void(std::size_t a, std::size_t r, const RunReport& report)>;

std::vector<SweepRow> sweep(std::span<const double> p_out_values, std::size_t reps, const GaConfig& cfg,
                            std::uint64_t seed, unsigned threads = 1, const SweepObserver& on_run = {});

/// Header `p_out,reps,mean_accuracy,std_accuracy,mean_q`, one line per row.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace gael
