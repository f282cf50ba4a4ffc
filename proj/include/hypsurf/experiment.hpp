#pragma once

// Point-set sampling and distinct-distance sweeps over N.

#include "hypsurf/metrics.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hypsurf {

enum class Sampler { RationalGrid, HyperbolicUniform };

Sampler parse_sampler(std::string_view text);  // "grid" | "uniform"
std::string to_string(Sampler s);

inline constexpr double kDefaultYCap = 10.0;

/// N points of F_Gamma: a uniformly chosen piece alpha_i(F), then a point of F
/// under dx dy / y^2 (truncated at y_cap) mapped by alpha_i. The grid sampler
/// snaps the F coordinates to multiples of 1/10^4 and stays exact.
std::vector<UHPoint> sample_points(const SubgroupSpec& spec, std::size_t n, Sampler sampler,
                                   std::uint64_t seed, double y_cap = kDefaultYCap);

struct ExperimentConfig {
  std::string group = "full";
  std::size_t n_min = 64;
  std::size_t n_max = 4096;
  double step = 2.0;
  Sampler sampler = Sampler::RationalGrid;
  std::uint64_t seed = 1;
  double y_cap = kDefaultYCap;
  std::string output;       // CSV path, empty for stdout
  std::string plot_output;  // optional plot CSV path

  /// Throws std::invalid_argument unless n_min >= 2, step > 1, n_max >= n_min.
  void validate() const;
  std::vector<std::size_t> sizes() const;
};

/// Parses the JSON experiment configuration.
ExperimentConfig parse_experiment_config(std::string_view json_text);

struct ExperimentRow {
  std::size_t n;
  std::size_t distinct;
  std::uint64_t quadruples;
  double cs_bound;
  double n_over_mu_log_n;
  double ratio;  // distinct * mu * ln N / N
};

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

inline constexpr std::string_view kExperimentSchema = "# schema: hypsurf-experiment v1";

void write_experiment_csv(std::ostream& out, const ExperimentConfig& config,
                          const std::vector<ExperimentRow>& rows);

/// Rows plus log columns for external plotting.
void emit_plot_data(std::ostream& out, const std::vector<ExperimentRow>& rows);

/// One "x,y" per line; blank lines and lines starting with '#' are skipped.
std::vector<UHPoint> read_points(std::istream& in);
std::vector<UHPoint> read_points_file(const std::string& path);

}  // namespace hypsurf
