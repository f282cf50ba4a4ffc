#include "hypsurf/experiment.hpp"

#include "hypsurf/random.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace hypsurf {

namespace {

constexpr long kGrid = 10'000;
constexpr std::size_t kMaxDraws = 1'000'000;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t n) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (n + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

Sampler parse_sampler(std::string_view text) {
  if (text == "grid") return Sampler::RationalGrid;
  if (text == "uniform") return Sampler::HyperbolicUniform;
  throw std::invalid_argument("sampler must be grid or uniform, got " + std::string(text));
}

std::string to_string(Sampler s) { return s == Sampler::RationalGrid ? "grid" : "uniform"; }

std::vector<UHPoint> sample_points(const SubgroupSpec& spec, std::size_t n, Sampler sampler,
                                   std::uint64_t seed, double y_cap) {
  if (n < 1) throw std::invalid_argument("sample size must be at least 1");
  const double rho_y = std::sqrt(3.0) / 2.0;
  if (!(y_cap > 1.0)) throw std::invalid_argument("y cap must exceed 1");
  Rng rng(seed);
  auto cosets = spec.cosets();
  std::vector<UHPoint> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& alpha = cosets[rng.below(cosets.size())];
    for (std::size_t draw = 0;; ++draw) {
      if (draw == kMaxDraws) throw std::runtime_error("rejection sampling failed in F");
      double x = rng.uniform(-0.5, 0.5);
      double y = 1.0 / rng.uniform(1.0 / y_cap, 1.0 / rho_y);
      UHPoint z = sampler == Sampler::RationalGrid
                      ? UHPoint(Rational(static_cast<long>(std::llround(x * kGrid)), kGrid),
                                Rational(static_cast<long>(std::llround(y * kGrid)), kGrid))
                      : UHPoint::approx(x, y);
      if (!in_reduced_F(z)) continue;
      out.push_back(mobius_apply(alpha, z));
      break;
    }
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (n_min < 2) throw std::invalid_argument("experiment needs n_min >= 2");
  if (!(step > 1.0)) throw std::invalid_argument("experiment needs step > 1");
  if (n_max < n_min) throw std::invalid_argument("experiment needs n_max >= n_min");
  if (!(y_cap > 1.0)) throw std::invalid_argument("experiment needs y_cap > 1");
  SubgroupSpec::parse(group);
}

std::vector<std::size_t> ExperimentConfig::sizes() const {
  std::vector<std::size_t> out;
  double n = static_cast<double>(n_min);
  while (std::llround(n) <= static_cast<long long>(n_max)) {
    auto v = static_cast<std::size_t>(std::llround(n));
    if (out.empty() || out.back() != v) out.push_back(v);
    n *= step;
  }
  return out;
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("bad experiment config: ") + e.what());
  }
  ExperimentConfig c;
  try {
    c.group = j.value("group", c.group);
    c.n_min = j.value("n_min", c.n_min);
    c.n_max = j.value("n_max", c.n_max);
    c.step = j.value("step", c.step);
    c.sampler = parse_sampler(j.value("sampler", std::string("grid")));
    c.seed = j.value("seed", c.seed);
    c.y_cap = j.value("y_cap", c.y_cap);
    c.output = j.value("output", c.output);
    c.plot_output = j.value("plot_output", c.plot_output);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad experiment config: ") + e.what());
  }
  c.validate();
  return c;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto spec = SubgroupSpec::parse(config.group);
  const double mu = static_cast<double>(spec.index());
  std::vector<ExperimentRow> rows;
  for (std::size_t n : config.sizes()) {
    auto points = sample_points(spec, n, config.sampler, mix(config.seed, n), config.y_cap);
    auto stats = distance_stats(points, spec);
    double log_n = std::log(static_cast<double>(n));
    ExperimentRow row;
    row.n = n;
    row.distinct = stats.distinct;
    row.quadruples = stats.quadruples;
    row.cs_bound = stats.bound();
    row.n_over_mu_log_n = static_cast<double>(n) / (mu * log_n);
    row.ratio = static_cast<double>(stats.distinct) * mu * log_n / static_cast<double>(n);
    rows.push_back(row);
  }
  return rows;
}

void write_experiment_csv(std::ostream& out, const ExperimentConfig& config,
                          const std::vector<ExperimentRow>& rows) {
  out << kExperimentSchema << " group=" << config.group << " sampler=" << to_string(config.sampler)
      << " seed=" << config.seed << " y_cap=" << fmt(config.y_cap) << "\n";
  out << "N,distinct,Q,cs_bound,n_over_mu_log_n,ratio\n";
  for (const auto& r : rows)
    out << r.n << "," << r.distinct << "," << r.quadruples << "," << fmt(r.cs_bound) << ","
        << fmt(r.n_over_mu_log_n) << "," << fmt(r.ratio) << "\n";
}

void emit_plot_data(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "N,distinct,Q,cs_bound,ratio,log_N,log_distinct,log_Q\n";
  for (const auto& r : rows)
    out << r.n << "," << r.distinct << "," << r.quadruples << "," << fmt(r.cs_bound) << ","
        << fmt(r.ratio) << "," << fmt(std::log(static_cast<double>(r.n))) << ","
        << fmt(std::log(static_cast<double>(std::max<std::size_t>(r.distinct, 1)))) << ","
        << fmt(std::log(static_cast<double>(std::max<std::uint64_t>(r.quadruples, 1)))) << "\n";
}

std::vector<UHPoint> read_points(std::istream& in) {
  std::vector<UHPoint> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back(parse_point(line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

std::vector<UHPoint> read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open points file " + path);
  return read_points(in);
}

}  // namespace hypsurf
