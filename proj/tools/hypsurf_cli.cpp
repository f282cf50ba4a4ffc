// hypsurf: command line front end for surface distances, covers and
// distinct-distance experiments.
#include "hypsurf/experiment.hpp"
#include "hypsurf/search.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

using namespace hypsurf;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

json element_json(const ModularElement& g) { return json::array({g.a(), g.b(), g.c(), g.d()}); }

json elements_json(const std::vector<ModularElement>& gs) {
  json out = json::array();
  for (const auto& g : gs) out.push_back(element_json(g));
  return out;
}

json key_json(const DistanceKey& k) {
  json out;
  out["two_cosh"] = k.to_string();
  out["exact"] = k.is_exact();
  out["cosh"] = k.cosh();
  out["distance"] = k.distance();
  return out;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  return out;
}

int cmd_distance(const std::string& group, const std::string& p_text, const std::string& q_text,
                 const std::string& method) {
  auto spec = SubgroupSpec::parse(group);
  UHPoint p = parse_point(p_text), q = parse_point(q_text);
  json out;
  out["group"] = spec.name();
  if (method == "oracle") {
    out["method"] = "oracle";
    out["value"] = key_json(surface_distance_oracle(p, q, spec));
    print(out);
    return kOk;
  }
  // Covers act on F, so the full group may move both points there first.
  if (spec.kind() == SubgroupKind::Full) {
    p = reduce_to_F(p).point;
    q = reduce_to_F(q).point;
  }
  Zone zp = classify_in_F(p), zq = classify_in_F(q);
  if (zp != Zone::Outside && zp == zq) {
    auto cover = zp == Zone::Cusp ? cover_Fu(spec) : cover_Fo(spec);
    out["method"] = "cover";
    out["region"] = cover.region.name();
    out["cover_size"] = cover.size();
    out["value"] = key_json(surface_distance_cover(p, q, cover));
  } else {
    out["method"] = "oracle";
    out["note"] = "points are not in one cover region";
    out["value"] = key_json(surface_distance_oracle(p, q, spec));
  }
  print(out);
  return kOk;
}

int cmd_cover(const std::string& group, const std::string& region, std::size_t verify,
              std::uint64_t seed) {
  auto spec = SubgroupSpec::parse(group);
  auto cover = region == "fu" ? cover_Fu(spec) : cover_Fo(spec);
  json out;
  out["group"] = spec.name();
  out["region"] = cover.region.name();
  out["provenance"] = to_string(cover.provenance);
  out["size"] = cover.size();
  out["elements"] = elements_json(cover.elements);
  int code = kOk;
  if (verify > 0) {
    auto r = verify_cover(cover, verify, seed);
    json rep;
    rep["pass"] = r.pass;
    rep["pairs"] = r.pairs;
    rep["seed"] = r.seed;
    rep["worst_gap"] = r.worst_gap;
    if (r.first_failure) {
      rep["first_failure"] = {{"p", r.first_failure->p.to_string()},
                              {"q", r.first_failure->q.to_string()},
                              {"via_cover", r.first_failure->via_cover.to_string()},
                              {"surface", r.first_failure->true_distance.to_string()}};
    }
    rep["missing_realisers"] = elements_json(r.missing_realisers);
    out["verification"] = rep;
    if (!r.pass) code = kFailed;
  }
  print(out);
  return code;
}

int cmd_enumerate(const std::string& group, const std::string& center, const std::string& source,
                  const std::string& cosh_text) {
  auto spec = SubgroupSpec::parse(group);
  BallQuery q{spec, parse_point(center), parse_point(source), 1.0, std::nullopt};
  Scalar h = parse_scalar(cosh_text);
  if (auto* exact = std::get_if<Rational>(&h)) {
    q.cosh_threshold = exact->get_d();
    q.exact_cosh_threshold = *exact;
  } else {
    q.cosh_threshold = std::get<double>(h);
  }
  print(elements_json(enumerate_ball(q)));
  return kOk;
}

int cmd_stats(const std::string& group, const std::string& points_file, const std::string& csv) {
  auto spec = SubgroupSpec::parse(group);
  auto points = read_points_file(points_file);
  auto s = distance_stats(points, spec);
  json out;
  out["group"] = spec.name();
  out["input_points"] = s.input_points;
  out["points"] = s.points;
  out["collapsed"] = s.collapsed;
  out["distinct"] = s.distinct;
  out["ordered_pairs"] = s.ordered_pairs;
  out["Q"] = s.quadruples;
  out["cs_bound"] = to_string(s.cauchy_schwarz_bound());
  out["cs_holds"] = s.cauchy_schwarz_holds();
  print(out);
  if (!csv.empty()) {
    auto file = open_output(csv);
    file << "two_cosh,ordered_pairs\n";
    file.precision(17);
    for (const auto& m : s.multiplicities) file << m.two_cosh << "," << m.ordered_pairs << "\n";
  }
  return kOk;
}

int cmd_sample(const std::string& group, std::size_t n, std::uint64_t seed, const std::string& sampler) {
  auto spec = SubgroupSpec::parse(group);
  for (const auto& z : sample_points(spec, n, parse_sampler(sampler), seed)) std::cout << z.to_string() << "\n";
  return kOk;
}

int cmd_equilateral(const std::string& group, std::size_t k, double d, std::size_t budget,
                    std::uint64_t seed) {
  auto spec = SubgroupSpec::parse(group);
  EquilateralOptions opts;
  opts.budget = budget;
  opts.seed = seed;
  auto c = equilateral_search(spec, k, d, opts);
  json out;
  out["group"] = spec.name();
  out["k"] = k;
  out["d"] = d;
  out["found"] = c.has_value();
  if (c) {
    json pts = json::array();
    for (const auto& z : c->points) pts.push_back(z.to_approx().to_string());
    out["points"] = pts;
    out["two_cosh"] = c->common.two_cosh();
    out["residual"] = c->residual;
  }
  print(out);
  return c ? kOk : kFailed;
}

int cmd_experiment(const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) throw std::invalid_argument("cannot open config " + config_path);
  std::stringstream text;
  text << in.rdbuf();
  auto config = parse_experiment_config(text.str());
  auto rows = run_experiment(config);
  if (config.output.empty()) {
    write_experiment_csv(std::cout, config, rows);
  } else {
    auto out = open_output(config.output);
    write_experiment_csv(out, config, rows);
  }
  if (!config.plot_output.empty()) {
    auto out = open_output(config.plot_output);
    emit_plot_data(out, rows);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distances on modular surfaces"};
  app.require_subcommand(1);
  std::string group = "full";
  std::function<int()> action;

  auto* distance = app.add_subcommand("distance", "surface distance between two points");
  std::string p, q, method = "cover";
  distance->add_option("--group", group, "full | gamma:N | gamma0:N | gamma1:N");
  distance->add_option("--p", p, "first point x,y")->required();
  distance->add_option("--q", q, "second point x,y")->required();
  distance->add_option("--method", method)->check(CLI::IsMember({"cover", "oracle"}));
  distance->callback([&] { action = [&] { return cmd_distance(group, p, q, method); }; });

  auto* cover = app.add_subcommand("cover", "geodesic cover of F_u or F_o");
  std::string region = "fo";
  std::size_t verify = 0;
  std::uint64_t seed = 1;
  cover->add_option("--group", group);
  cover->add_option("--region", region)->check(CLI::IsMember({"fu", "fo"}));
  cover->add_option("--verify", verify, "number of sampled pairs to verify");
  cover->add_option("--seed", seed);
  cover->callback([&] { action = [&] { return cmd_cover(group, region, verify, seed); }; });

  auto* enumerate = app.add_subcommand("enumerate", "group elements in a hyperbolic ball");
  std::string center, source, cosh_text;
  enumerate->add_option("--group", group);
  enumerate->add_option("--center", center)->required();
  enumerate->add_option("--source", source)->required();
  enumerate->add_option("--cosh", cosh_text, "cosh of the radius")->required();
  enumerate->callback([&] { action = [&] { return cmd_enumerate(group, center, source, cosh_text); }; });

  auto* stats = app.add_subcommand("stats", "distinct distances of a point set");
  std::string points_file, csv;
  stats->add_option("--group", group);
  stats->add_option("--points", points_file, "one x,y per line")->required();
  stats->add_option("--csv", csv, "write the distance histogram here");
  stats->callback([&] { action = [&] { return cmd_stats(group, points_file, csv); }; });

  auto* sample = app.add_subcommand("sample", "random points of the surface");
  std::size_t n = 10;
  std::string sampler = "grid";
  sample->add_option("--group", group);
  sample->add_option("-n", n)->required();
  sample->add_option("--seed", seed);
  sample->add_option("--sampler", sampler)->check(CLI::IsMember({"grid", "uniform"}));
  sample->callback([&] { action = [&] { return cmd_sample(group, n, seed, sampler); }; });

  auto* equilateral = app.add_subcommand("equilateral", "search for equilateral point sets");
  std::size_t k = 3, budget = 400;
  double d = 1.0;
  equilateral->add_option("--group", group);
  equilateral->add_option("-k", k)->required();
  equilateral->add_option("-d", d)->required();
  equilateral->add_option("--budget", budget);
  equilateral->add_option("--seed", seed);
  equilateral->callback([&] { action = [&] { return cmd_equilateral(group, k, d, budget, seed); }; });

  auto* experiment = app.add_subcommand("experiment", "distinct-distance sweep over N");
  std::string config;
  experiment->add_option("--config", config, "JSON configuration")->required();
  experiment->callback([&] { action = [&] { return cmd_experiment(config); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  try {
    return action();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
}
