// Command-line front end: loads spaces and families, runs the compactness
// criterion and the canned experiments, emits JSON reports and plot-ready
// CSV.  Exit codes: 0 success, 1 refuted verdict, 2 configuration or input
// errors.  All diagnostics are single lines prefixed "krtool: error:".

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kr/averaging.hpp"
#include "kr/compactness.hpp"
#include "kr/generators.hpp"
#include "kr/io.hpp"
#include "kr/kernels.hpp"
#include "kr/lipschitz.hpp"
#include "kr/space.hpp"

namespace {

using nlohmann::json;

struct ToolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

kr::SpacePtr space_from_arg(const std::string& arg) {
  if (arg.empty()) throw ToolError("--space is required");
  return kr::io::load_space(arg);
}

// A config entry may be a path string or an inline object.
std::string entry_text(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (v.is_string()) return kr::io::read_text(v.get<std::string>());
  return v.dump();
}

void emit(const std::string& text, const std::string& out_path) {
  const std::string payload =
      (!text.empty() && text.back() == '\n') ? text : text + "\n";
  std::cout << payload;
  if (!out_path.empty()) kr::io::write_text(out_path, payload);
}

std::string sibling(const std::string& out_path, const std::string& suffix) {
  const std::filesystem::path p(out_path);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

// ---- check ----------------------------------------------------------------

struct CheckArgs {
  std::string config_path;
  std::string space_path;
  std::string family_path;
  double p = 2.0;
  bool p_set = false;
  double epsilon = 0.0;
  bool epsilon_set = false;
  std::string out;
};

int run_check(const CheckArgs& args) {
  json cfg = json::object();
  if (!args.config_path.empty()) cfg = json::parse(kr::io::read_text(args.config_path));

  kr::SpacePtr space;
  if (!args.space_path.empty())
    space = space_from_arg(args.space_path);
  else if (cfg.contains("space"))
    space = kr::io::space_from_json_text(entry_text(cfg, "space"));
  else
    throw ToolError("no space given (flag --space or config key \"space\")");

  const double p = args.p_set ? args.p : cfg.value("p", 2.0);
  kr::LpConfig lp_cfg(p);

  kr::FunctionFamily family = [&] {
    if (!args.family_path.empty())
      return kr::io::load_family(args.family_path, space, lp_cfg);
    if (cfg.contains("family"))
      return kr::io::family_from_json_text(entry_text(cfg, "family"), space, lp_cfg);
    throw ToolError("no family given (flag --family or config key \"family\")");
  }();

  double epsilon = args.epsilon_set ? args.epsilon : cfg.value("epsilon", 0.0);
  if (epsilon <= 0.0) throw ToolError("epsilon must be positive");

  kr::CompactnessOptions options;
  if (cfg.contains("radius_grid"))
    options.radius_grid = cfg.at("radius_grid").get<std::vector<double>>();
  options.tail_base_point = cfg.value("tail_base_point", std::size_t{0});
  options.tail_radius_cap = cfg.value("tail_radius_cap", kr::kInf);

  const auto report = kr::is_relatively_compact(family, epsilon, lp_cfg, options);
  emit(kr::io::report_json(report), args.out);

  if (!args.out.empty()) {
    std::vector<std::vector<double>> avg_rows, tail_rows;
    for (std::size_t i = 0; i < report.avg_radii.size(); ++i)
      avg_rows.push_back({report.avg_radii[i], report.avg_max_deviation[i]});
    for (std::size_t i = 0; i < report.tail_radii.size(); ++i)
      tail_rows.push_back({report.tail_radii[i], report.tail_max[i]});
    kr::io::write_text(sibling(args.out, "_avg_profile.csv"),
                       kr::io::csv_table({"radius", "max_deviation"}, avg_rows));
    kr::io::write_text(sibling(args.out, "_tail_profile.csv"),
                       kr::io::csv_table({"candidate_radius", "max_tail"}, tail_rows));
  }
  return report.verdict == kr::Verdict::CertifiedPrecompact ? 0 : 1;
}

// ---- convergence -----------------------------------------------------------

int run_convergence(const std::string& config_path, const std::string& out) {
  if (config_path.empty()) throw ToolError("--config is required");
  const json cfg = json::parse(kr::io::read_text(config_path));
  const auto experiment = cfg.at("experiment").get<std::string>();
  const auto sizes = cfg.value("sizes", std::vector<std::size_t>{});

  std::string csv = "N,quantity,value\n";
  auto row = [&](std::size_t n, const std::string& q, double v) {
    csv += std::to_string(n) + "," + q + "," + kr::io::format_double(v) + "\n";
  };

  if (experiment == "lipschitz_rate") {
    const double bound = cfg.value("bound", 1.0);
    const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();
    const std::size_t steps = cfg.value("radius_steps", std::size_t{4});
    for (std::size_t n : sizes) {
      auto space = kr::make_circle_grid(n);
      auto f = kr::random_lipschitz_function(space, bound, seed);
      const double r = static_cast<double>(steps) / static_cast<double>(n);
      const auto averaged = kr::average(f, r);
      double worst = 0.0;
      for (std::size_t i = 0; i < space->size(); ++i)
        worst = std::max(worst, std::abs(averaged[i] - f[i]));
      row(n, "max_dev_over_lip_r", worst / (bound * r));
    }
  } else if (experiment == "spike_lip") {
    const double bound = cfg.value("class_bound", 2.0);
    const double epsilon = cfg.value("epsilon", 0.5);
    const double p = cfg.value("p", 2.0);
    for (std::size_t n : sizes) {
      auto space = kr::make_circle_grid(n);
      kr::LpFunction zero(space, std::vector<double>(space->size(), 0.0));
      kr::LipschitzClassSpec cls{bound, 0, kr::LpConfig(p)};
      const auto spike =
          kr::spike_deformation(zero, cls, epsilon, space->size() / 2);
      row(n, "achieved_lip", spike.achieved_lip);
      row(n, "deviation", spike.deviation);
    }
  } else {
    throw ToolError("unknown experiment \"" + experiment + "\"");
  }
  std::cout << csv;
  if (!out.empty()) kr::io::write_text(out, csv);
  return 0;
}

// ---- demo -----------------------------------------------------------------

int run_demo(const std::string& name) {
  auto line = [](const std::string& label, const std::string& body) {
    std::cout << label << ": " << body << '\n';
  };
  if (name == "three-points") {
    auto space = kr::make_explicit_coords({{0.0}, {1.0}, {3.0}}, {1.0, 1.0, 1.0});
    line("doubling", kr::io::doubling_json(kr::doubling_constant(*space)));
    kr::FunctionFamily family(space, {{2.0, 4.0, 6.0}, {2.05, 4.05, 6.05}});
    const auto net =
        kr::construct_epsilon_net(family, 0.5, 1.0, kr::PointSet::all(3), kr::LpConfig(1.0));
    line("net", kr::io::net_json(net));
    return 0;
  }
  if (name == "oscillation") {
    auto space = kr::make_circle_grid(1024);
    auto family = kr::oscillation_family(space, 32);
    kr::CompactnessOptions options;
    for (double r = 0.02; r <= 0.52; r *= 2.0) options.radius_grid.push_back(r);
    const auto report =
        kr::is_relatively_compact(family, 0.1, kr::LpConfig(2.0), options);
    line("oscillation", kr::io::report_json(report));
    return 0;
  }
  if (name == "escaping-mass") {
    auto space = kr::make_line_grid(1001, 100.0);
    auto family = kr::bump_family(space, 10, 10.0, 1.0);
    kr::CompactnessOptions options;
    options.tail_radius_cap = 40.0;
    const auto report =
        kr::is_relatively_compact(family, 0.5, kr::LpConfig(2.0), options);
    line("escaping-mass", kr::io::report_json(report));
    return 0;
  }
  if (name == "certify") {
    auto space = kr::make_circle_grid(256);
    kr::LipschitzClassSpec cls{5.0, 0, kr::LpConfig(2.0)};
    auto family = kr::random_class_family(space, 10, cls, 0.9, 42);
    const auto report = kr::is_relatively_compact(family, 0.25, kr::LpConfig(2.0));
    line("certify", kr::io::report_json(report));
    return 0;
  }
  throw ToolError("unknown demo \"" + name +
                  "\" (have: three-points, oscillation, escaping-mass, certify)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compactness toolkit for finite weighted metric spaces"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = library default)");

  // doubling
  std::string d_space, d_out;
  auto* cmd_doubling = app.add_subcommand("doubling", "doubling constant of a space");
  cmd_doubling->add_option("--space", d_space, "space JSON file")->required();
  cmd_doubling->add_option("--out", d_out, "write the JSON report here too");

  // avg
  std::string a_space, a_family, a_out, a_format = "json";
  double a_p = 2.0, a_radius = 0.0;
  bool a_profile = false;
  std::vector<double> a_grid;
  auto* cmd_avg = app.add_subcommand("avg", "ball averages of a family");
  cmd_avg->add_option("--space", a_space)->required();
  cmd_avg->add_option("--family", a_family)->required();
  cmd_avg->add_option("--p", a_p, "exponent");
  cmd_avg->add_option("--radius", a_radius, "averaging radius");
  cmd_avg->add_flag("--profile", a_profile, "emit deviation profile over a radius grid");
  cmd_avg->add_option("--grid", a_grid, "profile radii (default: dyadic)")
      ->delimiter(',');
  cmd_avg->add_option("--format", a_format)->check(CLI::IsMember({"json", "csv"}));
  cmd_avg->add_option("--out", a_out);

  // check
  CheckArgs check_args;
  auto* cmd_check = app.add_subcommand("check", "full compactness criterion");
  cmd_check->add_option("--config", check_args.config_path, "experiment config JSON");
  cmd_check->add_option("--space", check_args.space_path);
  cmd_check->add_option("--family", check_args.family_path);
  cmd_check->add_option("--p", check_args.p);
  cmd_check->add_option("--epsilon", check_args.epsilon);
  cmd_check->add_option("--out", check_args.out, "report path (profiles written alongside)");

  // net
  std::string n_space, n_family, n_out;
  double n_p = 2.0, n_epsilon = 0.0, n_radius = 0.0;
  bool n_oracle = false;
  auto* cmd_net = app.add_subcommand("net", "construct and certify an epsilon net");
  cmd_net->add_option("--space", n_space)->required();
  cmd_net->add_option("--family", n_family)->required();
  cmd_net->add_option("--p", n_p);
  cmd_net->add_option("--epsilon", n_epsilon)->required();
  cmd_net->add_option("--radius", n_radius, "averaging radius (default: half min separation)");
  cmd_net->add_flag("--oracle", n_oracle, "also run the greedy member-net oracle");
  cmd_net->add_option("--out", n_out);

  // extend
  std::string e_space, e_partial, e_out;
  auto* cmd_extend = app.add_subcommand("extend", "largest-minorant Lipschitz extension");
  cmd_extend->add_option("--space", e_space)->required();
  cmd_extend->add_option("--partial", e_partial, "partial function JSON")->required();
  cmd_extend->add_option("--out", e_out);

  // deform
  std::string f_space, f_function, f_out, f_mode = "scale";
  double f_p = 2.0, f_epsilon = 0.0, f_bound = 1.0;
  std::size_t f_base = 0;
  std::int64_t f_spike_at = -1;
  auto* cmd_deform = app.add_subcommand("deform", "class-preserving deformations");
  cmd_deform->add_option("--space", f_space)->required();
  cmd_deform->add_option("--function", f_function)->required();
  cmd_deform->add_option("--p", f_p);
  cmd_deform->add_option("--epsilon", f_epsilon)->required();
  cmd_deform->add_option("--bound", f_bound, "class bound")->required();
  cmd_deform->add_option("--base", f_base, "class base point");
  cmd_deform->add_option("--mode", f_mode)->check(CLI::IsMember({"scale", "spike"}));
  cmd_deform->add_option("--spike-at", f_spike_at,
                         "spike reference point (default: farthest from base)");
  cmd_deform->add_option("--out", f_out);

  // densify
  std::string s_space, s_function, s_out;
  double s_p = 2.0, s_epsilon = 0.0;
  auto* cmd_densify = app.add_subcommand("densify", "disjoint-ball ramp approximant");
  cmd_densify->add_option("--space", s_space)->required();
  cmd_densify->add_option("--function", s_function)->required();
  cmd_densify->add_option("--p", s_p);
  cmd_densify->add_option("--epsilon", s_epsilon)->required();
  cmd_densify->add_option("--out", s_out);

  // convergence
  std::string c_config, c_out;
  auto* cmd_conv = app.add_subcommand("convergence", "mesh refinement studies");
  cmd_conv->add_option("--config", c_config)->required();
  cmd_conv->add_option("--out", c_out);

  // demo
  std::string demo_name;
  auto* cmd_demo = app.add_subcommand("demo", "named canned experiments");
  cmd_demo->add_option("--name", demo_name)->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "krtool: error: " << e.what() << '\n';
    return 2;
  }

  check_args.p_set = cmd_check->count("--p") > 0;
  check_args.epsilon_set = cmd_check->count("--epsilon") > 0;

  try {
    if (threads > 0) kr::kernels::set_threads(threads);

    if (cmd_doubling->parsed()) {
      const auto space = space_from_arg(d_space);
      emit(kr::io::doubling_json(kr::doubling_constant(*space)), d_out);
      return 0;
    }

    if (cmd_avg->parsed()) {
      auto space = space_from_arg(a_space);
      const kr::LpConfig cfg(a_p);
      const auto family = kr::io::load_family(a_family, space, cfg);
      if (a_profile) {
        auto grid = a_grid.empty() ? kr::dyadic_radius_grid(*space) : a_grid;
        const auto profile = kr::differentiation_profile(family, grid, cfg);
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < profile.radii.size(); ++i)
          for (std::size_t m = 0; m < profile.deviations[i].size(); ++m)
            rows.push_back({profile.radii[i], static_cast<double>(m),
                            profile.deviations[i][m]});
        emit(kr::io::csv_table({"radius", "member_index", "deviation"}, rows), a_out);
        return 0;
      }
      if (a_radius <= 0.0) throw ToolError("--radius or --profile is required");
      const auto averaged = kr::family_average_values(family, a_radius);
      if (a_format == "csv") {
        std::vector<std::vector<double>> rows;
        for (std::size_t m = 0; m < averaged.size(); ++m)
          for (std::size_t i = 0; i < averaged[m].size(); ++i)
            rows.push_back({static_cast<double>(m), static_cast<double>(i),
                            averaged[m][i]});
        emit(kr::io::csv_table({"member_index", "point", "value"}, rows), a_out);
      } else {
        emit(kr::io::family_json(kr::FunctionFamily(space, averaged)), a_out);
      }
      return 0;
    }

    if (cmd_check->parsed()) return run_check(check_args);

    if (cmd_net->parsed()) {
      auto space = space_from_arg(n_space);
      const kr::LpConfig cfg(n_p);
      const auto family = kr::io::load_family(n_family, space, cfg);
      double radius = n_radius;
      if (radius <= 0.0) {
        const double sep = space->min_separation();
        radius = std::isfinite(sep) ? sep / 2.0 : 1.0;
      }
      const auto net = kr::construct_epsilon_net(
          family, n_epsilon, radius, kr::PointSet::all(space->size()), cfg);
      if (n_oracle) {
        const auto oracle = kr::greedy_net_oracle(family, n_epsilon, cfg);
        json j;
        j["net"] = json::parse(kr::io::net_json(net));
        j["oracle"] = {{"size", oracle.elements.size()},
                       {"achieved", oracle.achieved},
                       {"member_distance", oracle.member_distance}};
        emit(j.dump(), n_out);
      } else {
        emit(kr::io::net_json(net), n_out);
      }
      return net.certified ? 0 : 1;
    }

    if (cmd_extend->parsed()) {
      auto space = space_from_arg(e_space);
      const auto partial = kr::io::load_partial(e_partial, space);
      emit(kr::io::function_json(kr::mcshane_extend(partial)), e_out);
      return 0;
    }

    if (cmd_deform->parsed()) {
      auto space = space_from_arg(f_space);
      const kr::LpConfig cfg(f_p);
      const auto fn = kr::io::load_function(f_function, space);
      const kr::LipschitzClassSpec cls{f_bound, f_base, cfg};
      if (f_mode == "scale") {
        emit(kr::io::function_json(kr::scale_deformation(fn, cls, f_epsilon)), f_out);
        return 0;
      }
      std::size_t y0;
      if (f_spike_at >= 0) {
        y0 = static_cast<std::size_t>(f_spike_at);
      } else {
        const auto row = space->dist_row(f_base);
        y0 = f_base;
        for (std::size_t i = 0; i < space->size(); ++i)
          if (row[i] > row[y0]) y0 = i;
      }
      const auto spike = kr::spike_deformation(fn, cls, f_epsilon, y0);
      json j;
      j["values"] = spike.result.values();
      j["r1"] = spike.r1;
      j["r2"] = spike.r2;
      j["max_lip_norm"] = spike.m;
      j["deviation"] = spike.deviation;
      j["achieved_lip"] = spike.achieved_lip;
      j["spike_pair_present"] = spike.spike_pair_present;
      emit(j.dump(), f_out);
      return 0;
    }

    if (cmd_densify->parsed()) {
      auto space = space_from_arg(s_space);
      const kr::LpConfig cfg(s_p);
      const auto fn = kr::io::load_function(s_function, space);
      emit(kr::io::approximant_json(kr::density_approximant(fn, s_epsilon, cfg)), s_out);
      return 0;
    }

    if (cmd_conv->parsed()) return run_convergence(c_config, c_out);
    if (cmd_demo->parsed()) return run_demo(demo_name);

    throw ToolError("no command selected");
  } catch (const std::exception& e) {
    std::cerr << "krtool: error: " << e.what() << '\n';
    return 2;
  }
}
