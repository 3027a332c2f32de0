#include "kr/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace kr::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail("malformed JSON");
  return j;
}

void check_space_hash(const json& j, const MetricMeasureSpace& space) {
  if (!j.contains("space_hash")) return;
  const auto stored = j.at("space_hash").get<std::string>();
  if (stored != space.hash())
    fail("file was written for a different space (hash " + stored +
         ", expected " + space.hash() + ")");
}

std::vector<double> doubles_of(const json& j) {
  if (!j.is_array()) fail("expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(v.get<double>());
  return out;
}

std::vector<std::vector<double>> matrix_of(const json& j) {
  if (!j.is_array()) fail("expected an array of rows");
  std::vector<std::vector<double>> out;
  out.reserve(j.size());
  for (const auto& row : j) out.push_back(doubles_of(row));
  return out;
}

json to_json(const std::vector<std::size_t>& v) {
  json out = json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path);
  out << content;
  if (!out) fail("write failed: " + path);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc{}) fail("number formatting failed");
  return {buf, res.ptr};
}

SpaceSpec space_spec_from_json_text(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("kind")) fail("space file needs a \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  SpaceSpec spec;
  if (kind == "explicit") {
    spec.kind = SpaceSpec::Kind::Explicit;
    if (j.contains("dist")) spec.dist = matrix_of(j.at("dist"));
    if (j.contains("coords")) spec.coords = matrix_of(j.at("coords"));
    if (spec.dist.empty() && spec.coords.empty())
      fail("explicit space needs \"dist\" or \"coords\"");
    spec.weights = doubles_of(j.at("weights"));
  } else if (kind == "circle") {
    spec.kind = SpaceSpec::Kind::Circle;
    spec.n = j.at("n").get<std::size_t>();
  } else if (kind == "line_grid") {
    spec.kind = SpaceSpec::Kind::LineGrid;
    spec.n = j.at("n").get<std::size_t>();
    spec.length = j.at("length").get<double>();
  } else if (kind == "random_cloud") {
    spec.kind = SpaceSpec::Kind::RandomCloud;
    spec.n = j.at("n").get<std::size_t>();
    spec.dim = j.at("dim").get<std::size_t>();
    spec.seed = j.at("seed").get<std::uint64_t>();
  } else {
    fail("unknown space kind \"" + kind + "\"");
  }
  return spec;
}

SpacePtr space_from_json_text(const std::string& text) {
  return build_space(space_spec_from_json_text(text));
}

SpacePtr load_space(const std::string& path) {
  return space_from_json_text(read_text(path));
}

std::string space_spec_json(const SpaceSpec& spec) {
  json j;
  switch (spec.kind) {
    case SpaceSpec::Kind::Explicit:
      j["kind"] = "explicit";
      if (!spec.dist.empty()) j["dist"] = spec.dist;
      if (!spec.coords.empty()) j["coords"] = spec.coords;
      j["weights"] = spec.weights;
      break;
    case SpaceSpec::Kind::Circle:
      j["kind"] = "circle";
      j["n"] = spec.n;
      break;
    case SpaceSpec::Kind::LineGrid:
      j["kind"] = "line_grid";
      j["n"] = spec.n;
      j["length"] = spec.length;
      break;
    case SpaceSpec::Kind::RandomCloud:
      j["kind"] = "random_cloud";
      j["n"] = spec.n;
      j["dim"] = spec.dim;
      j["seed"] = spec.seed;
      break;
  }
  return j.dump();
}

LpFunction function_from_json_text(const std::string& text, SpacePtr space) {
  const json j = parse(text);
  check_space_hash(j, *space);
  return {std::move(space), doubles_of(j.at("values"))};
}

LpFunction load_function(const std::string& path, SpacePtr space) {
  return function_from_json_text(read_text(path), std::move(space));
}

std::string function_json(const LpFunction& f) {
  json j;
  j["space_hash"] = f.space().hash();
  j["values"] = f.values();
  return j.dump();
}

FamilySpec family_spec_from_json_text(const std::string& text) {
  const json j = parse(text);
  FamilySpec spec;
  if (j.contains("members")) {
    spec.kind = FamilySpec::Kind::Explicit;
    spec.members = matrix_of(j.at("members"));
    return spec;
  }
  if (!j.contains("generator")) fail("family file needs \"members\" or \"generator\"");
  const auto name = j.at("generator").get<std::string>();
  if (name == "oscillation") {
    spec.kind = FamilySpec::Kind::Oscillation;
    spec.k_max = j.at("k_max").get<std::size_t>();
  } else if (name == "translate_bumps") {
    spec.kind = FamilySpec::Kind::TranslateBumps;
    spec.count = j.at("count").get<std::size_t>();
    spec.spacing = j.at("spacing").get<double>();
    spec.width = j.value("width", 1.0);
  } else if (name == "random_class") {
    spec.kind = FamilySpec::Kind::RandomClass;
    spec.count = j.at("count").get<std::size_t>();
    spec.class_bound = j.at("class_bound").get<double>();
    spec.base_point = j.value("base_point", std::size_t{0});
    spec.margin = j.value("margin", 0.9);
    spec.seed = j.at("seed").get<std::uint64_t>();  // mandatory for random draws
  } else {
    fail("unknown family generator \"" + name + "\"");
  }
  return spec;
}

FunctionFamily family_from_json_text(const std::string& text, SpacePtr space,
                                     const LpConfig& cfg) {
  const json j = parse(text);
  if (j.contains("members")) check_space_hash(j, *space);
  return build_family(std::move(space), family_spec_from_json_text(text), cfg);
}

FunctionFamily load_family(const std::string& path, SpacePtr space,
                           const LpConfig& cfg) {
  return family_from_json_text(read_text(path), std::move(space), cfg);
}

std::string family_json(const FunctionFamily& family) {
  json j;
  j["space_hash"] = family.space().hash();
  j["members"] = family.member_values();
  return j.dump();
}

PartialFunction partial_from_json_text(const std::string& text, SpacePtr space) {
  const json j = parse(text);
  check_space_hash(j, *space);
  PartialFunction partial;
  partial.space = std::move(space);
  for (const auto& v : j.at("domain")) partial.domain.push_back(v.get<std::size_t>());
  partial.values = doubles_of(j.at("values"));
  partial.bound = j.at("bound").get<double>();
  return partial;
}

PartialFunction load_partial(const std::string& path, SpacePtr space) {
  return partial_from_json_text(read_text(path), std::move(space));
}

std::string partial_json(const PartialFunction& partial) {
  json j;
  j["space_hash"] = partial.space->hash();
  j["domain"] = to_json(partial.domain);
  j["values"] = partial.values;
  j["bound"] = partial.bound;
  return j.dump();
}

std::string doubling_json(const DoublingReport& report) {
  json j;
  j["gamma"] = report.gamma;
  j["witness_point"] = report.witness_point;
  j["witness_radius"] = report.witness_radius;
  j["critical_radii"] = report.critical_radii;
  return j.dump();
}

std::string net_json(const EpsilonNet& net) {
  json j;
  j["epsilon"] = net.epsilon;
  j["avg_radius"] = net.avg_radius;
  j["level_spacing"] = net.level_spacing;
  j["domain"] = to_json(net.domain.indices());
  j["centers"] = to_json(net.selection.centers);
  j["radii"] = net.selection.radii;
  j["residual_measure"] = net.selection.residual_measure;
  j["element_levels"] = net.element_levels;
  j["member_assigned_element"] = to_json(net.member_assigned_element);
  j["member_element"] = to_json(net.member_element);
  j["member_distance"] = net.member_distance;
  j["certified"] = net.certified;
  return j.dump();
}

std::string report_json(const CompactnessReport& report) {
  json j;
  j["verdict"] = verdict_label(report.verdict);
  j["epsilon"] = report.epsilon;
  j["delta"] = report.delta ? json(*report.delta) : json(nullptr);
  j["tail_radius"] = report.tail_radius ? json(*report.tail_radius) : json(nullptr);
  j["net_size"] = report.net ? json(report.net->element_levels.size()) : json(nullptr);
  j["certified_radius"] =
      report.certified_radius ? json(*report.certified_radius) : json(nullptr);
  if (report.witness) {
    j["witness"] = {{"member", report.witness->member},
                    {"radius", report.witness->radius},
                    {"value", report.witness->value}};
  } else {
    j["witness"] = nullptr;
  }
  return j.dump();
}

std::string approximant_json(const DensityApproximant& approx) {
  json j;
  j["centers"] = to_json(approx.centers);
  j["outer_radii"] = approx.outer_radii;
  j["inner_radii"] = approx.inner_radii;
  j["levels"] = approx.levels;
  j["values"] = approx.g;
  j["achieved_error"] = approx.achieved_error;
  j["lip"] = approx.lip;
  return j.dump();
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) out += ',';
    out += header[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) fail("csv row width mismatch");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace kr::io
