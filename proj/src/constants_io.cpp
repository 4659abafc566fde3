#include "mixid/constants_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mixid {

namespace {

using nlohmann::json;

Rat jrat(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  return Rat::parse(j.get<std::string>());
}

FqVec jvec(const json& j) {
  FqVec v;
  for (const auto& entry : j) {
    v.c.push_back({entry.at(0).get<std::int32_t>(), entry.at(1).get<std::int32_t>()});
  }
  return v;
}

Aut parse_constant(const json& spec, StructureOracle* oracle) {
  std::string type = spec.at("type").get<std::string>();
  if (type == "plq") {
    std::vector<Rat> breaks;
    for (const auto& b : spec.at("breaks")) breaks.push_back(jrat(b));
    std::vector<std::pair<Rat, Rat>> pieces;
    for (const auto& p : spec.at("pieces")) pieces.push_back({jrat(p.at(0)), jrat(p.at(1))});
    return make_plq_aut(PlqMap(std::move(breaks), std::move(pieces)));
  }
  if (type == "bump") return make_plq_aut(PlqMap::bump(jrat(spec.at("from")), jrat(spec.at("to"))));
  if (type == "shift") return make_plq_aut(PlqMap::shift(jrat(spec.at("by"))));
  if (type == "perm") {
    std::vector<std::vector<std::int64_t>> cycles;
    for (const auto& c : spec.at("cycles")) cycles.push_back(c.get<std::vector<std::int64_t>>());
    return make_finperm_aut(FinPerm::from_cycles(cycles));
  }
  if (type == "rotation") return make_circle_aut(CircleMap::rotation(jrat(spec.at("by"))));
  if (type == "circle-bump") {
    return make_circle_aut(CircleMap::bump(Arc{jrat(spec.at("from")), jrat(spec.at("to"))}));
  }
  if (type == "reflection") return make_circle_aut(CircleMap::reflection());
  if (type == "ek") {
    int k = spec.at("k").get<int>();
    if (spec.contains("class_shift") && spec.at("class_shift").get<std::int64_t>() != 0) {
      return make_ek_aut(EkAut::class_shift(k, spec.at("class_shift").get<std::int64_t>()));
    }
    std::vector<std::vector<std::int64_t>> cycles;
    if (spec.contains("class_cycles")) {
      for (const auto& c : spec.at("class_cycles")) {
        cycles.push_back(c.get<std::vector<std::int64_t>>());
      }
    }
    std::vector<int> dflt;
    if (spec.contains("default_table")) {
      dflt = spec.at("default_table").get<std::vector<int>>();
    } else {
      for (int i = 0; i < k; ++i) dflt.push_back(i);
    }
    std::map<std::int64_t, std::vector<int>> exc;
    if (spec.contains("exceptions")) {
      for (const auto& [cls, table] : spec.at("exceptions").items()) {
        exc[std::stoll(cls)] = table.get<std::vector<int>>();
      }
    }
    return make_ek_aut(EkAut::from_parts(k, FinPerm::from_cycles(cycles), dflt, exc));
  }
  if (type == "gl") {
    int q = spec.at("q").get<int>();
    int lambda = spec.at("lambda").get<int>();
    std::vector<std::pair<FqVec, FqVec>> rows;
    if (spec.contains("rows")) {
      for (const auto& r : spec.at("rows")) {
        rows.push_back({jvec(r.at("image")), jvec(r.at("functional"))});
      }
    }
    return make_gl_aut(GlAut(q, lambda, std::move(rows)));
  }
  if (type == "lazy") {
    if (!oracle) throw std::invalid_argument("lazy constant needs a structure oracle");
    std::uint64_t salt = spec.contains("salt") ? spec.at("salt").get<std::uint64_t>() : 1;
    return make_lazy_aut(oracle, salt | 1);
  }
  throw std::invalid_argument("unknown constant type: " + type);
}

PLHomeo parse_pl01(const json& spec) {
  std::vector<std::pair<Rat, Rat>> pts;
  for (const auto& p : spec.at("points")) pts.push_back({jrat(p.at(0)), jrat(p.at(1))});
  return PLHomeo::from_points(std::move(pts));
}

}  // namespace

ConstantFile parse_constant_file(const std::string& json_text, StructureOracle* oracle) {
  json j = json::parse(json_text);
  ConstantFile out;
  if (j.contains("structure")) out.structure = j.at("structure").get<std::string>();
  if (!j.contains("constants")) return out;
  for (const auto& [name, spec] : j.at("constants").items()) {
    std::string type = spec.at("type").get<std::string>();
    if (type == "pl01") {
      out.pl_constants[name] = parse_pl01(spec);
    } else {
      out.constants[name] = parse_constant(spec, oracle);
    }
  }
  return out;
}

ConstantFile load_constant_file(const std::string& path, StructureOracle* oracle) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open constant file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_constant_file(ss.str(), oracle);
}

}  // namespace mixid
