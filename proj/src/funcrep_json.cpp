#include "mixnorm/funcrep_json.hpp"

#include <cmath>

#include "json.hpp"

namespace mixnorm {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::SpecParse, msg); }

double num(const json& j, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
  }
  fail(std::string("field '") + key + "' must be a number or \"inf\"");
}

double req(const json& j, const char* key) {
  if (!j.contains(key)) fail(std::string("missing field '") + key + "'");
  return num(j, key, 0.0);
}

std::vector<double> numbers(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) fail(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (v.is_number()) out.push_back(v.get<double>());
    else if (v.is_string() && v.get<std::string>() == "inf") out.push_back(kInfinity);
    else fail(std::string("non-numeric entry in '") + key + "'");
  }
  return out;
}

DimPair dims_of(const json& j) {
  if (!j.contains("dims")) return {};
  const json& d = j.at("dims");
  if (d.is_array() && d.size() == 2) return DimPair(d[0].get<int>(), d[1].get<int>());
  if (d.is_object()) return DimPair(d.value("n", 1), d.value("m", 1));
  fail("dims must be [n, m] or {\"n\":..,\"m\":..}");
}

RegionSpec region_of(const json& j) {
  if (!j.contains("region")) return {};
  const json& r = j.at("region");
  if (!r.is_object()) fail("region must be an object");
  if (r.contains("box")) {
    const json& b = r.at("box");
    if (!b.is_array() || b.size() != 2) fail("region.box must be [rx, ry]");
    return RegionSpec::box(b[0].get<double>(), b[1].get<double>());
  }
  RegionSpec R;
  R.x_lower = num(r, "x_lower", R.x_lower);
  R.x_upper_coeff = num(r, "x_upper_coeff", R.x_upper_coeff);
  R.x_upper_exp = num(r, "x_upper_exp", R.x_upper_exp);
  R.x_upper_sub_coeff = num(r, "x_upper_sub_coeff", R.x_upper_sub_coeff);
  R.x_upper_sub_exp = num(r, "x_upper_sub_exp", R.x_upper_sub_exp);
  R.y_lower = num(r, "y_lower", R.y_lower);
  R.y_upper = num(r, "y_upper", R.y_upper);
  std::string rel = r.value("relation", std::string("none"));
  if (rel == "none") R.relation = Relation::none;
  else if (rel == "y_le_x") R.relation = Relation::y_le_x;
  else if (rel == "two_y_le_x") R.relation = Relation::two_y_le_x;
  else fail("unknown region relation '" + rel + "'");
  return R;
}

Func1D parse1d(const json& j) {
  if (!j.is_object() || !j.contains("kind")) fail("one-variable spec needs a 'kind'");
  std::string k = j.at("kind").get<std::string>();
  if (k == "power") return Func1D::power(num(j, "c", 1.0), req(j, "a"), num(j, "lo", 0.0), num(j, "hi", kInfinity));
  if (k == "indicator") return Func1D::indicator(num(j, "lo", 0.0), req(j, "hi"), num(j, "c", 1.0));
  if (k == "grid1d" || k == "grid") {
    Grid1D g;
    g.nodes = numbers(j, "nodes");
    g.values = numbers(j, "values");
    g.n = j.value("n", 1);
    if (g.nodes.size() != g.values.size() + 1 || g.nodes.empty() || g.nodes[0] != 0.0)
      fail("grid1d needs nodes 0 = r_0 < ... < r_K and K values");
    for (size_t i = 0; i + 1 < g.nodes.size(); ++i)
      if (!(g.nodes[i + 1] > g.nodes[i])) fail("grid1d nodes must increase");
    for (double v : g.values)
      if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::NonFiniteSample, "grid1d values must be finite and nonnegative");
    return Func1D(g);
  }
  fail("unknown one-variable kind '" + k + "'");
}

FuncRep parse(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) fail("function spec needs a string 'kind'");
  const std::string k = j.at("kind").get<std::string>();
  const DimPair d = dims_of(j);
  if (k == "power_product")
    return FuncRep::catalog(CatalogFunc::power_product(num(j, "c", 1.0), num(j, "a1", 0.0), num(j, "a2", 0.0), region_of(j)), d);
  if (k == "sum_power") return FuncRep::catalog(CatalogFunc::sum_power(req(j, "gamma"), region_of(j), num(j, "c", 1.0)), d);
  if (k == "max_power") return FuncRep::catalog(CatalogFunc::max_power(req(j, "gamma"), region_of(j), num(j, "c", 1.0)), d);
  if (k == "exp_g") {
    CatalogFunc c = CatalogFunc::exp_g(num(j, "a", std::exp(1.0)), num(j, "p1", 1.0));
    c.width = num(j, "width", c.width);
    c.c = num(j, "c", c.c);
    return FuncRep::catalog(c, d);
  }
  if (k == "log_damped") return FuncRep::catalog(CatalogFunc::log_damped(req(j, "gamma"), req(j, "q1"), num(j, "box", 0.5)), d);
  if (k == "shift_power") return FuncRep::catalog(CatalogFunc::shift_power(num(j, "c", 1.0), req(j, "a"), region_of(j)), d);
  if (k == "tensor") {
    if (!j.contains("f") || !j.contains("g")) fail("tensor needs 'f' and 'g'");
    return FuncRep::tensor(parse1d(j.at("f")), parse1d(j.at("g")));
  }
  if (k == "grid") {
    GridFunc g(numbers(j, "xnodes"), numbers(j, "ynodes"), numbers(j, "samples"), d, j.value("split_sign", false));
    return FuncRep::grid(std::move(g));
  }
  auto sub = [&](const char* key) -> FuncRep {
    if (!j.contains(key)) fail(k + " needs '" + key + "'");
    return parse(j.at(key));
  };
  if (k == "scale") return FuncRep::scale(sub("f"), req(j, "k"));
  if (k == "truncate") return FuncRep::truncate(sub("f"), num(j, "rx", kInfinity), num(j, "ry", kInfinity));
  if (k == "sum") return FuncRep::sum(sub("f"), sub("g"));
  if (k == "product") return FuncRep::product(sub("f"), sub("g"));
  if (k == "min") return FuncRep::min(sub("f"), sub("g"));
  if (k == "max") return FuncRep::max(sub("f"), sub("g"));
  fail("unknown function kind '" + k + "'");
}

json number_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

json region_json(const RegionSpec& R) {
  json r;
  r["x_lower"] = number_json(R.x_lower);
  r["x_upper_coeff"] = number_json(R.x_upper_coeff);
  r["x_upper_exp"] = number_json(R.x_upper_exp);
  r["x_upper_sub_coeff"] = number_json(R.x_upper_sub_coeff);
  r["x_upper_sub_exp"] = number_json(R.x_upper_sub_exp);
  r["y_lower"] = number_json(R.y_lower);
  r["y_upper"] = number_json(R.y_upper);
  r["relation"] = R.relation == Relation::none ? "none" : R.relation == Relation::y_le_x ? "y_le_x" : "two_y_le_x";
  return r;
}

json to_json1d(const Func1D& f) {
  json j;
  if (f.is_grid()) {
    j["kind"] = "grid1d";
    j["nodes"] = f.grid().nodes;
    j["values"] = f.grid().values;
    j["n"] = f.grid().n;
    return j;
  }
  const auto& ps = f.profile().pieces();
  if (ps.size() == 1 && ps[0].b == 0.0 && ps[0].e == 0.0) {
    j["kind"] = "power";
    j["c"] = ps[0].c;
    j["a"] = ps[0].a;
    j["lo"] = number_json(ps[0].t0);
    j["hi"] = number_json(ps[0].t1);
    return j;
  }
  throw Error(ErrorCode::InvalidArgument, "profile has no JSON form");
}

json to_json(const FuncRep& f) {
  using K = FuncRep::Kind;
  json j;
  j["dims"] = {f.dims().n, f.dims().m};
  switch (f.kind()) {
    case K::catalog: {
      const CatalogFunc& c = f.as_catalog();
      switch (c.kind) {
        case CatalogKind::power_product:
          j["kind"] = "power_product", j["c"] = c.c, j["a1"] = c.a1, j["a2"] = c.a2;
          break;
        case CatalogKind::sum_power: j["kind"] = "sum_power", j["gamma"] = c.gamma, j["c"] = c.c; break;
        case CatalogKind::max_power: j["kind"] = "max_power", j["gamma"] = c.gamma, j["c"] = c.c; break;
        case CatalogKind::exp_g:
          j["kind"] = "exp_g", j["a"] = c.base, j["p1"] = c.p1, j["width"] = c.width, j["c"] = c.c;
          return j;
        case CatalogKind::log_damped:
          j["kind"] = "log_damped", j["gamma"] = c.gamma, j["q1"] = c.q1, j["box"] = c.region.y_upper;
          return j;
        case CatalogKind::shift_power: j["kind"] = "shift_power", j["c"] = c.c, j["a"] = c.a1; break;
      }
      j["region"] = region_json(c.region);
      return j;
    }
    case K::grid: {
      const GridFunc& g = f.as_grid();
      j["kind"] = "grid";
      j["xnodes"] = g.xnodes;
      j["ynodes"] = g.ynodes;
      j["samples"] = g.samples;
      j["split_sign"] = g.split_sign;
      return j;
    }
    case K::tensor:
      j.erase("dims");
      j["kind"] = "tensor", j["f"] = to_json1d(f.tensor_f()), j["g"] = to_json1d(f.tensor_g());
      return j;
    case K::scale: j["kind"] = "scale", j["f"] = to_json(f.left()), j["k"] = f.scalar(); return j;
    case K::truncate: {
      auto [rx, ry] = f.truncate_bounds();
      j["kind"] = "truncate", j["f"] = to_json(f.left()), j["rx"] = number_json(rx), j["ry"] = number_json(ry);
      return j;
    }
    case K::sum: j["kind"] = "sum"; break;
    case K::product: j["kind"] = "product"; break;
    case K::min: j["kind"] = "min"; break;
    case K::max: j["kind"] = "max"; break;
  }
  j["f"] = to_json(f.left());
  j["g"] = to_json(f.right());
  return j;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

FuncRep func_from_json(const std::string& text) {
  if (text == "constant-indicator")
    return FuncRep::catalog(CatalogFunc::power_product(1.0, 0.0, 0.0, RegionSpec::box(1.0, 1.0)));
  try {
    return parse(parse_text(text));
  } catch (const json::exception& e) {
    fail(std::string("bad function spec: ") + e.what());
  }
}

Func1D func1d_from_json(const std::string& text) {
  try {
    return parse1d(parse_text(text));
  } catch (const json::exception& e) {
    fail(std::string("bad function spec: ") + e.what());
  }
}

std::string func_to_json(const FuncRep& f) { return to_json(f).dump(); }

OperatorSpec operator_from_json(const std::string& text) {
  try {
    json j = parse_text(text);
    std::string k = j.at("kind").get<std::string>();
    bool inv = j.value("inverse", false);
    OperatorKind kind;
    if (k == "T_gamma") kind = inv ? OperatorKind::T_gamma_inverse : OperatorKind::T_gamma;
    else if (k == "L_gamma") kind = inv ? OperatorKind::L_gamma_inverse : OperatorKind::L_gamma;
    else if (k == "I_alpha") kind = OperatorKind::I_alpha;
    else fail("unknown operator kind '" + k + "'");
    double g = j.contains("gamma") ? req(j, "gamma") : req(j, "alpha");
    return OperatorSpec(kind, g, dims_of(j));
  } catch (const json::exception& e) {
    fail(std::string("bad operator spec: ") + e.what());
  }
}

}  // namespace mixnorm
