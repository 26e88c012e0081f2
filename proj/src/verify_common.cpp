#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "mixnorm/families.hpp"
#include "verify_internal.hpp"

namespace mixnorm {

using detail::fmt;

const char* check_kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::upper_bound: return "upper_bound";
    case CheckKind::lower_bound: return "lower_bound";
    case CheckKind::equality: return "equality";
    case CheckKind::divergence: return "divergence";
    case CheckKind::finite: return "finite";
    case CheckKind::growth: return "growth";
  }
  return "?";
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::indeterminate: return "indeterminate";
  }
  return "?";
}

CheckRecord make_check(std::string id, CheckKind kind, const NormResult& lhs, const NormResult& rhs,
                       double constant, double tol_rel, std::string notes) {
  CheckRecord r;
  r.id = std::move(id);
  r.kind = kind;
  r.lhs = lhs;
  r.rhs = rhs;
  r.constant = constant;
  r.tol_rel = tol_rel;
  r.notes = std::move(notes);
  const double L = lhs.value;
  const double R = rhs.is_inf() ? kInfinity : constant * rhs.value;
  const bool li = std::isinf(L), ri = std::isinf(R);
  auto rel = [&](double d) {
    double den = std::max(std::fabs(L), std::fabs(R));
    return den > 0 ? d / den : 0.0;
  };
  auto set = [&](Outcome o, double m) {
    r.outcome = o;
    r.margin = m;
  };
  if (std::isnan(L) || std::isnan(R)) {
    set(Outcome::fail, -1);
    r.notes += r.notes.empty() ? "nan" : "; nan";
    return r;
  }
  switch (kind) {
    case CheckKind::upper_bound:
      if (li && ri) set(Outcome::indeterminate, 0);
      else if (li) set(Outcome::fail, -1);
      else if (ri) set(Outcome::pass, 1);
      else {
        double m = rel(R - L);
        set(m >= -tol_rel ? Outcome::pass : Outcome::fail, m);
      }
      break;
    case CheckKind::lower_bound:
      if (li && ri) set(Outcome::indeterminate, 0);
      else if (ri) set(Outcome::fail, -1);
      else if (li) set(Outcome::pass, 1);
      else {
        double m = rel(L - R);
        set(m >= -tol_rel ? Outcome::pass : Outcome::fail, m);
      }
      break;
    case CheckKind::equality:
      if (li && ri) set(Outcome::indeterminate, 0);
      else if (li || ri) set(Outcome::fail, -1);
      else {
        double m = -rel(std::fabs(R - L));
        set(m >= -tol_rel ? Outcome::pass : Outcome::fail, m);
      }
      break;
    case CheckKind::divergence:
      // lhs must be declared infinite while the bounded side stays finite
      if (!li) set(Outcome::fail, -1);
      else if (ri) set(Outcome::indeterminate, 0);
      else set(Outcome::pass, 1);
      break;
    case CheckKind::finite:
      set(li ? Outcome::fail : Outcome::pass, li ? -1 : 1);
      break;
    case CheckKind::growth:
      set(Outcome::fail, -1);
      break;
  }
  return r;
}

CheckRecord make_growth_check(std::string id, const GrowthFit& fit, double predicted, std::string notes) {
  CheckRecord r;
  r.id = std::move(id);
  r.kind = CheckKind::growth;
  r.fit = fit;
  r.predicted = predicted;
  r.samples = fit.values.size();
  r.tol_rel = 0.15;
  r.lhs = detail::quad_value(fit.exponent);
  r.rhs = detail::exact_value(predicted);
  r.margin = predicted != 0 ? 0.15 - std::fabs(fit.exponent - predicted) / std::fabs(predicted) : 0.0;
  r.outcome = growth_matches(fit, predicted) ? Outcome::pass : Outcome::fail;
  r.notes = std::move(notes);
  if (fit.degenerate) r.notes += r.notes.empty() ? "degenerate fit" : "; degenerate fit";
  return r;
}

std::size_t VerificationReport::passed() const {
  return std::count_if(checks.begin(), checks.end(), [](auto& c) { return c.outcome == Outcome::pass; });
}
std::size_t VerificationReport::failed() const {
  return std::count_if(checks.begin(), checks.end(), [](auto& c) { return c.outcome == Outcome::fail; });
}
std::size_t VerificationReport::indeterminate() const {
  return std::count_if(checks.begin(), checks.end(),
                       [](auto& c) { return c.outcome == Outcome::indeterminate; });
}

namespace {

using ojson = nlohmann::ordered_json;

ojson num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ojson config_json(const SuiteConfig& c) {
  ojson j;
  j["seed"] = c.seed;
  j["tol_exact"] = c.tol_exact;
  j["tol_quad"] = c.tol_quad;
  ojson ns = ojson::array();
  for (double n : c.Ns) ns.push_back(num(n));
  j["Ns"] = ns;
  j["functions"] = c.functions;
  j["exponent_pairs"] = c.exponent_pairs;
  j["holder_pairs"] = c.holder_pairs;
  j["holder_functions"] = c.holder_functions;
  j["hls_pairs"] = c.hls_pairs;
  j["catalog_functions"] = c.catalog_functions;
  return j;
}

ojson result_json(const NormResult& r) {
  ojson j;
  j["value"] = num(r.value);
  j["method"] = method_name(r.method);
  j["err_bound"] = num(r.err_bound);
  j["maximizing_lambda"] = r.maximizing_lambda ? num(*r.maximizing_lambda) : ojson(nullptr);
  return j;
}

ojson check_json(const CheckRecord& c) {
  ojson j;
  j["id"] = c.id;
  j["kind"] = check_kind_name(c.kind);
  j["outcome"] = outcome_name(c.outcome);
  j["lhs"] = result_json(c.lhs);
  j["rhs"] = result_json(c.rhs);
  j["constant"] = num(c.constant);
  j["margin"] = num(c.margin);
  j["tol_rel"] = num(c.tol_rel);
  j["samples"] = c.samples;
  j["violations"] = c.violations;
  j["indeterminate"] = c.indeterminate;
  if (c.fit) {
    ojson f;
    f["family"] = c.fit->family;
    f["model"] = growth_model_name(c.fit->model);
    ojson ps = ojson::array(), vs = ojson::array();
    for (double v : c.fit->params) ps.push_back(num(v));
    for (double v : c.fit->values) vs.push_back(num(v));
    f["params"] = ps;
    f["values"] = vs;
    f["exponent"] = num(c.fit->exponent);
    f["predicted"] = num(c.predicted);
    f["residual"] = num(c.fit->residual);
    f["degenerate"] = c.fit->degenerate;
    j["growth_fit"] = f;
  }
  j["notes"] = c.notes;
  return j;
}

double read_num(const nlohmann::json& v) {
  if (v.is_string() && v.get<std::string>() == "inf") return kInfinity;
  if (!v.is_number()) throw Error(ErrorCode::SpecParse, "config: expected a number");
  return v.get<double>();
}

}  // namespace

std::string norm_result_to_json(const NormResult& r) { return result_json(r).dump(); }

std::string config_to_json(const SuiteConfig& c) { return config_json(c).dump(); }

SuiteConfig config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::SpecParse, std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::SpecParse, "config: expected an object");
  SuiteConfig c;
  auto count = [&](const char* key, int& dst) {
    if (!j.contains(key)) return;
    double v = read_num(j[key]);
    if (!(v >= 1) || v > 1e7) throw Error(ErrorCode::SpecParse, std::string("config: bad ") + key);
    dst = static_cast<int>(v);
  };
  try {
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tol_exact")) c.tol_exact = read_num(j["tol_exact"]);
    if (j.contains("tol_quad")) c.tol_quad = read_num(j["tol_quad"]);
    if (j.contains("tol_rel") && j["tol_rel"].is_object()) {
      auto& t = j["tol_rel"];
      if (t.contains("exact")) c.tol_exact = read_num(t["exact"]);
      if (t.contains("quad")) c.tol_quad = read_num(t["quad"]);
    }
    if (j.contains("Ns")) {
      c.Ns.clear();
      for (auto& v : j["Ns"]) c.Ns.push_back(read_num(v));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::SpecParse, std::string("config: ") + e.what());
  }
  count("functions", c.functions);
  count("exponent_pairs", c.exponent_pairs);
  count("holder_pairs", c.holder_pairs);
  count("holder_functions", c.holder_functions);
  count("hls_pairs", c.hls_pairs);
  count("catalog_functions", c.catalog_functions);
  if (!(c.tol_exact >= 0) || !(c.tol_quad >= 0)) throw Error(ErrorCode::SpecParse, "config: bad tolerance");
  return c;
}

std::string report_to_json(const VerificationReport& r) {
  ojson j;
  j["report_version"] = 1;
  j["suite"] = r.suite;
  j["config"] = config_json(r.config);
  ojson cs = ojson::array();
  for (auto& c : r.checks) cs.push_back(check_json(c));
  j["checks"] = cs;
  ojson s;
  s["pass"] = r.passed();
  s["fail"] = r.failed();
  s["indeterminate"] = r.indeterminate();
  j["summary"] = s;
  return j.dump(2) + "\n";
}

std::string counterexample_to_json(const CounterexampleRun& r) {
  ojson j;
  j["family"] = r.family;
  j["declared_infinite"] = r.declared_infinite;
  ojson pts = ojson::array();
  for (const auto& p : r.points) {
    ojson e;
    e["N"] = num(p.N);
    e["value"] = result_json(p.value);
    e["bound"] = result_json(p.bound);
    pts.push_back(e);
  }
  j["points"] = pts;
  if (r.fit) {
    ojson f;
    f["model"] = growth_model_name(r.fit->model);
    f["exponent"] = num(r.fit->exponent);
    f["residual"] = num(r.fit->residual);
    f["degenerate"] = r.fit->degenerate;
    j["fit"] = f;
  } else {
    j["fit"] = nullptr;
  }
  j["predicted"] = num(r.predicted);
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"norm-comparisons", "holder", "interpolation",
                                          "geometric", "convergence", "hls"};
  return n;
}

VerificationReport run_suite(const std::string& name, const SuiteConfig& c) {
  if (name == "norm-comparisons") return suite_norm_comparisons(c);
  if (name == "holder") return suite_holder(c);
  if (name == "interpolation") return suite_interpolation(c);
  if (name == "geometric") return suite_geometric(c);
  if (name == "convergence") return suite_convergence(c);
  if (name == "hls") return suite_hls(c);
  if (name == "all") {
    std::vector<CheckRecord> all;
    for (auto& s : suite_names()) {
      auto r = run_suite(s, c);
      for (auto& ch : r.checks) {
        ch.id = s + "/" + ch.id;
        all.push_back(std::move(ch));
      }
    }
    return detail::make_report("all", c, std::move(all));
  }
  throw Error(ErrorCode::UnknownSuite, "unknown suite '" + name + "'");
}

namespace detail {

namespace {
std::uint64_t splitmix(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}
}  // namespace

Rng::Rng(std::uint64_t seed, std::string_view tag) : s_(seed ^ fnv1a(tag)) { next(); }
std::uint64_t Rng::next() { return splitmix(s_); }
double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }
double Rng::log_uniform(double a, double b) { return a * std::pow(b / a, uniform()); }
double Rng::normal() {
  double u1 = 1.0 - uniform(), u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}
int Rng::below(int n) { return static_cast<int>(uniform() * n); }

std::vector<double> random_nodes(Rng& rng, int cells) {
  std::vector<double> n{0.0, rng.log_uniform(0.05, 2.0)};
  for (int i = 1; i < cells; ++i) n.push_back(n.back() * rng.uniform(1.1, 3.0));
  return n;
}

std::vector<double> random_samples(Rng& rng, size_t count) {
  std::vector<double> s(count);
  bool any = false;
  for (auto& v : s) {
    v = rng.chance(0.15) ? 0.0 : std::exp(1.5 * rng.normal());
    any = any || v > 0;
  }
  if (!any) s[rng.below(static_cast<int>(count))] = 1.0;
  return s;
}

GridFunc random_grid_on(Rng& rng, const std::vector<double>& xn, const std::vector<double>& yn) {
  return GridFunc(xn, yn, random_samples(rng, (xn.size() - 1) * (yn.size() - 1)));
}

GridFunc random_grid(Rng& rng, int min_cells, int max_cells) {
  auto xn = random_nodes(rng, min_cells + rng.below(max_cells - min_cells + 1));
  auto yn = random_nodes(rng, min_cells + rng.below(max_cells - min_cells + 1));
  return random_grid_on(rng, xn, yn);
}

Grid1D random_grid1d(Rng& rng, int min_cells, int max_cells) {
  Grid1D g;
  g.nodes = random_nodes(rng, min_cells + rng.below(max_cells - min_cells + 1));
  g.values = random_samples(rng, g.nodes.size() - 1);
  return g;
}

Exponent random_exponent(Rng& rng, bool allow_inf) {
  static const int table[][2] = {{1, 4}, {1, 3}, {1, 2}, {2, 3}, {3, 4}, {1, 1}, {4, 3},
                                 {3, 2}, {2, 1}, {5, 2}, {3, 1}, {4, 1}, {6, 1}, {8, 1}};
  constexpr int n = sizeof(table) / sizeof(table[0]);
  if (allow_inf && rng.chance(0.1)) return Exponent::inf();
  int k = rng.below(n);
  return Exponent::rational(table[k][0], table[k][1]);
}

ExponentPair random_pair(Rng& rng, bool allow_inf) {
  Exponent a = random_exponent(rng, allow_inf);
  Exponent b = random_exponent(rng, allow_inf);
  return {a, b};
}

Func1D random_profile(Rng& rng) {
  int pieces = 1 + rng.below(4);
  double t = rng.chance(0.5) ? 0.0 : rng.log_uniform(0.01, 1.0);
  std::vector<Piece> ps;
  for (int i = 0; i < pieces; ++i) {
    Piece p;
    p.t0 = t;
    p.t1 = (t > 0 ? t : rng.log_uniform(0.05, 1.0)) * rng.uniform(1.5, 6.0);
    if (t == 0 && i == 0) p.t1 = rng.log_uniform(0.05, 2.0);
    p.c = std::exp(rng.normal());
    p.a = rng.uniform(-2.0, 2.0);
    p.w = 2.0;
    ps.push_back(p);
    t = p.t1;
  }
  return Func1D(Profile(ps));
}

FuncRep random_catalog(Rng& rng) {
  auto box_region = [&]() {
    RegionSpec r;
    if (rng.chance(0.5)) r.x_lower = rng.log_uniform(0.01, 1.0);
    r.x_upper_coeff = (r.x_lower > 0 ? r.x_lower : 0.1) * rng.log_uniform(2.0, 100.0);
    if (rng.chance(0.5)) r.y_lower = rng.log_uniform(0.01, 1.0);
    r.y_upper = (r.y_lower > 0 ? r.y_lower : 0.1) * rng.log_uniform(2.0, 100.0);
    return r;
  };
  double c = std::exp(rng.normal());
  switch (rng.below(5)) {
    case 0:
      return FuncRep::catalog(
          CatalogFunc::power_product(c, rng.uniform(-2, 2), rng.uniform(-2, 2), box_region()));
    case 1:
      return FuncRep::catalog(CatalogFunc::max_power(rng.uniform(-2, 2), box_region(), c));
    case 2:
      return FuncRep::catalog(CatalogFunc::sum_power(rng.uniform(-2, 2), box_region(), c));
    case 3:
      return FuncRep::tensor(random_profile(rng), random_profile(rng));
    default: {
      RegionSpec r;
      r.x_upper_coeff = rng.log_uniform(0.1, 10.0);
      r.y_upper = rng.log_uniform(0.1, 10.0);
      return FuncRep::catalog(CatalogFunc::power_product(c, 0.0, 0.0, r));
    }
  }
}

void Sweep::add(const NormResult& lhs, const NormResult& rhs, double constant, const std::string& note) {
  add(make_check(id_, kind_, lhs, rhs, constant, tol_, note));
}

void Sweep::add(const CheckRecord& r) {
  ++n_;
  if (r.outcome == Outcome::indeterminate) {
    ++ind_;
    return;
  }
  if (r.outcome == Outcome::fail) ++viol_;
  if (!have_ || r.margin < worst_.margin) {
    worst_ = r;
    have_ = true;
  }
}

CheckRecord Sweep::finish(const std::string& notes) const {
  CheckRecord r;
  if (have_) r = worst_;
  r.id = id_;
  r.kind = kind_;
  r.tol_rel = tol_;
  r.samples = n_;
  r.violations = viol_;
  r.indeterminate = ind_;
  if (!have_) {
    r.outcome = Outcome::indeterminate;
    r.lhs = NormResult::infinite(Method::closed_form);
    r.rhs = NormResult::infinite(Method::closed_form);
  } else {
    r.outcome = viol_ > 0 ? Outcome::fail : Outcome::pass;
  }
  std::string w = have_ && !worst_.notes.empty() ? "worst: " + worst_.notes : "";
  r.notes = notes;
  if (!w.empty()) r.notes += (r.notes.empty() ? "" : "; ") + w;
  return r;
}

NormResult exact_value(double v) {
  if (std::isinf(v)) return NormResult::infinite(Method::closed_form);
  return {v, Method::closed_form, 0.0, std::nullopt};
}

NormResult quad_value(double v) {
  if (std::isinf(v)) return NormResult::infinite(Method::lambda_search);
  return {v, Method::lambda_search, 0.0, std::nullopt};
}

std::vector<CheckRecord> run_tasks(const std::vector<NamedTask>& tasks) {
  std::vector<std::vector<CheckRecord>> out(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < tasks.size(); i = next++) {
      try {
        out[i] = tasks[i].run();
      } catch (const std::exception& e) {
        CheckRecord r;
        r.id = tasks[i].id;
        r.kind = CheckKind::finite;
        r.outcome = Outcome::fail;
        r.margin = -1;
        r.notes = std::string("error: ") + e.what();
        out[i] = {r};
      }
    }
  };
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  size_t nthreads = std::min<size_t>(hw, tasks.size());
  std::vector<std::thread> pool;
  for (size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::vector<CheckRecord> all;
  for (auto& v : out)
    for (auto& r : v) all.push_back(std::move(r));
  return all;
}

std::vector<CheckRecord> merge_by_id(const std::vector<CheckRecord>& parts) {
  std::vector<CheckRecord> out;
  for (const auto& r : parts) {
    auto it = std::find_if(out.begin(), out.end(), [&](auto& o) { return o.id == r.id; });
    if (it == out.end()) {
      out.push_back(r);
      continue;
    }
    CheckRecord& m = *it;
    std::size_t n = m.samples + r.samples, v = m.violations + r.violations,
                ind = m.indeterminate + r.indeterminate;
    bool r_det = r.outcome != Outcome::indeterminate, m_det = m.outcome != Outcome::indeterminate;
    if (r_det && (!m_det || r.margin < m.margin)) {
      Outcome o = m.outcome == Outcome::fail ? Outcome::fail : r.outcome;
      m = r;
      m.outcome = o;
    } else if (r.outcome == Outcome::fail) {
      m.outcome = Outcome::fail;
    }
    m.samples = n;
    m.violations = v;
    m.indeterminate = ind;
  }
  return out;
}

std::vector<CheckRecord> family_checks(const std::string& id, const std::string& family,
                                       const std::optional<ExponentPair>& p,
                                       const std::optional<ExponentPair>& q, const std::vector<double>& Ns) {
  auto run = run_counterexample(family, p, q, Ns);
  const auto& first = run.points.front();
  if (!run.fit)
    return {make_check(id, CheckKind::divergence, first.value, first.bound, 1, 0, run.notes)};
  return {make_check(id + "/premise", CheckKind::finite, first.bound, first.bound, 1, 0,
                     "right side finite at the smallest N"),
          make_growth_check(id, *run.fit, run.predicted, run.notes)};
}

VerificationReport make_report(const std::string& suite, const SuiteConfig& c,
                               std::vector<CheckRecord> checks) {
  VerificationReport r;
  r.suite = suite;
  r.config = c;
  r.checks = std::move(checks);
  return r;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail
}  // namespace mixnorm
