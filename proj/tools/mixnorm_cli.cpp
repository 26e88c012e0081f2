// mixnorm command-line tool. A thin adapter over the C API in mixnorm/mixnorm.h.

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mixnorm/mixnorm.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDimension = 3;

struct CliError {
  int code;
  std::string message;
};

int exit_code(mn_status s) {
  switch (s) {
    case MN_OK: return kExitOk;
    case MN_ERR_SPEC_PARSE:
    case MN_ERR_UNKNOWN_SUITE:
    case MN_ERR_UNKNOWN_FAMILY:
    case MN_ERR_INVALID_ARGUMENT: return kExitUsage;
    case MN_ERR_UNSUPPORTED_DIMENSION: return kExitDimension;
    default: return kExitFailure;
  }
}

void check(mn_status s) {
  if (s != MN_OK) throw CliError{exit_code(s), std::string(mn_status_name(s)) + ": " + mn_last_error()};
}

struct CString {
  char* p = nullptr;
  ~CString() { mn_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct FuncHandle {
  mn_func* f = nullptr;
  ~FuncHandle() { mn_func_free(f); }
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double json_num(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    return NAN;
  }
  return j.is_null() ? NAN : j.get<double>();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    char* end = nullptr;
    double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0') throw CliError{kExitUsage, "bad number '" + item + "'"};
    out.push_back(v);
  }
  return out;
}

// function spec given inline, as a file path, or by shortcut name
std::string read_spec(const std::string& arg) {
  std::error_code ec;
  if (!arg.empty() && arg.front() != '{' && std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

std::filesystem::path output_path(const std::string& out) {
  std::filesystem::path p(out);
  const char* dir = std::getenv("MIXNORM_OUTPUT_DIR");
  if (p.is_relative() && dir && *dir) return std::filesystem::path(dir) / p;
  return p;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  auto path = output_path(out);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CliError{kExitFailure, "cannot write " + path.string()};
  f << text;
}

struct Common {
  std::string format;
  std::string out;
  std::string resolved(const char* fallback_piped, const char* fallback_tty) const {
    if (!format.empty()) return format;
    return isatty(STDOUT_FILENO) && out.empty() ? fallback_tty : fallback_piped;
  }
};

// ---------------------------------------------------------------- norm

const std::map<std::string, mn_norm_family> kFamilies{
    {"mixed", MN_NORM_MIXED},
    {"mixed-weak", MN_NORM_MIXED_WEAK},
    {"iterated-weak", MN_NORM_ITERATED_WEAK},
    {"outer-strong-inner-weak", MN_NORM_OUTER_STRONG_INNER_WEAK},
    {"outer-weak-inner-strong", MN_NORM_OUTER_WEAK_INNER_STRONG},
};

const char* method_str(mn_method m) {
  switch (m) {
    case MN_METHOD_CLOSED_FORM: return "closed_form";
    case MN_METHOD_LAMBDA_SEARCH: return "lambda_search";
    case MN_METHOD_GRID_EXACT: return "grid_exact";
  }
  return "?";
}

int cmd_norm(const std::string& func, const std::string& family, const std::string& p, const Common& c) {
  FuncHandle h;
  check(mn_func_from_json(read_spec(func).c_str(), &h.f));
  mn_norm_result r{};
  check(mn_norm(h.f, kFamilies.at(family), p.c_str(), &r));
  std::string fmtname = c.resolved("json", "table"), text;
  std::string lam = r.has_lambda ? fmt(r.maximizing_lambda) : "";
  if (fmtname == "json") {
    CString s;
    check(mn_norm_result_json(&r, &s.p));
    text = s.str();
    if (text.empty() || text.back() != '\n') text += "\n";
  } else if (fmtname == "csv") {
    text = "family,p,value,method,err_bound,maximizing_lambda\n" + family + "," + csv_field(p) + "," +
           fmt(r.value) + "," + method_str(r.method) + "," + fmt(r.err_bound) + "," + lam + "\n";
  } else {
    text = family + " norm, p = (" + p + ")\n  value     " + fmt(r.value) + "\n  method    " +
           method_str(r.method) + "\n  err bound " + fmt(r.err_bound) + "\n";
    if (r.has_lambda) text += "  lambda*   " + lam + "\n";
  }
  emit(text, c.out);
  return kExitOk;
}

// ---------------------------------------------------------------- verify

std::string report_csv(const json& rep) {
  std::string s = "id,kind,outcome,lhs,rhs,constant,margin,samples,violations,indeterminate\n";
  for (const auto& ch : rep.at("checks")) {
    s += csv_field(ch.at("id").get<std::string>()) + "," + ch.at("kind").get<std::string>() + "," +
         ch.at("outcome").get<std::string>() + "," + fmt(json_num(ch.at("lhs").at("value"))) + "," +
         fmt(json_num(ch.at("rhs").at("value"))) + "," + fmt(json_num(ch.at("constant"))) + "," +
         fmt(json_num(ch.at("margin"))) + "," + std::to_string(ch.at("samples").get<long>()) + "," +
         std::to_string(ch.at("violations").get<long>()) + "," +
         std::to_string(ch.at("indeterminate").get<long>()) + "\n";
  }
  return s;
}

std::string report_table(const json& rep) {
  std::ostringstream s;
  for (const auto& ch : rep.at("checks")) {
    std::string id = ch.at("id").get<std::string>();
    s << ch.at("outcome").get<std::string>();
    for (size_t k = ch.at("outcome").get<std::string>().size(); k < 14; ++k) s << ' ';
    s << id;
    for (size_t k = id.size(); k < 64; ++k) s << ' ';
    s << " margin " << fmt(json_num(ch.at("margin"))) << "  n=" << ch.at("samples").get<long>() << "\n";
  }
  return s.str();
}

int cmd_verify(const std::string& suite, std::optional<unsigned long long> seed, const std::string& config,
               const Common& c) {
  std::string cfg;
  if (!config.empty()) cfg = read_spec(config);
  CString rep;
  size_t passed = 0, failed = 0, ind = 0;
  check(mn_verify(suite.c_str(), cfg.empty() ? nullptr : cfg.c_str(), seed.value_or(0), &rep.p, &passed, &failed,
                  &ind));
  std::string out = c.out;
  const char* dir = std::getenv("MIXNORM_OUTPUT_DIR");
  if (out.empty() && dir && *dir) out = "report-" + suite + ".json";
  std::string fmtname = c.resolved("json", "table");
  json parsed = fmtname == "json" ? json() : json::parse(rep.str());
  std::string text = fmtname == "json" ? rep.str() : fmtname == "csv" ? report_csv(parsed) : report_table(parsed);
  std::string summary = "suite " + suite + ": pass " + std::to_string(passed) + " fail " + std::to_string(failed) +
                        " indeterminate " + std::to_string(ind) + "\n";
  if (out.empty()) {
    std::cout << text;
    if (fmtname == "table") std::cout << summary;
  } else {
    emit(text, out);
    std::cout << summary;
  }
  return failed == 0 ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- counterexample

int cmd_counterexample(const std::string& family, const std::string& p, const std::string& q,
                       const std::string& Ns, const Common& c) {
  std::vector<double> ns = parse_list(Ns);
  CString js;
  check(mn_counterexample(family.c_str(), p.empty() ? nullptr : p.c_str(), q.empty() ? nullptr : q.c_str(),
                          ns.data(), ns.size(), &js.p));
  std::string fmtname = c.format.empty() ? "csv" : c.format, text;
  if (fmtname == "json") {
    text = js.str();
  } else {
    json run = json::parse(js.str());
    bool has_fit = !run.at("fit").is_null();
    std::string expo = has_fit ? fmt(json_num(run["fit"].at("exponent"))) : "";
    if (fmtname == "csv") {
      text = "parameter,value,fitted_exponent\n";
      for (const auto& pt : run.at("points"))
        text += (json_num(pt.at("N")) == 0 ? std::string() : fmt(json_num(pt.at("N")))) + "," + fmt(json_num(pt.at("value").at("value"))) + "," + expo + "\n";
      text += "fit," + (has_fit ? fmt(json_num(run["fit"].at("residual"))) : std::string()) + "," + expo + "\n";
    } else {
      std::ostringstream s;
      s << "family " << run.at("family").get<std::string>() << "\n";
      for (const auto& pt : run.at("points"))
        s << "  N=" << fmt(json_num(pt.at("N"))) << "  value=" << fmt(json_num(pt.at("value").at("value")))
          << "  bound=" << fmt(json_num(pt.at("bound").at("value"))) << "\n";
      if (has_fit)
        s << "  fitted exponent " << expo << " (predicted " << fmt(json_num(run.at("predicted"))) << ")\n";
      if (run.at("declared_infinite").get<bool>()) s << "  left side declared infinite\n";
      text = s.str();
    }
  }
  emit(text, c.out);
  return kExitOk;
}

// ---------------------------------------------------------------- curve

int cmd_curve(const std::string& func, const std::string& p, const std::string& lambdas, double lo, double hi,
              int points, const Common& c) {
  std::vector<double> lam;
  if (!lambdas.empty()) {
    lam = parse_list(lambdas);
  } else {
    if (!(lo > 0 && hi > lo && points >= 2)) throw CliError{kExitUsage, "need 0 < lambda-min < lambda-max, points >= 2"};
    for (int i = 0; i < points; ++i) lam.push_back(lo * std::pow(hi / lo, double(i) / (points - 1)));
  }
  FuncHandle h;
  check(mn_func_from_json(read_spec(func).c_str(), &h.f));
  std::vector<double> phi(lam.size());
  std::vector<int> exact(lam.size());
  check(mn_curve(h.f, p.c_str(), lam.data(), lam.size(), phi.data(), exact.data()));
  std::string fmtname = c.format.empty() ? "csv" : c.format, text;
  if (fmtname == "json") {
    json j;
    j["p"] = p;
    json rows = json::array();
    for (size_t i = 0; i < lam.size(); ++i) {
      json r;
      r["lambda"] = lam[i];
      r["phi"] = std::isinf(phi[i]) ? json("inf") : json(phi[i]);
      r["exact"] = exact[i] != 0;
      rows.push_back(r);
    }
    j["curve"] = rows;
    text = j.dump(2) + "\n";
  } else {
    text = fmtname == "csv" ? "lambda,phi,exact\n" : "";
    for (size_t i = 0; i < lam.size(); ++i)
      text += fmtname == "csv" ? fmt(lam[i]) + "," + fmt(phi[i]) + "," + (exact[i] ? "1" : "0") + "\n"
                               : fmt(lam[i]) + "\t" + fmt(phi[i]) + (exact[i] ? "" : "\t(numeric)") + "\n";
  }
  emit(text, c.out);
  return kExitOk;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  sub->add_option("--out", c.out, "output file (relative paths resolve against $MIXNORM_OUTPUT_DIR)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed-norm and weak mixed-norm computations and verification suites"};
  app.require_subcommand(1);

  Common nc, vc, cc, uc;
  std::string func, family = "mixed-weak", p;
  auto* norm = app.add_subcommand("norm", "compute a norm of a function spec");
  norm->add_option("--func", func, "JSON spec, path to a JSON file, or constant-indicator")->required();
  std::vector<std::string> fam_names;
  for (const auto& kv : kFamilies) fam_names.push_back(kv.first);
  norm->add_option("--family", family, "norm family")->check(CLI::IsMember(fam_names));
  norm->add_option("--p", p, "exponent pair, e.g. 2,2 or inf,3/2")->required();
  add_common(norm, nc);

  std::string suite, config;
  std::optional<unsigned long long> seed;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "suite name or all")->required();
  verify->add_option("--seed", seed, "master seed");
  verify->add_option("--config", config, "suite config JSON (inline or file)");
  add_common(verify, vc);

  std::string cfam, cp, cq, Ns;
  auto* cex = app.add_subcommand("counterexample", "run a counterexample family");
  cex->add_option("--family", cfam, "family id")->required();
  cex->add_option("--p", cp, "exponent pair p");
  cex->add_option("--q", cq, "exponent pair q");
  cex->add_option("--Ns", Ns, "comma-separated N values");
  add_common(cex, cc);

  std::string cfunc, cpp, lambdas;
  double lo = 1e-3, hi = 1e3;
  int points = 25;
  auto* curve = app.add_subcommand("curve", "superlevel curve lambda -> ||chi_{f > lambda}||_p");
  curve->add_option("--func", cfunc, "JSON spec, path to a JSON file, or constant-indicator")->required();
  curve->add_option("--p", cpp, "exponent pair")->required();
  curve->add_option("--lambdas", lambdas, "comma-separated lambda values");
  curve->add_option("--lambda-min", lo, "smallest lambda of a log grid");
  curve->add_option("--lambda-max", hi, "largest lambda of a log grid");
  curve->add_option("--points", points, "log grid size");
  add_common(curve, uc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*norm) return cmd_norm(func, family, p, nc);
    if (*verify) return cmd_verify(suite, seed, config, vc);
    if (*cex) return cmd_counterexample(cfam, cp, cq, Ns, cc);
    if (*curve) return cmd_curve(cfunc, cpp, lambdas, lo, hi, points, uc);
  } catch (const CliError& e) {
    std::cerr << "mixnorm: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "mixnorm: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
