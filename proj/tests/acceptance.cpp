// Acceptance run: one line per criterion, exit status 0 iff all pass.
// Usage: acceptance <path to mixnorm cli>

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mixnorm/verify.hpp"

using namespace mixnorm;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool ok = true;
  std::string why;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      why += (why.empty() ? "" : "; ") + what;
    }
  }
};

struct SuiteRun {
  VerificationReport report;
  double seconds = 0;
  std::map<std::string, const CheckRecord*> by_id;
  const CheckRecord* get(const std::string& id) const {
    auto it = by_id.find(id);
    return it == by_id.end() ? nullptr : it->second;
  }
};

std::map<std::string, SuiteRun> g_runs;

const SuiteRun& suite(const std::string& name) {
  auto it = g_runs.find(name);
  if (it != g_runs.end()) return it->second;
  SuiteRun& r = g_runs[name];
  auto t0 = Clock::now();
  r.report = run_suite(name, SuiteConfig{});
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  for (const auto& c : r.report.checks) r.by_id[c.id] = &c;
  return r;
}

double rel_err(const CheckRecord& c) {
  return std::fabs(c.lhs.value - c.rhs.value) / std::fabs(c.rhs.value);
}

// record exists, passed, and had no violations
void passed(Verdict& v, const SuiteRun& s, const std::string& id) {
  const CheckRecord* c = s.get(id);
  if (!c) return v.require(false, id + " missing");
  v.require(c->outcome == Outcome::pass && c->violations == 0, id + " " + outcome_name(c->outcome));
}

void passed_prefix(Verdict& v, const SuiteRun& s, const std::string& prefix, int at_least) {
  int n = 0;
  for (const auto& [id, c] : s.by_id)
    if (id.rfind(prefix, 0) == 0) {
      ++n;
      passed(v, s, id);
    }
  v.require(n >= at_least, prefix + "* has " + std::to_string(n) + " records");
}

// growth record whose fitted exponent is within 15% of the expected value
void growth(Verdict& v, const SuiteRun& s, const std::string& id, double expected) {
  passed(v, s, id);
  const CheckRecord* c = s.get(id);
  if (!c || !c->fit) return v.require(false, id + " has no fit");
  v.require(std::fabs(c->predicted - expected) < 1e-12, id + " predicts " + std::to_string(c->predicted));
  v.require(std::fabs(c->fit->exponent - expected) <= 0.15 * expected,
            id + " exponent " + std::to_string(c->fit->exponent));
  v.require(c->fit->params.front() <= 1e2 && c->fit->params.back() >= 1e8, id + " N range");
}

double recip(const std::string& e) { return e == "inf" ? 0.0 : 1.0 / ExponentPair::parse(e + ",1").p1().value(); }

Verdict c1() {
  Verdict v;
  const auto& s = suite("norm-comparisons");
  const CheckRecord* closed = s.get("F/iterated-weak/closed");
  const CheckRecord* grid = s.get("F/iterated-weak/grid");
  v.require(closed && closed->rhs.value == 2.0 && rel_err(*closed) <= 1e-6, "closed form off");
  v.require(grid && grid->rhs.value == 2.0 && rel_err(*grid) <= 0.02, "grid off");
  v.require(grid && grid->notes.find("512x512") != std::string::npos, "grid size");
  passed(v, s, "F/mixed-weak");
  v.require(s.get("F/mixed-weak") && s.get("F/mixed-weak")->lhs.is_inf(), "mixed weak not infinite");
  v.require(s.seconds < 5.0, "runtime " + std::to_string(s.seconds) + " s");
  return v;
}

Verdict c2() {
  Verdict v;
  const auto& s = suite("norm-comparisons");
  const CheckRecord* closed = s.get("G/mixed-weak/closed");
  const CheckRecord* grid = s.get("G/mixed-weak/grid");
  v.require(closed && closed->rhs.value == 4.0 && rel_err(*closed) <= 1e-6, "closed form off");
  v.require(grid && grid->rhs.value == 4.0 && rel_err(*grid) <= 0.02, "grid off");
  passed(v, s, "G/iterated-weak");
  v.require(s.get("G/iterated-weak") && s.get("G/iterated-weak")->lhs.is_inf(), "iterated weak not infinite");
  return v;
}

Verdict c3() {
  Verdict v;
  const auto& s = suite("norm-comparisons");
  SuiteConfig c;
  v.require(c.functions >= 500 && c.exponent_pairs >= 50, "sweep sizes");
  for (const char* id : {"sandwich/weak-le-strong-1d", "sandwich/mixed-weak-le-strong",
                         "sandwich/iterated-weak-le-strong", "sandwich/mixed-weak-le-outer-strong-inner-weak",
                         "sandwich/outer-strong-inner-weak-le-strong",
                         "sandwich/iterated-weak-le-outer-weak-inner-strong"}) {
    passed(v, s, id);
    const CheckRecord* r = s.get(id);
    v.require(r && r->samples >= 500u * 50u, std::string(id) + " samples");
    v.require(r && r->tol_rel <= 1e-9, std::string(id) + " tolerance");
  }
  v.require(s.seconds < 60.0, "runtime");
  return v;
}

Verdict c4() {
  Verdict v;
  const auto& s = suite("holder");
  passed(v, s, "holder/positive/grid");
  passed(v, s, "holder/iterated/grid");
  const CheckRecord* g = s.get("holder/positive/grid");
  if (g) {
    auto pos = g->notes.rfind("; ");
    int pairs = pos == std::string::npos ? 0 : std::atoi(g->notes.c_str() + pos + 2);
    v.require(pairs >= 20, "only " + std::to_string(pairs) + " exponent pairs");
    v.require(g->samples >= 200u * 20u, "function pairs");
  }
  const CheckRecord* it = s.get("holder/iterated/grid");
  v.require(it && it->samples >= 200, "iterated samples");
  return v;
}

Verdict c5() {
  Verdict v;
  const auto& s = suite("holder");
  passed(v, s, "holder/sharpness/holder-log-growth/premise");
  // default exponents of the family: p = (2,2), q = (inf,2)
  auto p = ExponentPair::parse("2,2"), r = holder_combine(p, ExponentPair::parse("inf,2"));
  double expected = r.p2().recip_value() - p.p2().recip_value();
  v.require(expected > 0, "1/r2 - 1/p2 must be positive");
  growth(v, s, "holder/sharpness/holder-log-growth", expected);
  for (const char* id : {"holder/sharpness/holder-inner-sup", "holder/sharpness/holder-outer-power",
                         "holder/sharpness/holder-outer-power-swapped"}) {
    passed(v, s, id);
    const CheckRecord* r = s.get(id);
    v.require(r && r->lhs.is_inf() && std::isfinite(r->rhs.value), std::string(id) + " not declared infinite");
  }
  return v;
}

Verdict c6() {
  Verdict v;
  const auto& s = suite("geometric");
  for (const char* id : {"geometric/kernel-sup/grid/mixed-weak", "geometric/kernel-sup/grid/iterated-weak",
                         "geometric/kernel-sup/catalog/mixed-weak", "geometric/kernel-sup/catalog/iterated-weak"})
    passed(v, s, id);
  for (const char* q : {"1,1", "2,2", "1,2"}) {
    std::string e(q);
    growth(v, s, "geometric/family/kernel-strong/q=" + e, recip(e.substr(e.find(',') + 1)));
  }
  return v;
}

Verdict c7() {
  Verdict v;
  const auto& s = suite("geometric");
  passed(v, s, "geometric/kernel-sup/grid/outer-weak-inner-strong");
  passed(v, s, "geometric/kernel-sup/catalog/outer-weak-inner-strong");
  for (const char* q : {"1,1", "2,1"}) {
    std::string e(q), q1 = e.substr(0, e.find(',')), q2 = e.substr(e.find(',') + 1);
    growth(v, s, "geometric/family/kernel-outer-strong-inner-weak/q=" + e, recip(q2));
    growth(v, s, "geometric/family/kernel-sup-outer/q=" + e, recip(q1));
    growth(v, s, "geometric/family/kernel-sup-inner/q=" + e, recip(q1));
  }
  return v;
}

Verdict c8() {
  Verdict v;
  const auto& s = suite("geometric");
  for (const char* id : {"geometric/scaling/iterated-weak", "geometric/scaling/mixed-weak"}) {
    passed(v, s, id);
    const CheckRecord* r = s.get(id);
    v.require(r && r->tol_rel <= 1e-6, std::string(id) + " tolerance");
  }
  passed(v, s, "geometric/tgamma/dilation-bound");
  passed(v, s, "geometric/tgamma/dilation-drift");
  const CheckRecord* d = s.get("geometric/tgamma/dilation-drift");
  v.require(d && d->lhs.value <= 3.0 * d->rhs.value, "drift above 3x");
  return v;
}

Verdict c9() {
  Verdict v;
  const auto& s = suite("hls");
  SuiteConfig c;
  v.require(c.hls_pairs >= 100, "pair count");
  for (const char* id : {"hls/forward/bound", "hls/forward/quadrature", "hls/forward/ratio-invariance",
                         "hls/forward/ratio-finite", "hls/rearrangement/reverse", "hls/rearrangement/forward",
                         "hls/reverse/constant-positive"})
    passed(v, s, id);
  const CheckRecord* q = s.get("hls/forward/quadrature");
  v.require(q && q->tol_rel <= 2e-2 && q->samples >= 100, "quadrature sweep");
  const CheckRecord* r = s.get("hls/rearrangement/reverse");
  v.require(r && r->tol_rel <= 2e-2 && r->samples >= 100, "rearrangement sweep");
  const CheckRecord* p = s.get("hls/reverse/constant-positive");
  v.require(p && std::isfinite(p->lhs.value) && p->lhs.value > 0, "reverse constant not positive");
  return v;
}

Verdict c10() {
  Verdict v;
  const auto& s = suite("convergence");
  for (const char* w : {"mixed-weak", "iterated-weak"}) {
    std::string base = std::string("convergence/monotone/") + w;
    passed(v, s, base + "/nondecreasing");
    const CheckRecord* l = s.get(base + "/limit");
    v.require(l && rel_err(*l) <= 1e-3, base + " limit");
    const CheckRecord* d = s.get(std::string("convergence/dominated/") + w);
    passed(v, s, std::string("convergence/dominated/") + w);
    v.require(d && d->tol_rel <= 1e-9 && d->samples >= 4, std::string(w) + " dominated family");
  }
  passed_prefix(v, s, "convergence/truncated/", 8);
  for (const char* p : {"2,1", "1,2"}) {
    const CheckRecord* f = s.get(std::string("convergence/truncated/p=") + p + "/final");
    v.require(f && f->lhs.value < 1e-3, std::string("final distance at p=") + p);
  }
  return v;
}

int run_cli(const std::string& cli, const std::filesystem::path& out, double& seconds) {
  std::string cmd = cli + " verify --suite all --seed 7 --out " + out.string() + " >/dev/null 2>&1";
  auto t0 = Clock::now();
  int st = std::system(cmd.c_str());
  seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict c11(const std::string& cli) {
  Verdict v;
  auto dir = std::filesystem::temp_directory_path() / ("mixnorm-acceptance-" + std::to_string(getpid()));
  std::filesystem::create_directories(dir);
  double t1 = 0, t2 = 0;
  int r1 = run_cli(cli, dir / "a.json", t1);
  int r2 = run_cli(cli, dir / "b.json", t2);
  std::string a = slurp(dir / "a.json"), b = slurp(dir / "b.json");
  v.require(!a.empty(), "no report written");
  v.require(a == b, "reports differ");
  v.require(r1 == 0 && r2 == 0, "exit codes " + std::to_string(r1) + ", " + std::to_string(r2));
  v.require(t1 < 600 && t2 < 600, "runtime " + std::to_string(t1) + " s");
  v.why += (v.why.empty() ? "" : "; ") + std::string("full suite ") + std::to_string(int(std::lround(t1))) + " s";
  std::filesystem::remove_all(dir);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <mixnorm cli>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  struct Criterion {
    const char* title;
    std::function<Verdict()> check;
  };
  std::vector<Criterion> all{
      {"catalog oracle F", c1},
      {"catalog oracle G", c2},
      {"weak <= strong and sandwich sweeps", c3},
      {"Holder positive direction", c4},
      {"Holder sharpness families", c5},
      {"kernel sup bounds and ln-growth 1/q2", c6},
      {"half-weak bounds and endpoint growth", c7},
      {"dilation covariance and T_gamma drift", c8},
      {"HLS forward, reverse and rearrangement", c9},
      {"monotone, Fatou and dominated convergence", c10},
      {"determinism and runtime", [&] { return c11(cli); }},
  };
  int failed = 0;
  for (size_t i = 0; i < all.size(); ++i) {
    Verdict v;
    try {
      v = all[i].check();
    } catch (const std::exception& e) {
      v.ok = false;
      v.why = std::string("error: ") + e.what();
    }
    failed += !v.ok;
    std::printf("criterion %2zu: %s  %s%s%s\n", i + 1, v.ok ? "PASS" : "FAIL", all[i].title,
                v.why.empty() ? "" : "  | ", v.why.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
