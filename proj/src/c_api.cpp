#include "mixnorm/mixnorm.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "mixnorm/families.hpp"
#include "mixnorm/funcrep_json.hpp"
#include "mixnorm/verify.hpp"

using namespace mixnorm;

struct mn_func {
  FuncRep rep;
};

namespace {

thread_local std::string g_error;

mn_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::SpecParse: return MN_ERR_SPEC_PARSE;
    case ErrorCode::UnsupportedDimension: return MN_ERR_UNSUPPORTED_DIMENSION;
    case ErrorCode::UnknownSuite: return MN_ERR_UNKNOWN_SUITE;
    case ErrorCode::UnknownFamily: return MN_ERR_UNKNOWN_FAMILY;
    case ErrorCode::NotAdmissible: return MN_ERR_NOT_ADMISSIBLE;
    case ErrorCode::NegativeGamma: return MN_ERR_NEGATIVE_GAMMA;
    case ErrorCode::NonFiniteSample: return MN_ERR_NON_FINITE_SAMPLE;
    case ErrorCode::QuadratureFailure: return MN_ERR_QUADRATURE_FAILURE;
    case ErrorCode::DegenerateFit: return MN_ERR_DEGENERATE_FIT;
    case ErrorCode::InvalidArgument: return MN_ERR_INVALID_ARGUMENT;
  }
  return MN_ERR_INTERNAL;
}

template <class F>
mn_status guarded(F&& body) {
  try {
    g_error.clear();
    body();
    return MN_OK;
  } catch (const Error& e) {
    g_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
  } catch (const std::exception& e) {
    g_error = e.what();
  } catch (...) {
    g_error = "unknown error";
  }
  return MN_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

NormResult from_c(const mn_norm_result& r) {
  NormResult n;
  n.value = r.value;
  n.method = static_cast<Method>(r.method);
  n.err_bound = r.err_bound;
  if (r.has_lambda) n.maximizing_lambda = r.maximizing_lambda;
  return n;
}

std::string joined(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += x + "\n";
  return s;
}

}  // namespace

extern "C" {

MN_API const char* mn_last_error(void) { return g_error.c_str(); }

MN_API const char* mn_status_name(mn_status s) {
  switch (s) {
    case MN_OK: return "ok";
    case MN_ERR_INTERNAL: return "Internal";
    default: return error_name(static_cast<ErrorCode>(s));
  }
}

MN_API void mn_string_free(char* s) { std::free(s); }

MN_API mn_status mn_func_from_json(const char* spec, mn_func** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = nullptr;
    *out = new mn_func{func_from_json(spec)};
  });
}

MN_API void mn_func_free(mn_func* f) { delete f; }

MN_API mn_status mn_func_to_json(const mn_func* f, char** out) {
  return guarded([&] {
    require(f && out, "null argument");
    *out = dup(func_to_json(f->rep));
  });
}

MN_API mn_status mn_norm(const mn_func* f, mn_norm_family family, const char* p, mn_norm_result* out) {
  return guarded([&] {
    require(f && p && out, "null argument");
    ExponentPair e = ExponentPair::parse(p);
    NormResult r;
    switch (family) {
      case MN_NORM_MIXED: r = mixed_norm(f->rep, e); break;
      case MN_NORM_MIXED_WEAK: r = mixed_weak_norm(f->rep, e); break;
      case MN_NORM_ITERATED_WEAK: r = iterated_weak_norm(f->rep, e); break;
      case MN_NORM_OUTER_STRONG_INNER_WEAK:
        r = half_mixed_norm(f->rep, e, HalfVariant::outer_strong_inner_weak);
        break;
      case MN_NORM_OUTER_WEAK_INNER_STRONG:
        r = half_mixed_norm(f->rep, e, HalfVariant::outer_weak_inner_strong);
        break;
      default: throw Error(ErrorCode::InvalidArgument, "unknown norm family");
    }
    out->value = r.value;
    out->method = static_cast<mn_method>(r.method);
    out->err_bound = r.err_bound;
    out->has_lambda = r.maximizing_lambda ? 1 : 0;
    out->maximizing_lambda = r.maximizing_lambda.value_or(0.0);
  });
}

MN_API mn_status mn_norm_result_json(const mn_norm_result* r, char** out) {
  return guarded([&] {
    require(r && out, "null argument");
    *out = dup(norm_result_to_json(from_c(*r)));
  });
}

MN_API mn_status mn_curve(const mn_func* f, const char* p, const double* lambdas, size_t n, double* phi,
                          int* exact) {
  return guarded([&] {
    require(f && p && (lambdas || n == 0), "null argument");
    auto c = distribution_curve(f->rep, ExponentPair::parse(p), std::vector<double>(lambdas, lambdas + n));
    for (size_t i = 0; i < n; ++i) {
      if (phi) phi[i] = c.phi[i];
      if (exact) exact[i] = c.exact[i] ? 1 : 0;
    }
  });
}

MN_API mn_status mn_verify(const char* suite, const char* config_json, unsigned long long seed,
                           char** report_json, size_t* passed, size_t* failed, size_t* indeterminate) {
  return guarded([&] {
    require(suite != nullptr, "null suite name");
    SuiteConfig c = config_json ? config_from_json(config_json) : SuiteConfig{};
    if (seed != 0) c.seed = seed;
    VerificationReport r = run_suite(suite, c);
    if (report_json) *report_json = dup(report_to_json(r));
    if (passed) *passed = r.passed();
    if (failed) *failed = r.failed();
    if (indeterminate) *indeterminate = r.indeterminate();
  });
}

MN_API mn_status mn_counterexample(const char* family, const char* p, const char* q, const double* Ns, size_t n,
                                   char** out_json) {
  return guarded([&] {
    require(family && out_json && (Ns || n == 0), "null argument");
    std::optional<ExponentPair> pp, qq;
    if (p) pp = ExponentPair::parse(p);
    if (q) qq = ExponentPair::parse(q);
    auto run = run_counterexample(family, pp, qq, std::vector<double>(Ns, Ns + n));
    *out_json = dup(counterexample_to_json(run));
  });
}

MN_API mn_status mn_suite_names(char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = dup(joined(suite_names()));
  });
}

MN_API mn_status mn_family_names(char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    std::vector<std::string> v;
    for (const auto& f : counterexample_families()) v.push_back(f.id);
    *out = dup(joined(v));
  });
}

}  // extern "C"
