#pragma once

#include <functional>

namespace mixnorm::quad {

using Fn = std::function<double(double)>;

struct Result {
  double value = 0.0;
  double error = 0.0;
  long evals = 0;
  bool converged = true;
};

// adaptive Gauss-Kronrod 7/15 with interval bisection
Result adaptive(const Fn& f, double a, double b, double rel_tol = 1e-10, double abs_tol = 0.0,
                long max_evals = 200000);

// same, after cutting [a,b] into `panels` equal pieces first
Result adaptive_panels(const Fn& f, double a, double b, int panels, double rel_tol = 1e-10,
                       double abs_tol = 0.0, long max_evals = 400000);

// double-exponential rule on [a,b]; tolerates integrable endpoint singularities
Result tanh_sinh(const Fn& f, double a, double b, double rel_tol = 1e-12, int max_level = 12);

// maximize f on [a,b], assuming unimodality near the bracket; returns argmax
double golden_max(const Fn& f, double a, double b, double tol, int max_iter = 200);

}  // namespace mixnorm::quad
