#pragma once

#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "mixnorm/exponents.hpp"
#include "mixnorm/profile.hpp"

namespace mixnorm {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { none, y_le_x, two_y_le_x };

// x_lower <= |x| <= A |y|^s - B |y|^s2, y_lower <= |y| <= y_upper, plus an
// optional relation between |x| and |y|
struct RegionSpec {
  double x_lower = 0.0;
  double x_upper_coeff = kInfinity;
  double x_upper_exp = 0.0;
  double x_upper_sub_coeff = 0.0;
  double x_upper_sub_exp = 0.0;
  double y_lower = 0.0;
  double y_upper = kInfinity;
  Relation relation = Relation::none;

  static RegionSpec full() { return {}; }
  static RegionSpec box(double rx, double ry);

  double x_low(double ry) const;
  double x_high(double ry) const;
  bool contains(double rx, double ry) const;
  RegionSpec dilated(double R) const;
};

enum class CatalogKind { power_product, sum_power, max_power, exp_g, log_damped, shift_power };

struct CatalogFunc {
  CatalogKind kind = CatalogKind::power_product;
  double c = 1.0;
  double a1 = 0.0;     // power of |x| (power_product) or of |x-y| (shift_power)
  double a2 = 0.0;     // power of |y| (power_product)
  double gamma = 0.0;  // sum_power, max_power, log_damped
  double base = 2.718281828459045;  // exp_g
  double p1 = 1.0;     // exp_g
  double width = 1.0;  // exp_g support |x| <= width * base^{-p1 |y|}
  double q1 = 1.0;     // log_damped
  RegionSpec region;

  static CatalogFunc power_product(double c, double a1, double a2, RegionSpec r = {});
  static CatalogFunc sum_power(double gamma, RegionSpec r = {}, double c = 1.0);
  static CatalogFunc max_power(double gamma, RegionSpec r = {}, double c = 1.0);
  static CatalogFunc exp_g(double base, double p1);
  static CatalogFunc log_damped(double gamma, double q1, double box);
  static CatalogFunc shift_power(double c, double a, RegionSpec r = {});

  bool sign_dependent() const { return kind == CatalogKind::log_damped || kind == CatalogKind::shift_power; }
};

enum class SignRegime { same, opposite };

// Piecewise-constant function on radial annuli. With split_sign the x-cells
// are doubled: the first nx cells hold x on the same side as y, the next nx
// hold the opposite side, each with half the annulus weight.
struct GridFunc {
  std::vector<double> xnodes, ynodes;  // 0 = r_0 < r_1 < ... < r_K
  bool split_sign = false;
  std::vector<double> samples;         // row-major: samples[j * xcells() + i]
  std::vector<double> wx, wy;
  DimPair dims;

  GridFunc() = default;
  GridFunc(std::vector<double> xn, std::vector<double> yn, std::vector<double> s, DimPair d = {},
           bool split = false);

  size_t xcells() const { return wx.size(); }
  size_t ycells() const { return wy.size(); }
  double at(size_t i, size_t j) const { return samples[j * xcells() + i]; }
  double xmid(size_t i) const;
  double ymid(size_t j) const;
};

// one-variable grid, even in x
struct Grid1D {
  std::vector<double> nodes;   // 0 = r_0 < ... < r_K
  std::vector<double> values;  // K values
  int n = 1;
  std::vector<double> weights() const;
};

// one-variable function: analytic radial profile (t = |x|) or grid
class Func1D {
public:
  Func1D() = default;
  explicit Func1D(Profile p) : v_(std::move(p)) {}
  explicit Func1D(Grid1D g) : v_(std::move(g)) {}
  static Func1D power(double c, double a, double lo = 0.0, double hi = kInfinity);
  static Func1D indicator(double lo, double hi, double c = 1.0);

  bool is_grid() const { return std::holds_alternative<Grid1D>(v_); }
  const Grid1D& grid() const { return std::get<Grid1D>(v_); }
  const Profile& profile() const { return std::get<Profile>(v_); }
  double eval(double r) const;
  Profile as_profile() const;  // grids become constant pieces
  Func1D dilated(double R) const;

private:
  std::variant<Profile, Grid1D> v_;
};

struct YInfo {
  double lo = 0.0, hi = kInfinity;
  std::vector<double> breaks;
};

class FuncRep {
public:
  enum class Kind { catalog, grid, tensor, sum, product, scale, truncate, min, max };

  FuncRep() = default;
  static FuncRep catalog(const CatalogFunc& c, DimPair dims = {});
  static FuncRep grid(GridFunc g);
  static FuncRep tensor(Func1D f, Func1D g);
  static FuncRep sum(const FuncRep& a, const FuncRep& b);
  static FuncRep product(const FuncRep& a, const FuncRep& b);
  static FuncRep scale(const FuncRep& a, double k);
  static FuncRep truncate(const FuncRep& a, double rx, double ry);
  static FuncRep min(const FuncRep& a, const FuncRep& b);
  static FuncRep max(const FuncRep& a, const FuncRep& b);

  Kind kind() const;
  const DimPair& dims() const;
  bool sign_dependent() const;

  double eval(double rx, double ry, SignRegime regime = SignRegime::same) const;

  // closed-form slices x -> f(x, y) for fixed |y| = ry
  bool has_profile() const;
  Profile slice(double ry) const;
  bool slice_aligned() const;  // slices parametrized by t = |x|
  YInfo y_info() const;

  const CatalogFunc& as_catalog() const;
  const GridFunc& as_grid() const;
  const Func1D& tensor_f() const;
  const Func1D& tensor_g() const;
  const FuncRep& left() const;
  const FuncRep& right() const;
  double scalar() const;
  std::pair<double, double> truncate_bounds() const;

  // f(x/R, y/R)
  FuncRep dilated(double R) const;

private:
  struct Node;
  explicit FuncRep(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// radial node helpers: r_0 = 0, then cells geometric from lo to hi
std::vector<double> geometric_nodes(size_t cells, double lo, double hi);
std::vector<double> uniform_nodes(size_t cells, double hi);

double superlevel_measure(const FuncRep& f, double ry, double lambda);
FuncRep tensor(const Func1D& f, const Func1D& g);
GridFunc sample_to_grid(const FuncRep& f, const std::vector<double>& xnodes,
                        const std::vector<double>& ynodes, DimPair dims = {});

// default 512-cell geometric grid over [1e-6, 1e6]
GridFunc sample_default(const FuncRep& f, size_t cells = 512, double lo = 1e-6, double hi = 1e6);

// product of two profiles sharing the t = |x| parametrization
Profile profile_product(const Profile& a, const Profile& b);

}  // namespace mixnorm
