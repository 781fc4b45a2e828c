#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace strongrate {

// Controls the oscillatory quadrature behind mu_s. Panel widths grow like
// (1 + z) / panels and never exceed one eighth of the cosine period.
struct QuadratureSettings {
  double z_max = 0.0;   // 0 selects the smallest z_max meeting the tail bound
  int panels = 1000;
  double abs_tol = 1e-6;

  void validate() const;
};

struct FractionalDriftParams {
  double s = 0.75;
  QuadratureSettings quad;

  void validate() const;
};

// h_s(x) = 1 / ((e + |x|)^(1/2 + s) ln(e + |x|)).
double eval_h(double s, double x);

// Derivatives of h_s on [0, inf); at z = 0 these are the right derivatives.
double eval_h_derivative(double s, double z);
double eval_h_second_derivative(double s, double z);

// Upper bound for the tail integral of h_s over [z, inf).
double h_tail_bound(double s, double z);

// Truncation point actually used for the half-line integral.
double resolve_z_max(const FractionalDriftParams& params);

// |mu_s(x)| <= 4 (3/2 + s) / x^2.
inline double mu_s_decay_bound(double s, double x) { return 4.0 * (1.5 + s) / (x * x); }

struct MuQuadrature {
  double value = 0.0;
  double error_bound = 0.0;  // panel error plus truncation remainder
  double truncation = 0.0;   // end of the panel mesh
  std::size_t panels = 0;
};

// 2 * int_0^inf cos(x z) h_s(z) dz by composite Filon quadrature on a graded
// mesh, with an asymptotic tail correction once the mesh end is far enough
// out for the given x. Throws QuadratureError if the a priori panel error
// bound exceeds the budget.
MuQuadrature integrate_mu_s(const FractionalDriftParams& params, double x);

inline double eval_mu_s(const FractionalDriftParams& params, double x) {
  return integrate_mu_s(params, x).value;
}

struct MuCacheSettings {
  double x_max = 16.0;
  double tol = 1e-6;  // target linear interpolation error

  void validate() const;
};

// Piecewise linear table of mu_s on [0, x_max], refined adaptively near the
// non-smooth point at the origin. Values outside the table are computed by
// direct quadrature.
class MuSCache {
 public:
  static std::shared_ptr<const MuSCache> build(const FractionalDriftParams& params,
                                               const MuCacheSettings& settings = {});
  static std::shared_ptr<const MuSCache> from_table(const FractionalDriftParams& params,
                                                    std::vector<double> nodes,
                                                    std::vector<double> values);
  static std::shared_ptr<const MuSCache> load_csv(const FractionalDriftParams& params,
                                                  const std::string& path);

  double operator()(double x) const;

  const FractionalDriftParams& params() const { return params_; }
  double x_max() const { return nodes_.back(); }
  double value_at_zero() const { return values_.front(); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> values() const { return values_; }

  // Trapezoid of |mu| over [-x_max, x_max] (from the table).
  double l1_on_table() const;

  // Two columns x, mu(x) over [-x_max, x_max], 17 significant digits.
  void dump_csv(const std::string& path) const;

 private:
  MuSCache(const FractionalDriftParams& params, std::vector<double> nodes,
           std::vector<double> values);
  void index_buckets();

  FractionalDriftParams params_;
  std::vector<double> nodes_;   // 0 = nodes_[0] < nodes_[1] < ...
  std::vector<double> values_;
  std::vector<std::size_t> bucket_start_;
  double inv_bucket_width_ = 0.0;
};

// A bounded measurable drift coefficient. l1_norm is empty for drifts that
// are not integrable.
struct DriftSpec {
  std::function<double(double)> eval;
  double sup_norm = 0.0;
  std::optional<double> l1_norm;
  std::string label;
  std::shared_ptr<const MuSCache> mu_cache;  // set only for mu_s

  double operator()(double x) const { return eval(x); }
  bool integrable() const { return l1_norm.has_value(); }
};

namespace drift_kind {
struct MuS {
  FractionalDriftParams params;
  MuCacheSettings cache;
};
struct Indicator01 {};
struct Hat {};
struct Zero {};
struct Constant {
  double c = 0.0;
};
}  // namespace drift_kind

using DriftKind = std::variant<drift_kind::MuS, drift_kind::Indicator01, drift_kind::Hat,
                               drift_kind::Zero, drift_kind::Constant>;

DriftSpec make_drift(const DriftKind& kind);

// Builds the mu_s drift on an existing table.
DriftSpec make_mu_s_drift(std::shared_ptr<const MuSCache> cache);

// CLI spelling: mu-s, indicator, hat, zero, constant=<c>.
std::string drift_kind_name(const DriftKind& kind);
DriftKind parse_drift_kind(std::string_view name, double s);

}  // namespace strongrate
