#include "strongrate/drift.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "strongrate/error.hpp"

namespace strongrate {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kPi = std::numbers::pi;

void check_s(double s) {
  if (!(s > 0.5 && s < 1.0)) {
    std::ostringstream os;
    os << "s must lie in the open interval (1/2, 1), got " << s;
    throw DomainError(os.str());
  }
}

// h, h', h'' at z >= 0 sharing the common subexpressions.
struct HJet {
  double h, d1, d2;
};

inline HJet h_jet(double a, double z) {
  const double u = kE + z;
  const double L = std::log(u);
  const double h = std::pow(u, -a) / L;
  const double g = a + 1.0 / L;
  return {h, -h * g / u, h * (g * g + a + 1.0 / L + 1.0 / (L * L)) / (u * u)};
}

}  // namespace

void QuadratureSettings::validate() const {
  if (!(z_max == 0.0 || z_max >= 1.0)) throw ConfigError("quadrature z_max must be 0 (auto) or >= 1");
  if (panels < 4) throw ConfigError("quadrature panels must be >= 4");
  if (!(abs_tol > 0.0)) throw ConfigError("quadrature abs_tol must be positive");
}

void FractionalDriftParams::validate() const {
  check_s(s);
  quad.validate();
}

double eval_h(double s, double x) {
  check_s(s);
  const double u = kE + std::abs(x);
  return 1.0 / (std::pow(u, 0.5 + s) * std::log(u));
}

double eval_h_derivative(double s, double z) {
  check_s(s);
  return h_jet(0.5 + s, std::abs(z)).d1;
}

double eval_h_second_derivative(double s, double z) {
  check_s(s);
  return h_jet(0.5 + s, std::abs(z)).d2;
}

double h_tail_bound(double s, double z) {
  check_s(s);
  const double u = kE + z;
  return std::pow(u, 0.5 - s) / ((s - 0.5) * std::log(u));
}

double resolve_z_max(const FractionalDriftParams& params) {
  params.validate();
  const double budget = 0.5 * params.quad.abs_tol;
  if (params.quad.z_max > 0.0) {
    if (h_tail_bound(params.s, params.quad.z_max) > budget) {
      throw QuadratureError("z_max too small: tail bound of h_s exceeds abs_tol / 2");
    }
    return params.quad.z_max;
  }
  // Bisection on log(z); the tail bound is decreasing in z.
  double lo = 0.0, hi = 1.0;
  while (h_tail_bound(params.s, std::exp(hi)) > budget) {
    lo = hi;
    hi *= 2.0;
    if (hi > 690.0) throw QuadratureError("tail bound of h_s unattainable in double precision");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h_tail_bound(params.s, std::exp(mid)) > budget ? lo : hi) = mid;
  }
  return std::max(1.0, std::exp(hi));
}

MuQuadrature integrate_mu_s(const FractionalDriftParams& params, double x) {
  const double z_max = resolve_z_max(params);
  const double a = 0.5 + params.s;
  const double ax = std::abs(x);
  const double budget = 0.5 * params.quad.abs_tol;  // per half-line integral and per error source
  const double inv_panels = 1.0 / params.quad.panels;

  // For x != 0 the tail past Z equals -sin(xZ)h(Z)/x - cos(xZ)h'(Z)/x^2 up to
  // |h'(Z)|/x^2, because h'' > 0. Z_x makes that remainder fit the budget,
  // using |h'(z)| <= (a + 1)(e + z)^-(a + 1).
  double end = z_max;
  bool corrected = false;
  if (ax > 0.0) {
    const double zx = std::pow((a + 1.0) / (budget * ax * ax), 1.0 / (a + 1.0)) - kE;
    if (zx < z_max) {
      end = std::max(zx, 1.0);
      corrected = true;
    }
  }
  const double w_osc = ax > 0.0 ? 2.0 * kPi / (8.0 * ax) : std::numeric_limits<double>::infinity();

  MuQuadrature out;
  out.truncation = end;
  double sum = 0.0;
  double interp_err = 0.0;
  double za = 0.0;
  HJet ja = h_jet(a, 0.0);
  const double half_w_osc_sin = std::sin(0.5 * ax * w_osc);
  while (za < end) {
    double w = std::min((1.0 + za) * inv_panels, w_osc);
    double zb = za + w;
    if (zb >= end || end - zb < 1e-3 * w) {
      zb = end;
      w = zb - za;
    }
    const HJet jb = h_jet(a, zb);
    interp_err += w * w * w * ja.d2 / 12.0;
    if (ax == 0.0) {
      sum += 0.5 * w * (ja.h + jb.h);
    } else {
      // Exact integral of cos(xz) times the linear interpolant on [za, zb],
      // minus the sin(x zb) h(zb)/x - sin(x za) h(za)/x part, which
      // telescopes and is added once below.
      const double m = 0.5 * (za + zb);
      const double s_half = (w == w_osc) ? half_w_osc_sin : std::sin(0.5 * ax * w);
      sum += (jb.h - ja.h) * (-2.0 * std::sin(ax * m) * s_half) / (w * ax * ax);
    }
    ++out.panels;
    za = zb;
    ja = jb;
  }

  double remainder;
  if (ax == 0.0) {
    remainder = h_tail_bound(params.s, end);
  } else if (corrected) {
    // h(Z) sin(xZ)/x from the telescoped sum cancels the first tail term.
    sum += -std::cos(ax * end) * ja.d1 / (ax * ax);
    remainder = std::abs(ja.d1) / (ax * ax);
  } else {
    sum += ja.h * std::sin(ax * end) / ax;
    remainder = h_tail_bound(params.s, end);
  }

  if (interp_err > budget) {
    std::ostringstream os;
    os << "mu_s quadrature panel error bound " << interp_err << " exceeds " << budget
       << "; raise panels";
    throw QuadratureError(os.str());
  }
  out.value = 2.0 * sum;
  out.error_bound = 2.0 * (interp_err + remainder);
  return out;
}

DriftSpec make_mu_s_drift(std::shared_ptr<const MuSCache> cache) {
  DriftSpec d;
  const double s = cache->params().s;
  d.sup_norm = cache->value_at_zero();
  // |mu_s| <= 4(3/2+s)/x^2 beyond the table on both sides.
  d.l1_norm = cache->l1_on_table() + 2.0 * 4.0 * (1.5 + s) / cache->x_max();
  std::ostringstream os;
  os << "mu_s(s=" << s << ")";
  d.label = os.str();
  d.eval = [c = cache.get()](double x) { return (*c)(x); };
  d.mu_cache = std::move(cache);
  return d;
}

namespace {

struct DriftFactory {
  DriftSpec operator()(const drift_kind::MuS& k) const {
    return make_mu_s_drift(MuSCache::build(k.params, k.cache));
  }
  DriftSpec operator()(const drift_kind::Indicator01&) const {
    return {[](double x) { return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0; }, 1.0, 1.0, "indicator_01", {}};
  }
  DriftSpec operator()(const drift_kind::Hat&) const {
    return {[](double x) { return std::max(0.0, 1.0 - std::abs(x)); }, 1.0, 1.0, "hat", {}};
  }
  DriftSpec operator()(const drift_kind::Zero&) const {
    return {[](double) { return 0.0; }, 0.0, 0.0, "zero", {}};
  }
  DriftSpec operator()(const drift_kind::Constant& k) const {
    if (!std::isfinite(k.c)) throw ConfigError("constant drift must be finite");
    std::ostringstream os;
    os << "constant(" << k.c << ")";
    return {[c = k.c](double) { return c; }, std::abs(k.c),
            k.c == 0.0 ? std::optional<double>(0.0) : std::nullopt, os.str(), {}};
  }
};

}  // namespace

DriftSpec make_drift(const DriftKind& kind) { return std::visit(DriftFactory{}, kind); }

std::string drift_kind_name(const DriftKind& kind) {
  struct Namer {
    std::string operator()(const drift_kind::MuS&) const { return "mu-s"; }
    std::string operator()(const drift_kind::Indicator01&) const { return "indicator"; }
    std::string operator()(const drift_kind::Hat&) const { return "hat"; }
    std::string operator()(const drift_kind::Zero&) const { return "zero"; }
    std::string operator()(const drift_kind::Constant& k) const {
      char buf[64];
      std::snprintf(buf, sizeof buf, "constant=%.17g", k.c);
      return buf;
    }
  };
  return std::visit(Namer{}, kind);
}

DriftKind parse_drift_kind(std::string_view name, double s) {
  if (name == "mu-s") {
    drift_kind::MuS k;
    k.params.s = s;
    k.params.validate();
    return k;
  }
  if (name == "indicator") return drift_kind::Indicator01{};
  if (name == "hat") return drift_kind::Hat{};
  if (name == "zero") return drift_kind::Zero{};
  if (name.starts_with("constant=")) {
    const std::string num(name.substr(9));
    std::size_t used = 0;
    double c;
    try {
      c = std::stod(num, &used);
    } catch (const std::exception&) {
      throw ConfigError("malformed constant drift '" + std::string(name) + "'");
    }
    if (used != num.size() || !std::isfinite(c)) {
      throw ConfigError("malformed constant drift '" + std::string(name) + "'");
    }
    return drift_kind::Constant{c};
  }
  throw ConfigError("unknown drift '" + std::string(name) +
                    "' (expected mu-s, indicator, hat, zero or constant=<c>)");
}

}  // namespace strongrate
