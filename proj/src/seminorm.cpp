#include "strongrate/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "strongrate/error.hpp"

namespace strongrate {

namespace {

double piece(double s, const std::function<double(double)>& f_hat, double a, double b) {
  if (b <= a) return 0.0;
  auto integrand = [&](double x) {
    const double v = f_hat(x);
    return std::pow(std::abs(x), 2.0 * s) * v * v;
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, 8, 1e-12);
}

}  // namespace

std::vector<double> seminorm_fourier_profile(double s, const std::function<double(double)>& f_hat,
                                             std::span<const double> cutoffs) {
  if (!(s > 0.0)) throw DomainError("seminorm order s must be positive");
  std::vector<double> out;
  out.reserve(cutoffs.size());
  double acc = 0.0, reached = 0.0;
  for (const double c : cutoffs) {
    if (!(c > 0.0) || c < reached) throw ConfigError("cutoffs must be positive and increasing");
    while (reached < c) {
      const double next = std::min(c, std::floor(reached) + 1.0);
      acc += piece(s, f_hat, reached, next) + piece(s, f_hat, -next, -reached);
      reached = next;
    }
    out.push_back(acc);
  }
  return out;
}

double seminorm_fourier_side(double s, const std::function<double(double)>& f_hat, double cutoff) {
  const double c[] = {cutoff};
  return seminorm_fourier_profile(s, f_hat, c).front();
}

DirectSeminorm seminorm_direct(const DriftSpec& f, double s, double p, double L, int mesh) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("seminorm order s must lie in (0, 1)");
  if (!(p >= 1.0)) throw DomainError("seminorm exponent p must be >= 1");
  if (!(L > 0.0)) throw ConfigError("domain half width must be positive");
  if (mesh < 16) throw ConfigError("seminorm mesh must be >= 16");

  const double h = 2.0 * L / mesh;
  std::vector<double> fv(mesh);
  for (int i = 0; i < mesh; ++i) fv[i] = f(-L + (i + 0.5) * h);

  // Kernel depends only on |i - j|.
  std::vector<double> kern(mesh);
  for (int k = 1; k < mesh; ++k) kern[k] = std::pow(k * h, -(1.0 + s * p));

  double sum = 0.0;
  for (int i = 0; i < mesh; ++i) {
    double row = 0.0;
    for (int j = i + 1; j < mesh; ++j) {
      const double d = std::abs(fv[i] - fv[j]);
      if (d != 0.0) row += std::pow(d, p) * kern[j - i];
    }
    sum += row;
  }

  // Band |x - y| < h around cell i with local constant C_i (|f(x) - f(y)| <=
  // C_i |x - y|): int_cell int_{|u|<h} C_i^p |u|^(p - 1 - sp) du dx.
  double band = 0.0;
  for (int i = 0; i < mesh; ++i) {
    double diff = 0.0;
    if (i > 0) diff = std::max(diff, std::abs(fv[i] - fv[i - 1]));
    if (i + 1 < mesh) diff = std::max(diff, std::abs(fv[i + 1] - fv[i]));
    const double lip = diff / h;
    band += h * 2.0 * std::pow(lip, p) * std::pow(h, p - s * p) / (p - s * p);
  }

  return {mesh, 2.0 * sum * h * h, band};
}

SeminormStudy seminorm_refinement_study(const DriftSpec& f, double s, double p, double L, int mesh,
                                        int doublings, double growth_threshold) {
  if (doublings < 3) throw ConfigError("refinement study needs at least 3 doublings");
  SeminormStudy study;
  for (int k = 0; k <= doublings; ++k) study.levels.push_back(seminorm_direct(f, s, p, L, mesh << k));

  int streak = 0;
  for (std::size_t k = 2; k < study.levels.size(); ++k) {
    const double prev = study.levels[k - 1].estimate - study.levels[k - 2].estimate;
    const double cur = study.levels[k].estimate - study.levels[k - 1].estimate;
    const bool grows = cur > 0.0 && cur > growth_threshold * std::abs(prev);
    streak = grows ? streak + 1 : 0;
    if (streak >= 2) study.divergent = true;
  }
  return study;
}

}  // namespace strongrate
