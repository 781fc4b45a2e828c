#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "strongrate/drift.hpp"
#include "strongrate/error.hpp"

namespace strongrate {

namespace {

constexpr double kSmallestNode = 1e-24;
constexpr double kGeometricEnd = 1.0 / 16.0;
constexpr double kUniformStep = 1.0 / 16.0;
constexpr double kMinWidth = 1e-30;
constexpr std::size_t kBuckets = 1u << 14;

}  // namespace

void MuCacheSettings::validate() const {
  if (!(x_max >= 1.0)) throw ConfigError("mu_s cache x_max must be >= 1");
  if (!(tol > 0.0)) throw ConfigError("mu_s cache tol must be positive");
}

MuSCache::MuSCache(const FractionalDriftParams& params, std::vector<double> nodes,
                   std::vector<double> values)
    : params_(params), nodes_(std::move(nodes)), values_(std::move(values)) {
  if (nodes_.size() < 2 || nodes_.size() != values_.size() || nodes_.front() != 0.0) {
    throw ConfigError("mu_s table must start at 0 and have matching columns");
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) throw ConfigError("mu_s table nodes must increase");
  }
  index_buckets();
}

void MuSCache::index_buckets() {
  const double width = nodes_.back() / kBuckets;
  inv_bucket_width_ = 1.0 / width;
  bucket_start_.assign(kBuckets + 2, 0);
  std::size_t i = 0;
  for (std::size_t k = 0; k < bucket_start_.size(); ++k) {
    const double left = k * width;
    while (i + 1 < nodes_.size() && nodes_[i + 1] <= left) ++i;
    bucket_start_[k] = i;
  }
}

std::shared_ptr<const MuSCache> MuSCache::build(const FractionalDriftParams& params,
                                                const MuCacheSettings& settings) {
  params.validate();
  settings.validate();

  std::map<double, double> table;
  auto value = [&](double x) {
    auto it = table.find(x);
    if (it != table.end()) return it->second;
    const double v = eval_mu_s(params, x);
    table.emplace(x, v);
    return v;
  };

  std::vector<double> seeds{0.0};
  for (double x = kSmallestNode; x < kGeometricEnd; x *= 2.0) seeds.push_back(x);
  const auto uniform_count = static_cast<std::size_t>(std::ceil(settings.x_max / kUniformStep));
  for (std::size_t k = 1; k <= uniform_count; ++k) {
    seeds.push_back(std::min(settings.x_max, k * kUniformStep));
  }
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  // Split any interval whose midpoint deviates from the chord by more than tol.
  std::vector<std::pair<double, double>> stack;
  for (std::size_t i = 1; i < seeds.size(); ++i) stack.emplace_back(seeds[i - 1], seeds[i]);
  std::reverse(stack.begin(), stack.end());
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    const double fa = value(a), fb = value(b);
    const double m = 0.5 * (a + b);
    const double fm = value(m);
    if (std::abs(fm - 0.5 * (fa + fb)) > settings.tol && b - a > kMinWidth) {
      stack.emplace_back(m, b);
      stack.emplace_back(a, m);
    }
  }

  // |mu_s(x)| <= mu_s(0) holds exactly; clip quadrature noise against it.
  const double peak = table.at(0.0);
  std::vector<double> nodes, values;
  nodes.reserve(table.size());
  values.reserve(table.size());
  for (const auto& [x, v] : table) {
    nodes.push_back(x);
    values.push_back(std::clamp(v, -peak, peak));
  }
  return std::shared_ptr<const MuSCache>(new MuSCache(params, std::move(nodes), std::move(values)));
}

std::shared_ptr<const MuSCache> MuSCache::from_table(const FractionalDriftParams& params,
                                                     std::vector<double> nodes,
                                                     std::vector<double> values) {
  params.validate();
  return std::shared_ptr<const MuSCache>(new MuSCache(params, std::move(nodes), std::move(values)));
}

double MuSCache::operator()(double x) const {
  const double ax = std::abs(x);
  if (!(ax < nodes_.back())) {
    if (ax == nodes_.back()) return values_.back();
    return eval_mu_s(params_, ax);
  }
  const auto k = static_cast<std::size_t>(ax * inv_bucket_width_);
  std::size_t lo = bucket_start_[k];
  const std::size_t hi = std::min(bucket_start_[k + 1] + 1, nodes_.size() - 1);
  if (hi - lo > 4) {
    lo = static_cast<std::size_t>(
        std::upper_bound(nodes_.begin() + lo, nodes_.begin() + hi + 1, ax) - nodes_.begin() - 1);
  } else {
    while (nodes_[lo + 1] <= ax) ++lo;
  }
  const double t = (ax - nodes_[lo]) / (nodes_[lo + 1] - nodes_[lo]);
  return values_[lo] + t * (values_[lo + 1] - values_[lo]);
}

double MuSCache::l1_on_table() const {
  double sum = 0.0;
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    sum += 0.5 * (nodes_[i] - nodes_[i - 1]) * (std::abs(values_[i]) + std::abs(values_[i - 1]));
  }
  return 2.0 * sum;
}

void MuSCache::dump_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "x,mu\n";
  char buf[96];
  for (std::size_t i = nodes_.size(); i-- > 1;) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", -nodes_[i], values_[i]);
    out << buf;
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", nodes_[i], values_[i]);
    out << buf;
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::shared_ptr<const MuSCache> MuSCache::load_csv(const FractionalDriftParams& params,
                                                   const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (line != "x,mu") throw IoError("'" + path + "' is not a mu_s table (missing header)");
  std::vector<double> nodes, values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("malformed row in '" + path + "'");
    const double x = std::stod(line.substr(0, comma));
    const double v = std::stod(line.substr(comma + 1));
    if (x < 0.0) continue;  // mirrored half
    nodes.push_back(x);
    values.push_back(v);
  }
  return from_table(params, std::move(nodes), std::move(values));
}

}  // namespace strongrate
