#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "strongrate/strongrate.h"

namespace strongrate_cli {

namespace {

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) parts.push_back(cur);
  if (text.empty() || text.back() == ',') parts.push_back("");
  return parts;
}

template <class T, class Conv>
std::vector<T> parse_list(const std::string& text, Conv conv, const char* what) {
  std::vector<T> out;
  for (const auto& part : split_commas(text)) {
    std::size_t used = 0;
    T v{};
    try {
      v = conv(part, &used);
    } catch (const std::exception&) {
      throw UsageError("malformed " + std::string(what) + " list '" + text + "'");
    }
    if (used != part.size()) throw UsageError("malformed " + std::string(what) + " list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

nlohmann::json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.is_object() && j.contains("config")) j = j.at("config");
    if (!j.is_object()) throw UsageError("config file '" + path + "' must hold a JSON object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  return parse_list<int>(text, [](const std::string& s, std::size_t* u) { return std::stoi(s, u); }, "integer");
}

std::vector<double> parse_real_list(const std::string& text) {
  return parse_list<double>(text, [](const std::string& s, std::size_t* u) { return std::stod(s, u); }, "real");
}

Command parse_args(int argc, const char* const* argv) {
  CLI::App app{"Strong convergence rate experiments for SDEs with fractional Sobolev drift", "strongrate"};
  app.set_help_flag();  // handled below so help never throws
  bool help = false;
  app.add_flag("-h,--help", help, "Print this help and exit");

  std::string verb;
  app.add_option("verb", verb, "rate | couple | kappa | occupation | transform-check | sobolev");

  std::optional<double> s, x0, p, z, xi, order, domain;
  std::optional<std::string> n_list, deltas, drift, config_path;
  std::optional<int> fine_steps, reps, mesh, doublings;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out, format = "both";

  app.add_option("--s", s, "Drift smoothness, in (1/2, 1) for mu-s");
  app.add_option("--x0", x0, "Initial value");
  app.add_option("--p", p, "Error exponent, >= 1");
  app.add_option("--n-list", n_list, "Comma-separated increasing step counts");
  app.add_option("--fine-steps", fine_steps, "Fine grid steps");
  app.add_option("--reps", reps, "Monte Carlo replications");
  app.add_option("--seed", seed, "64-bit seed (default 42)");
  app.add_option("--out", out, "Output base path (files <out>.csv, <out>.json)");
  app.add_option("--format", format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_option("--drift", drift, "mu-s, indicator, hat, zero or constant=<c>");
  app.add_option("--config", config_path, "Flat JSON config file or an earlier report");
  app.add_option("--z", z, "kappa: frequency");
  app.add_option("--xi", xi, "occupation: level");
  app.add_option("--deltas", deltas, "occupation: comma-separated windows in (0, 1]");
  app.add_option("--order", order, "sobolev: probed order");
  app.add_option("--mesh", mesh, "sobolev: initial mesh");
  app.add_option("--doublings", doublings, "sobolev: mesh doublings");
  app.add_option("--domain", domain, "sobolev: half width of the domain");
  app.add_option("--threads", threads, "Worker threads (default from STRONGRATE_THREADS)");

  Command cmd;
  cmd.help_text = app.help();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  if (help) {
    cmd.help = true;
    return cmd;
  }
  if (verb.empty()) throw UsageError("missing verb");

  nlohmann::json cfg = config_path ? read_config_file(*config_path) : nlohmann::json::object();
  auto set = [&](const char* key, const auto& v) {
    if (v) cfg[key] = *v;
  };
  set("s", s);
  set("x0", x0);
  set("p", p);
  set("fine_steps", fine_steps);
  set("reps", reps);
  set("seed", seed);
  set("z", z);
  set("xi", xi);
  set("order", order);
  set("mesh", mesh);
  set("doublings", doublings);
  set("domain", domain);
  set("drift", drift);
  if (n_list) cfg["n_list"] = parse_int_list(*n_list);
  if (deltas) cfg["deltas"] = parse_real_list(*deltas);
  // The thread count is an execution detail and never enters a report.
  if (threads) {
    cfg["threads"] = *threads;
  } else {
    cfg.erase("threads");
  }
  cfg.erase("verb");

  char* resolved = nullptr;
  const std::string text = cfg.dump();
  if (sr_config_resolve(verb.c_str(), text.c_str(), &resolved) != SR_OK) throw UsageError(sr_last_error());
  cmd.config = nlohmann::json::parse(resolved);
  sr_string_free(resolved);
  if (threads) cmd.config["threads"] = *threads;

  cmd.verb = verb;
  cmd.out = out.empty() ? "strongrate-" + verb : out;
  cmd.format = format;
  return cmd;
}

int run(const Command& cmd) {
  if (cmd.help) {
    std::cout << cmd.help_text;
    return kExitOk;
  }
  sr_report* report = nullptr;
  const std::string text = cmd.config.dump();
  const sr_status st = sr_run(cmd.verb.c_str(), text.c_str(), &report);
  if (st != SR_OK) {
    std::cerr << "strongrate: " << sr_last_error() << "\n";
    return (st == SR_ERR_INVALID_ARGUMENT) ? kExitUsage : kExitFailure;
  }
  int code = kExitOk;
  if (sr_report_write(report, cmd.out.c_str(), cmd.format.c_str()) != SR_OK) {
    std::cerr << "strongrate: " << sr_last_error() << "\n";
    code = kExitFailure;
  }
  char tail[128];
  std::snprintf(tail, sizeof tail, " [seed %llu, %.2f s]",
                static_cast<unsigned long long>(cmd.config.value("seed", std::uint64_t{42})),
                sr_report_wall_seconds(report));
  std::cout << sr_report_summary(report) << tail << "\n";
  sr_report_destroy(report);
  return code;
}

int main_entry(int argc, const char* const* argv) {
  Command cmd;
  try {
    cmd = parse_args(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "strongrate: " << e.what() << "\n\n"
              << "usage: strongrate <verb> [options]   (strongrate --help for the option list)\n";
    return kExitUsage;
  }
  return run(cmd);
}

}  // namespace strongrate_cli
