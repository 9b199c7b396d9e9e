// su11walk: run walk experiments, sample overlaps, cross-check against the
// Fock-space oracle, and draw charts.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or config error.

#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "su11walk/io/config.hpp"
#include "su11walk/io/experiment.hpp"
#include "su11walk/io/svg_chart.hpp"
#include "su11walk/io/table.hpp"

namespace fs = std::filesystem;
namespace io = su11walk::io;

namespace {

constexpr int kOk = 0;
constexpr int kRuntime = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "csv";
  std::optional<std::string> mode;
  std::optional<std::string> out;
};

std::optional<su11walk::PhaseMode> mode_override(const Globals& g) {
  if (!g.mode) return std::nullopt;
  return su11walk::phase_mode_from_string(*g.mode);
}

io::ExperimentConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const io::IoError& e) {
    throw UsageError(e.what());
  }
  try {
    return io::parse_config(text);
  } catch (const io::ConfigError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

int cmd_run(const Globals& g, const std::vector<std::string>& configs, unsigned jobs) {
  const auto fmt = io::table_format_from_string(g.format);
  const auto mode = mode_override(g);
  // validate everything before running anything
  std::vector<io::ExperimentConfig> cfgs;
  for (const auto& p : configs) {
    auto c = load_config(p);
    if (mode) c.mode = *mode;
    if (g.out) c.out_dir = *g.out;
    cfgs.push_back(std::move(c));
  }

  auto work = [fmt](const io::ExperimentConfig& c) {
    std::string log;
    for (const auto& t : io::run_experiment(c)) {
      const auto path = io::write_table(t, c.out_dir, fmt);
      log += "wrote " + path.string() + " (" + std::to_string(t.rows.size()) + " rows)\n";
    }
    return log;
  };

  std::vector<std::string> logs(cfgs.size());
  if (jobs <= 1 || cfgs.size() == 1) {
    for (std::size_t i = 0; i < cfgs.size(); ++i) logs[i] = work(cfgs[i]);
  } else {
    for (std::size_t base = 0; base < cfgs.size(); base += jobs) {
      std::vector<std::future<std::string>> fut;
      for (std::size_t i = base; i < std::min(cfgs.size(), base + jobs); ++i)
        fut.push_back(std::async(std::launch::async, work, std::cref(cfgs[i])));
      for (std::size_t i = 0; i < fut.size(); ++i) logs[base + i] = fut[i].get();
    }
  }
  for (const auto& l : logs) std::cout << l;
  return kOk;
}

int cmd_overlap(const Globals& g, const std::vector<double>& ks, const std::vector<double>& rs, std::size_t points,
                const std::string& name) {
  io::OverlapSweep s{ks, rs, points, name};
  const auto t = io::overlap_table(s);
  const auto path = io::write_table(t, g.out.value_or("."), io::table_format_from_string(g.format));
  std::cout << "wrote " << path.string() << " (" << t.rows.size() << " rows)\n"
            << "non_increasing_in_k=" << (t.metadata["non_increasing_in_k"].get<bool>() ? "true" : "false") << "\n"
            << "non_increasing_in_r=" << (t.metadata["non_increasing_in_r"].get<bool>() ? "true" : "false") << "\n";
  return kOk;
}

int cmd_crosscheck(const Globals& g, const std::optional<std::string>& suite_path, const std::string& name) {
  std::vector<su11walk::CrossCheckConfig> suite;
  if (suite_path) {
    std::string text;
    try {
      text = io::read_file(*suite_path);
    } catch (const io::IoError& e) {
      throw UsageError(e.what());
    }
    try {
      suite = io::parse_crosscheck_suite(text);
    } catch (const io::ConfigError& e) {
      throw UsageError(*suite_path + ": " + e.what());
    }
  } else {
    suite = io::default_crosscheck_suite();
  }
  if (const auto m = mode_override(g))
    for (auto& c : suite) c.mode = *m;

  const auto res = io::run_crosscheck_suite(suite);
  const fs::path path = fs::path(g.out.value_or(".")) / (name + ".json");
  io::write_atomic(path, res.report.dump(2) + "\n");
  for (const auto& e : res.report["entries"]) {
    std::printf("%-20s k=%-5s r=%-4s L=%-3s steps=%-3s %-16s max_dP=%.3g max_dM=%.3g max_dS=%.3g\n",
                e["status"].get<std::string>().c_str(), io::format_number(e["k"].get<double>()).c_str(),
                io::format_number(e["r"].get<double>()).c_str(), std::to_string(e["sites"].get<std::size_t>()).c_str(),
                std::to_string(e["steps"].get<std::size_t>()).c_str(), e["mode"].get<std::string>().c_str(),
                e["max_dP"].get<double>(), e["max_dM"].get<double>(), e["max_dS"].get<double>());
    if (e.contains("first_failure"))
      std::printf("  first deviation at %s\n", e["first_failure"].get<std::string>().c_str());
  }
  std::cout << "wrote " << path.string() << "\n" << (res.ok ? "crosscheck: ok\n" : "crosscheck: FAILED\n");
  return res.ok ? kOk : kRuntime;
}

// Several tables overlay into one chart when their x columns agree.
io::ResultTable merge_for_chart(const std::vector<io::ResultTable>& tabs, const std::string& x,
                                const std::vector<std::string>& y_in, std::vector<std::string>& series) {
  io::ResultTable m;
  m.name = tabs.front().name;
  m.columns = {x};
  const auto xs = tabs.front().column(x);
  for (double v : xs) m.rows.push_back({v});
  for (const auto& t : tabs) {
    if (t.column(x) != xs)
      throw su11walk::InvalidArgument("chart: table '" + t.name + "' has different '" + x + "' values than '" +
                                      tabs.front().name + "'");
    std::vector<std::string> ys = y_in;
    if (ys.empty())
      for (const auto& c : t.columns)
        if (c != x) ys.push_back(c);
    for (const auto& c : ys) {
      const auto col = t.column(c);
      const std::string label = tabs.size() > 1 ? t.name + ":" + c : c;
      m.columns.push_back(label);
      series.push_back(label);
      for (std::size_t i = 0; i < col.size(); ++i) m.rows[i].push_back(col[i]);
    }
  }
  return m;
}

int cmd_chart(const Globals& g, const std::vector<std::string>& tables, const std::string& kind, const std::string& x,
              const std::vector<std::string>& y, const std::string& title) {
  io::ChartSpec spec;
  spec.kind = io::chart_kind_from_string(kind);
  spec.x = x;
  spec.title = title;
  std::vector<io::ResultTable> tabs;
  for (const auto& p : tables) {
    try {
      tabs.push_back(io::read_table(p));
    } catch (const io::IoError& e) {
      throw UsageError(e.what());
    }
  }
  const auto merged = merge_for_chart(tabs, x, y, spec.y);
  fs::path out = g.out.value_or(".");
  if (out.extension() != ".svg") out /= fs::path(tables.front()).stem().string() + ".svg";
  io::write_svg(merged, spec, out);
  std::cout << "wrote " << out.string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"su11walk: quantum walks over coherent-state frames"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "table format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--mode", g.mode, "phase-mode override")->check(CLI::IsMember({"physical", "paper-idealized"}));

  auto* run = app.add_subcommand("run", "run experiments from JSON configs");
  std::vector<std::string> configs;
  unsigned jobs = 1;
  run->add_option("--config", configs, "experiment config (repeatable)")->required()->check(CLI::ExistingFile);
  run->add_option("--jobs", jobs, "configs to run in parallel")->check(CLI::Range(1u, 64u));

  auto* ov = app.add_subcommand("overlap", "sample |<k,r e^{i theta}|k,r>| on [-pi, pi]");
  std::vector<double> ks{0.25, 0.75, 2.0, 10.0};
  std::vector<double> rs{2.0};
  std::size_t points = 201;
  std::string ov_name = "overlap";
  ov->add_option("--k", ks, "Bargmann indices")->delimiter(',');
  ov->add_option("--r", rs, "squeezing magnitudes")->delimiter(',');
  ov->add_option("--points", points, "theta samples")->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  ov->add_option("--name", ov_name, "table name");

  auto* cc = app.add_subcommand("crosscheck", "compare the walk engine with the Fock-space oracle");
  std::optional<std::string> suite;
  std::string cc_name = "crosscheck";
  cc->add_option("--suite", suite, "suite JSON (default: built-in physical grid)");
  cc->add_option("--name", cc_name, "report name");

  auto* ch = app.add_subcommand("chart", "render a table as SVG");
  std::vector<std::string> tables;
  std::string kind = "line";
  std::string x;
  std::vector<std::string> y;
  std::string title;
  ch->add_option("--table", tables, "table file (.csv or .json, repeatable)")->required();
  ch->add_option("--kind", kind, "bar|line")->check(CLI::IsMember({"bar", "line"}));
  ch->add_option("--x", x, "x column")->required();
  ch->add_option("--y", y, "y columns (default: all others)")->delimiter(',');
  ch->add_option("--title", title, "chart title");

  // --out is accepted before or after the subcommand
  app.add_option("--out", g.out, "output directory (chart: .svg path or directory)");
  for (auto* sub : {run, ov, cc, ch}) sub->add_option("--out", g.out, "output directory");
  for (auto* sub : {run, cc}) {
    sub->add_option("--format", g.format, "table format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--mode", g.mode, "phase-mode override")->check(CLI::IsMember({"physical", "paper-idealized"}));
  }
  for (auto* sub : {ov}) sub->add_option("--format", g.format, "table format")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run) return cmd_run(g, configs, jobs);
    if (*ov) return cmd_overlap(g, ks, rs, points, ov_name);
    if (*cc) return cmd_crosscheck(g, suite, cc_name);
    if (*ch) return cmd_chart(g, tables, kind, x, y, title);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const su11walk::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
