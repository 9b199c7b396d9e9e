#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "su11walk/io/config.hpp"
#include "su11walk/io/experiment.hpp"
#include "su11walk/io/svg_chart.hpp"
#include "su11walk/io/table.hpp"

using namespace su11walk;
using namespace su11walk::io;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("su11walk_test_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ResultTable small_table() {
  ResultTable t;
  t.name = "small";
  t.columns = {"x", "y, quoted \"col\""};
  t.rows = {{0.0, 1.5}, {1.0, -2.25e-30}, {2.0, 0.1}};
  return t;
}

}  // namespace

TEST(Csv, QuotesHeaderFieldsPerRfc4180) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(to_csv(small_table()), "x,\"y, quoted \"\"col\"\"\"\r\n0,1.5\r\n1,-2.25e-30\r\n2,0.1\r\n");
}

TEST(Csv, NegativeZeroPrintsAsZero) { EXPECT_EQ(format_number(-0.0), "0"); }

TEST(Csv, RoundTripIsExactForRandomTables) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mag(-300, 300);
  std::uniform_int_distribution<int> shape(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    ResultTable t;
    t.name = "rt";
    const int cols = shape(rng);
    for (int c = 0; c < cols; ++c) t.columns.push_back(c % 2 ? "c,\"" + std::to_string(c) + "\"" : "c" + std::to_string(c));
    const int rows = shape(rng) - 1;
    for (int r = 0; r < rows; ++r) {
      std::vector<double> row;
      for (int c = 0; c < cols; ++c) row.push_back(std::ldexp(std::uniform_real_distribution<double>(-1, 1)(rng), static_cast<int>(mag(rng))));
      t.rows.push_back(row);
    }
    const auto back = from_csv(to_csv(t), "rt");
    ASSERT_EQ(back.columns, t.columns);
    ASSERT_EQ(back.rows, t.rows);
  }
}

TEST(Csv, RejectsMalformedInput) {
  EXPECT_THROW(from_csv("a,b\r\n1\r\n"), InvalidArgument);
  EXPECT_THROW(from_csv("a\r\nnope\r\n"), InvalidArgument);
  EXPECT_THROW(from_csv("\"a\r\n"), InvalidArgument);
  EXPECT_THROW(from_csv(""), InvalidArgument);
}

TEST(Table, RejectsNonFiniteAndRaggedRows) {
  auto t = small_table();
  t.rows[1][1] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(t.validate(), InvalidArgument);
  t = small_table();
  t.rows[0].pop_back();
  EXPECT_THROW(t.validate(), InvalidArgument);
}

TEST(Table, WriteReadBothFormats) {
  const auto dir = scratch("formats");
  auto t = small_table();
  t.metadata = {{"tool", "su11walk"}};
  for (auto f : {TableFormat::csv, TableFormat::json}) {
    const auto back = read_table(write_table(t, dir, f));
    EXPECT_EQ(back.columns, t.columns);
    EXPECT_EQ(back.rows, t.rows);
    EXPECT_EQ(back.metadata, t.metadata);
  }
  EXPECT_TRUE(fs::exists(dir / "small.meta.json"));
  for (const auto& e : fs::directory_iterator(dir)) EXPECT_NE(e.path().extension(), ".tmp");
}

TEST(Table, UnwritablePathIsIoError) {
  const auto dir = scratch("unwritable");
  write_atomic(dir / "file", "x");
  // a regular file where a directory is expected
  EXPECT_THROW(write_table(small_table(), dir / "file" / "sub", TableFormat::csv), IoError);
}

TEST(Config, FieldLevelErrors) {
  const auto field_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field_of(R"({"frame":"ideal"})"), "steps");
  EXPECT_EQ(field_of(R"({"steps":3})"), "frame");
  EXPECT_EQ(field_of(R"({"frame":"su11:0.75","steps":3})"), "frame");
  EXPECT_EQ(field_of(R"({"frame":{"type":"su11","k":-1,"r":1},"steps":3})"), "frame");
  EXPECT_EQ(field_of(R"({"frame":{"type":"hw"},"steps":3})"), "frame.alpha");
  EXPECT_EQ(field_of(R"({"frame":"ideal","steps":-3})"), "steps");
  EXPECT_EQ(field_of(R"({"frame":"ideal","steps":3,"sites":8,"start_site":4})"), "start_site");
  EXPECT_EQ(field_of(R"({"frame":"ideal","steps":3,"coin":{"up":1,"down":1}})"), "coin");
  EXPECT_EQ(field_of(R"({"frame":"ideal","steps":3,"coin":{"up":[1,0,0],"down":0}})"), "coin.up");
  EXPECT_EQ(field_of(R"({"frame":"ideal","steps":3,"phase_mode":"nope"})"), "phase_mode");
  EXPECT_EQ(field_of(R"({"frame":"ideal","steps":3,"outputs":["sigma","nope"]})"), "outputs[1]");
  EXPECT_EQ(field_of(R"({"frame":"ideal","steps":3,"colour":1})"), "colour");
  EXPECT_EQ(field_of(R"({"frame":"ideal","steps":3,"name":"../x"})"), "name");
  EXPECT_EQ(field_of(R"({"frame":)"), "<root>");
  EXPECT_EQ(field_of(R"({"frame":"ideal","steps":3})"), "<none>");
}

TEST(Config, FrameStrings) {
  EXPECT_EQ(parse_config(R"({"frame":"hw:1.5","steps":1})").frame, Frame::hw(1.5));
  EXPECT_EQ(parse_config(R"({"frame":"su11:k=10,r=2","steps":1})").frame, Frame::su11(10, 2));
  EXPECT_EQ(parse_config(R"({"frame":"su11:0.75,0.5","steps":1})").frame, Frame::su11(0.75, 0.5));
}

TEST(Config, RoundTripIsLossless) {
  ExperimentConfig c;
  c.name = "rt";
  c.frame = Frame::su11(0.75, 1.0 / 3.0);
  c.sites = 37;
  c.steps = 11;
  c.start_site = -18;
  c.coin = {complex(0.6, 0.0), complex(0.0, 0.8)};
  c.coin_operator = {CoinOperatorSpec::Type::su2, 0.1, std::numbers::pi / 3, -0.7};
  c.mode = PhaseMode::paper_idealized;
  c.branch_index = 0.125;
  c.outputs = {OutputKind::sigma, OutputKind::entropy, OutputKind::gram_row};
  c.out_dir = "some/dir";
  const auto text = config_to_json(c).dump(2);
  EXPECT_EQ(parse_config(text), c);
  EXPECT_EQ(config_to_json(parse_config(text)).dump(2), text);

  ExperimentConfig hw;
  hw.frame = Frame::hw(2.5);
  EXPECT_EQ(parse_config(config_to_json(hw).dump()), hw);
}

TEST(Experiment, OutputsAreDeterministicAndEchoConfig) {
  ExperimentConfig c;
  c.name = "det";
  c.frame = Frame::su11(0.75, 1.0);
  c.sites = 24;
  c.steps = 6;
  c.outputs = {OutputKind::probabilities, OutputKind::sigma, OutputKind::entropy, OutputKind::gram_row,
               OutputKind::overlap_curve};
  const auto a = run_experiment(c);
  const auto b = run_experiment(c);
  ASSERT_EQ(a.size(), 5u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(to_csv(a[i]), to_csv(b[i]));
    EXPECT_EQ(to_json(a[i]).dump(), to_json(b[i]).dump());
    EXPECT_EQ(config_from_json(a[i].metadata["config"]), c);
    EXPECT_FALSE(a[i].metadata.contains("timestamp"));
  }
  EXPECT_EQ(a[0].rows.size(), 24u);
  EXPECT_EQ(a[1].rows.size(), 7u);
  EXPECT_EQ(a[4].columns, (std::vector<std::string>{"theta", "abs_overlap"}));
}

TEST(Experiment, StepZeroIdealIsUnitAtStart) {
  ExperimentConfig c;
  c.sites = 10;
  c.steps = 0;
  c.start_site = 3;
  const auto t = run_experiment(c).front();
  for (const auto& row : t.rows) EXPECT_EQ(row[2], row[0] == 3.0 ? 1.0 : 0.0);
}

TEST(Overlap, TableValuesAndFlags) {
  const auto t = overlap_table({{0.25, 0.75, 2, 10}, {2}, 65, "ov"});
  ASSERT_EQ(t.rows.size(), 65u);
  EXPECT_EQ(t.columns[1], "k=0.25,r=2");
  EXPECT_NEAR(t.rows.back()[1], 0.191360898497280611, 1e-14);
  for (std::size_t j = 1; j < t.columns.size(); ++j) EXPECT_NEAR(t.rows[32][j], 1.0, 1e-15);  // theta = 0
  EXPECT_TRUE(t.metadata["non_increasing_in_k"].get<bool>());
  EXPECT_TRUE(t.metadata["non_increasing_in_r"].get<bool>());
  EXPECT_THROW(overlap_table({{}, {2}, 65, "ov"}), InvalidArgument);
}

TEST(Crosscheck, SuiteParsingEnforcesBounds) {
  EXPECT_EQ(parse_crosscheck_suite(R"({"configs":[{"k":1,"r":0.5}]})").size(), 1u);
  EXPECT_THROW(parse_crosscheck_suite(R"({"configs":[{"k":1,"r":0.5,"sites":65}]})"), ConfigError);
  EXPECT_THROW(parse_crosscheck_suite(R"({"configs":[{"k":1,"r":2}]})"), ConfigError);
  EXPECT_THROW(parse_crosscheck_suite(R"({"configs":[{"k":1,"r":0.5,"steps":21}]})"), ConfigError);
  EXPECT_THROW(parse_crosscheck_suite(R"({"configs":[{"k":1,"r":0.5,"mode":"x"}]})"), ConfigError);
  EXPECT_THROW(parse_crosscheck_suite(R"({"configs":[]})"), ConfigError);
  EXPECT_THROW(parse_crosscheck_suite(R"({"configs":[{"k":1)"), ConfigError);
}

TEST(Crosscheck, IdealizedEntriesAreMarkedButDoNotFailTheSuite) {
  std::vector<CrossCheckConfig> suite(2);
  suite[0].k = 0.75;
  suite[1].k = 0.75;
  suite[1].mode = PhaseMode::paper_idealized;
  const auto res = run_crosscheck_suite(suite);
  EXPECT_TRUE(res.ok);
  EXPECT_EQ(res.report["entries"][0]["status"], "pass");
  EXPECT_EQ(res.report["entries"][1]["status"], "expected-divergence");
}

TEST(Svg, DeterministicAndSelfContained) {
  auto t = small_table();
  ChartSpec spec{ChartKind::line, "x", {"y, quoted \"col\""}, "a <title>"};
  const auto a = render_svg(t, spec);
  EXPECT_EQ(a, render_svg(t, spec));
  EXPECT_EQ(a.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"", 0), 0u);
  EXPECT_NE(a.find("a &lt;title&gt;"), std::string::npos);
  EXPECT_NE(a.find("<polyline"), std::string::npos);
  spec.kind = ChartKind::bar;
  EXPECT_NE(render_svg(t, spec).find("<rect x="), std::string::npos);
}

TEST(Svg, ErrorsLeaveNoFile) {
  const auto dir = scratch("svg");
  auto empty = small_table();
  empty.rows.clear();
  EXPECT_THROW(write_svg(empty, {ChartKind::bar, "x", {"y, quoted \"col\""}, ""}, dir / "e.svg"), InvalidArgument);
  EXPECT_THROW(write_svg(small_table(), {ChartKind::bar, "x", {"missing"}, ""}, dir / "m.svg"), InvalidArgument);
  try {
    render_svg(small_table(), {ChartKind::line, "nope", {"x"}, ""});
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("columns: x, y"), std::string::npos);
  }
  EXPECT_TRUE(fs::is_empty(dir));
}
