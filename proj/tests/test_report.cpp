// Copyright 2026 The ctxbind Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctxbind/report.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ctxbind/experiments.hpp"

namespace ctxbind {
namespace {

report::Table sample() {
  report::Table t;
  t.id = "sample";
  t.title = "Sample table";
  t.notes = {"units: none"};
  t.columns = {"name", "value"};
  t.add_row({"plain", "1"});
  t.add_row({"a,b", "say \"hi\""});
  t.add_row({"pipe|cell", "2"});
  return t;
}

TEST(Report, CsvQuoting) {
  EXPECT_EQ(report::csv_field("plain"), "plain");
  EXPECT_EQ(report::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(report::csv_field("q\"q"), "\"q\"\"q\"");
  EXPECT_EQ(report::csv_field("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(report::csv_field(""), "");
}

TEST(Report, CsvLayout) {
  EXPECT_EQ(sample().to_csv(),
            "# Sample table\n"
            "# units: none\n"
            "name,value\n"
            "plain,1\n"
            "\"a,b\",\"say \"\"hi\"\"\"\n"
            "pipe|cell,2\n");
}

TEST(Report, MarkdownLayout) {
  const std::string md = sample().to_markdown();
  EXPECT_EQ(md.rfind("### Sample table\n\n| name | value |\n| --- | --- |\n", 0), 0u);
  EXPECT_NE(md.find("| pipe\\|cell | 2 |"), std::string::npos);
  EXPECT_NE(md.find("- units: none"), std::string::npos);
}

TEST(Report, RowWidthChecked) {
  report::Table t;
  t.columns = {"a", "b"};
  EXPECT_THROW(t.add_row({"1"}), std::logic_error);
  EXPECT_THROW(t.add_row({"1", "2", "3"}), std::logic_error);
}

TEST(Experiments, CommandRegistry) {
  const auto& cmds = experiments::commands();
  EXPECT_EQ(cmds.size(), 11u);
  for (const auto& c : cmds) EXPECT_TRUE(experiments::is_command(c)) << c;
  EXPECT_TRUE(experiments::is_command("all"));
  EXPECT_FALSE(experiments::is_command("bogus"));
  EXPECT_THROW(experiments::run_command("bogus", {}), std::invalid_argument);
}

TEST(Experiments, AllMatchesGoldenFiles) {
  const auto tables = experiments::run_command("all", {});
  EXPECT_EQ(tables.size(), 15u);
  const auto checks = experiments::compare_golden(tables, CTXBIND_GOLDEN_DIR);
  ASSERT_EQ(checks.size(), tables.size());
  for (const auto& c : checks) EXPECT_TRUE(c.matched) << c.table_id << ": " << c.detail;
}

TEST(Experiments, TablesIndependentOfSeed) {
  experiments::Config other;
  other.seed = 99;
  const auto a = experiments::run_command("all", {});
  const auto b = experiments::run_command("all", other);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].to_csv(), b[i].to_csv()) << a[i].id;
}

TEST(Experiments, GoldenMismatchReported) {
  const auto dir = std::filesystem::temp_directory_path() / "ctxbind_golden_test";
  std::filesystem::create_directories(dir);
  auto tables = experiments::run_command("ablation", {});
  {
    std::ofstream out(dir / "ablation.csv");
    out << "# wrong\n";
  }
  auto checks = experiments::compare_golden(tables, dir.string());
  ASSERT_EQ(checks.size(), 1u);
  EXPECT_FALSE(checks[0].matched);
  EXPECT_FALSE(checks[0].detail.empty());

  std::filesystem::remove(dir / "ablation.csv");
  checks = experiments::compare_golden(tables, dir.string());
  EXPECT_FALSE(checks[0].matched);
  std::filesystem::remove_all(dir);
}

TEST(Experiments, CustomVenuesFlowIntoTables) {
  experiments::Config cfg;
  cfg.venues = {{"Plaza", 4, 9}};
  const auto t = experiments::poi_density_table(cfg);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0], (std::vector<std::string>{"Plaza", "4", "9"}));
  const auto e = experiments::epoch_vuln_table(cfg);
  EXPECT_EQ(e.rows[0], (std::vector<std::string>{"Plaza", "4", "12", "120", "0"}));
}

}  // namespace
}  // namespace ctxbind
