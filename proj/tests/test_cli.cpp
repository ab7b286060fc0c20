// Copyright 2026 The PolyPA Authors
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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "polypa/edge_io.hpp"

namespace polypa {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return ::testing::TempDir() + "polypa_cli_" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

TEST(Cli, GenerateRingSeq) {
  const std::string path = temp_path("g.txt");
  const auto r = run_cli({"generate", "--algo", "seq", "--seed-graph", "ring:20",
                          "--n", "1000", "--ell", "2", "--alpha", "1.0",
                          "--seed", "42", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = lines_of(slurp(path));
  ASSERT_EQ(lines.size(), 20u + 2000u);
  EXPECT_EQ(lines[0], "0 1");
  EXPECT_EQ(lines[19], "19 0");
  EXPECT_EQ(lines[20].substr(0, 3), "20 ");
  std::remove(path.c_str());
}

TEST(Cli, GenerateIsReproducible) {
  for (const char* algo : {"seq", "par", "em", "ref"}) {
    const std::vector<std::string> args = {
        "generate", "--algo", algo, "--seed-graph", "1regular:10", "--n",
        "500", "--ell", "2", "--alpha", "1.5", "--seed", "7", "--workers", "3"};
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    ASSERT_EQ(a.code, 0) << algo << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << algo;
    EXPECT_EQ(lines_of(a.out).size(), 5u + 1000u);
  }
}

TEST(Cli, BinaryFormat) {
  const auto r = run_cli({"generate", "--seed-graph", "ring:4", "--n", "3",
                          "--format", "binary"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.size(), 16u * 7u);
  EXPECT_EQ(read_edges(r.out, EdgeFormat::kBinary).num_edges(), 7u);
}

TEST(Cli, ParRejectsTable) {
  const std::string table = temp_path("t.csv");
  std::ofstream(table) << "degree,weight\n1,1\n2,2\n";
  const auto r = run_cli({"generate", "--algo", "par", "--f-table", table,
                          "--seed-graph", "ring:5", "--n", "10"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("polynomial"), std::string::npos);
  const auto em = run_cli({"generate", "--algo", "em", "--f-table", table,
                           "--seed-graph", "ring:5", "--n", "10"});
  EXPECT_EQ(em.code, 0) << em.err;
  std::remove(table.c_str());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"generate", "--algo", "mvn", "--seed-graph", "ring:4"}).code, 2);
  EXPECT_EQ(run_cli({"generate", "--seed-graph", "ring:4", "--n", "x"}).code, 2);
  EXPECT_EQ(run_cli({"generate", "--n", "3"}).code, 2);
  EXPECT_EQ(run_cli({"generate", "--seed-graph", "ring"}).code, 2);
  EXPECT_EQ(run_cli({"generate", "--seed-graph", "1regular:5"}).code, 2);
  EXPECT_EQ(run_cli({"generate", "--seed-graph", "ring:4", "--ell", "5"}).code, 2);
  EXPECT_EQ(run_cli({"generate", "--seed-graph", "ring:4", "--alpha", "-1"}).code, 2);
  EXPECT_EQ(run_cli({"generate", "--seed-graph", "ring:4", "--workers", "0"}).code, 2);
  EXPECT_EQ(run_cli({"generate", "--seed-graph", "ring:4", "--format", "xml"}).code, 2);
  EXPECT_EQ(run_cli({"generate", "--seed-graph", "ring:4", "--alpha", "1",
                     "--f-table", "t.csv"}).code, 2);
}

TEST(Cli, RuntimeFailures) {
  EXPECT_EQ(run_cli({"generate", "--seed-graph", "file:/nonexistent/x"}).code, 1);
  EXPECT_EQ(run_cli({"generate", "--seed-graph", "ring:4", "--f-table",
                     "/nonexistent/t.csv"}).code, 1);
  const std::string bad = temp_path("bad.txt");
  std::ofstream(bad) << "0 1\n1 1\n";
  const auto r = run_cli({"generate", "--seed-graph", "file:" + bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  EXPECT_EQ(run_cli({"generate", "--seed-graph", "ring:4", "--out",
                     "/nonexistent/dir/g.txt"}).code, 1);
  std::remove(bad.c_str());
}

TEST(Cli, FileSeedAndStrictTable) {
  const std::string seed = temp_path("seed.txt");
  const std::string table = temp_path("strict.csv");
  std::ofstream(seed) << "0 1\n1 2\n";
  std::ofstream(table) << "1,1\n2,2\n";
  auto r = run_cli({"generate", "--algo", "seq", "--seed-graph", "file:" + seed,
                    "--f-table", table, "--n", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  // Degree 3 appears immediately and the strict table has no value for it.
  r = run_cli({"generate", "--algo", "em", "--seed-graph", "file:" + seed,
               "--f-table", table, "--f-tail", "error", "--n", "20"});
  EXPECT_EQ(r.code, 1);
  std::remove(seed.c_str());
  std::remove(table.c_str());
}

TEST(Cli, BenchCsvAppends) {
  const std::string csv = temp_path("bench.csv");
  std::remove(csv.c_str());
  for (const char* algo : {"seq", "par", "em", "ref"}) {
    const auto r = run_cli({"bench", "--algo", algo, "--n",
                            std::string(algo) == "ref" ? "200" : "20000",
                            "--alpha", "0.5", "--workers", "2", "--csv", csv});
    ASSERT_EQ(r.code, 0) << algo << ": " << r.err;
  }
  const auto lines = lines_of(slurp(csv));
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], cli::kBenchHeader);
  EXPECT_EQ(lines[0].rfind(
                "algo,alpha,ell,n0,N,workers,seed,wall_ns,proposal_len,"
                "batches,pq_ops",
                0),
            0u);
  const auto columns = [](const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
  };
  const auto header = columns(lines[0]);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto row = columns(lines[k]);
    ASSERT_EQ(row.size(), header.size()) << lines[k];
    EXPECT_EQ(row[1], "0.5");
    EXPECT_EQ(row[3], "10");
    EXPECT_FALSE(row[7].empty());
  }
  EXPECT_EQ(columns(lines[1])[0], "seq");
  EXPECT_FALSE(columns(lines[1])[8].empty());
  EXPECT_EQ(columns(lines[1])[5], "1");
  EXPECT_FALSE(columns(lines[2])[9].empty());
  EXPECT_EQ(columns(lines[2])[5], "2");
  EXPECT_FALSE(columns(lines[3])[10].empty());
  EXPECT_FALSE(columns(lines[3])[11].empty());
  EXPECT_TRUE(columns(lines[1])[10].empty());
  std::remove(csv.c_str());
}

TEST(Cli, WorkersFromEnvironment) {
  const std::string csv = temp_path("env.csv");
  std::remove(csv.c_str());
  ::setenv("POLYPA_WORKERS", "3", 1);
  ASSERT_EQ(run_cli({"bench", "--algo", "par", "--n", "1000", "--csv", csv}).code, 0);
  ASSERT_EQ(run_cli({"bench", "--algo", "par", "--n", "1000", "--workers", "2",
                     "--csv", csv}).code, 0);
  ::setenv("POLYPA_WORKERS", "zero", 1);
  EXPECT_EQ(run_cli({"bench", "--algo", "par", "--n", "10"}).code, 2);
  ::unsetenv("POLYPA_WORKERS");
  const auto lines = lines_of(slurp(csv));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_NE(lines[1].find(",3,"), std::string::npos);
  EXPECT_NE(lines[2].find(",2,"), std::string::npos);
  std::remove(csv.c_str());
}

TEST(Cli, BenchDefaultSeedScalesWithEll) {
  const auto r = run_cli({"bench", "--algo", "seq", "--n", "100", "--ell", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[1].rfind("seq,1,3,30,100,1,1,", 0), 0u);
}

TEST(Cli, VerifySmall) {
  const std::string csv = temp_path("verify.csv");
  const auto r = run_cli({"verify", "--draws", "20000", "--runs", "20000",
                          "--csv", csv});
  EXPECT_NE(r.out.find("tv-par-w4"), std::string::npos);
  const auto lines = lines_of(slurp(csv));
  EXPECT_EQ(lines[0], "config,test,statistic,p_value,pass");
  EXPECT_GT(lines.size(), 100u);
  std::remove(csv.c_str());
}

}  // namespace
}  // namespace polypa
