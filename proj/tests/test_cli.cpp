#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "fihom/io/json.hpp"

#ifndef FIHOM_CLI_PATH
#error "FIHOM_CLI_PATH must name the fihom executable"
#endif

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " \"" FIHOM_CLI_PATH "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto dir = std::filesystem::temp_directory_path() / "fihom_cli_test";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

fihom::io::json parse(const Run& r) { return fihom::io::json::parse(r.out); }

}  // namespace

TEST(Cli, VerifyIsDeterministic) {
  auto a = run("verify --suite main --p 2 --trials 10 --seed 7");
  auto b = run("verify --suite main --p 2 --trials 10 --seed 7");
  auto c = run("verify --suite main --p 2 --trials 10 --seed 7 --jobs 4");
  EXPECT_EQ(a.code, 0);
  EXPECT_FALSE(a.out.empty());
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_TRUE(parse(a)["ok"].get<bool>());
}

TEST(Cli, VerifyAllSmall) {
  auto r = run("verify --suite all --trials 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(parse(r)["suites"].size(), 5u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("verify --p 9").code, 2);
  EXPECT_EQ(run("verify --bogus").code, 2);
  EXPECT_EQ(run("verify --suite nope").code, 2);
  EXPECT_EQ(run("verify --nmax 4").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("degrees --input /nonexistent/file.json").code, 2);
  EXPECT_EQ(run("degrees --input " + temp_file("bad.json", "{not json")).code, 2);
  EXPECT_EQ(run("verify --config " + temp_file("badcfg.json", "{\"colour\": 1}")).code, 2);
}

TEST(Cli, Precedence) {
  // env < config < flags, visible in the reported profile
  auto cfg = temp_file("cfg.json", "{\"trials\": 3, \"p\": [3]}");
  auto env = run("verify --suite foundations --p 2", "FIHOM_TRIALS=2");
  EXPECT_EQ(parse(env)["suites"][0]["trials"], 2);
  auto conf = run("verify --suite foundations --config " + cfg, "FIHOM_TRIALS=2");
  EXPECT_EQ(parse(conf)["suites"][0]["trials"], 3);
  EXPECT_EQ(parse(conf)["suites"][0]["fields"][0], 3);
  auto flag = run("verify --suite foundations --trials 1 --config " + cfg, "FIHOM_TRIALS=2");
  EXPECT_EQ(parse(flag)["suites"][0]["trials"], 1);
}

TEST(Cli, CsvFormat) {
  auto r = run("verify --suite colimit --p 2 --trials 2 --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("suite,fields,", 0), 0u);
}

TEST(Cli, DegreesOfExamples) {
  auto gl = temp_file("gl.json", run("example gl --nmax 6").out);
  auto d = run("degrees --input " + gl + " --i 1");
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(parse(d)["t"][0], 2);
  auto k = run("degrees --input " + gl + " --i 1 --route koszul");
  EXPECT_EQ(parse(k)["t"], parse(d)["t"]);

  auto zero = temp_file("zero.json", run("example zero --nmax 5").out);
  for (const auto& t : parse(run("degrees --input " + zero + " --i 3"))["t"]) EXPECT_EQ(t, -1);

  auto free1 = temp_file("free1.json", run("example free1 --nmax 6").out);
  auto f = parse(run("degrees --input " + free1 + " --i 3"));
  EXPECT_EQ(f["t"][0], 1);
  for (int i = 1; i <= 3; ++i) EXPECT_EQ(f["t"][i], -1);
}

TEST(Cli, Colim) {
  auto free1 = temp_file("free1c.json", run("example free1 --nmax 4").out);
  auto r = parse(run("colim --input " + free1 + " --n 1 --N 0"));
  EXPECT_FALSE(r["is_isomorphism"].get<bool>());
  auto s = parse(run("colim --input " + free1 + " --n 3 --N 1"));
  EXPECT_TRUE(s["is_isomorphism"].get<bool>());
  auto t = parse(run("colim --input " + free1 + " --n 2 --N 3"));
  EXPECT_TRUE(t["is_isomorphism"].get<bool>());
}

TEST(Cli, Demos) {
  auto gl = run("demo gl --nmax 8");
  ASSERT_EQ(gl.code, 0);
  auto j = parse(gl);
  EXPECT_EQ(j["t0"], 2);
  EXPECT_TRUE(j["within_bounds"].get<bool>());
  EXPECT_LE(j["presentation_degree"].get<int>(), 10);
  auto omega = run("demo omega-table --kmax 1 --dmax 0");
  ASSERT_EQ(omega.code, 0);
  EXPECT_EQ(omega.out, "k,d,hyper_bound,t0_bound,t1_bound,omega\n0,0,0,1,6,6\n1,0,2,5,10,10\n");
  EXPECT_EQ(run("demo omega-table --kmax 20 --dmax 20").code, 0);
}
