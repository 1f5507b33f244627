#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "tgr/generate.hpp"
#include "tgr/run.hpp"

using namespace tgr;

namespace {

class RunTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("tgr_run_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }
  std::string read(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
  }
  RunSpec spec(Mode mode, const char* program, const std::string& facts) {
    RunSpec s;
    s.mode = mode;
    s.program = write("p.rules", program);
    s.facts = write("b.tsv", facts);
    return s;
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(RunTest, ChaseWritesArtifacts) {
  RunSpec s = spec(Mode::Chase, fixtures::kP1, "r\tc1\tc2\n");
  s.out = dir_ / "out.tsv";
  s.metrics = dir_ / "m.json";
  std::ostringstream err;
  ASSERT_EQ(run(s, err), kExitOk) << err.str();
  EXPECT_EQ(read(*s.out), "R\tc1\tc2\nT\tc2\tc1\tc2\nT\tc2\tc1\t_:n1\nr\tc1\tc2\n");
  const auto m = nlohmann::json::parse(read(*s.metrics));
  EXPECT_EQ(m["facts_derived"], 3);
  EXPECT_EQ(m["triggers_applied"], 3);
}

TEST_F(RunTest, ByteIdenticalReruns) {
  for (Mode mode : {Mode::Chase, Mode::FullEg, Mode::TgLinear}) {
    RunSpec s = spec(mode, fixtures::kP1, "r\tc1\tc2\nr\tc2\tc2\nr\tc3\tc1\n");
    std::string first;
    for (int i = 0; i < 2; ++i) {
      s.out = dir_ / ("o" + std::to_string(i));
      s.metrics = dir_ / ("m" + std::to_string(i));
      std::ostringstream err;
      ASSERT_EQ(run(s, err), kExitOk) << err.str();
    }
    EXPECT_EQ(read(dir_ / "o0"), read(dir_ / "o1"));
    EXPECT_EQ(read(dir_ / "m0"), read(dir_ / "m1"));
  }
}

TEST_F(RunTest, TgLinearGraphHasTwoNodes) {
  RunSpec s = spec(Mode::TgLinear, fixtures::kP1, "r\tc1\tc2\n");
  s.graph = dir_ / "g.json";
  std::ostringstream err;
  ASSERT_EQ(run(s, err), kExitOk) << err.str();
  const auto g = nlohmann::json::parse(read(*s.graph));
  EXPECT_EQ(g["nodes"].size(), 2u);
  EXPECT_EQ(g["edges"].size(), 1u);
}

TEST_F(RunTest, ExitCodes) {
  std::ostringstream err;
  EXPECT_EQ(run(spec(Mode::Chase, "r(X -> R(X)", ""), err), kExitParse);
  EXPECT_EQ(run(spec(Mode::Chase, fixtures::kP1, "q\tc1\n"), err), kExitParse);
  EXPECT_EQ(run(spec(Mode::TgMat, fixtures::kP1, "r\tc1\tc2\n"), err), kExitMismatch);
  EXPECT_EQ(run(spec(Mode::TgLinear, fixtures::kP2, ""), err), kExitMismatch);
  RunSpec capped = spec(Mode::Chase, "e(X) -> S(X,Y)\nS(X,Y) -> S(Y,Z)", "e\ta\n");
  capped.cap = 4;
  EXPECT_EQ(run(capped, err), kExitCap);
  RunSpec missing = spec(Mode::Chase, fixtures::kP1, "");
  missing.program = dir_ / "nope.rules";
  EXPECT_EQ(run(missing, err), kExitOther);
}

TEST_F(RunTest, CompareTgMatWithChase) {
  for (const auto& kb : generate_corpus(3, Family::Datalog, 10)) {
    RunSpec a;
    a.mode = Mode::Chase;
    RunSpec b;
    b.mode = Mode::TgMat;
    const CompareReport r = compare_outcomes(execute(a, kb.program, kb.base), execute(b, kb.program, kb.base));
    EXPECT_EQ(r.verdict, "set-equal");
    EXPECT_LE(r.triggers_b, r.triggers_a);
  }
}

TEST_F(RunTest, CompareVerdictsFollowEquivalence) {
  RunSpec a = spec(Mode::Chase, fixtures::kP1, "r\tc1\tc2\n");
  RunSpec b = a;
  b.mode = Mode::TgLinear;
  std::ostringstream out, err;
  EXPECT_EQ(compare(a, b, out, err), kExitOk) << err.str();
  EXPECT_EQ(nlohmann::json::parse(out.str())["verdict"], "hom-equivalent");

  const Program p = fixtures::program(fixtures::kP1);
  const Instance base{fixtures::atom("r", {"c1", "c2"})};
  RunOutcome x = execute(a, p, base), y = x;
  y.result.insert(fixtures::atom("R", {"c9", "c9"}));
  EXPECT_EQ(compare_outcomes(x, y).verdict, "different");
  EXPECT_EQ(compare_outcomes(x, x).verdict, "hom-equivalent");
}

TEST(Mode, Names) {
  for (Mode m : {Mode::Chase, Mode::FullEg, Mode::TgLinear, Mode::TgMat}) EXPECT_EQ(parse_mode(to_string(m)), m);
  EXPECT_THROW(parse_mode("magic"), std::invalid_argument);
}
