#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <functional>

#include "k0s/io.hpp"
#include "support.hpp"

using namespace k0s;
namespace fx = k0s::testing;
using io::InputError;
using io::Json;

namespace {

const std::filesystem::path kFixtures = K0S_FIXTURES;
const std::filesystem::path kData = K0S_TEST_DATA;

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(K0S_CLI) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return (kFixtures / name).string(); }

std::string common(const std::string& silting) {
  return "--algebra " + fixture("a3.algebra.json") + " --silting " + silting;
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, FixturesDecodeToTheReferenceComplexes) {
  const auto alg = io::load_algebra(fixture("a3.algebra.json"), {});
  EXPECT_EQ(alg->path_count(), 5u);
  EXPECT_EQ(alg->presentation().relations, fx::a3()->presentation().relations);
  EXPECT_EQ(io::load_complex(alg, fixture("s1.complex.json")), fx::s1(alg));
  EXPECT_EQ(io::load_complex(alg, fixture("s3.complex.json")), fx::s3(alg));
  EXPECT_EQ(io::load_complex(alg, fixture("x_example.complex.json")), fx::x_example(alg));

  const auto stalks = io::load_silting(alg, fixture("stalk_silting.json"));
  EXPECT_TRUE(stalks.declared_presilting());
  EXPECT_TRUE(stalks.is_stalk_projectives());
  const auto rigid = io::load_silting(alg, fixture("rigid2.json"));
  ASSERT_TRUE(rigid.declared_d().has_value());
  EXPECT_EQ(*rigid.declared_d(), 2);
  EXPECT_EQ(rigid.size(), 2u);
  const auto rotated = io::load_silting(alg, kData / "rotated_silting.json");
  EXPECT_EQ(rotated.names(), (std::vector<std::string>{"P1", "P2", "C"}));
}

TEST(Io, ComplexesRoundTripThroughJson) {
  for (const auto field : {exactmath::Field::rationals(), exactmath::Field::prime(5)}) {
    const auto alg = fx::a3(field);
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
      const auto x = homotopy::random_complex(alg, rng);
      const Json j = io::to_json(x);
      const auto back = io::complex_from_json(alg, io::parse_json(j.dump(), "memory"), "memory");
      EXPECT_EQ(back, x) << j.dump();
    }
  }
}

TEST(Io, SyntaxErrorsCarryLineAndColumn) {
  const std::string msg = error_of([] { io::read_json(kData / "broken.complex.json"); });
  EXPECT_NE(msg.find("broken.complex.json:5:3:"), std::string::npos) << msg;
  EXPECT_NE(error_of([] { io::parse_json("{\n  \"a\": ,\n}", "inline"); }).find("inline:2:"), std::string::npos);
}

TEST(Io, SchemaErrorsCarryAPointer) {
  const auto alg = fx::a3();
  auto check = [&](const std::string& text, const std::string& pointer) {
    const std::string msg =
        error_of([&] { io::complex_from_json(alg, io::parse_json(text, "c.json"), "c.json"); });
    EXPECT_NE(msg.find("c.json: at " + pointer), std::string::npos) << msg;
  };
  check(R"({"terms": {"0": ["9"]}})", "/terms/0/0");
  check(R"({"terms": {"zero": ["1"]}})", "/terms/zero");
  check(R"({"terms": {"0": ["2"], "1": ["1"]}, "differentials": {"0": [[{"path": ["gamma"]}]]}})",
        "/differentials/0/0/0");
  check(R"({"terms": {"0": ["2"], "1": ["1"]}, "differentials": {"0": [[null], [null]]}})", "/differentials/0");
  // d o d = id here
  const std::string dd = error_of([&] {
    io::complex_from_json(alg, io::parse_json(R"({"terms": {"0": ["1"], "1": ["1"], "2": ["1"]},
      "differentials": {"0": [[{"path": []}]], "1": [[{"path": []}]]}})", "c.json"), "c.json");
  });
  EXPECT_NE(dd.find("c.json"), std::string::npos) << dd;
}

TEST(Io, FieldSyntax) {
  EXPECT_TRUE(io::parse_field("Q").is_rational());
  EXPECT_EQ(io::parse_field("Fp:7").modulus, 7);
  EXPECT_THROW(io::parse_field("Fp:4"), InputError);
  EXPECT_THROW(io::parse_field("Fp:"), InputError);
  EXPECT_THROW(io::parse_field("R"), InputError);
}

TEST(Cli, ExitCodes) {
  const std::string rigid = fixture("rigid2.json");
  const std::string stalks = fixture("stalk_silting.json");
  EXPECT_EQ(run("verify example-4-3 " + common(rigid) + " --complex " + fixture("x_example.complex.json")).code, 0);
  EXPECT_EQ(run("verify presilting " + common(stalks)).code, 0);
  EXPECT_EQ(run("verify sign-law " + common(stalks) + " --samples 10").code, 0);
  EXPECT_EQ(run("verify presilting " + common(rigid)).code, 1);
  EXPECT_EQ(run("verify fd-closure " + common(rigid)).code, 1);
  EXPECT_EQ(run("verify cluster-n " + common(rigid)).code, 2);
  EXPECT_EQ(run("gamma " + common(rigid) + " --complex " + fixture("x_example.complex.json")).code, 1);
  EXPECT_EQ(run("verify no-such-check " + common(stalks)).code, 2);
  EXPECT_EQ(run("verify presilting --algebra " + (kData / "broken.complex.json").string()).code, 2);
  EXPECT_EQ(run("gamma " + common(stalks) + " --complex " + (kData / "broken.complex.json").string()).code, 2);
  EXPECT_EQ(run("verify presilting " + common(stalks) + " --field Fp:4").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(Cli, GammaReportsTheClass) {
  const Outcome r = run("gamma " + common(fixture("stalk_silting.json")) + " --complex " +
                    fixture("x_example.complex.json"));
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["gamma"]["P1"], -1);
  EXPECT_EQ(j["gamma"]["P2"], 1);
  EXPECT_EQ(j["gamma"]["P3"], 0);
  EXPECT_EQ(j["filtration"]["length"], 2);

  const Outcome shifted = run("gamma " + common(fixture("stalk_silting.json")) + " --complex stalk:2@-1 --class");
  ASSERT_EQ(shifted.code, 0);
  const Json c = Json::parse(shifted.out)["class"];
  EXPECT_EQ(c["shift"], 1);
  EXPECT_EQ(c["gamma_shifted"]["P2"], 1);
  EXPECT_EQ(c["value"]["P2"], -1);
}

TEST(Cli, HomDimensions) {
  const std::string alg = "--algebra " + fixture("a3.algebra.json");
  const Outcome r = run("hom " + alg + " --complex " + fixture("s1.complex.json") + " --complex " +
                    fixture("s3.complex.json") + " -k 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["dimension"], 1);
  EXPECT_EQ(Json::parse(run("hom " + alg + " --complex stalk:1 --complex stalk:1").out)["dimension"], 1);
}

TEST(Cli, OutputIsDeterministic) {
  const std::string args = "verify horseshoe " + common((kData / "rotated_silting.json").string()) + " --samples 12";
  const Outcome a = run(args + " --seed 4");
  const Outcome b = run(args + " --seed 4");
  const Outcome c = run(args + " --seed 4 --jobs 3");
  ASSERT_EQ(a.code, 0);
  EXPECT_FALSE(a.out.empty());
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_NE(a.out, run(args + " --seed 5").out);

  const std::string ta = "verify theorem-a " + common(fixture("stalk_silting.json")) + " --samples 25";
  EXPECT_EQ(run(ta).out, run(ta + " --jobs 4").out);
}
