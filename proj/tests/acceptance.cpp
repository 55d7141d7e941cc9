// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "k0s/io.hpp"

using namespace k0s;
using namespace k0s::silting;
using exactmath::IntMatrix;
using exactmath::Scalar;
using homotopy::ProjComplex;

namespace {

const std::filesystem::path kFixtures = K0S_FIXTURES;
const std::filesystem::path kData = K0S_TEST_DATA;
constexpr std::uint64_t kSeed = 1;

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string secs(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << " s";
  return os.str();
}

struct Inputs {
  homotopy::AlgebraPtr alg;
  SiltingCollection stalks;
  SiltingCollection rotated;
  SiltingCollection rigid;
  ProjComplex x;
};

Inputs load() {
  auto alg = io::load_algebra(kFixtures / "a3.algebra.json", {});
  Inputs in{alg, io::load_silting(alg, kFixtures / "stalk_silting.json"),
            io::load_silting(alg, kData / "rotated_silting.json"), io::load_silting(alg, kFixtures / "rigid2.json"),
            io::load_complex(alg, kFixtures / "x_example.complex.json")};
  verify_declared_rigidity(in.stalks);
  verify_declared_rigidity(in.rotated);
  verify_declared_rigidity(in.rigid);
  return in;
}

Verdict theorem_a(const Inputs& in) {
  const auto t0 = Clock::now();
  TheoremAConfig cfg;
  cfg.sampler.samples = 200;
  cfg.sampler.seed = kSeed;
  const TheoremAReport r = verify_theorem_a(in.stalks, cfg);
  const double t = seconds_since(t0);
  const std::size_t additive =
      static_cast<std::size_t>(std::count_if(r.additivity.begin(), r.additivity.end(), [](const auto& c) {
        return c.additive;
      }));
  const bool ok = r.passed() && r.split_group.str() == "Z^3" && r.sampled_group.str() == "Z^3" &&
                  r.additivity.size() == 200 && additive == 200 && t <= 60.0;
  return {ok, "rank " + std::to_string(r.split_group.rank) + ", sampled " + r.sampled_group.str() + ", additive " +
                  std::to_string(additive) + "/" + std::to_string(r.additivity.size()) + ", " + secs(t)};
}

Verdict jordan_holder(const Inputs& in) {
  const JordanHolderReport r = sample_jordan_holder(in.stalks, 100, 6, kSeed);
  std::size_t ok = 0, filtrations = 0, min_constructions = 1000;
  for (const auto& c : r.cases) {
    ok += c.passed() ? 1 : 0;
    filtrations += c.report.filtrations.size();
    min_constructions = std::min(min_constructions, c.report.filtrations.size());
  }
  return {r.passed() && r.cases.size() == 100 && min_constructions >= 2,
          std::to_string(ok) + "/100 objects, " + std::to_string(filtrations) + " filtrations, at least " +
              std::to_string(min_constructions) + " per object"};
}

Verdict horseshoe(const Inputs& in) {
  const HorseshoeReport r = sample_horseshoe(in.stalks, 50, kSeed);
  std::size_t ok = 0, non_split = 0;
  for (const auto& c : r.cases) {
    ok += c.additive && !c.error ? 1 : 0;
    non_split += c.split ? 0 : 1;
  }
  return {r.all_additive() && ok == 50 && r.cases.size() == 50,
          std::to_string(ok) + "/50 additive, " + std::to_string(non_split) + " non-split"};
}

Verdict sign_law(const Inputs& in) {
  const SignLawReport r = sample_sign_law(in.stalks, 100, kSeed);
  std::size_t sign = 0, shift = 0;
  for (const auto& c : r.cases) {
    sign += !c.error && c.sign_ok ? 1 : 0;
    shift += !c.error && c.shift_ok ? 1 : 0;
  }
  return {r.passed() && r.cases.size() == 100,
          "class(Sigma^-1 x) = -class(x) on " + std::to_string(sign) + "/100, shift n vs n+1 on " +
              std::to_string(shift) + "/100"};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(K0S_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict worked_example(const Inputs& in) {
  const auto t0 = Clock::now();
  const ExampleReport r = verify_a3_example(in.rigid, in.x, kSeed);
  auto has = [&](const std::string& prefix) {
    return std::any_of(r.checks.begin(), r.checks.end(),
                       [&](const ExampleCheck& c) { return c.pass && c.name.rfind(prefix, 0) == 0; });
  };
  const bool named = has("2-rigid") && has("presilting fails at i = 2") && has("X is not in F_2") &&
                     has("triangle S3 -> X -> Sigma^-1 S1") && has("supplied X is isomorphic to E");
  const int code = run_cli("verify example-4-3 --algebra " + (kFixtures / "a3.algebra.json").string() +
                           " --silting " + (kFixtures / "rigid2.json").string() + " --complex " +
                           (kFixtures / "x_example.complex.json").string());
  const double t = seconds_since(t0);
  std::string failed;
  for (const auto& c : r.checks) {
    if (!c.pass) failed += " [" + c.name + "]";
  }
  return {r.passed() && named && code == 0 && t <= 10.0,
          std::to_string(r.checks.size()) + " checks" + (failed.empty() ? "" : ", failed:" + failed) +
              ", CLI exit " + std::to_string(code) + ", " + secs(t)};
}

Verdict n_subgroup(const Inputs& in) {
  std::ostringstream os;
  bool ok = true;
  for (const SiltingCollection* m : {&in.stalks, &in.rotated}) {
    for (int d : {2, 3}) {
      const NSubgroupReport r = compute_N_subgroup(*m, d, 6, kSeed);
      const bool free_on_labels = r.quotient.is_free() && r.quotient.rank == m->size();
      ok = ok && r.all_zero() && free_on_labels && !r.generators.empty();
      os << (m == &in.stalks ? "stalks" : "rotated") << " d=" << d << ": " << r.generators.size()
         << " generators, quotient " << r.quotient.str() << "; ";
    }
  }
  std::string s = os.str();
  s.resize(s.size() - 2);
  return {ok, s};
}

// Checks one complex: d o d, reduction identities, idempotence of reduction.
bool engine_checks(const ProjComplex& x, std::size_t& assertions) {
  const auto& alg = x.algebra();
  for (int n = x.empty() ? 0 : x.min_degree(); !x.empty() && n < x.max_degree(); ++n) {
    ++assertions;
    if (!homotopy::compose(alg, x.differential(n + 1), x.differential(n)).is_zero()) return false;
  }
  const homotopy::MinimalForm mf = homotopy::minimal_reduce(x);
  ++assertions;
  if (!(homotopy::compose(mf.to_min, mf.from_min) == homotopy::ChainMap::identity(mf.complex))) return false;
  ++assertions;
  const homotopy::ChainMap defect = homotopy::ChainMap::identity(x) - homotopy::compose(mf.from_min, mf.to_min);
  if (!homotopy::is_null_homotopy(defect, mf.homotopy)) return false;
  const homotopy::MinimalForm again = homotopy::minimal_reduce(mf.complex);
  ++assertions;
  return homotopy::is_minimal(mf.complex) && again.complex == mf.complex;
}

Verdict engine(const Inputs& in, const homotopy::ConstructionStats& before) {
  Rng rng(kSeed);
  std::size_t checked = 0, assertions = 0, agree = 0, triangles = 0;
  bool ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const ProjComplex x = homotopy::random_complex(in.alg, rng);
    ok = engine_checks(x, assertions) && ok;
    ++checked;
    const ProjComplex y = homotopy::random_complex(in.alg, rng);
    const homotopy::Cone c = homotopy::cone(homotopy::random_chain_map(x, y, rng));
    c.triangle.verify();
    ok = engine_checks(c.complex, assertions) && ok;
    ++checked;
    ++triangles;

    // fast path (brutal truncation) against approximations
    const ProjComplex z = random_object_in_F(in.stalks, rng);
    std::vector<K0SpElement> gammas;
    for (const Strategy s : {Strategy::truncation, Strategy::approximation, Strategy::minimal}) {
      ExtractOptions opt;
      opt.strategy = s;
      const Filtration f = extract_filtration(z, in.stalks, opt);
      if (check_filtration(f, in.stalks)) ok = false;
      for (const auto& st : f.stages) {
        st.triangle.verify();
        ++triangles;
        ok = engine_checks(st.triangle.first(), assertions) && ok;
        ++checked;
      }
      gammas.push_back(gamma(f, in.stalks));
    }
    if (gammas[0] == gammas[1] && gammas[0] == gammas[2]) ++agree;
  }
  const homotopy::ConstructionStats after = homotopy::construction_stats();
  const std::uint64_t built = after.complexes - before.complexes;
  const std::uint64_t squared = after.square_checks - before.square_checks;
  const double density = static_cast<double>(assertions + squared) / static_cast<double>(std::max<std::uint64_t>(built, 1));
  ok = ok && agree == 100 && squared == built && density >= 1.0;
  std::ostringstream os;
  os.precision(1);
  os << std::fixed << built << " complexes built, " << squared << " d^2 checks, " << checked
     << " reductions verified, " << triangles << " triangles verified, density " << density
     << " per complex, gamma agreement " << agree << "/100";
  return {ok, os.str()};
}

Verdict exact_math() {
  Rng rng(kSeed);
  bool ok = true;
  const auto d = exactmath::smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}})).diagonal;
  ok = ok && d == std::vector<mpz_class>{1, 6};
  std::size_t matrices = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng.below(5), cols = 1 + rng.below(5);
    IntMatrix a(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) a(r, c) = rng.between(-9, 9);
    }
    const auto s = exactmath::smith_normal_form(a);
    for (std::size_t k = 0; k + 1 < s.diagonal.size(); ++k) ok = ok && s.diagonal[k + 1] % s.diagonal[k] == 0;
    const IntMatrix prod = s.left * a * s.right;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        ok = ok && prod(r, c) == (r == c && r < s.diagonal.size() ? s.diagonal[r] : mpz_class(0));
      }
    }
    std::vector<std::size_t> rp(rows), cp(cols);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    for (std::size_t k = rows; k > 1; --k) std::swap(rp[k - 1], rp[rng.below(k)]);
    for (std::size_t k = cols; k > 1; --k) std::swap(cp[k - 1], cp[rng.below(k)]);
    IntMatrix b(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) b(r, c) = a(rp[r], cp[c]);
    }
    ok = ok && exactmath::smith_normal_form(b).diagonal == s.diagonal;
    ++matrices;
  }
  std::size_t rationals = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    mpq_class q(rng.between(-100000, 100000), rng.between(1, 99999));
    q.canonicalize();
    const Scalar y(q);
    ok = ok && Scalar::parse(y.str()) == y;
    ++rationals;
  }
  return {ok, "diag(2,3) -> (" + d[0].get_str() + "," + d[1].get_str() + "), " + std::to_string(matrices) +
                  " random matrices (divisibility, identity, permutations), " + std::to_string(rationals) +
                  " rational round trips"};
}

}  // namespace

int main() {
  const auto before = homotopy::construction_stats();
  bool all = true;
  auto report = [&](int id, const std::string& name, const std::function<Verdict()>& f) {
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    all = all && v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << v.detail << std::endl;
  };
  Inputs in = [] {
    try {
      return load();
    } catch (const std::exception& e) {
      std::cout << "FAIL could not load fixtures: " << e.what() << std::endl;
      std::exit(1);
    }
  }();
  report(1, "theorem-a on the stalk collection", [&] { return theorem_a(in); });
  report(2, "filtration independence", [&] { return jordan_holder(in); });
  report(3, "horseshoe additivity", [&] { return horseshoe(in); });
  report(4, "sign law and shift independence", [&] { return sign_law(in); });
  report(5, "worked A3 example", [&] { return worked_example(in); });
  report(6, "presilting as d-rigid", [&] { return n_subgroup(in); });
  report(7, "engine self-consistency", [&] { return engine(in, before); });
  report(8, "exact arithmetic", [] { return exact_math(); });
  return all ? 0 : 1;
}
