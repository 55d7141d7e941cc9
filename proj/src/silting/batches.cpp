#include <algorithm>

#include "internal.hpp"
#include "k0s/parallel.hpp"
#include "k0s/random.hpp"
#include "k0s/silting.hpp"

namespace k0s::silting {

namespace {

std::vector<std::uint64_t> case_seeds(std::uint64_t seed, std::size_t count) {
  Rng root(seed);
  std::vector<std::uint64_t> out(count);
  for (auto& s : out) s = root.next();
  return out;
}

constexpr int kSplitRedraws = 8;

}  // namespace

bool JordanHolderReport::passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const JordanHolderCase& c) { return c.passed(); });
}

bool SignLawReport::passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const SignLawCase& c) { return c.passed(); });
}

JordanHolderReport sample_jordan_holder(const SiltingCollection& m, std::size_t count, std::size_t trials,
                                        std::uint64_t seed, std::size_t jobs) {
  const auto seeds = case_seeds(seed, count);
  JordanHolderReport r;
  r.cases.resize(count);
  parallel_for(count, jobs, [&](std::size_t i) {
    JordanHolderCase& c = r.cases[i];
    c.index = i;
    Rng rng(seeds[i]);
    try {
      const ProjComplex x = random_object_in_F(m, rng);
      c.object = homotopy::describe(x);
      c.report = verify_filtration_equivalence(x, m, trials, rng.next());
    } catch (const std::exception& e) {
      c.error = e.what();
    }
  });
  return r;
}

HorseshoeReport sample_horseshoe(const SiltingCollection& m, std::size_t count, std::uint64_t seed,
                                 std::size_t jobs) {
  const auto seeds = case_seeds(seed, count);
  HorseshoeReport r;
  r.cases.resize(count);
  parallel_for(count, jobs, [&](std::size_t i) {
    Rng rng(seeds[i]);
    const std::string name = "extension " + std::to_string(i);
    try {
      ProjComplex x = random_object_in_F(m, rng);
      ProjComplex z = random_object_in_F(m, rng);
      std::vector<ChainMap> basis = homotopy::hom_space(z, homotopy::shift(x, 1)).basis;
      for (int attempt = 0; basis.empty() && attempt < kSplitRedraws; ++attempt) {
        x = random_object_in_F(m, rng);
        z = random_object_in_F(m, rng);
        basis = homotopy::hom_space(z, homotopy::shift(x, 1)).basis;
      }
      const ChainMap w = homotopy::random_combination(z, homotopy::shift(x, 1), basis, rng);
      const K0SpElement gx = gamma(extract_filtration(x, m), m);
      const K0SpElement gz = gamma(extract_filtration(z, m), m);
      r.cases[i] = detail::horseshoe_case(name + " (" + homotopy::describe(x) + " by " + homotopy::describe(z) + ")",
                                          w, gx, gz, m);
    } catch (const std::exception& e) {
      r.cases[i] = HorseshoeCase{name, {}, {}, {}, false, e.what()};
    }
  });
  return r;
}

SignLawReport sample_sign_law(const SiltingCollection& m, std::size_t count, std::uint64_t seed, std::size_t jobs) {
  const auto seeds = case_seeds(seed, count);
  SignLawReport r;
  r.cases.resize(count);
  parallel_for(count, jobs, [&](std::size_t i) {
    SignLawCase& c = r.cases[i];
    c.index = i;
    Rng rng(seeds[i]);
    try {
      const ProjComplex x = homotopy::random_complex(m.algebra_ptr(), rng);
      c.object = homotopy::describe(x);
      c.x = class_in_k0sp(x, m);
      c.desuspended = class_in_k0sp(homotopy::shift(x, -1), m);
      c.next_shift = class_at_shift(x, m, c.x.shift + 1);
      c.sign_ok = c.desuspended.value == -c.x.value;
      c.shift_ok = c.next_shift.value == c.x.value;
    } catch (const std::exception& e) {
      c.error = e.what();
    }
  });
  return r;
}

}  // namespace k0s::silting
