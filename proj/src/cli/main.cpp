#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "k0s/io.hpp"

namespace {

using k0s::io::Json;
using k0s::homotopy::ProjComplex;
using k0s::silting::SiltingCollection;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string which;
  std::string algebra;
  std::string silting;
  std::vector<std::string> complexes;
  std::string field = "Q";
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;
  std::size_t jobs = 1;
  int shift = 0;
  std::optional<int> d;
  std::optional<std::size_t> max_len;
  bool class_flag = false;
  bool timing = false;
};

class Session {
 public:
  explicit Session(const Options& o) : opt(o) {}

  const Options& opt;
  Json report = Json::object();
  std::vector<std::string> summary;

  k0s::homotopy::AlgebraPtr algebra() {
    if (alg_) return alg_;
    if (opt.algebra.empty()) throw UsageError("--algebra is required");
    record("algebra", opt.algebra, k0s::io::read_text(opt.algebra));
    alg_ = k0s::io::load_algebra(opt.algebra, field_);
    return alg_;
  }

  SiltingCollection collection() {
    if (opt.silting.empty()) throw UsageError("--silting is required");
    const auto alg = algebra();
    record("silting", opt.silting, k0s::io::read_text(opt.silting));
    return k0s::io::load_silting(alg, opt.silting);
  }

  /// A complex file, or "stalk:V" / "stalk:V@n" for P_V in degree n.
  ProjComplex complex(std::size_t index) {
    if (index >= opt.complexes.size()) throw UsageError("--complex is required");
    const std::string& arg = opt.complexes[index];
    const auto alg = algebra();
    if (arg.rfind("stalk:", 0) == 0) {
      record("complex", arg, arg);
      std::string label = arg.substr(6);
      int degree = 0;
      if (const auto at = label.find('@'); at != std::string::npos) {
        try {
          std::size_t used = 0;
          degree = std::stoi(label.substr(at + 1), &used);
          if (used != label.size() - at - 1) throw std::invalid_argument(arg);
        } catch (const std::exception&) {
          throw UsageError("bad stalk degree in \"" + arg + "\"");
        }
        label.resize(at);
      }
      try {
        return ProjComplex::stalk(alg, alg->vertex_index(label), degree);
      } catch (const k0s::pathalg::AlgebraError& e) {
        throw UsageError(arg + ": " + e.what());
      }
    }
    record("complex", arg, k0s::io::read_text(arg));
    return k0s::io::load_complex(alg, arg);
  }

  std::size_t samples(std::size_t fallback) {
    const std::size_t s = opt.samples.value_or(fallback);
    params_["samples"] = s;
    return s;
  }

  int rigidity_d(const SiltingCollection& m) {
    if (opt.d) {
      if (*opt.d < 2) throw UsageError("--d must be at least 2");
      params_["d"] = *opt.d;
      return *opt.d;
    }
    if (!m.declared_d()) throw UsageError("--d is required for a collection declared presilting");
    params_["d"] = *m.declared_d();
    return *m.declared_d();
  }

  void set_field() { field_ = k0s::io::parse_field(opt.field); }

  Json inputs() const {
    std::uint64_t h = k0s::io::fnv1a64(opt.command + " " + opt.which);
    for (const auto& f : files_) h = k0s::io::fnv1a64(f["fnv1a64"].get<std::string>(), h);
    h = k0s::io::fnv1a64(params_.dump(), h);
    return Json{{"files", files_}, {"parameters", params_}, {"digest", k0s::io::hex64(h)}};
  }

  void param(const std::string& key, Json value) { params_[key] = std::move(value); }

 private:
  void record(const std::string& role, const std::string& path, const std::string& bytes) {
    files_.push_back(Json{{"role", role}, {"path", path}, {"fnv1a64", k0s::io::hex64(k0s::io::fnv1a64(bytes))}});
  }

  k0s::exactmath::Field field_{};
  k0s::homotopy::AlgebraPtr alg_;
  Json files_ = Json::array();
  Json params_ = Json::object();
};

std::string names_text(const SiltingCollection& m, const std::vector<std::size_t>& factor) {
  std::string out;
  for (auto j : factor) out += (out.empty() ? "" : " + ") + m.name(j);
  return out.empty() ? "0" : out;
}

Json hom_entries(const SiltingCollection& m, const k0s::silting::HomVanishingReport& r) {
  Json out = Json::array();
  for (const auto& e : r.entries) {
    out.push_back(Json{{"from", m.name(e.i)}, {"to", m.name(e.j)}, {"k", e.k}, {"dimension", e.dimension}});
  }
  return out;
}

std::string first_nonzero(const SiltingCollection& m, const k0s::silting::HomVanishingReport& r) {
  for (const auto& e : r.entries) {
    if (e.dimension != 0) {
      return "dim Hom(" + m.name(e.i) + ", Sigma^" + std::to_string(e.k) + " " + m.name(e.j) +
             ") = " + std::to_string(e.dimension);
    }
  }
  return "none";
}

/// Hom vanishing over the full presilting range, whatever the declaration.
void require_presilting(SiltingCollection& m, Session& s) {
  const auto r = k0s::silting::verify_hom_vanishing(m, 1, m.k_max());
  if (!m.verified_presilting) {
    s.report["rigidity"] = Json{{"k_lo", r.k_lo}, {"k_hi", r.k_hi}, {"all_zero", r.all_zero()}};
    throw k0s::silting::PreconditionError("precondition: collection is not verified presilting (" +
                                          first_nonzero(m, r) + ")");
  }
}

// --- commands -----------------------------------------------------------------------

int cmd_hom(Session& s) {
  const ProjComplex x = s.complex(0);
  const ProjComplex y = s.opt.complexes.size() > 1 ? s.complex(1) : x;
  if (s.opt.complexes.size() > 2) throw UsageError("hom takes at most two --complex arguments");
  s.param("shift", s.opt.shift);
  const auto hs = k0s::homotopy::hom_space(x, k0s::homotopy::shift(y, s.opt.shift));
  Json basis = Json::array();
  for (const auto& f : hs.basis) basis.push_back(k0s::io::to_json(f));
  s.report["x"] = k0s::homotopy::describe(x);
  s.report["y"] = k0s::homotopy::describe(y);
  s.report["shift"] = s.opt.shift;
  s.report["dimension"] = hs.dimension();
  s.report["cycles_dimension"] = hs.cycles_dimension;
  s.report["boundaries_dimension"] = hs.boundaries_dimension;
  s.report["basis"] = std::move(basis);
  s.summary.push_back("dim Hom(X, Sigma^" + std::to_string(s.opt.shift) + " Y) = " + std::to_string(hs.dimension()));
  return kPass;
}

int verify_presilting(Session& s) {
  SiltingCollection m = s.collection();
  const auto r = k0s::silting::verify_hom_vanishing(m, 1, m.k_max());
  s.report["k_max"] = m.k_max();
  s.report["entries"] = hom_entries(m, r);
  const auto fail = r.first_failure();
  s.report["first_failure"] = fail ? Json(*fail) : Json(nullptr);
  if (fail) {
    s.summary.push_back("presilting fails at i = " + std::to_string(*fail) + ": " + first_nonzero(m, r));
    return kFail;
  }
  s.summary.push_back("presilting: Hom(T, Sigma^i T) = 0 for 1 <= i <= " + std::to_string(m.k_max()));
  return kPass;
}

int verify_silting_cert(Session& s) {
  SiltingCollection m = s.collection();
  const auto rig = k0s::silting::verify_declared_rigidity(m);
  s.report["declared"] = m.declared_d() ? Json(*m.declared_d()) : Json("presilting");
  s.report["rigidity"] = Json{{"k_lo", rig.k_lo}, {"k_hi", rig.k_hi}, {"all_zero", rig.all_zero()}};
  if (!rig.all_zero()) {
    s.summary.push_back("declared rigidity fails: " + first_nonzero(m, rig));
    return kFail;
  }
  const auto cert = k0s::silting::silting_certificate(m);
  const auto& alg = *m.algebra_ptr();
  Json entries = Json::array();
  for (const auto& e : cert.entries) {
    entries.push_back(Json{{"vertex", alg.vertex_label(e.vertex)}, {"shift", e.shift ? Json(*e.shift) : Json(nullptr)}});
    s.summary.push_back("P" + alg.vertex_label(e.vertex) + ": " +
                        (e.shift ? "in F after Sigma^-" + std::to_string(*e.shift) : "no filtration found"));
  }
  s.report["certificate"] = std::move(entries);
  s.report["certified"] = cert.certified();
  return cert.certified() ? kPass : kFail;
}

int verify_theorem_a(Session& s) {
  SiltingCollection m = s.collection();
  require_presilting(m, s);
  k0s::silting::TheoremAConfig cfg;
  cfg.sampler.samples = s.samples(200);
  cfg.sampler.seed = s.opt.seed;
  cfg.jobs = s.opt.jobs;
  const auto r = k0s::silting::verify_theorem_a(m, cfg);
  std::size_t additive = 0;
  Json failures = Json::array();
  for (const auto& c : r.additivity) {
    if (c.additive) {
      ++additive;
      continue;
    }
    failures.push_back(Json{{"index", c.index},
                            {"cone", k0s::io::to_json(c.cone_class, m.names())},
                            {"shift", k0s::io::to_json(c.shift_class, m.names())},
                            {"target", k0s::io::to_json(c.target_class, m.names())},
                            {"error", c.error ? Json(*c.error) : Json(nullptr)}});
  }
  Json classes = Json::object();
  for (const auto& [name, c] : r.summand_classes) classes[name] = k0s::io::to_json(c, m.names());
  s.report["labels"] = m.names();
  s.report["split_group"] = k0s::io::to_json(r.split_group);
  s.report["sampled_group"] = k0s::io::to_json(r.sampled_group);
  s.report["sampled_generators"] = r.sampled_generators;
  s.report["additivity"] = Json{{"checked", r.additivity.size()}, {"additive", additive}, {"failures", failures}};
  s.report["summand_classes"] = std::move(classes);
  s.report["checks"] = Json{{"rank", r.rank_ok}, {"sampled", r.sampled_ok}, {"additive", r.additive_ok},
                            {"surjective", r.surjective_ok}};
  s.summary.push_back("K_0^sp rank " + std::to_string(r.split_group.rank) + ", sampled K_0 " + r.sampled_group.str() +
                      ", additive on " + std::to_string(additive) + "/" + std::to_string(r.additivity.size()) +
                      " triangles");
  return r.passed() ? kPass : kFail;
}

int verify_jordan_holder(Session& s) {
  SiltingCollection m = s.collection();
  require_presilting(m, s);
  const std::size_t trials = 6;
  s.param("trials", trials);
  const auto r = k0s::silting::sample_jordan_holder(m, s.samples(100), trials, s.opt.seed, s.opt.jobs);
  std::size_t compared = 0;
  Json failures = Json::array();
  for (const auto& c : r.cases) {
    compared += c.report.filtrations.size();
    if (c.passed()) continue;
    Json gammas = Json::object();
    for (const auto& g : c.report.filtrations) gammas[g.construction] = g.gamma.str(m.names());
    failures.push_back(Json{{"index", c.index}, {"object", c.object}, {"gammas", gammas},
                            {"defects", c.report.defects}, {"error", c.error ? Json(*c.error) : Json(nullptr)}});
  }
  s.report["objects"] = r.cases.size();
  s.report["filtrations_compared"] = compared;
  s.report["failures"] = std::move(failures);
  s.summary.push_back(std::to_string(r.cases.size() - s.report["failures"].size()) + "/" +
                      std::to_string(r.cases.size()) + " objects give one gamma across " + std::to_string(compared) +
                      " filtrations");
  return r.passed() ? kPass : kFail;
}

int verify_horseshoe(Session& s) {
  SiltingCollection m = s.collection();
  require_presilting(m, s);
  const auto r = k0s::silting::sample_horseshoe(m, s.samples(50), s.opt.seed, s.opt.jobs);
  Json cases = Json::array();
  std::size_t additive = 0, split = 0;
  for (const auto& c : r.cases) {
    additive += c.additive;
    split += c.split;
    cases.push_back(Json{{"extension", c.description},
                         {"gamma_x", c.gamma_x.str(m.names())},
                         {"gamma_y", c.gamma_y.str(m.names())},
                         {"gamma_z", c.gamma_z.str(m.names())},
                         {"split", c.split},
                         {"additive", c.additive},
                         {"error", c.error ? Json(*c.error) : Json(nullptr)}});
  }
  s.report["non_split"] = r.cases.size() - split;
  s.report["extensions"] = std::move(cases);
  s.summary.push_back("gamma(Y) = gamma(X) + gamma(Z) on " + std::to_string(additive) + "/" +
                      std::to_string(r.cases.size()) + " extensions (" + std::to_string(r.cases.size() - split) +
                      " non-split)");
  return r.all_additive() ? kPass : kFail;
}

int verify_sign_law(Session& s) {
  SiltingCollection m = s.collection();
  require_presilting(m, s);
  const auto r = k0s::silting::sample_sign_law(m, s.samples(100), s.opt.seed, s.opt.jobs);
  Json failures = Json::array();
  std::size_t sign = 0, shift = 0;
  for (const auto& c : r.cases) {
    sign += !c.error && c.sign_ok;
    shift += !c.error && c.shift_ok;
    if (c.passed()) continue;
    failures.push_back(Json{{"index", c.index},
                            {"object", c.object},
                            {"class", c.x.value.str(m.names())},
                            {"class_desuspended", c.desuspended.value.str(m.names())},
                            {"class_next_shift", c.next_shift.value.str(m.names())},
                            {"error", c.error ? Json(*c.error) : Json(nullptr)}});
  }
  s.report["objects"] = r.cases.size();
  s.report["sign_ok"] = sign;
  s.report["shift_ok"] = shift;
  s.report["failures"] = std::move(failures);
  s.summary.push_back("class(Sigma^-1 x) = -class(x) on " + std::to_string(sign) + "/" +
                      std::to_string(r.cases.size()) + ", shift n vs n+1 on " + std::to_string(shift) + "/" +
                      std::to_string(r.cases.size()));
  return r.passed() ? kPass : kFail;
}

Json closure_json(const SiltingCollection& m, const k0s::silting::ClosureReport& r) {
  Json cases = Json::array();
  for (const auto& c : r.cases) {
    cases.push_back(Json{{"T1", m.name(c.j1)},
                         {"T2", m.name(c.j2)},
                         {"map", c.map},
                         {"E", k0s::homotopy::describe(c.extension)},
                         {"verdict", k0s::silting::to_string(c.membership.verdict)},
                         {"detail", c.membership.detail}});
  }
  return Json{{"d", r.d},     {"members", r.members}, {"non_members", r.non_members},
              {"unknowns", r.unknowns}, {"closed", r.closed()}, {"cases", std::move(cases)}};
}

int verify_fd_closure(Session& s) {
  SiltingCollection m = s.collection();
  k0s::silting::verify_declared_rigidity(m);
  const int d = s.rigidity_d(m);
  const auto r = k0s::silting::verify_fd_extension_closure(m, d, s.samples(4), s.opt.seed);
  s.report["closure"] = closure_json(m, r);
  s.summary.push_back("F_" + std::to_string(d) + " extensions: " + std::to_string(r.members) + " member, " +
                      std::to_string(r.non_members) + " non-member, " + std::to_string(r.unknowns) + " unknown");
  return r.closed() ? kPass : kFail;
}

int verify_cluster_n(Session& s) {
  SiltingCollection m = s.collection();
  k0s::silting::verify_declared_rigidity(m);
  const int d = s.rigidity_d(m);
  const auto r = k0s::silting::compute_N_subgroup(m, d, s.samples(4), s.opt.seed);
  Json gens = Json::array();
  for (const auto& g : r.generators) gens.push_back(k0s::io::to_json(g, m.names()));
  s.report["d"] = d;
  s.report["labels"] = m.names();
  s.report["generators"] = std::move(gens);
  s.report["all_zero"] = r.all_zero();
  s.report["quotient"] = k0s::io::to_json(r.quotient);
  s.summary.push_back("N is generated by " + std::to_string(r.generators.size()) + " elements" +
                      (r.all_zero() ? " (all zero)" : "") + "; K_0^sp / N = " + r.quotient.str());
  // a presilting collection must give N = 0
  return m.verified_presilting && !r.all_zero() ? kFail : kPass;
}

int verify_example(Session& s) {
  SiltingCollection m = s.collection();
  std::optional<ProjComplex> x;
  if (!s.opt.complexes.empty()) x = s.complex(0);
  const auto r = k0s::silting::verify_a3_example(std::move(m), x, s.opt.seed);
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    s.summary.push_back(std::string(c.pass ? "PASS " : "FAIL ") + c.name + ": " + c.detail);
  }
  s.report["checks"] = std::move(checks);
  return r.passed() ? kPass : kFail;
}

int cmd_verify(Session& s) {
  static const std::map<std::string, std::function<int(Session&)>> table = {
      {"presilting", verify_presilting},     {"silting-cert", verify_silting_cert},
      {"theorem-a", verify_theorem_a},       {"jordan-holder", verify_jordan_holder},
      {"horseshoe", verify_horseshoe},       {"fd-closure", verify_fd_closure},
      {"cluster-n", verify_cluster_n},       {"example-4-3", verify_example},
      {"sign-law", verify_sign_law},
  };
  return table.at(s.opt.which)(s);
}

int cmd_gamma(Session& s) {
  SiltingCollection m = s.collection();
  const ProjComplex x = s.complex(0);
  k0s::silting::verify_declared_rigidity(m);
  if (!m.verified_presilting && !m.verified_d_rigid) {
    throw k0s::silting::PreconditionError("precondition: collection unverified");
  }
  k0s::silting::ExtractOptions opts;
  opts.max_len = s.opt.max_len;
  if (!m.verified_presilting) opts.max_len = std::min<std::size_t>(opts.max_len.value_or(1000), *m.declared_d());
  if (opts.max_len) s.param("max_len", *opts.max_len);

  ProjComplex object = x;
  if (s.opt.class_flag) {
    if (!m.verified_presilting) throw k0s::silting::PreconditionError("precondition: --class needs a presilting collection");
    const auto cv = k0s::silting::class_in_k0sp(x, m);
    object = k0s::homotopy::shift(x, -cv.shift);
    s.report["class"] = Json{{"shift", cv.shift},
                             {"sign", cv.shift % 2 == 0 ? 1 : -1},
                             {"gamma_shifted", k0s::io::to_json(cv.gamma_shifted, m.names())},
                             {"value", k0s::io::to_json(cv.value, m.names())},
                             {"text", cv.value.str(m.names())}};
    s.summary.push_back("class(X) = (-1)^" + std::to_string(cv.shift) + " gamma(Sigma^-" + std::to_string(cv.shift) +
                        " X) = " + cv.value.str(m.names()));
  }
  const auto f = k0s::silting::extract_filtration(object, m, opts);
  if (const auto defect = k0s::silting::check_filtration(f, m)) {
    s.report["defect"] = *defect;
    s.summary.push_back("filtration check failed: " + *defect);
    return kFail;
  }
  const auto g = k0s::silting::gamma(f, m);
  s.report["filtration"] = k0s::io::to_json(f, m);
  s.report["gamma"] = k0s::io::to_json(g, m.names());
  s.report["gamma_text"] = g.str(m.names());
  for (std::size_t i = 0; i < f.stages.size(); ++i) {
    s.summary.push_back("M_" + std::to_string(i) + " = " + names_text(m, f.stages[i].factor));
  }
  s.summary.push_back("gamma = " + g.str(m.names()));
  return kPass;
}

int run(const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  Session s(opt);
  int code = kPass;
  std::string error;
  try {
    s.set_field();
    s.param("field", opt.field);
    s.param("seed", opt.seed);
    if (opt.command == "hom") code = cmd_hom(s);
    else if (opt.command == "verify") code = cmd_verify(s);
    else code = cmd_gamma(s);
  } catch (const k0s::silting::FiltrationError& e) {
    code = kFail;
    error = e.what();
  } catch (const std::exception& e) {
    code = kUsage;
    error = e.what();
  }
  Json out = Json::object();
  out["command"] = opt.command + (opt.which.empty() ? "" : " " + opt.which);
  out["inputs"] = s.inputs();
  out["verdict"] = code == kPass ? "pass" : code == kFail ? "fail" : "error";
  if (!error.empty()) out["error"] = error;
  for (auto& [k, v] : s.report.items()) out[k] = v;
  if (opt.timing) {
    out["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  }
  std::cout << out.dump(2) << "\n";
  for (const auto& line : s.summary) std::cerr << line << "\n";
  if (!error.empty()) std::cerr << (code == kFail ? "fail: " : "error: ") << error << "\n";
  std::cerr << out["command"].get<std::string>() << ": " << out["verdict"].get<std::string>() << "\n";
  return code;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--algebra", o.algebra, "algebra file (JSON)");
  sub->add_option("--field", o.field, "ground field: Q or Fp:p")->capture_default_str();
  sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
  sub->add_flag("--timing", o.timing, "include wall-clock time in the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split Grothendieck groups of silting and d-rigid collections"};
  app.name("k0silting");
  app.require_subcommand(1);
  Options o;

  auto* hom = app.add_subcommand("hom", "dim Hom(X, Sigma^k Y) in the homotopy category");
  add_common(hom, o);
  hom->add_option("--complex", o.complexes, "X, then optionally Y (file or stalk:V[@n]); Y defaults to X")
      ->allow_extra_args(false);
  hom->add_option("--shift,-k", o.shift, "k")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run a verification on a silting or d-rigid collection");
  add_common(verify, o);
  verify
      ->add_option("which", o.which, "presilting | silting-cert | theorem-a | jordan-holder | horseshoe | "
                                     "sign-law | fd-closure | cluster-n | example-4-3")
      ->required()
      ->check(CLI::IsMember({"presilting", "silting-cert", "theorem-a", "jordan-holder", "horseshoe", "sign-law",
                             "fd-closure", "cluster-n", "example-4-3"}));
  verify->add_option("--silting", o.silting, "collection file (JSON)");
  verify->add_option("--complex", o.complexes, "object X (example-4-3)")->allow_extra_args(false);
  verify->add_option("--samples", o.samples, "number of random cases");
  verify->add_option("--jobs", o.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--d", o.d, "rigidity degree for fd-closure and cluster-n");

  auto* gamma = app.add_subcommand("gamma", "filtration and gamma invariant of an object");
  add_common(gamma, o);
  gamma->add_option("--silting", o.silting, "collection file (JSON)");
  gamma->add_option("--complex", o.complexes, "object X (file or stalk:V[@n])")->allow_extra_args(false);
  gamma->add_flag("--class", o.class_flag, "class in K_0^sp, normalising the shift first");
  gamma->add_option("--max-len", o.max_len, "filtration length bound")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  o.command = app.get_subcommands().front()->get_name();
  return run(o);
}
