// Acceptance run: one PASS/FAIL line per criterion. Exit status 0 only if all pass.
// Usage: acceptance [criterion ...]

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "gen.hpp"
#include "k0bench/document.hpp"
#include "k0bench/killing.hpp"
#include "k0bench/nccc.hpp"
#include "k0bench/oracle.hpp"
#include "k0bench/totalize.hpp"
#include "killgen.hpp"
#include "ncccgen.hpp"

#ifndef K0BENCH_CLI
#error "K0BENCH_CLI must name the CLI binary"
#endif
#ifndef K0BENCH_DATA
#error "K0BENCH_DATA must name the bundled data directory"
#endif

using namespace k0bench;
using namespace k0bench::testgen;
using nlohmann::json;

namespace {

// Time budgets in seconds.
constexpr double kBudgetCli = 1.0;
constexpr double kBudgetPlacements = 30.0;
constexpr double kBudgetPipeline = 300.0;
constexpr double kBudgetNccc = 300.0;

struct Failure {
  std::string what;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string data_path(const std::string& name) { return std::string(K0BENCH_DATA) + "/" + name; }

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  std::string cmd = std::string(K0BENCH_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw Failure{"cannot start " + cmd};
  CliRun r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Report cli_report(const std::string& args) {
  CliRun r = run_cli("--json " + args);
  require(r.exit_code == 0, "'" + args + "' exited with " + std::to_string(r.exit_code));
  return expect<Report>(parse_document(r.out), DocKind::Report);
}

RatVec json_vec(const json& j) {
  RatVec v;
  for (const auto& x : j) v.push_back(parse_rat(x.get<std::string>()));
  return v;
}

State centre_state(const ScaledOrderedGroup& g) {
  auto r = find_state(g, Subgroup::qspan({}, g.dim), {});
  require(r.state.has_value(), "no state on a random group");
  return *r.state;
}

RatVec random_kernel_element(Rng& rng, const RatVec& tau) {
  auto ker = kernel_basis(RatMat{tau}, tau.size());
  for (;;) {
    RatVec x = zeros(tau.size());
    for (const auto& k : ker) x = add(x, scale(Rat(uniform_int(rng, -3, 3)), k));
    if (!is_zero(x)) return x;
  }
}

// ---- criteria ----

std::string worked_example_cli() {
  const std::string g = data_path("sphere-plus-point.group.json");
  const std::string x = data_path("x.subgroup.json");
  auto t0 = Clock::now();
  Report sing = cli_report("check-singular " + g + " " + x);
  Report inf = cli_report("infinitesimals " + g);
  Report kill = cli_report("faithful-kill " + g + " " + x);
  double t = seconds_since(t0);

  require(sing.verdict == "Singular", "check-singular reported " + sing.verdict);
  bool has = false;
  for (const auto& b : inf.data.at("basis")) has = has || json_vec(b) == ints({0, 1, 0});
  require(has, "infinitesimal basis lacks (0,1,0): " + inf.data.dump());
  require(kill.verdict == "NotKillable", "faithful-kill reported " + kill.verdict);
  require(json_vec(kill.data.at("blocking")) == ints({0, 0, 1}), "blocking element " + kill.data.dump());
  require(run_cli("check-singular " + g + " " + x).out.rfind("Singular\n", 0) == 0, "text output");
  require(t < kBudgetCli, "took " + std::to_string(t) + " s");
  return "Singular; basis (0,1,0); NotKillable at (0,0,1); " + std::to_string(t) + " s";
}

std::string closed_form_totalization() {
  auto g = expect<ScaledOrderedGroup>(read_document(data_path("orthant.group.json")), DocKind::Group);
  auto tau = expect<State>(read_document(data_path("averaging.state.json")), DocKind::State);
  auto t = totalize_with_state(g, tau);
  int mismatches = 0, points = 0;
  for (long a = -10; a <= 10; ++a) {
    for (long b = -10; b <= 10; ++b) {
      bool expect_in = a + b > 0 || (a + b == 0 && a >= 0);
      mismatches += in_cone(t.group.cone, ints({a, b})) != expect_in;
      ++points;
    }
  }
  require(points == 441, "grid size");
  require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  return "441 points, 0 mismatches";
}

std::string random_placements() {
  auto t0 = Clock::now();
  Rng rng(4301);
  for (int t = 0; t < 200; ++t) {
    auto g = fingen_group(rng, std::size_t(uniform_int(rng, 2, 5)));
    State tau = centre_state(g);
    require(is_faithful(g, tau.functional), "centre state not faithful");
    RatVec x = random_kernel_element(rng, tau.functional);
    auto p = placements(g, tau, {}, x);
    bool opposite = (p.sign_forward == Sign::Pos && p.sign_reverse == Sign::Neg) ||
                    (p.sign_forward == Sign::Neg && p.sign_reverse == Sign::Pos);
    require(opposite, "instance " + std::to_string(t) + ": forward/reverse signs not opposite");
    require(p.sign_quotient == Sign::Zero, "instance " + std::to_string(t) + ": quotient sign nonzero");
    auto tot = totalize_with_state(g, tau);
    auto ss = state_set(tot.group);
    require(ss.kind == StateSetKind::Singleton && ss.singleton == tau.functional,
            "instance " + std::to_string(t) + ": totalized state set is not {tau}");
  }
  double s = seconds_since(t0);
  require(s < kBudgetPlacements, "took " + std::to_string(s) + " s");
  return "200 instances; " + std::to_string(s) + " s";
}

std::string random_doubling() {
  Rng rng(4501);
  std::size_t kernel_checks = 0, off_kernel = 0;
  for (int t = 0; t < 300; ++t) {
    auto g = fingen_group(rng, std::size_t(uniform_int(rng, 2, 4)));
    State tau = centre_state(g);
    auto d = doubling(g, tau);
    for (int s = 0; s < 3; ++s) {
      RatVec x = random_kernel_element(rng, tau.functional);
      require(is_singular(d.group, Subgroup::qspan({mat_vec(d.diagonal, x)}, 2 * g.dim)).singular,
              "instance " + std::to_string(t) + ": diag(" + to_string(x) + ") not singular");
      ++kernel_checks;
    }
    if (off_kernel < 100 && t % 3 == 0) {
      RatVec y;
      do y = nonzero_int_vec(rng, g.dim, -3, 3);
      while (sgn(dot(tau.functional, y)) == 0);
      require(!is_singular(d.group, Subgroup::qspan({mat_vec(d.diagonal, y)}, 2 * g.dim)).singular,
              "instance " + std::to_string(t) + ": diag(" + to_string(y) + ") singular off the kernel");
      ++off_kernel;
    }
  }
  require(off_kernel == 100, "off-kernel count");
  return "300 instances, " + std::to_string(kernel_checks) + " kernel elements Singular, 100 others NotSingular";
}

std::string state_search() {
  Rng rng(2601);
  for (int t = 0; t < 100; ++t) {
    auto g = fingen_group(rng, std::size_t(uniform_int(rng, 2, 5)));
    State tau = centre_state(g);
    auto ker = kernel_basis(RatMat{tau.functional}, g.dim);
    std::vector<RatVec> h1;
    const long n1 = uniform_int(rng, 0, long(ker.size()));
    for (long k = 0; k < n1; ++k) {
      RatVec v = zeros(g.dim);
      for (const auto& b : ker) v = add(v, scale(Rat(uniform_int(rng, -2, 2)), b));
      h1.push_back(v);
    }
    std::vector<RatVec> h2;
    const long n2 = uniform_int(rng, 0, 3);
    for (long k = 0; k < n2; ++k) {
      RatVec y = int_vec(rng, g.dim, -3, 3);
      if (sgn(dot(tau.functional, y)) < 0) y = neg(y);
      h2.push_back(y);
    }
    auto r = find_state(g, Subgroup::qspan(h1, g.dim), h2);
    require(r.state.has_value(), "valid instance " + std::to_string(t) + " reported infeasible");
    const RatVec& phi = r.state->functional;
    require(satisfies(r.system, phi), "valid instance " + std::to_string(t) + ": system not satisfied");
    require(is_state(g, phi), "valid instance " + std::to_string(t) + ": not a state");
    for (const auto& h : h1) require(sgn(dot(phi, h)) == 0, "does not vanish on H1");
    for (const auto& h : h2) require(sgn(dot(phi, h)) >= 0, "negative on H2");
  }
  for (int t = 0; t < 20; ++t) {
    auto g = mixed_group(rng, std::size_t(uniform_int(rng, 1, 4)));
    std::vector<RatVec> h2;
    if (t % 2 == 0) {
      h2.push_back(neg(g.unit));
    } else {
      RatVec x = int_vec(rng, g.dim, -3, 3);
      h2 = {x, sub(neg(x), g.unit)};
    }
    auto r = find_state(g, Subgroup::qspan({}, g.dim), h2);
    require(!r.state.has_value(), "invalid instance " + std::to_string(t) + " reported feasible");
    require(check_farkas(r.system, r.farkas), "invalid instance " + std::to_string(t) + ": Farkas fails");
  }
  return "100 feasible, 20 infeasible with Farkas certificates";
}

std::string infinitesimal_sweep() {
  Rng rng(2701);
  std::size_t checks = 0;
  for (int t = 0; t < 500; ++t) {
    auto g = mixed_group(rng, std::size_t(uniform_int(rng, 1, 5)));
    auto inf = infinitesimals(g);
    for (const auto& v : inf.generators) {
      require(brute_infinitesimal(g, v, 50), "basis vector " + to_string(v) + " fails the sweep");
      ++checks;
    }
    for (int s = 0; s < 5; ++s) {
      RatVec x = int_vec(rng, g.dim, -2, 2);
      require(brute_infinitesimal(g, x, 50) == in_span(inf.generators, x),
              "instance " + std::to_string(t) + ": disagreement at " + to_string(x));
      ++checks;
    }
  }
  return "500 instances, " + std::to_string(checks) + " agreements";
}

std::string pipeline() {
  auto t0 = Clock::now();
  Rng rng(5501);
  std::size_t conclusive = 0, pairs = 0;
  for (int t = 0; t < 100; ++t) {
    const std::string at = "instance " + std::to_string(t);
    auto inst = random_kill_instance(rng, std::size_t(uniform_int(rng, 2, 3)), 3);
    auto res = kill_pipeline(inst.summands, inst.g, KillOptions{std::uint64_t(t), 50, true});
    const auto& cert = res.certificate;
    auto v = verify_certificate(cert);
    require(v.ok, at + ": certificate rejected at " + v.location);

    std::vector<ScaledOrderedGroup> sign_groups;
    for (std::size_t i = 0; i < res.oracles.size(); ++i) {
      sign_groups.push_back(make_group(Cone::fingen(cert.summands[i].sign_cone_generators, res.oracles[i].quotient.dim),
                                       cert.summands[i].quotient_unit));
    }
    require(is_singular(direct_sum(sign_groups).cone, cert.image_basis).singular, at + ": image meets the sign cones");

    for (std::size_t i = 0; i < res.oracles.size(); ++i) {
      const SignOracle& o = res.oracles[i];
      const RatVec& tau_bar = cert.summands[i].tau_bar;
      const std::size_t n = o.quotient.dim;
      for (int p = 0; p < 1000; ++p, ++pairs) {
        RatVec x = int_vec(rng, n, -5, 5), y = int_vec(rng, n, -5, 5);
        int px = phi_sign(o, x), py = phi_sign(o, y);
        require((px == 0) == is_zero(x), at + ": phi vanishes off zero at " + to_string(x));
        require(phi_sign(o, neg(x)) == -px, at + ": phi not odd at " + to_string(x));
        if (px == py && px != 0) require(phi_sign(o, add(x, y)) == px, at + ": phi not additive on signs");
        if (!is_zero(x)) {
          require(!(phi_nonneg_witness(o, x) && phi_nonneg_witness(o, neg(x))), at + ": phi ill defined");
        }
        if (px == 1) require(sgn(dot(tau_bar, x)) >= 0, at + ": induced state negative on " + to_string(x));
        for (const RatVec* e : {&x, &y}) {
          BruteSign b = brute_phi(o.quotient, o.neg, *e, 25, 3);
          if (b == BruteSign::Inconclusive) continue;
          ++conclusive;
          int want = b == BruteSign::Pos ? 1 : b == BruteSign::Neg ? -1 : 0;
          require(phi_sign(o, *e) == want, at + ": brute sign disagrees at " + to_string(*e));
        }
      }
    }
    for (const auto& s : cert.samples) {
      bool all_nonneg = true;
      for (int p : s.phi) all_nonneg = all_nonneg && p >= 0;
      require(is_zero(s.element) || !all_nonneg, at + ": sign-positive image sample");
    }
  }
  double s = seconds_since(t0);
  require(s < kBudgetPipeline, "took " + std::to_string(s) + " s");
  return "100 instances, " + std::to_string(pairs) + " pairs, " + std::to_string(conclusive) +
         " conclusive brute verdicts; " + std::to_string(s) + " s";
}

std::string nccc_corpus() {
  auto t0 = Clock::now();
  auto corpus = enumerate_descriptors(2, 3, 4, 2);
  require(corpus.size() >= 1000, "corpus too small");
  std::size_t deletions = 0, reductions = 0;
  for (const auto& d : corpus) {
    require(validate(d).empty(), "invalid corpus descriptor");
    const LongMat s = default_s(d);
    for (std::size_t j = 1; j < d.length(); ++j) {
      auto del = delete_cell(d, j);
      require(validate(del.descriptor).empty(), "mass not conserved after deleting a cell");
      for (const auto& blocks : box(d.blocks.size(), 0, 2)) {
        require(apply_map(del.projection, consistent_ranks(d, blocks)) == consistent_ranks(del.descriptor, blocks),
                "ranks not conserved after deleting a cell");
      }
      ++deletions;
    }
    std::vector<RankClass> ys;
    for (const auto& y : box(d.coords(), 0, 1)) ys.push_back(RankClass{y, {}});
    for (const auto& y : ys) {
      auto r = reduce(d, s, y);
      std::size_t removals = 0;
      for (const auto& st : r.case_trace) {
        removals += st.kind == CaseKind::DropLast || st.kind == CaseKind::DeleteInner;
      }
      require(removals <= d.length() && r.case_trace.size() <= d.length() + 1, "reduction exceeds the length bound");
      require(brute_reduce(d, s, y) == r, "brute reduction differs");
      ++reductions;
    }
    auto c = finiteness_census(d, ys, s);
    require(c.within_bound(), "census exceeds 2^(l+1)");
  }
  auto desc = expect<NcccDescriptor>(read_document(data_path("counterexample.nccc.json")), DocKind::NcccDescriptor);
  auto y = expect<RankClass>(read_document(data_path("counterexample.class.json")), DocKind::RankClass);
  auto sg = expect<Subgroup>(read_document(data_path("counterexample.s.json")), DocKind::Subgroup);
  LongMat s;
  for (const auto& g : sg.generators) {
    LongVec row;
    for (const auto& q : g) row.push_back(q.get_num().get_si());
    s.push_back(row);
  }
  auto cls = classify(desc, s, y);
  require(cls.verdict == Verdict::InfinitesimalPart, std::string("counterexample classified ") + to_string(cls.verdict));
  require(cls.split && !cls.split->f1.empty(), "counterexample split is trivial");
  double secs = seconds_since(t0);
  require(secs < kBudgetNccc, "took " + std::to_string(secs) + " s");
  return std::to_string(corpus.size()) + " descriptors, " + std::to_string(deletions) + " deletions, " +
         std::to_string(reductions) + " reductions; counterexample InfinitesimalPart; " + std::to_string(secs) + " s";
}

void collect_leaves(const json& j, const json::json_pointer& at, std::vector<json::json_pointer>& out) {
  if (j.is_object()) {
    for (const auto& item : j.items()) collect_leaves(item.value(), at / item.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) collect_leaves(j[i], at / i, out);
  } else {
    out.push_back(at);
  }
}

json mutate(const json& leaf) {
  if (leaf.is_boolean()) return !leaf.get<bool>();
  if (leaf.is_number_unsigned()) return leaf.get<std::uint64_t>() + 1;
  if (leaf.is_number_integer()) return leaf.get<long>() + 1;
  std::string s = leaf.get<std::string>();
  if (s.find('/') != std::string::npos) return to_string(parse_rat(s) + 1);
  return s + "x";
}

std::string certificate_mutations() {
  Rng rng(9901);
  std::vector<json> certs;
  for (int t = 0; t < 10; ++t) {
    auto inst = random_kill_instance(rng, std::size_t(2 + t % 2), 3);
    certs.push_back(to_json(Document{kill_pipeline(inst.summands, inst.g, KillOptions{std::uint64_t(t), 20, true}).certificate}));
  }
  std::set<std::pair<std::size_t, std::string>> seen;
  std::size_t rejected = 0;
  std::vector<std::string> accepted;
  while (seen.size() < 50) {
    std::size_t c = rng() % certs.size();
    std::vector<json::json_pointer> leaves;
    collect_leaves(certs[c]["payload"], json::json_pointer("/payload"), leaves);
    const auto& ptr = leaves[rng() % leaves.size()];
    if (!seen.insert({c, ptr.to_string()}).second) continue;
    json m = certs[c];
    m[ptr] = mutate(m[ptr]);
    bool ok;
    try {
      ok = verify_certificate(expect<KillCertificate>(from_json(m), DocKind::KillCertificate)).ok;
    } catch (const std::exception&) {
      ok = false;
    }
    if (ok) {
      accepted.push_back(ptr.to_string());
    } else {
      ++rejected;
    }
  }
  std::string list;
  for (const auto& a : accepted) list += " " + a;
  require(accepted.empty(), std::to_string(accepted.size()) + " false accepts:" + list);
  return std::to_string(rejected) + " of 50 mutations rejected";
}

struct Criterion {
  int id;
  const char* name;
  std::function<std::string()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "worked example through the CLI", worked_example_cli},
      {2, "closed-form totalization on the 21x21 grid", closed_form_totalization},
      {3, "placements on random faithful states", random_placements},
      {4, "doubling singularity", random_doubling},
      {5, "state search and Farkas certificates", state_search},
      {6, "infinitesimals against the sweep", infinitesimal_sweep},
      {7, "killing pipeline, sign laws and brute signs", pipeline},
      {8, "cell-complex corpus", nccc_corpus},
      {9, "certificate mutations", certificate_mutations},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = Clock::now();
    std::string detail;
    bool pass = false;
    try {
      detail = c.run();
      pass = true;
    } catch (const Failure& f) {
      detail = f.what;
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    failed += !pass;
    std::printf("%s criterion %d: %s (%.2f s) %s\n", pass ? "PASS" : "FAIL", c.id, c.name, seconds_since(t0),
                detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
