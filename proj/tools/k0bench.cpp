// k0bench command-line front end. Every subcommand reads documents, calls one library
// operation and prints a verdict line followed by its data (or a report document with --json).
//
// Exit codes: 0 verdict computed, 1 precondition or validation failure, 2 malformed input.

#include <fstream>
#include <functional>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "k0bench/document.hpp"
#include "k0bench/killing.hpp"
#include "k0bench/nccc.hpp"
#include "k0bench/oracle.hpp"
#include "k0bench/ordgrp.hpp"
#include "k0bench/totalize.hpp"

using namespace k0bench;
using nlohmann::json;

namespace {

struct Context {
  bool json_out = false;
  bool refs = false;
  std::vector<std::string> steps;

  void step(const std::string& name) { steps.push_back(name); }
};

Context ctx;

// Human rendering: rational vectors as (a,b,c), nested arrays in brackets.
std::string render(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.size() > 2 && s.compare(s.size() - 2, 2, "/1") == 0) return s.substr(0, s.size() - 2);
    return s;
  }
  if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_string() || x.is_number(); });
    std::string out = flat ? "(" : "[";
    bool first = true;
    for (const auto& x : j) {
      if (!first) out += flat ? "," : ", ";
      first = false;
      out += render(x);
    }
    return out + (flat ? ")" : "]");
  }
  if (j.is_object()) return j.dump();
  return j.dump();
}

int emit(const std::string& command, const std::string& verdict, json data, int code = 0) {
  if (ctx.refs) data["steps"] = ctx.steps;
  if (ctx.json_out) {
    std::cout << serialize(Document{Report{command, verdict, std::move(data)}});
    return code;
  }
  if (ctx.refs) {
    for (const auto& s : ctx.steps) std::cout << "step: " << s << "\n";
  }
  std::cout << verdict << "\n";
  for (const auto& [key, value] : data.items()) {
    if (key == "steps") continue;
    std::cout << key << ": " << render(value) << "\n";
  }
  return code;
}

ScaledOrderedGroup load_group(const std::string& path) {
  return expect<ScaledOrderedGroup>(read_document(path), DocKind::Group);
}

Subgroup load_subgroup(const std::string& path, std::size_t dim) {
  Subgroup h = expect<Subgroup>(read_document(path), DocKind::Subgroup);
  if (h.dim != dim) throw MalformedInput(path + ": subgroup dimension " + std::to_string(h.dim) +
                                         " differs from group dimension " + std::to_string(dim));
  return h;
}

// An element is a subgroup document with exactly one generator.
RatVec load_element(const std::string& path, std::size_t dim) {
  Subgroup h = load_subgroup(path, dim);
  if (h.generators.size() != 1) throw MalformedInput(path + ": an element document has exactly one generator");
  return h.generators[0];
}

State load_state(const std::string& path, std::size_t dim) {
  State s = expect<State>(read_document(path), DocKind::State);
  if (s.functional.size() != dim) throw MalformedInput(path + ": state length differs from group dimension");
  return s;
}

std::vector<RatVec> load_generators(const std::string& path, std::size_t dim) {
  if (path.empty()) return {};
  return load_subgroup(path, dim).generators;
}

NcccDescriptor load_descriptor(const std::string& path) {
  return expect<NcccDescriptor>(read_document(path), DocKind::NcccDescriptor);
}

RankClass load_class(const std::string& path) { return expect<RankClass>(read_document(path), DocKind::RankClass); }

// S generators come from an integer subgroup document over the descriptor coordinates.
LongMat load_s(const std::string& path, std::size_t coords) {
  LongMat s;
  if (path.empty()) return s;
  Subgroup h = expect<Subgroup>(read_document(path), DocKind::Subgroup);
  if (h.dim != coords) throw MalformedInput(path + ": S generators must have one entry per coordinate");
  for (const auto& g : h.generators) {
    LongVec row;
    for (const auto& q : g) {
      if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw MalformedInput(path + ": S generators must be integral");
      row.push_back(q.get_num().get_si());
    }
    s.push_back(row);
  }
  return s;
}

json descriptor_json(const NcccDescriptor& d) { return payload_json(DocValue{d}); }

json split_json(const std::optional<Split>& sp) {
  if (!sp) return nullptr;
  return json{{"f1", sp->f1}, {"b", descriptor_json(sp->b)}};
}

json reduction_json(const ReductionResult& r) {
  json trace = json::array();
  for (const auto& s : r.case_trace) trace.push_back(to_string(s));
  return json{{"reduced", descriptor_json(r.reduced)},
              {"rank_map", r.rank_map},
              {"image_y", r.image_y},
              {"case_trace", trace},
              {"split", split_json(r.split)}};
}

// ---- subcommands ----

int cmd_check_singular(const std::string& gp, const std::string& hp) {
  auto g = load_group(gp);
  auto h = load_subgroup(hp, g.dim);
  ctx.step("ordgrp.is_singular");
  auto r = is_singular(g, h);
  json data = json::object();
  if (!r.singular) data["witness"] = vec_json(r.witness);
  return emit("check-singular", r.singular ? "Singular" : "NotSingular", data);
}

int cmd_quotient(const std::string& gp, const std::string& hp) {
  auto g = load_group(gp);
  auto h = load_subgroup(hp, g.dim);
  ctx.step("ordgrp.quotient_order");
  auto q = quotient_order(g, h);
  return emit("quotient", "Quotient",
              json{{"projection", vecs_json(q.projection)}, {"group", payload_json(DocValue{q.group})}});
}

int cmd_find_state(const std::string& gp, const std::string& h1p, const std::string& h2p) {
  auto g = load_group(gp);
  auto h1 = load_subgroup(h1p, g.dim);
  auto h2 = load_generators(h2p, g.dim);
  ctx.step("ordgrp.find_state");
  auto r = find_state(g, h1, h2);
  if (r.state) return emit("find-state", "State", json{{"state", vec_json(r.state->functional)}});
  return emit("find-state", "Infeasible", json{{"farkas", vec_json(r.farkas)}});
}

int cmd_infinitesimals(const std::string& gp) {
  auto g = load_group(gp);
  ctx.step("ordgrp.infinitesimals");
  auto h = infinitesimals(g);
  return emit("infinitesimals", "Infinitesimals", json{{"basis", vecs_json(h.basis())}});
}

int cmd_maximalize(const std::string& gp, const std::string& hp) {
  auto g = load_group(gp);
  auto h = load_subgroup(hp, g.dim);
  ctx.step("ordgrp.maximalize");
  auto r = maximalize(g, h);
  return emit("maximalize", r.maximal ? "Maximal" : "BestEffort", json{{"basis", vecs_json(r.subgroup.basis())}});
}

int cmd_totalize(const std::string& gp, const std::string& sp, const std::string& tp, bool reverse) {
  auto g = load_group(gp);
  auto tau = load_state(sp, g.dim);
  auto tb = load_generators(tp, g.dim);
  ctx.step("totalize.totalize_with_state");
  auto t = totalize_with_state(g, tau, tb, reverse);
  json values = json::array();
  for (const auto& v : t.generator_values) values.push_back(rat_json(v));
  return emit("totalize", "Total",
              json{{"group", payload_json(DocValue{t.group})},
                   {"tiebreak", vecs_json(t.tiebreak)},
                   {"generator_values", values}});
}

int cmd_placements(const std::string& gp, const std::string& sp, const std::string& xp, const std::string& tp) {
  auto g = load_group(gp);
  auto tau = load_state(sp, g.dim);
  auto x = load_element(xp, g.dim);
  auto tb = load_generators(tp, g.dim);
  ctx.step("totalize.placements");
  auto r = placements(g, tau, tb, x);
  return emit("placements", "Placed",
              json{{"sign_forward", to_string(r.sign_forward)},
                   {"sign_reverse", to_string(r.sign_reverse)},
                   {"sign_quotient", to_string(r.sign_quotient)},
                   {"forward_values", vec_json(r.forward_values)},
                   {"reverse_values", vec_json(r.reverse_values)},
                   {"quotient_image", vec_json(r.quotient_image)}});
}

int cmd_doubling(const std::string& gp, const std::string& sp, const std::string& tp) {
  auto g = load_group(gp);
  auto tau = load_state(sp, g.dim);
  auto tb = load_generators(tp, g.dim);
  ctx.step("totalize.doubling");
  auto d = doubling(g, tau, tb);
  return emit("doubling", "Doubled",
              json{{"group", payload_json(DocValue{d.group})}, {"diagonal", vecs_json(d.diagonal)}});
}

int cmd_faithful_kill(const std::string& gp, const std::string& xp, const std::string& strict) {
  auto g = load_group(gp);
  auto x = load_element(xp, g.dim);
  auto set = strict.empty() ? default_strict_set(g) : load_generators(strict, g.dim);
  ctx.step("totalize.faithful_kill_check");
  auto r = faithful_kill_check(g, x, set);
  if (r.killable) return emit("faithful-kill", "Killable", json{{"state", vec_json(r.state->functional)}});
  json data = json::object();
  if (r.blocking) data["blocking"] = vec_json(*r.blocking);
  return emit("faithful-kill", "NotKillable", data);
}

int cmd_kill(const std::string& sp, const std::string& hp, std::uint64_t seed, std::size_t samples,
             bool no_maximalize, const std::string& out) {
  auto summands = expect<std::vector<SummandSpec>>(read_document(sp), DocKind::Summands);
  std::size_t dim = 0;
  for (const auto& s : summands) dim += s.group.dim;
  auto h = load_subgroup(hp, dim);
  ctx.step("killing.kill_pipeline");
  auto r = kill_pipeline(summands, h, KillOptions{seed, samples, !no_maximalize});
  std::string text = serialize(Document{r.certificate});
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) throw MalformedInput("cannot write '" + out + "'");
  f << text;
  return emit("kill", r.certificate.verdict, json{{"certificate", out}, {"extended", r.extended}});
}

int cmd_verify(const std::string& cp) {
  auto cert = expect<KillCertificate>(read_document(cp), DocKind::KillCertificate);
  ctx.step("certificate.verify_certificate");
  auto r = verify_certificate(cert);
  if (r.ok) return emit("verify", "OK", json::object());
  return emit("verify", "REJECTED", json{{"location", r.location}}, 1);
}

int cmd_nccc_validate(const std::string& dp) {
  auto d = load_descriptor(dp);
  ctx.step("nccc.validate");
  auto diags = validate(d);
  if (diags.empty()) return emit("nccc validate", "Valid", json::object());
  json list = json::array();
  for (const auto& dg : diags) list.push_back(json{{"cell", dg.cell}, {"residual", dg.residual}, {"message", dg.message}});
  for (const auto& dg : diags) std::cerr << "cell " << dg.cell << ": " << dg.message << "\n";
  return emit("nccc validate", "Invalid", json{{"diagnostics", list}}, 1);
}

int cmd_nccc_reduce(const std::string& dp, const std::string& cp, const std::string& sgp, bool brute) {
  auto d = load_descriptor(dp);
  auto y = load_class(cp);
  auto s = load_s(sgp, d.coords());
  ctx.step(brute ? "oracle.brute_reduce" : "nccc.reduce");
  auto r = brute ? brute_reduce(d, s, y) : reduce(d, s, y);
  return emit(brute ? "oracle reduce" : "nccc reduce", "Reduced", reduction_json(r));
}

int cmd_nccc_classify(const std::string& dp, const std::string& cp, const std::string& sgp) {
  auto d = load_descriptor(dp);
  auto y = load_class(cp);
  auto s = load_s(sgp, d.coords());
  ctx.step("nccc.classify");
  auto c = classify(d, s, y);
  json data{{"witness", c.witness},
            {"dimension", c.dimension},
            {"rank_threshold_met", c.rank_threshold_met},
            {"split", split_json(c.split)}};
  if (c.reduction) data["case_trace"] = reduction_json(*c.reduction)["case_trace"];
  return emit("nccc classify", to_string(c.verdict), data);
}

int cmd_nccc_census(const std::string& dp, const std::vector<std::string>& cps, const std::string& sgp, long box) {
  auto d = load_descriptor(dp);
  auto s = load_s(sgp, d.coords());
  std::vector<RankClass> ys;
  for (const auto& p : cps) ys.push_back(load_class(p));
  if (cps.empty()) {
    if (box < 0) throw PreconditionError("census: --box must be nonnegative");
    std::vector<LongVec> pts{LongVec{}};
    for (std::size_t c = 0; c < d.coords(); ++c) {
      std::vector<LongVec> next;
      for (const auto& p : pts) {
        for (long v = 0; v <= box; ++v) {
          next.push_back(p);
          next.back().push_back(v);
        }
      }
      pts = std::move(next);
    }
    for (auto& p : pts) ys.push_back(RankClass{std::move(p), {}});
  }
  ctx.step("nccc.finiteness_census");
  auto c = finiteness_census(d, ys, s);
  return emit("nccc census", c.within_bound() ? "WithinBound" : "ExceedsBound",
              json{{"classes", c.classes},
                   {"skipped", c.skipped},
                   {"distinct_descriptors", c.distinct_descriptors},
                   {"distinct_rank_maps", c.distinct_rank_maps},
                   {"bound", c.bound}});
}

int cmd_oracle_membership(const std::string& gp, GridSpec grid) {
  auto g = load_group(gp);
  grid.dim = g.dim;
  ctx.step("oracle.brute_membership");
  std::size_t members = 0;
  json mismatches = json::array();
  for (const auto& [p, in] : brute_membership(g.cone, grid)) {
    members += in;
    if (in != in_cone(g.cone, p)) mismatches.push_back(vec_json(p));
  }
  return emit("oracle membership", mismatches.empty() ? "Agree" : "Disagree",
              json{{"points", grid_points(grid).size()}, {"members", members}, {"mismatches", mismatches}});
}

int cmd_oracle_phi(const std::string& qp, const std::string& np, const std::string& xp, long k_max, long coeff) {
  auto q = load_group(qp);
  auto negs = load_generators(np, q.dim);
  auto x = load_element(xp, q.dim);
  ctx.step("oracle.brute_phi");
  return emit("oracle phi", to_string(brute_phi(q, negs, x, k_max, coeff)), json::object());
}

int cmd_oracle_infinitesimal(const std::string& gp, const std::string& xp, long n_max) {
  auto g = load_group(gp);
  auto x = load_element(xp, g.dim);
  ctx.step("oracle.brute_infinitesimal");
  bool inf = brute_infinitesimal(g, x, n_max);
  return emit("oracle infinitesimal", inf ? "Infinitesimal" : "NotInfinitesimal", json{{"n_max", n_max}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k0bench: exact computations on scaled ordered groups and cell-complex rank classes"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", ctx.json_out, "print a report document instead of text");
  app.add_flag("--refs", ctx.refs, "list the library operation behind each executed step");

  int code = 0;
  std::function<int()> action;
  auto bind = [&](CLI::App* sub, std::function<int()> f) { sub->callback([&action, f] { action = f; }); };

  std::string a, b, c, opt, s_gens;
  std::vector<std::string> classes;
  bool flag = false;
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  long box = 2, k_max = 25, coeff = 3, n_max = 50;
  GridSpec grid;

  auto* cs = app.add_subcommand("check-singular", "test span(H) n G^+ = {0}");
  cs->add_option("GROUP", a)->required();
  cs->add_option("SUBGROUP", b)->required();
  bind(cs, [&] { return cmd_check_singular(a, b); });

  auto* qu = app.add_subcommand("quotient", "quotient order modulo a singular subgroup");
  qu->add_option("GROUP", a)->required();
  qu->add_option("SUBGROUP", b)->required();
  bind(qu, [&] { return cmd_quotient(a, b); });

  auto* fs = app.add_subcommand("find-state", "state vanishing on H1 and nonnegative on H2");
  fs->add_option("GROUP", a)->required();
  fs->add_option("H1", b)->required();
  fs->add_option("H2", c);
  bind(fs, [&] { return cmd_find_state(a, b, c); });

  auto* in = app.add_subcommand("infinitesimals", "basis of the infinitesimal subgroup");
  in->add_option("GROUP", a)->required();
  bind(in, [&] { return cmd_infinitesimals(a); });

  auto* mx = app.add_subcommand("maximalize", "enlarge to a maximal singular subgroup");
  mx->add_option("GROUP", a)->required();
  mx->add_option("SUBGROUP", b)->required();
  bind(mx, [&] { return cmd_maximalize(a, b); });

  auto* to = app.add_subcommand("totalize", "lexicographic total order along a faithful state");
  to->add_option("GROUP", a)->required();
  to->add_option("STATE", b)->required();
  to->add_option("--tiebreak", opt, "subgroup document with the kernel basis, in order");
  to->add_flag("--reverse", flag);
  bind(to, [&] { return cmd_totalize(a, b, opt, flag); });

  auto* pl = app.add_subcommand("placements", "signs of x in the forward, reversed and quotient orders");
  pl->add_option("GROUP", a)->required();
  pl->add_option("STATE", b)->required();
  pl->add_option("X", c)->required();
  pl->add_option("--tiebreak", opt);
  bind(pl, [&] { return cmd_placements(a, b, c, opt); });

  auto* db = app.add_subcommand("doubling", "forward (+) reversed total order with the diagonal map");
  db->add_option("GROUP", a)->required();
  db->add_option("STATE", b)->required();
  db->add_option("--tiebreak", opt);
  bind(db, [&] { return cmd_doubling(a, b, opt); });

  auto* fk = app.add_subcommand("faithful-kill", "state killing x and faithful on a strict set");
  fk->add_option("GROUP", a)->required();
  fk->add_option("X", b)->required();
  fk->add_option("--strict-set", opt, "subgroup document listing the strict set");
  bind(fk, [&] { return cmd_faithful_kill(a, b, opt); });

  auto* ki = app.add_subcommand("kill", "run the direct-sum killing pipeline and emit a certificate");
  ki->add_option("SUMMANDS", a)->required();
  ki->add_option("SUBGROUP", b)->required();
  ki->add_option("--seed", seed);
  ki->add_option("--samples", samples);
  ki->add_flag("--no-maximalize", flag, "fail instead of enlarging a non-maximal subgroup");
  ki->add_option("--out", opt, "write the certificate here and print a summary");
  bind(ki, [&] { return cmd_kill(a, b, seed, samples, flag, opt); });

  auto* ve = app.add_subcommand("verify", "replay a kill certificate");
  ve->add_option("CERT", a)->required();
  bind(ve, [&] { return cmd_verify(a); });

  auto* nc = app.add_subcommand("nccc", "rank calculus on cell-complex descriptors");
  nc->require_subcommand(1);
  auto* nv = nc->add_subcommand("validate", "check unitality of every cell");
  nv->add_option("DESC", a)->required();
  bind(nv, [&] { return cmd_nccc_validate(a); });
  auto* nr = nc->add_subcommand("reduce", "reduce a rank class");
  nr->add_option("DESC", a)->required();
  nr->add_option("CLASS", b)->required();
  nr->add_option("--s-gens", s_gens, "integer subgroup document with the S generators");
  bind(nr, [&] { return cmd_nccc_reduce(a, b, s_gens, false); });
  auto* nk = nc->add_subcommand("classify", "classify a rank class");
  nk->add_option("DESC", a)->required();
  nk->add_option("CLASS", b)->required();
  nk->add_option("--s-gens", s_gens);
  bind(nk, [&] { return cmd_nccc_classify(a, b, s_gens); });
  auto* ns = nc->add_subcommand("census", "count reduced descriptors and rank maps");
  ns->add_option("DESC", a)->required();
  ns->add_option("CLASS", classes, "rank classes; default is the box {0..N}^coords");
  ns->add_option("--s-gens", s_gens);
  ns->add_option("--box", box, "N for the default box");
  bind(ns, [&] { return cmd_nccc_census(a, classes, s_gens, box); });

  auto* orc = app.add_subcommand("oracle", "brute-force recomputation");
  orc->require_subcommand(1);
  auto* om = orc->add_subcommand("membership", "definitional cone membership on a grid");
  om->add_option("GROUP", a)->required();
  om->add_option("--den", grid.den_bound);
  om->add_option("--bound", grid.coord_bound);
  om->add_option("--samples", grid.samples);
  om->add_option("--seed", grid.seed);
  bind(om, [&] { return cmd_oracle_membership(a, grid); });
  auto* op = orc->add_subcommand("phi", "bounded sign search in a quotient");
  op->add_option("QUOTIENT", a)->required();
  op->add_option("NEG", b, "subgroup document listing the neg cone generators")->required();
  op->add_option("X", c)->required();
  op->add_option("--kmax", k_max);
  op->add_option("--coeff", coeff);
  bind(op, [&] { return cmd_oracle_phi(a, b, c, k_max, coeff); });
  auto* oi = orc->add_subcommand("infinitesimal", "u + n x sweep");
  oi->add_option("GROUP", a)->required();
  oi->add_option("X", b)->required();
  oi->add_option("--nmax", n_max);
  bind(oi, [&] { return cmd_oracle_infinitesimal(a, b, n_max); });
  auto* orr = orc->add_subcommand("reduce", "reduction by literal case matching");
  orr->add_option("DESC", a)->required();
  orr->add_option("CLASS", b)->required();
  orr->add_option("--s-gens", s_gens);
  bind(orr, [&] { return cmd_nccc_reduce(a, b, s_gens, true); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }
  try {
    code = action();
  } catch (const MalformedInput& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return 2;
  } catch (const DimensionMismatch& e) {
    std::cerr << "malformed input: dimension mismatch: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 1;
  }
  std::cout.flush();
  return code;
}
