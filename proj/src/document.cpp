#include "k0bench/document.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace k0bench {

using nlohmann::json;

const char* to_string(DocKind k) {
  switch (k) {
    case DocKind::Group:
      return "group";
    case DocKind::Subgroup:
      return "subgroup";
    case DocKind::State:
      return "state";
    case DocKind::Summands:
      return "summands";
    case DocKind::KillCertificate:
      return "kill-certificate";
    case DocKind::NcccDescriptor:
      return "nccc-descriptor";
    case DocKind::RankClass:
      return "rank-class";
    case DocKind::Report:
      return "report";
  }
  return "?";
}

namespace {

constexpr DocKind kAllKinds[] = {DocKind::Group,           DocKind::Subgroup,       DocKind::State,
                                 DocKind::Summands,        DocKind::KillCertificate, DocKind::NcccDescriptor,
                                 DocKind::RankClass,       DocKind::Report};

json long_vec_json(const LongVec& v) { return json(v); }

json ints_json(const std::vector<int>& v) { return json(v); }

json group_payload(const ScaledOrderedGroup& g) {
  return json{{"dim", g.dim}, {"cone", cone_json(g.cone)}, {"unit", vec_json(g.unit)}};
}

json summand_record_json(const SummandRecord& s) {
  return json{{"flavor", to_string(s.flavor)},
              {"dim", s.dim},
              {"generators", vecs_json(s.generators)},
              {"unit", vec_json(s.unit)},
              {"zero_basis", vecs_json(s.zero_basis)},
              {"projection", vecs_json(s.projection)},
              {"quotient_generators", vecs_json(s.quotient_generators)},
              {"quotient_unit", vec_json(s.quotient_unit)},
              {"neg_generators", vecs_json(s.neg_generators)},
              {"tau", vec_json(s.tau)},
              {"faithful", s.faithful},
              {"tau_bar", vec_json(s.tau_bar)},
              {"sign_cone_generators", vecs_json(s.sign_cone_generators)}};
}

json certificate_json(const KillCertificate& c) {
  json summands = json::array();
  for (const auto& s : c.summands) summands.push_back(summand_record_json(s));
  json samples = json::array();
  for (const auto& s : c.samples) samples.push_back(json{{"element", vec_json(s.element)}, {"phi", ints_json(s.phi)}});
  const auto& f = c.claims;
  return json{{"tool_version", c.tool_version},
              {"input_digest", c.input_digest},
              {"seed", c.seed},
              {"sample_count", c.sample_count},
              {"summands", summands},
              {"input_generators", vecs_json(c.input_generators)},
              {"input_integral", c.input_integral},
              {"maximal_basis", vecs_json(c.maximal_basis)},
              {"image_basis", vecs_json(c.image_basis)},
              {"samples", samples},
              {"claims",
               {{"claim1", f.claim1},
                {"neg_pos", f.neg_pos},
                {"claim2", f.claim2},
                {"sign_laws", f.sign_laws},
                {"claim6", f.claim6},
                {"claim7", f.claim7},
                {"claim8", f.claim8}}},
              {"verdict", c.verdict}};
}

// ---- decoding ----

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw MalformedInput(where + ": " + what);
}

const json& object_with(const json& j, const std::string& where, std::initializer_list<const char*> required,
                        std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) bad(where, "expected an object");
  std::set<std::string> known;
  for (const char* k : required) {
    known.insert(k);
    if (!j.contains(k)) bad(where, std::string("missing field '") + k + "'");
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) bad(where, "unknown field '" + item.key() + "'");
  }
  return j;
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

bool get_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) bad(where, "expected a boolean");
  return j.get<bool>();
}

long get_long(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<long>();
}

std::size_t get_size(const json& j, const std::string& where) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<long>() < 0)) {
    bad(where, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::uint64_t get_u64(const json& j, const std::string& where) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<long>() < 0)) {
    bad(where, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

const json& get_array(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  return j;
}

Rat get_rat(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a rational string \"p/q\"");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const MalformedInput& e) {
    bad(where, e.what());
  }
}

RatVec get_vec(const json& j, const std::string& where) {
  RatVec v;
  std::size_t i = 0;
  for (const auto& x : get_array(j, where)) v.push_back(get_rat(x, where + "[" + std::to_string(i++) + "]"));
  return v;
}

std::vector<RatVec> get_vecs(const json& j, const std::string& where, std::optional<std::size_t> len = {}) {
  std::vector<RatVec> vs;
  std::size_t i = 0;
  for (const auto& x : get_array(j, where)) {
    std::string w = where + "[" + std::to_string(i++) + "]";
    vs.push_back(get_vec(x, w));
    if (len && vs.back().size() != *len) bad(w, "expected length " + std::to_string(*len));
  }
  return vs;
}

LongVec get_long_vec(const json& j, const std::string& where) {
  LongVec v;
  std::size_t i = 0;
  for (const auto& x : get_array(j, where)) v.push_back(get_long(x, where + "[" + std::to_string(i++) + "]"));
  return v;
}

std::vector<int> get_int_vec(const json& j, const std::string& where) {
  std::vector<int> v;
  for (long x : get_long_vec(j, where)) v.push_back(static_cast<int>(x));
  return v;
}

Cone get_cone(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("type")) bad(where, "expected a cone object with a 'type'");
  std::string type = get_string(j.at("type"), where + ".type");
  if (type == "fingen") {
    object_with(j, where, {"type", "dim", "generators"});
    std::size_t dim = get_size(j.at("dim"), where + ".dim");
    return Cone::fingen(get_vecs(j.at("generators"), where + ".generators", dim), dim);
  }
  if (type == "lex") {
    object_with(j, where, {"type", "dim", "functionals", "tail"});
    std::size_t dim = get_size(j.at("dim"), where + ".dim");
    std::string tail = get_string(j.at("tail"), where + ".tail");
    if (tail != "zero" && tail != "kernel") bad(where + ".tail", "expected \"zero\" or \"kernel\"");
    return Cone::lex(get_vecs(j.at("functionals"), where + ".functionals", dim),
                     tail == "zero" ? LexTail::ZeroOnly : LexTail::AllOfKernel, dim);
  }
  if (type == "sum") {
    object_with(j, where, {"type", "parts"});
    std::vector<Cone> parts;
    std::size_t i = 0;
    for (const auto& p : get_array(j.at("parts"), where + ".parts")) {
      parts.push_back(get_cone(p, where + ".parts[" + std::to_string(i++) + "]"));
    }
    return Cone::direct_sum(std::move(parts));
  }
  bad(where + ".type", "unknown cone type '" + type + "'");
}

ScaledOrderedGroup get_group(const json& j, const std::string& where) {
  object_with(j, where, {"dim", "cone", "unit"});
  std::size_t dim = get_size(j.at("dim"), where + ".dim");
  Cone cone = get_cone(j.at("cone"), where + ".cone");
  RatVec unit = get_vec(j.at("unit"), where + ".unit");
  if (cone.dim != dim) bad(where + ".cone", "dimension differs from group dimension");
  if (unit.size() != dim) bad(where + ".unit", "expected length " + std::to_string(dim));
  return make_group(std::move(cone), std::move(unit));
}

Subgroup get_subgroup(const json& j, const std::string& where) {
  object_with(j, where, {"dim", "span", "generators"});
  std::size_t dim = get_size(j.at("dim"), where + ".dim");
  std::string span = get_string(j.at("span"), where + ".span");
  auto gens = get_vecs(j.at("generators"), where + ".generators", dim);
  if (span == "Q") return Subgroup::qspan(gens, dim);
  if (span == "Z") return Subgroup::zspan(std::move(gens), dim);
  bad(where + ".span", "expected \"Q\" or \"Z\"");
}

Flavor get_flavor(const json& j, const std::string& where) {
  std::string s = get_string(j, where);
  if (s == to_string(Flavor::EClass)) return Flavor::EClass;
  if (s == to_string(Flavor::AFClass)) return Flavor::AFClass;
  bad(where, "unknown flavor '" + s + "'");
}

SummandRecord get_summand_record(const json& j, const std::string& w) {
  object_with(j, w,
              {"flavor", "dim", "generators", "unit", "zero_basis", "projection", "quotient_generators",
               "quotient_unit", "neg_generators", "tau", "faithful", "tau_bar", "sign_cone_generators"});
  SummandRecord s;
  s.flavor = get_flavor(j.at("flavor"), w + ".flavor");
  s.dim = get_size(j.at("dim"), w + ".dim");
  s.generators = get_vecs(j.at("generators"), w + ".generators");
  s.unit = get_vec(j.at("unit"), w + ".unit");
  s.zero_basis = get_vecs(j.at("zero_basis"), w + ".zero_basis");
  s.projection = get_vecs(j.at("projection"), w + ".projection");
  s.quotient_generators = get_vecs(j.at("quotient_generators"), w + ".quotient_generators");
  s.quotient_unit = get_vec(j.at("quotient_unit"), w + ".quotient_unit");
  s.neg_generators = get_vecs(j.at("neg_generators"), w + ".neg_generators");
  s.tau = get_vec(j.at("tau"), w + ".tau");
  s.faithful = get_bool(j.at("faithful"), w + ".faithful");
  s.tau_bar = get_vec(j.at("tau_bar"), w + ".tau_bar");
  s.sign_cone_generators = get_vecs(j.at("sign_cone_generators"), w + ".sign_cone_generators");
  return s;
}

KillCertificate get_certificate(const json& j, const std::string& w) {
  object_with(j, w,
              {"tool_version", "input_digest", "seed", "sample_count", "summands", "input_generators",
               "input_integral", "maximal_basis", "image_basis", "samples", "claims", "verdict"});
  KillCertificate c;
  c.tool_version = get_string(j.at("tool_version"), w + ".tool_version");
  c.input_digest = get_string(j.at("input_digest"), w + ".input_digest");
  c.seed = get_u64(j.at("seed"), w + ".seed");
  c.sample_count = get_size(j.at("sample_count"), w + ".sample_count");
  std::size_t i = 0;
  for (const auto& s : get_array(j.at("summands"), w + ".summands")) {
    c.summands.push_back(get_summand_record(s, w + ".summands[" + std::to_string(i++) + "]"));
  }
  c.input_generators = get_vecs(j.at("input_generators"), w + ".input_generators");
  c.input_integral = get_bool(j.at("input_integral"), w + ".input_integral");
  c.maximal_basis = get_vecs(j.at("maximal_basis"), w + ".maximal_basis");
  c.image_basis = get_vecs(j.at("image_basis"), w + ".image_basis");
  i = 0;
  for (const auto& s : get_array(j.at("samples"), w + ".samples")) {
    std::string ws = w + ".samples[" + std::to_string(i++) + "]";
    object_with(s, ws, {"element", "phi"});
    c.samples.push_back(SampleRecord{get_vec(s.at("element"), ws + ".element"), get_int_vec(s.at("phi"), ws + ".phi")});
  }
  const json& f = object_with(j.at("claims"), w + ".claims",
                              {"claim1", "neg_pos", "claim2", "sign_laws", "claim6", "claim7", "claim8"});
  c.claims.claim1 = get_bool(f.at("claim1"), w + ".claims.claim1");
  c.claims.neg_pos = get_bool(f.at("neg_pos"), w + ".claims.neg_pos");
  c.claims.claim2 = get_bool(f.at("claim2"), w + ".claims.claim2");
  c.claims.sign_laws = get_bool(f.at("sign_laws"), w + ".claims.sign_laws");
  c.claims.claim6 = get_bool(f.at("claim6"), w + ".claims.claim6");
  c.claims.claim7 = get_bool(f.at("claim7"), w + ".claims.claim7");
  c.claims.claim8 = get_bool(f.at("claim8"), w + ".claims.claim8");
  c.verdict = get_string(j.at("verdict"), w + ".verdict");
  return c;
}

NcccDescriptor get_descriptor(const json& j, const std::string& w) {
  object_with(j, w, {"blocks", "cells"});
  NcccDescriptor d;
  d.blocks = get_long_vec(j.at("blocks"), w + ".blocks");
  std::size_t i = 0;
  for (const auto& c : get_array(j.at("cells"), w + ".cells")) {
    std::string wc = w + ".cells[" + std::to_string(i++) + "]";
    object_with(c, wc, {"n", "r", "mult"});
    d.cells.push_back(Cell{get_long(c.at("n"), wc + ".n"), get_long(c.at("r"), wc + ".r"),
                           get_long_vec(c.at("mult"), wc + ".mult")});
  }
  return d;
}

DocValue get_payload(DocKind kind, const json& p) {
  const std::string w = "payload";
  switch (kind) {
    case DocKind::Group:
      return get_group(p, w);
    case DocKind::Subgroup:
      return get_subgroup(p, w);
    case DocKind::State:
      object_with(p, w, {"functional"});
      return State{get_vec(p.at("functional"), w + ".functional")};
    case DocKind::Summands: {
      object_with(p, w, {"summands"});
      std::vector<SummandSpec> out;
      std::size_t i = 0;
      for (const auto& s : get_array(p.at("summands"), w + ".summands")) {
        std::string ws = w + ".summands[" + std::to_string(i++) + "]";
        object_with(s, ws, {"flavor", "group"});
        out.push_back(make_summand(get_group(s.at("group"), ws + ".group"), get_flavor(s.at("flavor"), ws + ".flavor")));
      }
      return out;
    }
    case DocKind::KillCertificate:
      return get_certificate(p, w);
    case DocKind::NcccDescriptor:
      return get_descriptor(p, w);
    case DocKind::RankClass: {
      object_with(p, w, {"y"}, {"s_membership"});
      RankClass rc{get_long_vec(p.at("y"), w + ".y"), {}};
      if (p.contains("s_membership")) rc.s_membership = get_long_vec(p.at("s_membership"), w + ".s_membership");
      return rc;
    }
    case DocKind::Report:
      object_with(p, w, {"command", "verdict", "data"});
      if (!p.at("data").is_object()) bad(w + ".data", "expected an object");
      return Report{get_string(p.at("command"), w + ".command"), get_string(p.at("verdict"), w + ".verdict"),
                    p.at("data")};
  }
  bad(w, "unsupported kind");
}

}  // namespace

json rat_json(const Rat& q) { return to_string(q); }

json vec_json(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rat_json(x));
  return a;
}

json vecs_json(const std::vector<RatVec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vec_json(v));
  return a;
}

json cone_json(const Cone& c) {
  switch (c.kind) {
    case ConeKind::FinGen:
      return json{{"type", "fingen"}, {"dim", c.dim}, {"generators", vecs_json(c.generators)}};
    case ConeKind::Lex:
      return json{{"type", "lex"},
                  {"dim", c.dim},
                  {"functionals", vecs_json(c.functionals)},
                  {"tail", c.tail == LexTail::ZeroOnly ? "zero" : "kernel"}};
    case ConeKind::DirectSum: {
      json parts = json::array();
      for (const auto& p : c.parts) parts.push_back(cone_json(p));
      return json{{"type", "sum"}, {"parts", parts}};
    }
  }
  return {};
}

json payload_json(const DocValue& v) {
  struct Visitor {
    json operator()(const ScaledOrderedGroup& g) const { return group_payload(g); }
    json operator()(const Subgroup& h) const {
      return json{{"dim", h.dim}, {"span", h.kind == SpanKind::QSpan ? "Q" : "Z"}, {"generators", vecs_json(h.generators)}};
    }
    json operator()(const State& s) const { return json{{"functional", vec_json(s.functional)}}; }
    json operator()(const std::vector<SummandSpec>& ss) const {
      json a = json::array();
      for (const auto& s : ss) a.push_back(json{{"flavor", to_string(s.flavor)}, {"group", group_payload(s.group)}});
      return json{{"summands", a}};
    }
    json operator()(const KillCertificate& c) const { return certificate_json(c); }
    json operator()(const NcccDescriptor& d) const {
      json cells = json::array();
      for (const auto& c : d.cells) cells.push_back(json{{"n", c.n}, {"r", c.r}, {"mult", long_vec_json(c.mult)}});
      return json{{"blocks", long_vec_json(d.blocks)}, {"cells", cells}};
    }
    json operator()(const RankClass& rc) const {
      json j{{"y", long_vec_json(rc.y)}};
      if (rc.s_membership) j["s_membership"] = long_vec_json(*rc.s_membership);
      return j;
    }
    json operator()(const Report& r) const {
      return json{{"command", r.command}, {"verdict", r.verdict}, {"data", r.data}};
    }
  };
  return std::visit(Visitor{}, v);
}

json to_json(const Document& doc) {
  return json{{"kind", to_string(doc.kind())}, {"version", kDocumentVersion}, {"payload", payload_json(doc.value)}};
}

std::string serialize(const Document& doc) { return to_json(doc).dump(2) + "\n"; }

Document from_json(const json& j) {
  object_with(j, "document", {"kind", "version", "payload"});
  std::string kind = get_string(j.at("kind"), "kind");
  if (!j.at("version").is_number_integer() || j.at("version").get<long>() != kDocumentVersion) {
    bad("version", "unsupported document version (expected " + std::to_string(kDocumentVersion) + ")");
  }
  for (DocKind k : kAllKinds) {
    if (kind == to_string(k)) return Document{get_payload(k, j.at("payload"))};
  }
  bad("kind", "unknown document kind '" + kind + "'");
}

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
  return from_json(j);
}

Document read_document(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open '" + path + "'");
    buf << in.rdbuf();
  }
  try {
    return parse_document(buf.str());
  } catch (const MalformedInput& e) {
    throw MalformedInput(path + ": " + e.what());
  }
}

}  // namespace k0bench
