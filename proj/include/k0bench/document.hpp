#pragma once
// Versioned JSON documents for every data type the CLI reads or writes.

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "k0bench/certificate.hpp"
#include "k0bench/killing.hpp"
#include "k0bench/nccc.hpp"
#include "k0bench/ordgrp.hpp"

namespace k0bench {

inline constexpr int kDocumentVersion = 1;

enum class DocKind { Group, Subgroup, State, Summands, KillCertificate, NcccDescriptor, RankClass, Report };

const char* to_string(DocKind k);

struct Report {
  std::string command;
  std::string verdict;
  nlohmann::json data = nlohmann::json::object();
  bool operator==(const Report&) const = default;
};

using DocValue = std::variant<ScaledOrderedGroup, Subgroup, State, std::vector<SummandSpec>, KillCertificate,
                              NcccDescriptor, RankClass, Report>;

struct Document {
  DocValue value;
  DocKind kind() const { return static_cast<DocKind>(value.index()); }
};

// Payload encoders. Rationals become "p/q" strings.
nlohmann::json rat_json(const Rat& q);
nlohmann::json vec_json(const RatVec& v);
nlohmann::json vecs_json(const std::vector<RatVec>& vs);
nlohmann::json cone_json(const Cone& c);
nlohmann::json payload_json(const DocValue& v);

nlohmann::json to_json(const Document& doc);
std::string serialize(const Document& doc);  // pretty-printed, trailing newline

// Throws MalformedInput for syntax, unknown fields, wrong kind or version; PreconditionError
// when a well-formed group or summand violates its invariants.
Document from_json(const nlohmann::json& j);
Document parse_document(const std::string& text);
Document read_document(const std::string& path);  // "-" reads standard input

// Typed access; MalformedInput naming the expected kind otherwise.
template <class T>
const T& expect(const Document& doc, DocKind kind) {
  if (doc.kind() != kind) {
    throw MalformedInput(std::string("expected a ") + to_string(kind) + " document, got " + to_string(doc.kind()));
  }
  return std::get<T>(doc.value);
}

}  // namespace k0bench
