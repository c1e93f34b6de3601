#ifndef CWKIT_IO_HPP
#define CWKIT_IO_HPP

// Problem documents (JSON in) and reports (JSON or text out).

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cwkit {

using Json = nlohmann::ordered_json;

struct OrientationSpec {
  std::vector<std::string> generators;
  std::optional<std::vector<std::string>> ideal;
  friend bool operator==(const OrientationSpec&, const OrientationSpec&) = default;
};

struct BoundarySpec {
  int sign = 1;  // witnesses only
  std::vector<std::string> g;
  std::vector<std::string> form;
  std::string t;
  std::optional<std::vector<std::vector<std::string>>> decomposition;
  friend bool operator==(const BoundarySpec&, const BoundarySpec&) = default;
};

struct CycleTermSpec {
  std::vector<std::string> point;     // generators of the maximal ideal
  std::vector<std::string> form;      // entries in the residue field
  std::vector<std::string> negative;  // subtracted entries
  std::optional<long> multiplicity;   // defaults to rank(form) - rank(negative)
  friend bool operator==(const CycleTermSpec&, const CycleTermSpec&) = default;
};

struct WittSpec {
  std::optional<std::string> field;  // defaults to the ring's field
  std::vector<std::vector<std::string>> forms;
  std::optional<std::vector<std::vector<std::string>>> matrix;
  friend bool operator==(const WittSpec&, const WittSpec&) = default;
};

struct ProblemDocument {
  std::optional<std::string> command;
  std::optional<std::string> description;
  std::string field = "QQ";
  std::vector<std::string> variables;
  std::string order = "grevlex";
  std::optional<std::string> homotopy;
  std::optional<std::size_t> n;
  std::optional<OrientationSpec> orientation;
  std::optional<OrientationSpec> reference;
  std::vector<OrientationSpec> orientations;
  std::optional<std::vector<std::vector<std::string>>> decomposition;
  std::optional<BoundarySpec> boundary;
  std::vector<std::vector<CycleTermSpec>> cycles;
  std::vector<BoundarySpec> witnesses;
  std::optional<WittSpec> witt;
  friend bool operator==(const ProblemDocument&, const ProblemDocument&) = default;
};

/// Thrown for malformed documents; the message names the line/column or the
/// offending key.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ProblemDocument parse_document(const std::string& text);
ProblemDocument document_from_json(const Json& j);
Json document_to_json(const ProblemDocument& d);

const std::vector<std::string>& commands();

enum class Status { ok, rejected, unsupported, falsified, error };
std::string to_string(Status s);
/// 0 ok, 2 rejected, 3 unsupported, 4 falsified, 1 internal error.
int exit_code(Status s);

struct Report {
  std::string command;
  Status status = Status::ok;
  Json json;  // full report, including the timing block
};

/// Runs `command` (or the document's own command when empty) on the document
/// text. Never throws; failures become statuses.
Report run(const std::string& command, const std::string& document_text);

/// Report without the timing block, as compared by golden tests.
Json strip_timing(const Json& report);
std::string render_text(const Json& report);

}  // namespace cwkit

#endif  // CWKIT_IO_HPP
