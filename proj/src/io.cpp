#include "cwkit/io.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "cwkit/error.hpp"
#include "cwkit/gersten.hpp"

namespace cwkit {

// --- document parsing -------------------------------------------------------

namespace {

std::string where(const std::string& path) { return path.empty() ? "document" : path; }

void allow_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw SchemaError(where(path) + ": expected an object");
  const std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) throw SchemaError(where(path) + ": unknown key '" + k + "'");
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path + ": expected a string");
  return j.get<std::string>();
}

std::vector<std::string> get_strings(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_string(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<std::string>> get_string_rows(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array of arrays");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_strings(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

const Json& require(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) throw SchemaError(join(path, key) + ": missing required key");
  return j.at(key);
}

OrientationSpec orientation_from(const Json& j, const std::string& path) {
  allow_keys(j, path, {"generators", "ideal"});
  OrientationSpec o;
  o.generators = get_strings(require(j, path, "generators"), join(path, "generators"));
  if (j.contains("ideal")) o.ideal = get_strings(j["ideal"], join(path, "ideal"));
  return o;
}

BoundarySpec boundary_from(const Json& j, const std::string& path, bool witness) {
  if (witness)
    allow_keys(j, path, {"sign", "g", "form", "t", "decomposition"});
  else
    allow_keys(j, path, {"g", "form", "t", "decomposition"});
  BoundarySpec b;
  if (witness && j.contains("sign")) {
    if (!j["sign"].is_number_integer()) throw SchemaError(join(path, "sign") + ": expected 1 or -1");
    b.sign = j["sign"].get<int>();
    if (b.sign != 1 && b.sign != -1) throw SchemaError(join(path, "sign") + ": expected 1 or -1");
  }
  b.g = get_strings(require(j, path, "g"), join(path, "g"));
  b.form = j.contains("form") ? get_strings(j["form"], join(path, "form")) : std::vector<std::string>{"1"};
  b.t = get_string(require(j, path, "t"), join(path, "t"));
  if (j.contains("decomposition")) b.decomposition = get_string_rows(j["decomposition"], join(path, "decomposition"));
  return b;
}

CycleTermSpec term_from(const Json& j, const std::string& path) {
  allow_keys(j, path, {"point", "form", "negative", "multiplicity"});
  CycleTermSpec t;
  t.point = get_strings(require(j, path, "point"), join(path, "point"));
  if (j.contains("form")) t.form = get_strings(j["form"], join(path, "form"));
  if (j.contains("negative")) t.negative = get_strings(j["negative"], join(path, "negative"));
  if (j.contains("multiplicity")) {
    if (!j["multiplicity"].is_number_integer()) throw SchemaError(join(path, "multiplicity") + ": expected an integer");
    t.multiplicity = j["multiplicity"].get<long>();
  }
  return t;
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

ProblemDocument document_from_json(const Json& j) {
  allow_keys(j, "", {"command", "description", "ring", "n", "orientation", "reference", "orientations",
                     "decomposition", "boundary", "cycles", "witnesses", "witt"});
  ProblemDocument d;
  if (j.contains("command")) d.command = get_string(j["command"], "command");
  if (j.contains("description")) d.description = get_string(j["description"], "description");
  const Json& ring = require(j, "", "ring");
  allow_keys(ring, "ring", {"field", "variables", "order", "homotopy"});
  d.field = get_string(require(ring, "ring", "field"), "ring.field");
  if (ring.contains("variables")) d.variables = get_strings(ring["variables"], "ring.variables");
  if (ring.contains("order")) {
    d.order = get_string(ring["order"], "ring.order");
    if (d.order != "grevlex" && d.order != "lex") throw SchemaError("ring.order: expected 'grevlex' or 'lex'");
  }
  if (ring.contains("homotopy")) d.homotopy = get_string(ring["homotopy"], "ring.homotopy");
  if (j.contains("n")) {
    if (!j["n"].is_number_unsigned()) throw SchemaError("n: expected a positive integer");
    d.n = j["n"].get<std::size_t>();
  }
  if (j.contains("orientation")) d.orientation = orientation_from(j["orientation"], "orientation");
  if (j.contains("reference")) d.reference = orientation_from(j["reference"], "reference");
  if (j.contains("orientations")) {
    if (!j["orientations"].is_array()) throw SchemaError("orientations: expected an array");
    for (std::size_t i = 0; i < j["orientations"].size(); ++i)
      d.orientations.push_back(orientation_from(j["orientations"][i], "orientations[" + std::to_string(i) + "]"));
  }
  if (j.contains("decomposition")) d.decomposition = get_string_rows(j["decomposition"], "decomposition");
  if (j.contains("boundary")) d.boundary = boundary_from(j["boundary"], "boundary", false);
  if (j.contains("cycles")) {
    if (!j["cycles"].is_array()) throw SchemaError("cycles: expected an array");
    for (std::size_t c = 0; c < j["cycles"].size(); ++c) {
      const std::string p = "cycles[" + std::to_string(c) + "]";
      if (!j["cycles"][c].is_array()) throw SchemaError(p + ": expected an array of terms");
      std::vector<CycleTermSpec> terms;
      for (std::size_t i = 0; i < j["cycles"][c].size(); ++i)
        terms.push_back(term_from(j["cycles"][c][i], p + "[" + std::to_string(i) + "]"));
      d.cycles.push_back(std::move(terms));
    }
  }
  if (j.contains("witnesses")) {
    if (!j["witnesses"].is_array()) throw SchemaError("witnesses: expected an array");
    for (std::size_t i = 0; i < j["witnesses"].size(); ++i)
      d.witnesses.push_back(boundary_from(j["witnesses"][i], "witnesses[" + std::to_string(i) + "]", true));
  }
  if (j.contains("witt")) {
    const Json& w = j["witt"];
    allow_keys(w, "witt", {"field", "forms", "matrix"});
    WittSpec s;
    if (w.contains("field")) s.field = get_string(w["field"], "witt.field");
    if (w.contains("forms")) s.forms = get_string_rows(w["forms"], "witt.forms");
    if (w.contains("matrix")) s.matrix = get_string_rows(w["matrix"], "witt.matrix");
    d.witt = s;
  }
  return d;
}

ProblemDocument parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    const auto colon = msg.find(": ");
    throw SchemaError("JSON parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                      (colon == std::string::npos ? msg : msg.substr(colon + 2)));
  }
  return document_from_json(j);
}

namespace {

Json orientation_json(const OrientationSpec& o) {
  Json j;
  j["generators"] = o.generators;
  if (o.ideal) j["ideal"] = *o.ideal;
  return j;
}

Json boundary_json(const BoundarySpec& b, bool witness) {
  Json j;
  if (witness) j["sign"] = b.sign;
  j["g"] = b.g;
  j["form"] = b.form;
  j["t"] = b.t;
  if (b.decomposition) j["decomposition"] = *b.decomposition;
  return j;
}

}  // namespace

Json document_to_json(const ProblemDocument& d) {
  Json j;
  if (d.command) j["command"] = *d.command;
  if (d.description) j["description"] = *d.description;
  Json ring;
  ring["field"] = d.field;
  ring["variables"] = d.variables;
  ring["order"] = d.order;
  if (d.homotopy) ring["homotopy"] = *d.homotopy;
  j["ring"] = ring;
  if (d.n) j["n"] = *d.n;
  if (d.orientation) j["orientation"] = orientation_json(*d.orientation);
  if (d.reference) j["reference"] = orientation_json(*d.reference);
  if (!d.orientations.empty()) {
    j["orientations"] = Json::array();
    for (const auto& o : d.orientations) j["orientations"].push_back(orientation_json(o));
  }
  if (d.decomposition) j["decomposition"] = *d.decomposition;
  if (d.boundary) j["boundary"] = boundary_json(*d.boundary, false);
  if (!d.cycles.empty()) {
    j["cycles"] = Json::array();
    for (const auto& c : d.cycles) {
      Json terms = Json::array();
      for (const auto& t : c) {
        Json tj;
        tj["point"] = t.point;
        tj["form"] = t.form;
        if (!t.negative.empty()) tj["negative"] = t.negative;
        if (t.multiplicity) tj["multiplicity"] = *t.multiplicity;
        terms.push_back(tj);
      }
      j["cycles"].push_back(terms);
    }
  }
  if (!d.witnesses.empty()) {
    j["witnesses"] = Json::array();
    for (const auto& w : d.witnesses) j["witnesses"].push_back(boundary_json(w, true));
  }
  if (d.witt) {
    Json w;
    if (d.witt->field) w["field"] = *d.witt->field;
    w["forms"] = d.witt->forms;
    if (d.witt->matrix) w["matrix"] = *d.witt->matrix;
    j["witt"] = w;
  }
  return j;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"validate", "theta", "compare", "homotopy-check", "d1", "verify-difference",
                                          "witt"};
  return c;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::rejected: return "rejected";
    case Status::unsupported: return "unsupported";
    case Status::falsified: return "falsified";
    case Status::error: return "error";
  }
  return "error";
}

int exit_code(Status s) {
  switch (s) {
    case Status::ok: return 0;
    case Status::rejected: return 2;
    case Status::unsupported: return 3;
    case Status::falsified: return 4;
    case Status::error: return 1;
  }
  return 1;
}

// --- building mathematical objects from a document -------------------------

namespace {

struct Context {
  const ProblemDocument& doc;
  FieldPtr field;
  RingPtr ring;

  std::size_t n() const {
    if (!doc.n) throw SchemaError("n: missing required key");
    return *doc.n;
  }

  Polynomial poly(const std::string& s, const std::string& path) const {
    try {
      return parse_polynomial(ring, s);
    } catch (const InvalidArgument& e) {
      throw SchemaError(path + ": " + e.what());
    }
  }

  std::vector<Polynomial> polys(const std::vector<std::string>& v, const std::string& path) const {
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(poly(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

  LocalOrientation orientation(const OrientationSpec& o, const std::string& path) const {
    std::optional<std::vector<Polynomial>> ideal;
    if (o.ideal) ideal = polys(*o.ideal, path + ".ideal");
    return LocalOrientation::make(ring, n(), polys(o.generators, path + ".generators"), ideal);
  }

  std::optional<std::vector<Ideal>> primes(const std::optional<std::vector<std::vector<std::string>>>& d,
                                           const std::string& path) const {
    if (!d) return std::nullopt;
    std::vector<Ideal> out;
    for (std::size_t i = 0; i < d->size(); ++i)
      out.emplace_back(ring, polys((*d)[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }

  BoundaryDatum boundary(const BoundarySpec& b, const std::string& path) const {
    return {polys(b.g, path + ".g"), polys(b.form, path + ".form"), poly(b.t, path + ".t"),
            primes(b.decomposition, path + ".decomposition")};
  }

  CWCycle cycle(const std::vector<CycleTermSpec>& terms, const std::string& path) const {
    CWCycle c(ring, n());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string p = path + "[" + std::to_string(i) + "]";
      const auto& t = terms[i];
      const Point x = point_from_prime(Ideal(ring, polys(t.point, p + ".point")));
      auto parse_form = [&](const std::vector<std::string>& v, const std::string& q) {
        try {
          return DiagonalForm::parse(x.residue, v);
        } catch (const InvalidArgument& e) {
          throw SchemaError(q + ": " + e.what());
        }
      };
      const GWClass gw = GWClass(parse_form(t.form, p + ".form")) - GWClass(parse_form(t.negative, p + ".negative"));
      c.add(x, gw, t.multiplicity ? *t.multiplicity : gw.rank());
    }
    return c;
  }
};

Context make_context(const ProblemDocument& d) {
  FieldPtr f;
  try {
    f = parse_field(d.field);
  } catch (const InvalidArgument& e) {
    throw SchemaError(std::string("ring.field: ") + e.what());
  }
  RingPtr r;
  try {
    r = PolyRing::make(f, d.variables, d.order == "lex" ? MonomialOrder::lex : MonomialOrder::grevlex, 0, d.homotopy);
  } catch (const InvalidArgument& e) {
    throw SchemaError(std::string("ring: ") + e.what());
  }
  return {d, f, r};
}

// --- report fragments -------------------------------------------------------

Json strings_of(const std::vector<Polynomial>& v) {
  Json j = Json::array();
  for (const auto& p : v) j.push_back(p.to_string());
  return j;
}

Json point_json(const Point& x) {
  Json j;
  j["label"] = x.label();
  j["prime"] = x.prime.groebner_strings();
  j["residue_field"] = x.residue->descriptor();
  Json c;
  for (std::size_t i = 0; i < x.coords.size(); ++i) c[x.ring()->variable(i)] = x.coords[i].to_string();
  j["coordinates"] = c;
  j["parameters"] = strings_of(x.parameters);
  return j;
}

Json invariants_json(const DiagonalForm& f) {
  const WittInvariants w = gw_invariants(f);
  Json j;
  j["rank"] = w.rank;
  j["rank_mod_2"] = w.rank_mod2;
  j["discriminant"] = w.discriminant.to_string();
  j["discriminant_trivial"] = w.discriminant_trivial;
  if (w.signature) j["signature"] = *w.signature;
  if (!w.hasse.empty()) {
    Json h = Json::array();
    for (const auto& e : w.hasse) {
      Json he;
      he["place"] = e.prime == 0 ? std::string("inf") : e.prime.get_str();
      he["value"] = e.value;
      h.push_back(he);
    }
    j["hasse"] = h;
  }
  return j;
}

Json gw_json(const GWClass& g) {
  Json j;
  j["class"] = g.to_string();
  const auto [pos, neg] = g.representative();
  j["form"] = pos.entry_strings();
  if (neg.rank()) j["negative"] = neg.entry_strings();
  j["rank"] = g.rank();
  j["witt"] = g.witt().entry_strings();
  if (neg.rank() == 0) {
    try {
      j["invariants"] = invariants_json(pos);
    } catch (const Unsupported&) {
    }
  }
  return j;
}

Json cycle_json(const CWCycle& c) {
  Json j;
  j["ring"] = c.ring()->describe();
  j["codimension"] = c.codim();
  Json terms = Json::array();
  for (const auto& t : c.terms()) {
    Json tj;
    tj["point"] = point_json(t.point);
    tj["gw"] = gw_json(t.gw);
    tj["multiplicity"] = t.multiplicity;
    terms.push_back(tj);
  }
  j["terms"] = terms;
  return j;
}

Json regular_json(const RegularSequenceCertificate& r) {
  Json j;
  j["regular"] = r.regular;
  j["proper"] = r.proper;
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json sj;
    sj["index"] = s.index + 1;
    sj["colon"] = s.colon;
    sj["equal"] = s.equal;
    steps.push_back(sj);
  }
  j["steps"] = steps;
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

Json validation_json(const ValidationCertificate& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["generators_generate"] = c.generators_generate;
  if (c.height) j["height"] = *c.height;
  else j["height"] = nullptr;
  if (c.regular) j["regular_sequence"] = regular_json(*c.regular);
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

Json complex_json(const ChainComplex& k) {
  Json j;
  Json degrees = Json::array();
  for (int r = k.top(); r >= 0; --r) {
    Json dj;
    dj["degree"] = r;
    Json basis = Json::array();
    for (std::size_t i = 0; i < k.modules[r].rank(); ++i) basis.push_back(k.modules[r].label(i));
    dj["basis"] = basis;
    if (r >= 1) dj["differential"] = k.d[r].to_strings();
    degrees.push_back(dj);
  }
  j["degrees"] = degrees;
  return j;
}

Json units_json(const std::vector<PointwiseEntry>& units) {
  Json a = Json::array();
  for (const auto& e : units) {
    Json u;
    u["point"] = e.point.label();
    u["unit"] = e.unit.to_string();
    u["transition"] = e.transition.to_string();
    a.push_back(u);
  }
  return a;
}

Json boundary_result_json(const BoundaryResult& b) {
  Json j;
  j["regular_sequence"] = regular_json(b.regular);
  j["colon"] = b.colon;
  j["cone_is_koszul"] = b.cone_is_koszul;
  Json dj;
  dj["chain_map"] = b.duality_chain_map;
  dj["symmetric"] = b.duality_symmetric;
  j["duality"] = dj;
  j["units"] = units_json(b.units);
  j["cycle"] = cycle_json(b.cycle);
  return j;
}

// --- commands ---------------------------------------------------------------

Json cmd_validate(const Context& c, Status& status) {
  if (!c.doc.orientation) throw SchemaError("orientation: missing required key");
  const LocalOrientation o = c.orientation(*c.doc.orientation, "orientation");
  const ValidationCertificate v = validate(o);
  if (v.kind == OrientationKind::rejected) status = Status::rejected;
  Json j = validation_json(v);
  if (o.has_homotopy() && v.kind != OrientationKind::rejected) {
    Json ev;
    for (long t : {0L, 1L}) {
      try {
        ev["T=" + std::to_string(t)] = validation_json(validate(evaluate(o, t)));
      } catch (const Rejected& e) {
        Json r;
        r["kind"] = "rejected";
        r["reason"] = e.what();
        ev["T=" + std::to_string(t)] = r;
      }
    }
    j["evaluations"] = ev;
  }
  return j;
}

Json cmd_theta(const Context& c, Status&) {
  if (!c.doc.orientation) throw SchemaError("orientation: missing required key");
  const LocalOrientation o = c.orientation(*c.doc.orientation, "orientation");
  std::optional<LocalOrientation> ref;
  if (c.doc.reference) ref = c.orientation(*c.doc.reference, "reference");
  const ValidationCertificate v = require_valid(o);
  const ThetaResult t = theta(o, c.primes(c.doc.decomposition, "decomposition"), ref);
  Json j;
  j["validation"] = validation_json(v);
  j["kind"] = to_string(v.kind);
  j["cycle"] = cycle_json(t.cycle);
  j["units"] = units_json(t.units);
  if (t.reference) {
    Json r;
    r["generators"] = ref->generator_strings();
    r["det"] = t.reference->det.to_string();
    r["consistent"] = true;
    j["reference"] = r;
  }
  return j;
}

Json cmd_compare(const Context& c, Status&) {
  if (c.doc.orientations.size() != 2) throw SchemaError("orientations: expected exactly two orientations");
  const LocalOrientation a = c.orientation(c.doc.orientations[0], "orientations[0]");
  const LocalOrientation b = c.orientation(c.doc.orientations[1], "orientations[1]");
  const OrientationComparison r = compare_orientations(a, b, c.primes(c.doc.decomposition, "decomposition"));
  Json j;
  j["matrix"] = r.m.to_strings();
  j["det"] = r.det.to_string();
  Json units = Json::array();
  for (const auto& u : r.units) {
    Json uj;
    uj["point"] = point_json(u.point);
    uj["unit"] = u.unit.to_string();
    uj["square"] = !u.unit.is_zero() && is_square(u.unit);
    units.push_back(uj);
  }
  j["units"] = units;
  if (!r.points_note.empty()) j["points_note"] = r.points_note;
  return j;
}

Json cmd_homotopy(const Context& c, Status&) {
  if (!c.doc.orientation) throw SchemaError("orientation: missing required key");
  const LocalOrientation o = c.orientation(*c.doc.orientation, "orientation");
  const HomotopyReport h = homotopy_check(o, c.primes(c.doc.decomposition, "decomposition"));
  Json j;
  Json ev;
  ev["T=0"] = h.at0.generator_strings();
  ev["T=1"] = h.at1.generator_strings();
  j["evaluations"] = ev;
  j["delta"] = h.delta.to_strings();
  j["det"] = h.det.to_string();
  Json cj;
  cj["composite_is_chain_map"] = h.conjugation.composite_is_chain_map;
  cj["degree0_agrees"] = h.conjugation.degree0_agrees;
  Json disc = Json::array();
  for (std::size_t r = 0; r < h.conjugation.discrepancy.size(); ++r) {
    Json dj;
    dj["degree"] = r;
    dj["zero"] = h.conjugation.discrepancy[r].is_zero();
    if (!h.conjugation.discrepancy[r].is_zero()) dj["matrix"] = h.conjugation.discrepancy[r].to_strings();
    disc.push_back(dj);
  }
  cj["discrepancy"] = disc;
  j["conjugation"] = cj;
  j["ideals_agree"] = h.ideals_agree;
  Json pts = Json::array();
  for (const auto& p : h.points) {
    Json pj;
    pj["point"] = point_json(p.point);
    pj["psi"] = p.psi.to_string();
    pj["psi0"] = p.psi0.to_string();
    pj["ratio"] = p.ratio.to_string();
    pj["isometric"] = p.isometric;
    pts.push_back(pj);
  }
  j["points"] = pts;
  j["boundary_T"] = cycle_json(h.boundary_t.cycle);
  j["boundary_0"] = cycle_json(h.boundary_0.cycle);
  j["boundaries_agree"] = h.boundaries_agree;
  if (h.theta0) j["theta_T0"] = cycle_json(h.theta0->cycle);
  if (h.theta1) j["theta_T1"] = cycle_json(h.theta1->cycle);
  if (!h.theta_note.empty()) j["theta_note"] = h.theta_note;
  j["equal_in_chow_witt"] = h.ok;
  return j;
}

Json cmd_d1(const Context& c, Status&) {
  if (!c.doc.boundary) throw SchemaError("boundary: missing required key");
  const BoundaryDatum b = c.boundary(*c.doc.boundary, "boundary");
  const BoundaryResult r = d1_boundary(b);
  Json j = boundary_result_json(r);
  j["cone"] = complex_json(reorder_lex(cone(multiplication_map(koszul(b.g), b.t))));
  return j;
}

Json cmd_difference(const Context& c, Status& status) {
  if (c.doc.cycles.size() != 2) throw SchemaError("cycles: expected exactly two cycles");
  const CWCycle c1 = c.cycle(c.doc.cycles[0], "cycles[0]");
  const CWCycle c2 = c.cycle(c.doc.cycles[1], "cycles[1]");
  std::vector<Witness> ws;
  for (std::size_t i = 0; i < c.doc.witnesses.size(); ++i)
    ws.push_back({c.doc.witnesses[i].sign, c.boundary(c.doc.witnesses[i], "witnesses[" + std::to_string(i) + "]")});
  const DifferenceReport r = verify_cycle_difference(c1, c2, ws);
  Json j;
  j["difference"] = cycle_json(r.difference);
  j["boundary"] = cycle_json(r.boundary);
  Json w = Json::array();
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    Json wj;
    wj["sign"] = ws[i].sign;
    wj["cycle"] = cycle_json(r.witnesses[i].cycle);
    w.push_back(wj);
  }
  j["witnesses"] = w;
  j["equal"] = r.equal;
  if (!r.equal) status = Status::falsified;
  return j;
}

Json form_report(const DiagonalForm& f) {
  Json j;
  j["form"] = f.to_string();
  j["invariants"] = invariants_json(f);
  j["witt_class"] = witt_reduce(f).brackets();
  try {
    j["fundamental_ideal_level"] = fundamental_ideal_level(f) >= 2 ? Json(">=2") : Json(fundamental_ideal_level(f));
  } catch (const Unsupported& e) {
    j["fundamental_ideal_level"] = nullptr;
  }
  return j;
}

Json cmd_witt(const Context& c, Status&) {
  if (!c.doc.witt) throw SchemaError("witt: missing required key");
  const WittSpec& w = *c.doc.witt;
  FieldPtr F = c.field;
  if (w.field) {
    try {
      F = parse_field(*w.field);
    } catch (const InvalidArgument& e) {
      throw SchemaError(std::string("witt.field: ") + e.what());
    }
  }
  auto elem = [&](const std::string& s, const std::string& path) {
    try {
      return parse_field_element(F, s);
    } catch (const InvalidArgument& e) {
      throw SchemaError(path + ": " + e.what());
    }
  };
  std::vector<DiagonalForm> forms;
  Json j;
  j["field"] = F->descriptor();
  if (w.matrix) {
    FieldMatrix g;
    for (std::size_t r = 0; r < w.matrix->size(); ++r) {
      g.emplace_back();
      for (std::size_t s = 0; s < (*w.matrix)[r].size(); ++s)
        g.back().push_back(elem((*w.matrix)[r][s], "witt.matrix[" + std::to_string(r) + "][" + std::to_string(s) + "]"));
    }
    const Diagonalization d = diagonalize(g);
    Json dj;
    dj["form"] = d.form.to_string();
    Json p = Json::array();
    for (const auto& row : d.transform) {
      Json rj = Json::array();
      for (const auto& x : row) rj.push_back(x.to_string());
      p.push_back(rj);
    }
    dj["transform"] = p;
    dj["certificate"] = "P^T G P = diag";
    j["diagonalization"] = dj;
    forms.push_back(d.form);
  }
  for (std::size_t i = 0; i < w.forms.size(); ++i) {
    std::vector<FieldElem> e;
    for (std::size_t k = 0; k < w.forms[i].size(); ++k)
      e.push_back(elem(w.forms[i][k], "witt.forms[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    forms.push_back(DiagonalForm(F, e));
  }
  if (forms.empty()) throw SchemaError("witt: give 'forms' or 'matrix'");
  Json fs = Json::array();
  for (const auto& f : forms) fs.push_back(form_report(f));
  j["forms"] = fs;
  if (forms.size() == 2) {
    j["isometric"] = decide_isometry(forms[0], forms[1]);
    j["witt_equal"] = witt_equal(forms[0], forms[1]);
  }
  DiagonalForm sum(F, {});
  for (const auto& f : forms) sum = orthogonal_sum(sum, f);
  Json sj;
  sj["gw"] = GWClass(sum).to_string();
  sj["witt_class"] = witt_reduce(sum).brackets();
  sj["rank"] = sum.rank();
  j["sum"] = sj;
  return j;
}

}  // namespace

Report run(const std::string& command_in, const std::string& text) {
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.command = command_in;
  Json result;
  std::string error;
  Json input;
  try {
    const ProblemDocument doc = parse_document(text);
    input = document_to_json(doc);
    if (rep.command.empty()) {
      if (!doc.command) throw SchemaError("command: missing (required when no command is given on the command line)");
      rep.command = *doc.command;
    } else if (doc.command && *doc.command != rep.command) {
      throw SchemaError("command: document says '" + *doc.command + "' but '" + rep.command + "' was requested");
    }
    const Context ctx = make_context(doc);
    Status st = Status::ok;
    const std::string& c = rep.command;
    if (c == "validate") result = cmd_validate(ctx, st);
    else if (c == "theta") result = cmd_theta(ctx, st);
    else if (c == "compare") result = cmd_compare(ctx, st);
    else if (c == "homotopy-check") result = cmd_homotopy(ctx, st);
    else if (c == "d1") result = cmd_d1(ctx, st);
    else if (c == "verify-difference") result = cmd_difference(ctx, st);
    else if (c == "witt") result = cmd_witt(ctx, st);
    else throw SchemaError("command: unknown command '" + c + "'");
    rep.status = st;
  } catch (const SchemaError& e) {
    if (rep.command.empty()) {
      const Json raw = Json::parse(text, nullptr, false);
      if (raw.is_object() && raw.contains("command") && raw["command"].is_string()) rep.command = raw["command"];
    }
    rep.status = Status::rejected;
    error = std::string("invalid document: ") + e.what();
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::invalid_argument:
      case ErrorKind::rejected: rep.status = Status::rejected; break;
      case ErrorKind::unsupported: rep.status = Status::unsupported; break;
      case ErrorKind::falsified: rep.status = Status::falsified; break;
    }
    error = e.what();
  } catch (const std::exception& e) {
    rep.status = Status::error;
    error = std::string("internal error: ") + e.what();
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  Json j;
  j["command"] = rep.command;
  j["status"] = to_string(rep.status);
  if (!error.empty()) j["error"] = error;
  if (!input.is_null()) j["input"] = input;
  if (!result.is_null()) j["result"] = result;
  Json timing;
  timing["elapsed_ms"] = std::round(ms * 1000.0) / 1000.0;
  j["timing"] = timing;
  rep.json = j;
  return rep;
}

Json strip_timing(const Json& report) {
  Json j = report;
  j.erase("timing");
  return j;
}

namespace {

void text_cycle(std::ostringstream& out, const std::string& title, const Json& c) {
  out << title << ":";
  if (c["terms"].empty()) {
    out << " 0\n";
    return;
  }
  out << "\n";
  for (const auto& t : c["terms"])
    out << "  " << t["point"]["label"].get<std::string>() << " over " << t["point"]["residue_field"].get<std::string>()
        << ": " << t["gw"]["class"].get<std::string>() << ", multiplicity " << t["multiplicity"].get<long>() << "\n";
}

}  // namespace

std::string render_text(const Json& r) {
  std::ostringstream out;
  out << "command: " << r.value("command", std::string()) << "\n";
  out << "status: " << r.value("status", std::string()) << "\n";
  if (r.contains("error")) out << "error: " << r["error"].get<std::string>() << "\n";
  if (r.contains("result")) {
    const Json& res = r["result"];
    const std::string c = r["command"];
    if (c == "validate") {
      out << "kind: " << res["kind"].get<std::string>() << "\n";
      if (!res["height"].is_null()) out << "height: " << res["height"].get<std::size_t>() << "\n";
      if (res.contains("reason")) out << "reason: " << res["reason"].get<std::string>() << "\n";
    } else if (c == "theta") {
      text_cycle(out, "theta", res["cycle"]);
    } else if (c == "compare") {
      out << "det M: " << res["det"].get<std::string>() << "\n";
      for (const auto& u : res["units"])
        out << "  " << u["point"]["label"].get<std::string>() << ": <" << u["unit"].get<std::string>() << ">\n";
    } else if (c == "homotopy-check") {
      out << "det Delta: " << res["det"].get<std::string>() << "\n";
      for (const auto& p : res["points"])
        out << "  " << p["point"]["label"].get<std::string>() << ": psi <" << p["psi"].get<std::string>()
            << ">, psi0 <" << p["psi0"].get<std::string>() << ">\n";
      text_cycle(out, "d1 boundary (f(T), T)", res["boundary_T"]);
      text_cycle(out, "d1 boundary (f(0), T)", res["boundary_0"]);
      if (res.contains("theta_T0")) text_cycle(out, "theta at T=0", res["theta_T0"]);
      if (res.contains("theta_T1")) text_cycle(out, "theta at T=1", res["theta_T1"]);
      out << "equal in CH~: " << (res["equal_in_chow_witt"].get<bool>() ? "yes" : "no") << "\n";
    } else if (c == "d1") {
      text_cycle(out, "d1", res["cycle"]);
    } else if (c == "verify-difference") {
      text_cycle(out, "c1 - c2", res["difference"]);
      text_cycle(out, "sum of boundaries", res["boundary"]);
      out << "equal: " << (res["equal"].get<bool>() ? "yes" : "no") << "\n";
    } else if (c == "witt") {
      for (const auto& f : res["forms"])
        out << "  " << f["form"].get<std::string>() << ": W class " << f["witt_class"].get<std::string>() << "\n";
      if (res.contains("isometric")) out << "isometric: " << (res["isometric"].get<bool>() ? "yes" : "no") << "\n";
      out << "sum: " << res["sum"]["gw"].get<std::string>() << "\n";
    }
  }
  return out.str();
}

}  // namespace cwkit
