#include "kvis/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kvis {

using json = nlohmann::json;

std::optional<Rational> parse_rational(const std::string& raw) {
  std::size_t b = 0, e = raw.size();
  while (b < e && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
  const std::string s = raw.substr(b, e - b);
  if (s.empty()) return std::nullopt;
  auto is_int = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return true;
  };
  auto strip_plus = [](std::string t) { return !t.empty() && t[0] == '+' ? t.substr(1) : t; };
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num, true) || !is_int(den, false)) return std::nullopt;
    mpz_class d(den, 10);
    if (d == 0) return std::nullopt;
    Rational r(mpz_class(strip_plus(num), 10), d);
    r.canonicalize();
    return r;
  }
  // [sign] digits [. digits] [(e|E) [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '-' || s[i] == '+') negative = s[i++] == '-';
  std::string digits;
  long exponent = 0;
  bool any = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    any = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      --exponent;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    const std::string ex = s.substr(i + 1);
    if (!is_int(ex, true) || ex.size() > 6) return std::nullopt;
    exponent += std::stol(strip_plus(ex));
    i = s.size();
  }
  if (i != s.size() || exponent > 4000 || exponent < -4000) return std::nullopt;
  mpz_class mant(digits.empty() ? "0" : digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(mant, scale) : Rational(mant * scale);
  r.canonicalize();
  if (negative) r = -r;
  return r;
}

std::string format_rational(const Rational& value) {
  Rational r = value;
  r.canonicalize();
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

// SAX handler keeping the literal text of floating-point numbers so that
// decimals become exact rationals.
class RawNumberSax {
 public:
  bool null() { return add(nullptr); }
  bool boolean(bool v) { return add(v); }
  bool number_integer(json::number_integer_t v) { return add(v); }
  bool number_unsigned(json::number_unsigned_t v) { return add(v); }
  bool number_float(json::number_float_t, const std::string& text) { return add(json{{"$number", text}}); }
  bool string(std::string& v) { return add(v); }
  bool binary(json::binary_t&) { return add(nullptr); }
  bool start_object(std::size_t) { return open(json::object()); }
  bool key(std::string& k) {
    key_ = k;
    return true;
  }
  bool end_object() { return close(); }
  bool start_array(std::size_t) { return open(json::array()); }
  bool end_array() { return close(); }
  bool parse_error(std::size_t position, const std::string& token, const nlohmann::detail::exception& ex) {
    error_position_ = position;
    error_token_ = token;
    error_message_ = ex.what();
    return false;
  }

  json root;
  std::size_t error_position_ = 0;
  std::string error_token_, error_message_;

 private:
  json* insert(json v) {
    if (stack_.empty()) {
      root = std::move(v);
      return &root;
    }
    json& top = *stack_.back();
    if (top.is_array()) {
      top.push_back(std::move(v));
      return &top.back();
    }
    top[key_] = std::move(v);
    return &top[key_];
  }
  bool add(json v) {
    insert(std::move(v));
    return true;
  }
  bool open(json v) {
    stack_.push_back(insert(std::move(v)));
    return true;
  }
  bool close() {
    stack_.pop_back();
    return true;
  }

  std::vector<json*> stack_;
  std::string key_;
};

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::kParseError, msg); }

json parse_json(const std::string& text) {
  RawNumberSax sax;
  if (!json::sax_parse(text, &sax)) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min(sax.error_position_ == 0 ? 0 : sax.error_position_ - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON near '" +
         sax.error_token_ + "'");
  }
  return sax.root;
}

Rational coordinate(const json& v, const std::string& path) {
  std::optional<Rational> r;
  if (v.is_number_integer()) {
    r = parse_rational(v.dump());
  } else if (v.is_object() && v.contains("$number")) {
    r = parse_rational(v["$number"].get<std::string>());
  } else if (v.is_string()) {
    r = parse_rational(v.get<std::string>());
  }
  if (!r) fail(path + ": expected a number or \"a/b\" string, got " + v.dump());
  return *r;
}

Ring ring_from(const json& arr, const std::string& path) {
  if (!arr.is_array()) fail(path + ": expected an array of [x, y] pairs");
  Ring r;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& pt = arr[i];
    if (!pt.is_array() || pt.size() != 2) fail(p + ": expected [x, y]");
    r.vertices.emplace_back(coordinate(pt[0], p + "[0]"), coordinate(pt[1], p + "[1]"));
  }
  if (r.size() < 3) fail(path + ": a ring needs at least 3 vertices, got " + std::to_string(r.size()));
  return r;
}

json rational_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return json(r.get_num().get_si());
  return json(format_rational(r));
}

json ring_json(const Ring& r) {
  json arr = json::array();
  for (const Point& p : r.vertices) arr.push_back(json::array({rational_json(p.x()), rational_json(p.y())}));
  return arr;
}

const json& field(const json& obj, const char* name, const std::string& path) {
  if (!obj.is_object() || !obj.contains(name)) fail(path + ": missing field \"" + name + "\"");
  return obj[name];
}

int int_field(const json& obj, const char* name, const std::string& path) {
  const json& v = field(obj, name, path);
  if (!v.is_number_integer()) fail(path + "." + name + ": expected an integer");
  return v.get<int>();
}

json point_json(const Point& p) { return json::array({p.fx(), p.fy()}); }

}  // namespace

PolygonDocument parse_polygon(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) fail("document: expected a JSON object");
  PolygonDocument out;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail("name: expected a string");
    out.name = doc["name"].get<std::string>();
  }
  Ring outer = ring_from(field(doc, "outer", "document"), "outer");
  std::vector<Ring> holes;
  if (doc.contains("holes")) {
    const json& hs = doc["holes"];
    if (!hs.is_array()) fail("holes: expected an array of rings");
    for (std::size_t h = 0; h < hs.size(); ++h) holes.push_back(ring_from(hs[h], "holes[" + std::to_string(h) + "]"));
  }
  out.polygon = make_polygon(std::move(outer), std::move(holes), &out.warnings);
  return out;
}

std::string write_polygon(const PolygonWithHoles& poly, const std::string& name) {
  json doc = json::object();
  if (!name.empty()) doc["name"] = name;
  doc["outer"] = ring_json(poly.outer);
  if (!poly.holes.empty()) {
    doc["holes"] = json::array();
    for (const Ring& h : poly.holes) doc["holes"].push_back(ring_json(h));
  }
  return doc.dump() + "\n";
}

GuardSet parse_guards(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) fail("document: expected a JSON object");
  GuardSet gs;
  gs.k = int_field(doc, "k", "document");
  gs.target_m = int_field(doc, "target_m", "document");
  const json& arr = field(doc, "guards", "document");
  if (!arr.is_array()) fail("guards: expected an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = "guards[" + std::to_string(i) + "]";
    const json& g = arr[i];
    Guard out;
    out.position = Point(coordinate(field(g, "x", p), p + ".x"), coordinate(field(g, "y", p), p + ".y"));
    out.k = gs.k;
    const json& host = field(g, "host", p);
    const json& kind = field(host, "kind", p + ".host");
    if (kind == "REAL") {
      out.host.kind = EdgeKind::kReal;
    } else if (kind == "DIAGONAL") {
      out.host.kind = EdgeKind::kDiagonal;
    } else {
      fail(p + ".host.kind: expected REAL or DIAGONAL");
    }
    out.host.index = int_field(host, "index", p + ".host");
    out.host.t = coordinate(field(host, "t", p + ".host"), p + ".host.t");
    const json& role = field(g, "role", p);
    const auto r = role.is_string() ? parse_guard_role(role.get<std::string>()) : std::nullopt;
    if (!r) fail(p + ".role: expected BASE, HOLE_EDGE or RELOCATED");
    out.role = *r;
    gs.guards.push_back(std::move(out));
  }
  return gs;
}

std::string write_guards(const GuardSet& gs) {
  json doc = json::object();
  doc["k"] = gs.k;
  doc["target_m"] = gs.target_m;
  doc["guards"] = json::array();
  for (const Guard& g : gs.guards) {
    doc["guards"].push_back({{"x", format_rational(g.position.x())},
                             {"y", format_rational(g.position.y())},
                             {"host",
                              {{"kind", g.host.kind == EdgeKind::kReal ? "REAL" : "DIAGONAL"},
                               {"index", g.host.index},
                               {"t", format_rational(g.host.t)}}},
                             {"role", std::string(to_string(g.role))}});
  }
  return doc.dump() + "\n";
}

std::string write_report(const CoverageReport& rep, std::size_t max_violations) {
  json doc = json::object();
  doc["k"] = rep.k;
  doc["target_m"] = rep.target_m;
  doc["samples"] = rep.samples.size();
  doc["min_coverage"] = rep.min_coverage;
  doc["certified"] = rep.certified();
  json hist = json::object();
  for (const auto& [count, freq] : rep.histogram) hist[std::to_string(count)] = freq;
  doc["histogram"] = hist;
  doc["violation_count"] = rep.violations.size();
  json viol = json::array();
  for (std::size_t i = 0; i < rep.violations.size() && i < max_violations; ++i) {
    const std::size_t s = rep.violations[i];
    viol.push_back({{"x", rep.samples[s].fx()}, {"y", rep.samples[s].fy()}, {"count", rep.counts[s]}});
  }
  doc["violations"] = viol;
  doc["redrawn"] = rep.redrawn;
  if (rep.guard_bound > 0) {
    doc["guard_bound"] = rep.guard_bound;
    doc["guard_bound_ok"] = rep.guard_bound_ok;
  }
  return doc.dump() + "\n";
}

std::string write_trace(const PlacementTrace& trace, const GuardSet& guards) {
  json doc = json::object();
  doc["root"] = trace.root;
  doc["order"] = trace.order;
  doc["merged_diagonals"] = trace.merged_diagonals;
  json pieces = json::array();
  for (const ConvexPiece& p : trace.decomposition.pieces) {
    json labels = json::array();
    for (const EdgeLabel& l : p.labels) {
      labels.push_back({{"kind", l.kind == EdgeKind::kReal ? "REAL" : "DIAGONAL"}, {"index", l.index}});
    }
    pieces.push_back({{"id", p.id}, {"ring", ring_json(p.ring)}, {"labels", labels}});
  }
  doc["pieces"] = pieces;
  json diags = json::array();
  for (const Diagonal& d : trace.decomposition.diagonals) {
    diags.push_back({{"id", d.id}, {"vertices", {d.vertex_a, d.vertex_b}}, {"pieces", {d.piece_a, d.piece_b}}});
  }
  doc["diagonals"] = diags;
  json steps = json::array();
  for (const TraceStep& s : trace.steps) {
    json sweeps = json::array();
    for (const SweepRecord& r : s.sweeps) {
      json crit = json::array();
      for (const Point& c : r.result.critical_vertices) crit.push_back(point_json(c));
      json rec = {{"piece", r.piece},
                  {"next_piece", r.next_piece},
                  {"host_edge", r.host.edge},
                  {"critical_vertices", crit},
                  {"feasible", {r.result.feasible.t_lo, r.result.feasible.t_hi}},
                  {"status", r.result.status == SweepStatus::kOk                        ? "OK"
                             : r.result.status == SweepStatus::kFewerCriticalThanBudget ? "FEWER_CRITICAL_THAN_BUDGET"
                                                                                        : "NO_CRITICAL_VERTICES"},
                  {"used", r.used}};
      if (r.result.chosen) rec["chosen"] = point_json(*r.result.chosen);
      if (r.result.ray_hit) rec["ray_hit"] = point_json(*r.result.ray_hit);
      sweeps.push_back(rec);
    }
    steps.push_back({{"piece", s.piece},
                     {"guards", s.guards},
                     {"sweeps", sweeps},
                     {"relocations", s.relocations},
                     {"merges", s.merges},
                     {"note", s.note}});
  }
  doc["steps"] = steps;
  json repairs = json::array();
  for (const RepairMove& m : trace.repairs) {
    repairs.push_back({{"guard", m.guard},
                       {"from", {{"index", m.from.index}, {"t", format_rational(m.from.t)}}},
                       {"to", {{"index", m.to.index}, {"t", format_rational(m.to.t)}}}});
  }
  doc["repairs"] = repairs;
  doc["warnings"] = trace.warnings;
  doc["guard_count"] = guards.guards.size();
  return doc.dump() + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << contents;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

}  // namespace kvis
