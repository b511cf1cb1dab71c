#include "cusp/io.hpp"

namespace cusp {

namespace {

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) fail(Errc::ParseError, std::string("missing field '") + name + "'");
  return *it;
}

std::int64_t int_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) fail(Errc::ParseError, std::string("field '") + name + "' must be an integer");
  return v.get<std::int64_t>();
}

std::vector<std::int64_t> int_list(const Json& j) {
  if (!j.is_array()) fail(Errc::ParseError, "expected an integer array");
  std::vector<std::int64_t> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) fail(Errc::ParseError, "expected an integer array");
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

GenKey decode_genkey(const std::string& s) {
  if (s.rfind("x_", 0) == 0) {
    auto mid = s.find('_', 2);
    if (mid == std::string::npos) fail(Errc::ParseError, "bad generator key '" + s + "'");
    return GenKey::x(std::stoi(s.substr(2, mid - 2)), std::stoi(s.substr(mid + 1)));
  }
  if (s.rfind("y_", 0) == 0) return GenKey::y(rat_from_string(s.substr(2)));
  fail(Errc::ParseError, "bad generator key '" + s + "'");
}

}  // namespace

Json encode(const Rat& x) { return rat_to_string(x); }

Json encode(ExtNat x) {
  if (x.is_infinite()) return "inf";
  return x.finite_value();
}

Json encode(const Shape& s) {
  Json j;
  j["m"] = s.m;
  j["p"] = s.p;
  j["q"] = s.q;
  return j;
}

Json encode(const LevelSet& l) {
  Json j;
  j["left"] = l.left();
  Json ivs = Json::array();
  for (const auto& iv : l.intervals()) ivs.push_back(Json::array({encode(iv.a), encode(iv.b)}));
  j["intervals"] = ivs;
  j["right"] = l.right();
  return j;
}

Json encode(const RankFunction& f) {
  Json j;
  j["shape"] = encode(f.shape());
  Json left = Json::array(), right = Json::array(), cells = Json::array(),
       points = Json::array(), breaks = Json::array();
  for (auto v : f.left()) left.push_back(encode(v));
  for (auto v : f.right()) right.push_back(encode(v));
  for (const auto& b : f.breaks()) breaks.push_back(encode(b));
  for (auto v : f.cells()) cells.push_back(encode(v));
  for (auto v : f.points()) points.push_back(encode(v));
  j["left"] = left;
  j["breaks"] = breaks;
  j["intervals"] = cells;
  j["points"] = points;
  j["right"] = right;
  return j;
}

Json encode(const SumElement& v) {
  if (v.comps.size() == 1) return encode(v.comps[0]);
  Json j = Json::array();
  for (const auto& c : v.comps) j.push_back(encode(c));
  return j;
}

Json encode(const Target& t) {
  Json j;
  switch (t.kind) {
    case Target::Kind::Sia:
      j["kind"] = "sia";
      j["shape"] = encode(t.shape);
      break;
    case Target::Kind::IntervalMatrix:
      j["kind"] = "interval_matrix";
      j["m"] = t.m;
      break;
    case Target::Kind::MatrixSum:
      j["kind"] = "matrix_sum";
      j["sizes"] = t.sizes;
      break;
  }
  return j;
}

Json encode(const EigenFunction& f) {
  Json nodes = Json::array();
  for (const auto& n : f.nodes()) nodes.push_back(Json::array({encode(n.t), encode(n.v)}));
  Json j;
  j["nodes"] = nodes;
  return j;
}

Json encode(const EndpointTuple& t) {
  Json j;
  j["nu"] = t.nu;
  j["omega"] = t.omega;
  Json lams = Json::array();
  for (const auto& u : t.lambdas) lams.push_back(encode(u));
  j["lambdas"] = lams;
  return j;
}

Json encode(const StandardFormHom& h) {
  Json j;
  j["source"] = encode(h.source);
  j["target"] = encode(h.target);
  j["unital"] = h.unital;
  if (h.target.kind != Target::Kind::MatrixSum) {
    j["nu"] = h.nu;
    j["omega"] = h.omega;
    Json lams = Json::array();
    for (const auto& lam : h.lambdas) lams.push_back(encode(lam));
    j["lambdas"] = lams;
  }
  if (h.target.kind == Target::Kind::Sia) {
    Json boundary;
    for (std::size_t k = 0; k < h.at0.size(); ++k)
      boundary["0_" + std::to_string(k + 1)] = encode(h.at0[k]);
    for (std::size_t k = 0; k < h.at1.size(); ++k)
      boundary["1_" + std::to_string(k + 1)] = encode(h.at1[k]);
    j["boundary"] = boundary;
  }
  if (h.target.kind == Target::Kind::MatrixSum) {
    Json sums = Json::array();
    for (const auto& t : h.summands) sums.push_back(encode(t));
    j["summands"] = sums;
  }
  return j;
}

Json encode(const MorphismTable& t) {
  Json j;
  j["source"] = encode(t.source);
  j["depth"] = t.depth;
  j["target"] = encode(t.target);
  j["unit"] = encode(t.unit);
  Json values;
  for (const auto& [k, elem] : generator_list(t.source, t.depth)) {
    auto it = t.values.find(k);
    if (it != t.values.end()) values[k.str()] = encode(it->second);
  }
  j["values"] = values;
  return j;
}

Json encode(const Tower& t) {
  Json stages = Json::array();
  for (const auto& st : t.stages) {
    Json row = Json::array();
    for (const auto& sh : st) row.push_back(encode(sh));
    stages.push_back(row);
  }
  Json connects = Json::array();
  for (const auto& layer : t.connects) {
    Json row = Json::array();
    for (const auto& e : layer) {
      Json entry;
      entry["from"] = e.from;
      entry["to"] = e.to;
      entry["hom"] = encode(e.hom);
      row.push_back(entry);
    }
    connects.push_back(row);
  }
  Json dist = Json::array();
  for (const auto& d : t.distinguished) {
    Json row = Json::array();
    for (const auto& c : d.comps) row.push_back(encode(c));
    dist.push_back(row);
  }
  Json j;
  j["stages"] = stages;
  j["connects"] = connects;
  j["distinguished"] = dist;
  return j;
}

Json encode(const AlphaFamily& a) {
  Json j;
  j["source"] = encode(a.source);
  j["depth"] = a.depth;
  Json unit;
  unit["stage"] = a.unit.stage;
  unit["value"] = Json::array();
  for (const auto& c : a.unit.value.comps) unit["value"].push_back(encode(c));
  j["unit"] = unit;
  Json values;
  for (const auto& [k, elem] : generator_list(a.source, a.depth)) {
    auto it = a.values.find(k);
    if (it == a.values.end()) continue;
    Json sv;
    sv["stage"] = it->second.stage;
    sv["value"] = Json::array();
    for (const auto& c : it->second.value.comps) sv["value"].push_back(encode(c));
    values[k.str()] = sv;
  }
  j["values"] = values;
  return j;
}

Json encode(const IntertwiningCertificate& c) {
  Json j;
  j["depth"] = c.requestedDepth;
  j["stage"] = c.stage;
  Json levels = Json::array();
  for (const auto& lvl : c.levels) {
    Json rec;
    rec["n"] = lvl.n;
    rec["stage"] = lvl.stage;
    Json homs = Json::array();
    for (const auto& h : lvl.homs) homs.push_back(encode(h));
    rec["homs"] = homs;
    rec["entourage_ok"] = lvl.entourageOk;
    rec["tuples_equal_prev"] = lvl.tuplesEqualPrev;
    if (lvl.gapPrev)
      rec["gap_prev"] = encode(*lvl.gapPrev);
    else
      rec["gap_prev"] = nullptr;
    levels.push_back(rec);
  }
  j["levels"] = levels;
  return j;
}

Rat decode_rat(const Json& j) {
  if (!j.is_string()) fail(Errc::ParseError, "rationals are encoded as strings");
  return rat_from_string(j.get<std::string>());
}

ExtNat decode_extnat(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return ExtNat::infinity();
    fail(Errc::ParseError, "bad extended natural '" + j.get<std::string>() + "'");
  }
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    fail(Errc::ParseError, "extended naturals are nonnegative integers or \"inf\"");
  return ExtNat(j.get<std::int64_t>());
}

Shape decode_shape(const Json& j) {
  return make_shape(int_field(j, "m"), int_list(field(j, "p")), int_list(field(j, "q")));
}

LevelSet decode_levelset(const Json& j) {
  std::vector<int> left, right;
  for (auto v : int_list(field(j, "left"))) left.push_back(static_cast<int>(v));
  for (auto v : int_list(field(j, "right"))) right.push_back(static_cast<int>(v));
  std::vector<OpenInterval> ivs;
  for (const auto& iv : field(j, "intervals")) {
    if (!iv.is_array() || iv.size() != 2) fail(Errc::ParseError, "interval must be a pair");
    ivs.push_back({decode_rat(iv[0]), decode_rat(iv[1])});
  }
  return LevelSet(std::move(left), std::move(ivs), std::move(right));
}

RankFunction decode_rankfn(const Json& j) {
  Shape sh = decode_shape(field(j, "shape"));
  std::vector<ExtNat> left, right, cells, points;
  for (const auto& v : field(j, "left")) left.push_back(decode_extnat(v));
  for (const auto& v : field(j, "right")) right.push_back(decode_extnat(v));
  for (const auto& v : field(j, "intervals")) cells.push_back(decode_extnat(v));
  for (const auto& v : field(j, "points")) points.push_back(decode_extnat(v));
  std::vector<Rat> breaks;
  for (const auto& v : field(j, "breaks")) breaks.push_back(decode_rat(v));
  return RankFunction(std::move(sh), std::move(left), std::move(right), std::move(breaks),
                      std::move(cells), std::move(points));
}

SumElement decode_sum(const Json& j) {
  SumElement out;
  if (j.is_array()) {
    for (const auto& c : j) out.comps.push_back(decode_rankfn(c));
  } else {
    out.comps.push_back(decode_rankfn(j));
  }
  return out;
}

Target decode_target(const Json& j) {
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "sia") return Target::sia(decode_shape(field(j, "shape")));
  if (kind == "interval_matrix") return Target::interval_matrix(int_field(j, "m"));
  if (kind == "matrix_sum") return Target::matrix_sum(int_list(field(j, "sizes")));
  fail(Errc::ParseError, "unknown target kind '" + kind + "'");
}

EigenFunction decode_eigenfn(const Json& j) {
  std::vector<EigenFunction::Node> nodes;
  for (const auto& n : field(j, "nodes")) {
    if (!n.is_array() || n.size() != 2) fail(Errc::ParseError, "eigenvalue node must be a pair");
    nodes.push_back({decode_rat(n[0]), decode_rat(n[1])});
  }
  return EigenFunction(std::move(nodes));
}

EndpointTuple decode_tuple(const Json& j) {
  EndpointTuple t;
  t.nu = int_list(field(j, "nu"));
  t.omega = int_list(field(j, "omega"));
  for (const auto& v : field(j, "lambdas")) t.lambdas.push_back(decode_rat(v));
  return t;
}

StandardFormHom decode_hom(const Json& j) {
  StandardFormHom h;
  h.source = decode_shape(field(j, "source"));
  h.target = decode_target(field(j, "target"));
  h.unital = field(j, "unital").get<bool>();
  if (h.target.kind != Target::Kind::MatrixSum) {
    h.nu = int_list(field(j, "nu"));
    h.omega = int_list(field(j, "omega"));
    for (const auto& lam : field(j, "lambdas")) h.lambdas.push_back(decode_eigenfn(lam));
  }
  if (h.target.kind == Target::Kind::Sia) {
    const Json& boundary = field(j, "boundary");
    for (std::size_t k = 0; k < h.target.shape.r(); ++k)
      h.at0.push_back(decode_tuple(field(boundary, ("0_" + std::to_string(k + 1)).c_str())));
    for (std::size_t k = 0; k < h.target.shape.s(); ++k)
      h.at1.push_back(decode_tuple(field(boundary, ("1_" + std::to_string(k + 1)).c_str())));
  }
  if (h.target.kind == Target::Kind::MatrixSum) {
    for (const auto& t : field(j, "summands")) h.summands.push_back(decode_tuple(t));
  }
  return h;
}

MorphismTable decode_table(const Json& j) {
  MorphismTable t;
  t.source = decode_shape(field(j, "source"));
  t.depth = static_cast<int>(int_field(j, "depth"));
  t.target = decode_target(field(j, "target"));
  t.unit = decode_sum(field(j, "unit"));
  for (const auto& [key, value] : field(j, "values").items())
    t.values[decode_genkey(key)] = decode_sum(value);
  return t;
}

Tower decode_tower(const Json& j) {
  Tower t;
  for (const auto& row : field(j, "stages")) {
    std::vector<Shape> st;
    for (const auto& sh : row) st.push_back(decode_shape(sh));
    t.stages.push_back(std::move(st));
  }
  for (const auto& row : field(j, "connects")) {
    std::vector<ConnectEntry> layer;
    for (const auto& e : row) {
      ConnectEntry entry;
      entry.from = static_cast<std::size_t>(int_field(e, "from"));
      entry.to = static_cast<std::size_t>(int_field(e, "to"));
      entry.hom = decode_hom(field(e, "hom"));
      layer.push_back(std::move(entry));
    }
    t.connects.push_back(std::move(layer));
  }
  for (const auto& row : field(j, "distinguished")) {
    SumElement d;
    for (const auto& c : row) d.comps.push_back(decode_rankfn(c));
    t.distinguished.push_back(std::move(d));
  }
  return t;
}

AlphaFamily decode_alpha(const Json& j) {
  AlphaFamily a;
  a.source = decode_shape(field(j, "source"));
  a.depth = static_cast<int>(int_field(j, "depth"));
  const Json& unit = field(j, "unit");
  a.unit.stage = static_cast<std::size_t>(int_field(unit, "stage"));
  for (const auto& c : field(unit, "value")) a.unit.value.comps.push_back(decode_rankfn(c));
  for (const auto& [key, sv] : field(j, "values").items()) {
    StagedValue v;
    v.stage = static_cast<std::size_t>(int_field(sv, "stage"));
    for (const auto& c : field(sv, "value")) v.value.comps.push_back(decode_rankfn(c));
    a.values[decode_genkey(key)] = std::move(v);
  }
  return a;
}

IntertwiningCertificate decode_certificate(const Json& j) {
  IntertwiningCertificate c;
  c.requestedDepth = static_cast<int>(int_field(j, "depth"));
  c.stage = static_cast<std::size_t>(int_field(j, "stage"));
  for (const auto& rec : field(j, "levels")) {
    IntertwiningLevel lvl;
    lvl.n = static_cast<int>(int_field(rec, "n"));
    lvl.stage = static_cast<std::size_t>(int_field(rec, "stage"));
    for (const auto& h : field(rec, "homs")) lvl.homs.push_back(decode_hom(h));
    lvl.entourageOk = field(rec, "entourage_ok").get<bool>();
    lvl.tuplesEqualPrev = field(rec, "tuples_equal_prev").get<bool>();
    const Json& gap = field(rec, "gap_prev");
    if (!gap.is_null()) lvl.gapPrev = decode_rat(gap);
    c.levels.push_back(std::move(lvl));
  }
  return c;
}

std::string dump_document(const std::string& kind, const Json& payload) {
  Json doc;
  doc["version"] = "cusp/1";
  doc["kind"] = kind;
  doc["payload"] = payload;
  return doc.dump(2) + "\n";
}

Document parse_document(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("version") || doc["version"] != "cusp/1")
    fail(Errc::ParseError, "expected a cusp/1 document envelope");
  Document out;
  out.kind = field(doc, "kind").get<std::string>();
  out.payload = field(doc, "payload");
  return out;
}

}  // namespace cusp
