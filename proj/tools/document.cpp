#include "document.hpp"

#include "linf/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace linf::io {

namespace {

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw DocumentError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw DocumentError(where, "missing field \"" + key + "\"");
  return *it;
}

std::string get_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw DocumentError(where, "expected a string");
  return j.get<std::string>();
}

int get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw DocumentError(where, "expected an integer");
  return j.get<int>();
}

const Json& get_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw DocumentError(where, "expected an array");
  return j;
}

Rational get_rational(const Json& j, const std::string& where) {
  if (!j.is_string()) throw DocumentError(where, "rationals are written as strings such as \"-1/2\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw DocumentError(where, e.what());
  }
}

Terms get_terms(const Json& j, const std::string& where) {
  Terms out;
  const Json& a = get_array(j, where);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string w = at(where, i);
    if (!a[i].is_array() || a[i].size() != 2) throw DocumentError(w, "expected a pair [identifier, rational]");
    out.emplace_back(get_string(a[i][0], at(w, 0)), get_rational(a[i][1], at(w, 1)));
  }
  return out;
}

Index lookup(const GradedSpace& space, const std::string& id, const std::string& where) {
  for (Index i = 0; i < space.size(); ++i) {
    if (space[i].id == id) return i;
  }
  throw DocumentError(where, "unknown basis element \"" + id + "\"");
}

Vector exact_vector(const GradedSpace& space, const Terms& terms, const std::string& where) {
  Vector v;
  for (std::size_t i = 0; i < terms.size(); ++i) v.add(lookup(space, terms[i].first, at(at(where, i), 0)), terms[i].second);
  return v;
}

LInftyAlgebra parse_algebra(const Json& j, const std::string& where) {
  const int max_arity = get_int(field(j, "max_arity", where), at(where, "max_arity"));
  if (max_arity < 1) throw DocumentError(at(where, "max_arity"), "max_arity must be at least 1");
  const std::string bw = at(where, "basis");
  const Json& basis = get_array(field(j, "basis", where), bw);
  std::vector<BasisElement> elements;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string w = at(bw, i);
    BasisElement b;
    b.id = get_string(field(basis[i], "id", w), at(w, "id"));
    b.degree = get_int(field(basis[i], "degree", w), at(w, "degree"));
    b.weight = get_int(field(basis[i], "weight", w), at(w, "weight"));
    if (b.id.empty()) throw DocumentError(at(w, "id"), "empty identifier");
    if (b.weight < 1) throw DocumentError(at(w, "weight"), "weights start at 1");
    if (!seen.insert(b.id).second) throw DocumentError(at(w, "id"), "duplicate identifier \"" + b.id + "\"");
    elements.push_back(std::move(b));
  }
  LInftyAlgebra g(make_space(std::move(elements)), max_arity);
  const std::string brw = at(where, "brackets");
  const Json& brackets = j.contains("brackets") ? get_array(j["brackets"], brw) : Json::array();
  std::set<Tuple> keys;
  for (std::size_t i = 0; i < brackets.size(); ++i) {
    const std::string w = at(brw, i);
    const std::string iw = at(w, "inputs");
    const Json& inputs = get_array(field(brackets[i], "inputs", w), iw);
    if (inputs.empty()) throw DocumentError(iw, "a bracket needs at least one input");
    Tuple t;
    for (std::size_t k = 0; k < inputs.size(); ++k) t.push_back(lookup(*g.space, get_string(inputs[k], at(iw, k)), at(iw, k)));
    if (static_cast<int>(t.size()) > max_arity) throw DocumentError(iw, "arity exceeds max_arity");
    const auto [canon, sign] = canonicalize(*g.space, t);
    if (sign == 0) throw DocumentError(iw, "inputs vanish by graded antisymmetry");
    if (!keys.insert(canon).second) throw DocumentError(iw, "bracket entry given twice");
    g.set_bracket(t, exact_vector(*g.space, get_terms(field(brackets[i], "output", w), at(w, "output")), at(w, "output")));
  }
  return g;
}

CoefficientAlgebra parse_coefficients(const Json& j, const std::string& where) {
  CoefficientAlgebra A;
  A.name = j.contains("name") ? get_string(j["name"], at(where, "name")) : "A";
  const std::string bw = at(where, "basis");
  const Json& basis = get_array(field(j, "basis", where), bw);
  std::vector<BasisElement> elements;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string w = at(bw, i);
    elements.push_back({get_string(field(basis[i], "id", w), at(w, "id")), get_int(field(basis[i], "degree", w), at(w, "degree")), 1});
  }
  A.space = make_space(std::move(elements));
  A.unit = lookup(*A.space, get_string(field(j, "unit", where), at(where, "unit")), at(where, "unit"));
  for (Index i = 0; i < A.space->size(); ++i) {
    if (i != A.unit) A.ideal.push_back(i);
  }
  const std::string pw = at(where, "products");
  const Json& products = j.contains("products") ? get_array(j["products"], pw) : Json::array();
  for (std::size_t i = 0; i < products.size(); ++i) {
    const std::string w = at(pw, i);
    const Json& in = get_array(field(products[i], "inputs", w), at(w, "inputs"));
    if (in.size() != 2) throw DocumentError(at(w, "inputs"), "a product has two inputs");
    const Index a = lookup(*A.space, get_string(in[0], at(at(w, "inputs"), 0)), at(at(w, "inputs"), 0));
    const Index b = lookup(*A.space, get_string(in[1], at(at(w, "inputs"), 1)), at(at(w, "inputs"), 1));
    if (a == A.unit || b == A.unit) throw DocumentError(at(w, "inputs"), "products with the unit are implicit");
    const Vector v = exact_vector(*A.space, get_terms(field(products[i], "output", w), at(w, "output")), at(w, "output"));
    A.products[{a, b}] = v;
    // graded commutativity fills the mirrored entry unless it is given
    if (!A.products.contains({b, a})) {
      const bool odd = ((*A.space)[a].degree * (*A.space)[b].degree) % 2 != 0;
      A.products[{b, a}] = odd ? -v : v;
    }
  }
  if (j.contains("differential")) {
    const std::string dw = at(where, "differential");
    const Json& d = get_array(j["differential"], dw);
    A.differential.assign(A.space->size(), Vector{});
    for (std::size_t i = 0; i < d.size(); ++i) {
      const std::string w = at(dw, i);
      const Index a = lookup(*A.space, get_string(field(d[i], "input", w), at(w, "input")), at(w, "input"));
      A.differential[a] = exact_vector(*A.space, get_terms(field(d[i], "output", w), at(w, "output")), at(w, "output"));
    }
  }
  const auto problems = check_coefficient_algebra(A);
  if (!problems.empty()) throw DocumentError(where, "not a local cdga: " + problems.front());
  return A;
}

FiniteAlgebraData parse_associative(const Json& j, const std::string& where, const std::string& doc_name) {
  const std::string bw = at(where, "basis");
  const Json& basis = get_array(field(j, "basis", where), bw);
  if (basis.empty()) throw DocumentError(bw, "the algebra needs a basis");
  FiniteAlgebraData X = make_algebra_data(j.contains("name") ? get_string(j["name"], at(where, "name")) : doc_name,
                                          static_cast<int>(basis.size()));
  std::set<std::string> seen;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    X.basis[i] = get_string(basis[i], at(bw, i));
    if (!seen.insert(X.basis[i]).second) throw DocumentError(at(bw, i), "duplicate identifier \"" + X.basis[i] + "\"");
  }
  if (j.contains("degrees")) {
    const std::string dw = at(where, "degrees");
    const Json& d = get_array(j["degrees"], dw);
    if (d.size() != basis.size()) throw DocumentError(dw, "one degree per basis element");
    for (std::size_t i = 0; i < d.size(); ++i) X.degrees.push_back(get_int(d[i], at(dw, i)));
  }
  auto index = [&](const std::string& id, const std::string& w) {
    for (std::size_t i = 0; i < X.basis.size(); ++i) {
      if (X.basis[i] == id) return static_cast<int>(i);
    }
    throw DocumentError(w, "unknown basis element \"" + id + "\"");
  };
  const std::string pw = at(where, "products");
  const Json& products = j.contains("products") ? get_array(j["products"], pw) : Json::array();
  const int d = X.dimension;
  for (std::size_t i = 0; i < products.size(); ++i) {
    const std::string w = at(pw, i);
    const std::string iw = at(w, "inputs");
    const Json& in = get_array(field(products[i], "inputs", w), iw);
    if (in.size() != 2) throw DocumentError(iw, "a product has two inputs");
    const int a = index(get_string(in[0], at(iw, 0)), at(iw, 0));
    const int b = index(get_string(in[1], at(iw, 1)), at(iw, 1));
    const Terms out = get_terms(field(products[i], "output", w), at(w, "output"));
    for (std::size_t k = 0; k < out.size(); ++k) {
      const int c = index(out[k].first, at(at(at(w, "output"), k), 0));
      X.mu[static_cast<std::size_t>((a * d + b) * d + c)] += out[k].second;
    }
  }
  return X;
}

Json basis_to_json(const GradedSpace& space) {
  Json b = Json::array();
  for (const auto& e : space.elements()) b.push_back(Json{{"id", e.id}, {"degree", e.degree}, {"weight", e.weight}});
  return b;
}

Json coefficients_to_json(const CoefficientAlgebra& A) {
  Json j;
  j["name"] = A.name;
  Json b = Json::array();
  for (const auto& e : A.space->elements()) b.push_back(Json{{"id", e.id}, {"degree", e.degree}});
  j["basis"] = b;
  j["unit"] = (*A.space)[A.unit].id;
  Json p = Json::array();
  for (const auto& [key, v] : A.products) {
    if (key.first > key.second || v.is_zero()) continue;
    p.push_back(Json{{"inputs", {(*A.space)[key.first].id, (*A.space)[key.second].id}}, {"output", vector_to_json(*A.space, v)}});
  }
  j["products"] = p;
  if (A.has_differential()) {
    Json d = Json::array();
    for (Index i = 0; i < A.differential.size(); ++i) {
      if (!A.differential[i].is_zero()) d.push_back(Json{{"input", (*A.space)[i].id}, {"output", vector_to_json(*A.space, A.differential[i])}});
    }
    j["differential"] = d;
  }
  return j;
}

Json associative_to_json(const FiniteAlgebraData& X) {
  Json j;
  j["name"] = X.name;
  j["basis"] = X.basis;
  if (std::any_of(X.degrees.begin(), X.degrees.end(), [](int g) { return g != 0; })) j["degrees"] = X.degrees;
  Json p = Json::array();
  const int d = X.dimension;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      Json out = Json::array();
      for (int c = 0; c < d; ++c) {
        if (!is_zero(X.product(a, b, c))) out.push_back(Json{X.basis[static_cast<std::size_t>(c)], to_string(X.product(a, b, c))});
      }
      if (!out.empty()) p.push_back(Json{{"inputs", {X.basis[static_cast<std::size_t>(a)], X.basis[static_cast<std::size_t>(b)]}}, {"output", out}});
    }
  }
  j["products"] = p;
  return j;
}

std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

DocumentError::DocumentError(std::string w, const std::string& what)
    : std::runtime_error((w.empty() ? std::string("/") : w) + ": " + what), where(w.empty() ? "/" : std::move(w)) {}

const NamedElement* Document::element(const std::string& n) const {
  for (const auto& e : elements) {
    if (e.name == n) return &e;
  }
  return nullptr;
}

Document parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DocumentError(locate(text, e.byte), "invalid JSON");
  }
  if (!j.is_object()) throw DocumentError("/", "expected an object");
  const std::string format = get_string(field(j, "format", ""), "/format");
  if (format != kFormat) throw DocumentError("/format", "unsupported format \"" + format + "\", expected \"" + kFormat + "\"");
  static const std::set<std::string> known = {"format",   "name",         "algebra",     "elements",
                                              "examples", "morphism",     "coefficients", "associative"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw DocumentError("/" + key, "unknown field");
  }

  Document doc;
  doc.name = j.contains("name") ? get_string(j["name"], "/name") : "";
  try {
    if (j.contains("algebra")) doc.algebra = parse_algebra(j["algebra"], "/algebra");
    if (j.contains("associative")) doc.associative = parse_associative(j["associative"], "/associative", doc.name);
    if (j.contains("coefficients")) doc.coefficients = parse_coefficients(j["coefficients"], "/coefficients");
  } catch (const StructuralError& e) {
    throw DocumentError("/", e.what());
  }
  if (!doc.algebra && !doc.associative) throw DocumentError("/", "a document needs \"algebra\" or \"associative\"");

  if (j.contains("elements")) {
    const Json& e = j["elements"];
    if (!e.is_object()) throw DocumentError("/elements", "expected an object of named elements");
    for (const auto& [name, value] : e.items()) {
      doc.elements.push_back({name, get_terms(value, "/elements/" + name)});
      if (doc.algebra) exact_vector(*doc.algebra->space, doc.elements.back().terms, "/elements/" + name);
    }
  }

  if (j.contains("morphism")) {
    const std::string w = "/morphism";
    const Json& m = j["morphism"];
    if (!doc.algebra) throw DocumentError(w, "a morphism needs a source \"algebra\"");
    MorphismBlock block;
    if (m.contains("name")) block.name = get_string(m["name"], at(w, "name"));
    const Json& target = field(m, "target", w);
    block.target_name = target.contains("name") ? get_string(target["name"], at(at(w, "target"), "name")) : "target";
    try {
      block.target = parse_algebra(target, at(w, "target"));
    } catch (const StructuralError& e) {
      throw DocumentError(at(w, "target"), e.what());
    }
    if (m.contains("images")) {
      const std::string iw = at(w, "images");
      if (!m["images"].is_object()) throw DocumentError(iw, "expected an object mapping source ids to target terms");
      std::vector<std::pair<std::string, Terms>> images;
      for (const auto& [id, value] : m["images"].items()) {
        lookup(*doc.algebra->space, id, iw + "/" + id);
        Terms t = get_terms(value, iw + "/" + id);
        exact_vector(*block.target.space, t, iw + "/" + id);
        images.emplace_back(id, std::move(t));
      }
      block.images = std::move(images);
    }
    doc.morphism = std::move(block);
  }

  if (j.contains("examples")) {
    const std::string w = "/examples";
    const Json& ex = j["examples"];
    auto name = [&](const Json& v, const std::string& where) {
      const std::string n = get_string(v, where);
      if (!doc.element(n)) throw DocumentError(where, "unknown element \"" + n + "\"");
      return n;
    };
    auto list = [&](const char* key) -> const Json& {
      static const Json empty = Json::array();
      return ex.contains(key) ? get_array(ex[key], at(w, key)) : empty;
    };
    for (const auto& key : ex.items()) {
      if (key.key() != "mc" && key.key() != "gauge" && key.key() != "group" && key.key() != "lift_targets") {
        throw DocumentError(at(w, key.key()), "unknown field");
      }
    }
    const Json& mc = list("mc");
    for (std::size_t i = 0; i < mc.size(); ++i) doc.examples.mc.push_back(name(mc[i], at(at(w, "mc"), i)));
    const Json& gauge = list("gauge");
    for (std::size_t i = 0; i < gauge.size(); ++i) {
      const std::string gw = at(at(w, "gauge"), i);
      if (!gauge[i].is_array() || gauge[i].size() != 2) throw DocumentError(gw, "expected [xi, tau]");
      doc.examples.gauge.emplace_back(name(gauge[i][0], at(gw, 0)), name(gauge[i][1], at(gw, 1)));
    }
    const Json& group = list("group");
    for (std::size_t i = 0; i < group.size(); ++i) {
      const std::string gw = at(at(w, "group"), i);
      if (!group[i].is_array() || group[i].size() != 3) throw DocumentError(gw, "expected [x, y, tau]");
      doc.examples.group.push_back({name(group[i][0], at(gw, 0)), name(group[i][1], at(gw, 1)), name(group[i][2], at(gw, 2))});
    }
    const Json& lt = list("lift_targets");
    for (std::size_t i = 0; i < lt.size(); ++i) doc.examples.lift_targets.push_back(name(lt[i], at(at(w, "lift_targets"), i)));
  }
  return doc;
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

Json terms_to_json(const Terms& t) {
  Json out = Json::array();
  for (const auto& [id, q] : t) out.push_back(Json{id, to_string(q)});
  return out;
}

Json vector_to_json(const GradedSpace& space, const Vector& v) {
  Json out = Json::array();
  for (const auto& [i, q] : v) out.push_back(Json{space[i].id, to_string(q)});
  return out;
}

Json algebra_to_json(const LInftyAlgebra& g) {
  Json j;
  j["max_arity"] = g.max_arity();
  j["basis"] = basis_to_json(*g.space);
  Json b = Json::array();
  for (int k = 1; k <= g.max_arity(); ++k) {
    for (const auto& [t, v] : g.entries(k)) {
      if (v.is_zero()) continue;
      Json inputs = Json::array();
      for (Index i : t) inputs.push_back((*g.space)[i].id);
      b.push_back(Json{{"inputs", inputs}, {"output", vector_to_json(*g.space, v)}});
    }
  }
  j["brackets"] = b;
  return j;
}

Json to_json(const Document& doc) {
  Json j;
  j["format"] = kFormat;
  if (!doc.name.empty()) j["name"] = doc.name;
  if (doc.algebra) j["algebra"] = algebra_to_json(*doc.algebra);
  if (doc.associative) j["associative"] = associative_to_json(*doc.associative);
  if (doc.coefficients) j["coefficients"] = coefficients_to_json(*doc.coefficients);
  if (!doc.elements.empty()) {
    Json e = Json::object();
    for (const auto& el : doc.elements) e[el.name] = terms_to_json(el.terms);
    j["elements"] = e;
  }
  if (doc.morphism) {
    Json m;
    m["name"] = doc.morphism->name;
    Json target = Json{{"name", doc.morphism->target_name}};
    target.update(algebra_to_json(doc.morphism->target));
    m["target"] = target;
    if (doc.morphism->images) {
      Json images = Json::object();
      for (const auto& [id, t] : *doc.morphism->images) images[id] = terms_to_json(t);
      m["images"] = images;
    }
    j["morphism"] = m;
  }
  const auto& ex = doc.examples;
  if (!ex.mc.empty() || !ex.gauge.empty() || !ex.group.empty() || !ex.lift_targets.empty()) {
    Json e = Json::object();
    if (!ex.mc.empty()) e["mc"] = ex.mc;
    if (!ex.gauge.empty()) {
      Json g = Json::array();
      for (const auto& [a, b] : ex.gauge) g.push_back(Json{a, b});
      e["gauge"] = g;
    }
    if (!ex.group.empty()) {
      Json g = Json::array();
      for (const auto& t : ex.group) g.push_back(Json{t[0], t[1], t[2]});
      e["group"] = g;
    }
    if (!ex.lift_targets.empty()) e["lift_targets"] = ex.lift_targets;
    j["examples"] = e;
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Vector resolve(const Terms& terms, const GradedSpace& space, const GradedSpace& full, const std::string& where) {
  Vector v;
  for (const auto& [id, q] : terms) {
    bool found = false;
    for (Index i = 0; i < space.size(); ++i) {
      if (space[i].id == id) {
        v.add(i, q);
        found = true;
        break;
      }
    }
    if (!found) lookup(full, id, where);
  }
  return v;
}

Terms parse_terms(const std::string& text, const Document& doc, const std::string& where) {
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
  };
  const std::string s = trim(text);
  if (s.empty() || s == "0") return {};
  if (const NamedElement* e = doc.element(s)) return e->terms;
  Terms out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string item = trim(s.substr(pos, comma - pos));
    const std::size_t colon = item.rfind(':');
    if (colon == std::string::npos) {
      throw DocumentError(where, "expected \"id:rational\" at character " + std::to_string(pos + 1) + " or an element name");
    }
    try {
      out.emplace_back(trim(item.substr(0, colon)), parse_rational(trim(item.substr(colon + 1))));
    } catch (const std::invalid_argument& e) {
      throw DocumentError(where, std::string(e.what()) + " at character " + std::to_string(pos + colon + 2));
    }
    pos = comma + 1;
  }
  return out;
}

FilteredMorphism build_morphism(const Document& doc) {
  if (!doc.morphism) throw DocumentError("/morphism", "the document has no morphism block");
  const MorphismBlock& m = *doc.morphism;
  if (!m.images) return projection_morphism(*doc.algebra, m.target, m.name);
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, Rational>>>> images(m.images->begin(), m.images->end());
  return morphism_from_images(*doc.algebra, m.target, images, m.name);
}

}  // namespace linf::io
