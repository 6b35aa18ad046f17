#include "commands.hpp"

#include "document.hpp"

#include "linf/defcomplex.hpp"
#include "linf/errors.hpp"
#include "linf/filtered.hpp"
#include "linf/gauge.hpp"
#include "linf/maurer_cartan.hpp"
#include "linf/morphisms.hpp"
#include "linf/simplicial.hpp"
#include "linf/tangent.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <ostream>

namespace linf::cli {

namespace {

using io::Json;

struct Options {
  std::string command;
  std::string file;
  int truncation = 4;
  int arity_bound = 0;  // 0: max arity + 1
  int order = 2;
  int t_degree = -1;    // -1: truncation - 1
  int dimension = 1;
  std::string format = "json";
  std::string element;
  std::string xi;
  std::string x;
  std::string y;
  std::string simplex;
};

enum class Verdict { Pass, Fail, Undecided };

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Undecided: return "undecided";
  }
  return "fail";
}

// An input problem found after parsing, reported like a document error.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  Options opt;
  io::Document doc;
  LInftyAlgebra full;  // the document algebra, or the filtered convolution algebra
  LInftyAlgebra g;     // g / F_R
  std::optional<ConvolutionComplex> conv;

  int R() const { return opt.truncation; }
  int arity_bound() const { return opt.arity_bound > 0 ? opt.arity_bound : g.max_arity() + 1; }
  int t_degree() const { return opt.t_degree >= 0 ? opt.t_degree : R() - 1; }

  /// An element of `space` (a quotient of `whole`) from a text; empty text
  /// gives the document element "phi", the product for Hochschild documents,
  /// or zero.
  Vector element(const std::string& text, const std::string& flag, const GradedSpace& space,
                 const GradedSpace& whole) const {
    if (text.empty()) {
      if (const auto* e = doc.element("phi")) return io::resolve(e->terms, space, whole, "/elements/phi");
      if (conv) return conv->mu_element(space);
      return Vector{};
    }
    return io::resolve(io::parse_terms(text, doc, flag), space, whole, flag);
  }
  Vector element(const std::string& text, const std::string& flag) const {
    return element(text, flag, *g.space, *full.space);
  }
  Vector required(const std::string& text, const std::string& flag) const {
    if (text.empty()) throw UsageError(flag + " is required for " + opt.command);
    return element(text, flag);
  }
};

Json violations_json(const StructureReport& r) {
  Json out = Json::array();
  for (const auto& v : r.violations) out.push_back(Json{{"kind", v.kind}, {"witness", v.witness}, {"detail", v.detail}});
  return out;
}

Json vectors_json(const GradedSpace& space, const std::vector<Vector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(format_vector(space, v));
  return out;
}

Json rationals_json(const std::vector<Rational>& qs) {
  Json out = Json::array();
  for (const auto& q : qs) out.push_back(to_string(q));
  return out;
}

Json path_json(const GradedSpace& space, const PolynomialPath& p) {
  Json out = Json::array();
  for (std::size_t r = 0; r < p.coefficients.size(); ++r) {
    if (!p.coefficients[r].is_zero()) out.push_back(Json{{"t_power", r}, {"coefficient", format_vector(space, p.coefficients[r])}});
  }
  return out;
}

Json form_json(const GradedSpace& space, const Simplex& s) {
  Json out = Json::array();
  for (const auto& [m, v] : s.form) {
    if (!v.is_zero()) out.push_back(Json{{"monomial", monomial_id(m)}, {"coefficient", format_vector(space, v)}});
  }
  return out;
}

Verdict both(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }

// Structure checks shared by verify and twist.
bool structure_checks(const LInftyAlgebra& g, int arity_bound, Json& report, const std::string& prefix) {
  const StructureReport s = verify_structure(g, arity_bound);
  const StructureReport f = check_filtration(g);
  const LinearMap d = differential(g);
  const bool square_zero = [&] {
    const LinearMap dd = compose(d, d);
    for (const auto& c : dd.columns) {
      if (!c.is_zero()) return false;
    }
    return true;
  }();
  report[prefix + "tuples_checked"] = s.tuples_checked;
  report[prefix + "violations"] = violations_json(s);
  report[prefix + "filtration_violations"] = violations_json(f);
  report[prefix + "differential_squares_to_zero"] = square_zero;
  return s.ok() && f.ok() && square_zero;
}

Verdict cmd_verify(const Context& c, Json& r) {
  r["dimension"] = c.g.space->size();
  r["arity_bound"] = c.arity_bound();
  return both(structure_checks(c.g, c.arity_bound(), r, ""));
}

Verdict cmd_truncate(const Context& c, Json& r) {
  io::Document out = c.doc;
  if (out.algebra) {
    out.algebra = c.g;
    for (auto& e : out.elements) {
      std::erase_if(e.terms, [&](const auto& t) {
        return std::none_of(c.g.space->elements().begin(), c.g.space->elements().end(),
                            [&](const BasisElement& b) { return b.id == t.first; });
      });
    }
    if (out.morphism) out.morphism->target = truncate(out.morphism->target, c.R());
  }
  r["dimension"] = c.g.space->size();
  r["document"] = io::to_json(out);
  return Verdict::Pass;
}

Verdict cmd_mc_residual(const Context& c, Json& r) {
  const Vector tau = c.element(c.opt.element, "--element");
  const Vector res = mc_residual(c.g, tau);
  r["element"] = format_vector(*c.g.space, tau);
  r["residual"] = format_vector(*c.g.space, res);
  if (!res.is_zero()) {
    Json w = Json::array();
    for (int k = 1; k <= c.R(); ++k) {
      const Vector part = weight_component(*c.g.space, res, k);
      if (!part.is_zero()) w.push_back(Json{{"weight", k}, {"witness", format_vector(*c.g.space, part)}});
    }
    r["witness"] = format_vector(*c.g.space, res);
    r["by_weight"] = w;
  }
  return both(res.is_zero());
}

Verdict cmd_mc_system(const Context& c, Json& r) {
  const PolynomialSystem sys = mc_polynomial_system(c.g);
  r["variables"] = sys.variables;
  Json eqs = Json::array();
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    eqs.push_back(Json{{"component", sys.equation_labels[i]}, {"polynomial", format_polynomial(sys.equations[i], sys.variables)}});
  }
  r["equations"] = eqs;
  return Verdict::Pass;
}

Verdict cmd_twist(const Context& c, Json& r) {
  const Vector phi = c.element(c.opt.element, "--element");
  r["element"] = format_vector(*c.g.space, phi);
  const Vector res = mc_residual(c.g, phi);
  if (!res.is_zero()) {
    r["witness"] = format_vector(*c.g.space, res);
    r["detail"] = "not a Maurer-Cartan element";
    return Verdict::Fail;
  }
  const LInftyAlgebra t = twist(c.g, certify_mc(c.g, phi));
  const bool ok = structure_checks(t, c.arity_bound(), r, "twisted_");
  r["twisted"] = io::algebra_to_json(t);
  return both(ok);
}

Verdict cmd_lift(const Context& c, Json& r) {
  const Vector phi = c.element(c.opt.element, "--element");
  r["element"] = format_vector(*c.g.space, phi);
  const Vector res = mc_residual(c.g, phi);
  if (!res.is_zero()) {
    r["witness"] = format_vector(*c.g.space, res);
    r["detail"] = "not a Maurer-Cartan element";
    return Verdict::Fail;
  }
  if (c.opt.order < 1) throw UsageError("--order must be at least 1");
  const auto rep = lift_deformation(c.g, certify_mc(c.g, phi), c.opt.order + 1);
  const GradedSpace& s = *c.g.space;
  r["coefficients"] = "K[t]/(t^" + std::to_string(c.opt.order + 1) + ")";
  r["h1"] = rep.h1.dimension;
  r["h2"] = rep.h2.dimension;
  Json traces = Json::array();
  bool all = true;
  for (const auto& t : rep.traces) {
    Json j;
    j["first_order"] = format_vector(s, t.first_order);
    j["reached_order"] = t.reached_order;
    j["coefficients"] = vectors_json(s, t.coefficients);
    if (t.obstruction) {
      j["obstruction"] = format_vector(s, *t.obstruction);
      j["obstruction_class"] = rationals_json(t.obstruction_class);
      all = false;
    }
    traces.push_back(j);
  }
  r["traces"] = traces;
  Json k = Json::array();
  for (const auto& row : rep.kuranishi) {
    Json jr = Json::array();
    for (const auto& cls : row) jr.push_back(rationals_json(cls));
    k.push_back(jr);
  }
  r["kuranishi"] = k;
  r["unobstructed"] = all;
  return Verdict::Pass;
}

Verdict cmd_gauge_act(const Context& c, Json& r) {
  const Vector xi = c.required(c.opt.xi, "--xi");
  const Vector tau = c.element(c.opt.element, "--element");
  const Vector out = gauge_act(c.g, xi, tau);
  r["xi"] = format_vector(*c.g.space, xi);
  r["element"] = format_vector(*c.g.space, tau);
  r["result"] = format_vector(*c.g.space, out);
  r["result_terms"] = io::vector_to_json(*c.g.space, out);
  const bool was_mc = mc_residual(c.g, tau).is_zero();
  const bool is = mc_residual(c.g, out).is_zero();
  r["element_is_mc"] = was_mc;
  r["result_is_mc"] = is;
  return both(was_mc == is);
}

Verdict cmd_gauge_connect(const Context& c, Json& r) {
  const Vector xi = c.required(c.opt.xi, "--xi");
  const Vector tau = c.element(c.opt.element, "--element");
  const GradedSpace& s = *c.g.space;
  r["xi"] = format_vector(s, xi);
  r["element"] = format_vector(s, tau);
  if (!mc_residual(c.g, tau).is_zero()) {
    r["witness"] = format_vector(s, mc_residual(c.g, tau));
    r["detail"] = "not a Maurer-Cartan element";
    return Verdict::Fail;
  }
  const Homotopy h = homotopy_from_gauge(c.g, xi, tau);
  r["f0"] = path_json(s, h.f0);
  r["f1"] = path_json(s, h.f1);
  const auto problems = check_homotopy(c.g, h);
  r["homotopy_violations"] = problems;
  const auto [start, end] = homotopy_faces(c.g, h);
  const Vector target = gauge_act(c.g, xi, tau);
  r["start"] = format_vector(s, start);
  r["end"] = format_vector(s, end);
  const bool endpoints = start == tau && end == target;
  r["endpoints_match"] = endpoints;
  const Vector back = gauge_from_homotopy(c.g, h);
  r["recovered_xi"] = format_vector(s, back);
  const bool same_action = gauge_act(c.g, back, tau) == target;
  r["recovered_acts_identically"] = same_action;
  bool flow = false;
  try {
    flow = solve_flow(c.g, h.f1, tau, c.t_degree()) == h.f0;
  } catch (const UnsupportedError& e) {
    r["flow_detail"] = e.what();
  }
  r["t_degree"] = c.t_degree();
  r["flow_reproduces_f0"] = flow;
  return both(problems.empty() && endpoints && same_action && flow);
}

Verdict cmd_bch(const Context& c, Json& r) {
  const Vector x = c.required(c.opt.x, "--x");
  const Vector y = c.required(c.opt.y, "--y");
  const Vector z = bch(c.g, x, y);
  r["x"] = format_vector(*c.g.space, x);
  r["y"] = format_vector(*c.g.space, y);
  r["bch"] = format_vector(*c.g.space, z);
  r["bch_terms"] = io::vector_to_json(*c.g.space, z);
  if (!c.opt.element.empty()) {
    const Vector tau = c.element(c.opt.element, "--element");
    const bool law = gauge_act(c.g, z, tau) == gauge_act(c.g, x, gauge_act(c.g, y, tau));
    r["element"] = format_vector(*c.g.space, tau);
    r["group_law"] = law;
    return both(law);
  }
  return Verdict::Pass;
}

// "x:1, y*t:1/2, z*t1*dt2:-1" against the monomials of Omega_n up to poly degree D.
Simplex parse_simplex(const Context& c, const std::string& text, int n) {
  const SullivanForms w = omega(n, std::max(c.t_degree(), 1));
  Simplex s;
  s.dimension = n;
  for (const auto& [key, q] : io::parse_terms(text, c.doc, "--simplex")) {
    const auto star = key.find('*');
    const std::string id = key.substr(0, star);
    const std::string mono = star == std::string::npos ? "1" : key.substr(star + 1);
    const auto it = std::find_if(w.monomials.begin(), w.monomials.end(), [&](const FormMonomial& m) { return monomial_id(m) == mono; });
    if (it == w.monomials.end()) {
      throw UsageError("--simplex: unknown monomial \"" + mono + "\" on the " + std::to_string(n) +
                       "-simplex (raise --t-degree for higher powers)");
    }
    const Vector v = io::resolve({{id, q}}, *c.g.space, *c.full.space, "--simplex");
    s.form[*it] = s.form[*it] + v;
  }
  return normalize(s);
}

Verdict cmd_simplex_verify(const Context& c, Json& r) {
  Simplex s;
  if (!c.opt.simplex.empty()) {
    if (c.opt.dimension < 0 || c.opt.dimension > 2) throw UsageError("--dimension must be 0, 1 or 2");
    s = parse_simplex(c, c.opt.simplex, c.opt.dimension);
  } else if (!c.opt.xi.empty()) {
    s = homotopy_to_simplex(homotopy_from_gauge(c.g, c.element(c.opt.xi, "--xi"), c.element(c.opt.element, "--element")));
  } else {
    s = constant_simplex(c.element(c.opt.element, "--element"), c.opt.dimension);
  }
  const GradedSpace& sp = *c.g.space;
  r["dimension"] = s.dimension;
  r["form"] = form_json(sp, s);
  const SimplexCheck chk = mc_simplex_verify(c.g, s);
  if (!chk.ok) {
    r["witness"] = chk.detail;
    r["residual"] = form_json(sp, chk.residual);
  }
  Json faces = Json::array();
  for (int i = 0; i <= s.dimension && s.dimension > 0; ++i) faces.push_back(form_json(sp, face(s, i)));
  r["faces"] = faces;
  return both(chk.ok);
}

Verdict cmd_pi0(const Context& c, Json& r) {
  const Vector phi = c.element(c.opt.element, "--element");
  const CoefficientAlgebra A = c.doc.coefficients ? *c.doc.coefficients : truncated_polynomial(c.opt.order + 1);
  r["element"] = format_vector(*c.g.space, phi);
  r["coefficients"] = A.name;
  if (!mc_residual(c.g, phi).is_zero()) {
    r["witness"] = format_vector(*c.g.space, mc_residual(c.g, phi));
    r["detail"] = "not a Maurer-Cartan element";
    return Verdict::Fail;
  }
  const ModuliReport m = pi0(c.g, A, phi);
  if (!m.decided()) {
    r["detail"] = m.detail;
    return Verdict::Undecided;
  }
  r["h1"] = m.h1->dimension;
  r["representatives"] = vectors_json(*m.extended.algebra.space, m.h1->representatives);
  return Verdict::Pass;
}

FilteredMorphism context_morphism(const Context& c) {
  if (!c.doc.morphism) throw UsageError(c.opt.command + " needs a document with a morphism block");
  return truncate_morphism(io::build_morphism(c.doc), c.R());
}

Verdict cmd_morphism_verify(const Context& c, Json& r) {
  const FilteredMorphism f = context_morphism(c);
  const StructureReport s = verify_morphism(f, c.arity_bound());
  r["morphism"] = f.name;
  r["tuples_checked"] = s.tuples_checked;
  r["violations"] = violations_json(s);
  return both(s.ok());
}

Verdict cmd_gm_check(const Context& c, Json& r) {
  const FilteredMorphism f = context_morphism(c);
  const Vector phi = c.element(c.opt.element, "--element");
  const GoldmanMillsonReport g = goldman_millson_check(f, phi, c.R(), c.opt.order);
  r["morphism"] = f.name;
  r["element"] = format_vector(*f.source.space, phi);
  r["hypotheses_ok"] = g.hypotheses_ok;
  if (!g.hypotheses_ok) r["hypothesis_detail"] = g.hypothesis_detail;
  r["image"] = format_vector(*f.target.space, g.image_phi);
  r["h1_source"] = g.h1_source;
  r["h1_target"] = g.h1_target;
  r["h1_bijective"] = g.h1_bijective;
  r["h2_injective"] = g.h2_injective;
  r["max_order"] = g.max_order;
  r["obstructions_correspond"] = g.obstructions_correspond;
  r["orbits_correspond"] = g.orbits_correspond;
  r["failures"] = g.failures;
  return both(g.ok());
}

Verdict cmd_tangent(const Context& c, Json& r) {
  const LInftyAlgebra& g = c.conv ? c.conv->full : c.g;
  const Vector phi = c.element(c.opt.element, "--element", *g.space, c.conv ? *c.conv->full.space : *c.full.space);
  r["element"] = format_vector(*g.space, phi);
  const Vector res = mc_residual(g, phi);
  if (!res.is_zero()) {
    r["witness"] = format_vector(*g.space, res);
    r["detail"] = "not a Maurer-Cartan element";
    return Verdict::Fail;
  }
  const MCElement mc = certify_mc(g, phi);
  const TangentComplexResult tc = tangent_complex(g, mc);
  r["h_minus1"] = tc.h_minus1.size();
  r["stabilizer"] = vectors_json(*g.space, tc.h_minus1);
  r["h0_representatives"] = vectors_json(*g.space, tc.h0_representatives);
  try {
    const TangentReport t = tangent_report(g, mc);
    r["h0_tangent"] = t.h0_tangent;
    r["h1_twisted"] = t.h1_twisted;
    r["order1_deformations"] = t.order1_deformations;
    r["lift_classes"] = t.lift_classes;
  } catch (const InvariantError& e) {
    r["detail"] = e.what();
    return Verdict::Fail;
  }
  return Verdict::Pass;
}

Verdict cmd_hochschild(const Context& c, Json& r) {
  if (!c.conv) throw UsageError("hochschild needs a document with an \"associative\" block");
  const ConvolutionComplex& cc = *c.conv;
  r["algebra"] = cc.data.name;
  r["N"] = cc.N;
  r["piece_dimensions"] = cc.piece_dimensions;
  r["quotient_degree1_dims"] = cc.quotient_degree1_dims;
  const StructureMCReport s = structure_as_mc(cc);
  r["associative"] = s.associative;
  r["is_mc"] = s.is_mc;
  r["residual_matches_associator"] = s.residual_matches_associator;
  if (!s.is_mc) {
    r["witness"] = format_vector(*cc.filtered.space, s.residual);
    return Verdict::Fail;
  }
  const DeformationPipelineReport p = deformation_pipeline(cc, c.opt.order);
  const GradedSpace& sp = *cc.full.space;
  r["h0_tangent"] = p.tangent.h0_tangent;
  r["h1_twisted"] = p.tangent.h1_twisted;
  r["order1_deformations"] = p.tangent.order1_deformations;
  r["h_minus1"] = p.tangent.h_minus1;
  r["h2"] = p.lifts.h2.dimension;
  Json traces = Json::array();
  for (const auto& t : p.lifts.traces) {
    Json j;
    j["first_order"] = format_vector(sp, t.first_order);
    j["reached_order"] = t.reached_order;
    if (t.obstruction) {
      j["obstruction"] = format_vector(sp, *t.obstruction);
      j["obstruction_class"] = rationals_json(t.obstruction_class);
    }
    traces.push_back(j);
  }
  r["traces"] = traces;
  return both(s.residual_matches_associator);
}

const std::vector<std::pair<std::string, std::function<Verdict(const Context&, Json&)>>>& commands() {
  static const std::vector<std::pair<std::string, std::function<Verdict(const Context&, Json&)>>> table = {
      {"verify", cmd_verify},
      {"truncate", cmd_truncate},
      {"mc-residual", cmd_mc_residual},
      {"mc-system", cmd_mc_system},
      {"twist", cmd_twist},
      {"lift", cmd_lift},
      {"gauge-act", cmd_gauge_act},
      {"gauge-connect", cmd_gauge_connect},
      {"bch", cmd_bch},
      {"simplex-verify", cmd_simplex_verify},
      {"pi0", cmd_pi0},
      {"morphism-verify", cmd_morphism_verify},
      {"gm-check", cmd_gm_check},
      {"tangent", cmd_tangent},
      {"hochschild", cmd_hochschild},
  };
  return table;
}

void render_text(const Json& j, std::ostream& out, const std::string& indent) {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      out << indent << key << ":\n";
      render_text(value, out, indent + "  ");
    } else if (value.is_array() && std::any_of(value.begin(), value.end(), [](const Json& v) { return v.is_structured(); })) {
      out << indent << key << ":\n";
      for (const auto& v : value) {
        if (v.is_object()) {
          out << indent << "  -\n";
          render_text(v, out, indent + "    ");
        } else {
          out << indent << "  - " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
      }
    } else if (value.is_array()) {
      out << indent << key << ": [";
      bool first = true;
      for (const auto& v : value) {
        out << (first ? "" : ", ") << (v.is_string() ? v.get<std::string>() : v.dump());
        first = false;
      }
      out << "]\n";
    } else {
      out << indent << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"exact workbench for filtered L-infinity algebras", "linf"};
  app.require_subcommand(1);
  for (const auto& [name, fn] : commands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("file", opt.file, "linf/1 document")->required();
    sub->add_option("--truncation", opt.truncation, "work in g / F_R")->check(CLI::Range(1, 64));
    sub->add_option("--arity-bound", opt.arity_bound, "Jacobi checks up to this arity")->check(CLI::Range(1, 16));
    sub->add_option("--order", opt.order, "deformation order n")->check(CLI::Range(1, 16));
    sub->add_option("--t-degree", opt.t_degree, "polynomial degree bound in t")->check(CLI::Range(0, 64));
    sub->add_option("--format", opt.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--element", opt.element, "element \"id:q, ...\" or a document element name");
    sub->add_option("--xi", opt.xi, "degree-0 gauge parameter");
    sub->add_option("--x", opt.x, "first BCH argument");
    sub->add_option("--y", opt.y, "second BCH argument");
    sub->add_option("--simplex", opt.simplex, "form \"id*monomial:q, ...\"");
    sub->add_option("--dimension", opt.dimension, "simplex dimension");
    sub->callback([&opt, name = name] { opt.command = name; });
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Context c;
  c.opt = opt;
  Json report;
  report["format"] = io::kFormat;
  report["command"] = opt.command;
  report["input"] = opt.file;
  Verdict verdict = Verdict::Fail;
  try {
    c.doc = io::load_document(opt.file);
    if (c.doc.algebra) {
      c.full = *c.doc.algebra;
    } else {
      if (c.R() < 3) throw UsageError("--truncation must be at least 3 for a Hochschild document");
      c.conv = build_convolution(*c.doc.associative, c.R() - 1);
      c.full = c.conv->filtered;
    }
    c.g = truncate(c.full, c.R());
    report["name"] = c.doc.name;
    report["truncation"] = c.R();
    const auto it = std::find_if(commands().begin(), commands().end(), [&](const auto& p) { return p.first == opt.command; });
    Json body;
    verdict = it->second(c, body);
    report["verdict"] = verdict_name(verdict);
    report.update(body);
  } catch (const io::DocumentError& e) {
    err << "error: " << opt.file << ": " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    err << "error: " << opt.file << ": " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    err << "error: " << opt.file << ": unsupported: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    err << "error: " << opt.file << ": " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    err << "internal check failed: " << e.what() << "\n";
    return 1;
  }
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
  report["timing_us"] = static_cast<long long>(us);
  if (opt.format == "text") {
    render_text(report, out, "");
  } else {
    out << io::dump(report);
  }
  return verdict == Verdict::Fail ? 1 : 0;
}

}  // namespace linf::cli
