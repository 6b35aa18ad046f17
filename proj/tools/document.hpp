#pragma once

// The "linf/1" JSON document format: algebras, named elements, morphisms,
// coefficient algebras and associative structure constants. Rationals are
// always strings ("3", "-1/2"); JSON numbers are rejected for coefficients.

#include "linf/defcomplex.hpp"
#include "linf/filtered.hpp"
#include "linf/linf_core.hpp"
#include "linf/morphisms.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace linf::io {

using Json = nlohmann::ordered_json;
using Terms = std::vector<std::pair<std::string, Rational>>;

inline constexpr const char* kFormat = "linf/1";

/// Malformed input. `where` is "line L, column C" for syntax errors and a
/// JSON pointer for everything else.
class DocumentError : public std::runtime_error {
 public:
  DocumentError(std::string where, const std::string& what);
  std::string where;
};

struct NamedElement {
  std::string name;
  Terms terms;
};

struct MorphismBlock {
  std::string name = "f";
  std::string target_name;
  LInftyAlgebra target;
  std::optional<std::vector<std::pair<std::string, Terms>>> images;  // absent: projection by ids
};

struct ExampleBlock {
  std::vector<std::string> mc;                                  // MC elements
  std::vector<std::pair<std::string, std::string>> gauge;       // (xi, tau)
  std::vector<std::array<std::string, 3>> group;                // (x, y, tau)
  std::vector<std::string> lift_targets;                        // MC elements of the morphism target
};

struct Document {
  std::string name;
  std::optional<LInftyAlgebra> algebra;
  std::vector<NamedElement> elements;
  ExampleBlock examples;
  std::optional<MorphismBlock> morphism;
  std::optional<CoefficientAlgebra> coefficients;
  std::optional<FiniteAlgebraData> associative;

  const NamedElement* element(const std::string& name) const;
};

Document parse_document(const std::string& text);
Document load_document(const std::string& path);

Json algebra_to_json(const LInftyAlgebra& g);
Json terms_to_json(const Terms& t);
Json vector_to_json(const GradedSpace& space, const Vector& v);
/// Canonical form: brackets sorted by arity and canonical input order.
Json to_json(const Document& doc);
std::string dump(const Json& j);

/// Terms to a vector of `space`. Ids absent from `space` but present in
/// `full` are dropped (they lie in the truncated part); unknown ids throw.
Vector resolve(const Terms& terms, const GradedSpace& space, const GradedSpace& full, const std::string& where);
/// "x:1, z:-1/2", "0", or the name of an element of the document.
Terms parse_terms(const std::string& text, const Document& doc, const std::string& where);

FilteredMorphism build_morphism(const Document& doc);

}  // namespace linf::io
