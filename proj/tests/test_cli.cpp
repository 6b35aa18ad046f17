#include "commands.hpp"
#include "document.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using linf::io::Json;

namespace {

const std::string kCorpus = LINF_CORPUS_DIR;

std::string corpus(const std::string& name) { return kCorpus + "/" + name; }

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome r;
  r.code = linf::cli::execute(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string without_timing(const std::string& report) {
  Json j = Json::parse(report);
  j.erase("timing_us");
  return j.dump();
}

bool has_float(const Json& j) {
  if (j.is_number_float()) return true;
  if (j.is_structured()) {
    for (const auto& v : j) {
      if (has_float(v)) return true;
    }
  }
  return false;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("linf_cli_" + name + ".json");
  std::ofstream(path) << text;
  return path.string();
}

const std::vector<std::string> kFiles = {"abelian.json",        "nil2.json",
                                         "heis0.json",          "twistable.json",
                                         "gm-a-pair.json",      "hochschild-k1.json",
                                         "hochschild-k2-diagonal.json", "hochschild-k2-dualnumbers.json"};

// One representative invocation per subcommand, with the expected exit code.
const std::vector<std::pair<std::vector<std::string>, int>> kInvocations = {
    {{"verify", corpus("heis0.json")}, 0},
    {{"truncate", corpus("heis0.json"), "--truncation", "2"}, 0},
    {{"mc-residual", corpus("twistable.json")}, 0},
    {{"mc-system", corpus("twistable.json")}, 0},
    {{"twist", corpus("twistable.json"), "--element", "psi"}, 0},
    {{"lift", corpus("twistable.json"), "--order", "3"}, 0},
    {{"gauge-act", corpus("heis0.json"), "--xi", "xi"}, 0},
    {{"gauge-connect", corpus("heis0.json"), "--xi", "xi", "--element", "uv"}, 0},
    {{"bch", corpus("heis0.json"), "--x", "p", "--y", "q", "--element", "phi"}, 0},
    {{"simplex-verify", corpus("twistable.json"), "--xi", "xi"}, 0},
    {{"pi0", corpus("abelian.json")}, 0},
    {{"morphism-verify", corpus("gm-a-pair.json")}, 0},
    {{"gm-check", corpus("gm-a-pair.json"), "--element", "phi_dw"}, 0},
    {{"tangent", corpus("gm-a-pair.json")}, 0},
    {{"hochschild", corpus("hochschild-k2-dualnumbers.json")}, 0},
};

}  // namespace

TEST(Cli, VerifyNil2) {
  const Outcome r = run({"verify", corpus("nil2.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["verdict"], "pass");
}

TEST(Cli, ResidualWitness) {
  const Outcome r = run({"mc-residual", corpus("nil2.json"), "--element", "x:1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(Json::parse(r.out)["witness"], "1/2·y");
}

TEST(Cli, HochschildTangent) {
  const Outcome r = run({"tangent", corpus("hochschild-k2-diagonal.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["h0_tangent"], j["h1_twisted"]);
  EXPECT_EQ(j["h1_twisted"], j["order1_deformations"]);
}

TEST(Cli, EverySubcommand) {
  for (const auto& [args, code] : kInvocations) {
    const Outcome r = run(args);
    EXPECT_EQ(r.code, code) << args[0] << ": " << r.err << r.out;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["format"], "linf/1");
    EXPECT_EQ(j["command"], args[0]);
    EXPECT_TRUE(j["timing_us"].is_number_integer());
  }
}

TEST(Cli, FailingVerdicts) {
  EXPECT_EQ(run({"twist", corpus("nil2.json"), "--element", "x"}).code, 1);
  EXPECT_EQ(run({"simplex-verify", corpus("nil2.json"), "--simplex", "x*t:1"}).code, 1);
  EXPECT_EQ(run({"gm-check", corpus("gm-a-pair.json"), "--element", "x:1"}).code, 1);
  // K[t]/(t^2) with (t, t -> t) is not associative
  const std::string bad = write_temp("nonassoc", R"({"format": "linf/1", "associative": {"basis": ["1", "t"],
    "products": [{"inputs": ["t", "t"], "output": [["t", "1"]]}, {"inputs": ["1", "1"], "output": [["t", "1"]]}]}})");
  const Outcome r = run({"hochschild", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(Json::parse(r.out).contains("witness"));
}

TEST(Cli, Determinism) {
  for (const auto& [args, code] : kInvocations) {
    const Outcome a = run(args);
    const Outcome b = run(args);
    EXPECT_EQ(without_timing(a.out), without_timing(b.out)) << args[0];
  }
}

TEST(Cli, NoFloatingPoint) {
  for (const auto& [args, code] : kInvocations) {
    const Outcome r = run(args);
    EXPECT_FALSE(has_float(Json::parse(r.out))) << args[0];
    auto text = args;
    text.push_back("--format");
    text.push_back("text");
    const Outcome t = run(text);
    EXPECT_EQ(t.code, code);
    EXPECT_EQ(t.out.find("e+"), std::string::npos);
    EXPECT_EQ(t.out.find("e-0"), std::string::npos);
  }
}

TEST(Cli, RoundTrip) {
  for (const auto& f : kFiles) {
    const auto doc = linf::io::load_document(corpus(f));
    const Json canonical = linf::io::to_json(doc);
    const Json again = linf::io::to_json(linf::io::parse_document(canonical.dump()));
    EXPECT_EQ(canonical, again) << f;
    // The corpus files are written in canonical form.
    std::ifstream in(corpus(f));
    EXPECT_EQ(Json::parse(in), canonical) << f;
  }
}

TEST(Cli, TruncateEmitsCanonicalDocument) {
  const Outcome r = run({"truncate", corpus("heis0.json"), "--truncation", "9"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["document"], linf::io::to_json(linf::io::load_document(corpus("heis0.json"))));
  const Outcome t = run({"truncate", corpus("heis0.json"), "--truncation", "2"});
  const auto doc = linf::io::parse_document(Json::parse(t.out)["document"].dump());
  EXPECT_EQ(doc.algebra->space->size(), 3u);
}

TEST(Cli, InputErrorsArePositioned) {
  struct Case {
    std::string name, text, where;
  };
  const std::vector<Case> cases = {
      {"syntax", "{\"format\": \"linf/1\",\n \"algebra\": {\"max_arity\": 2 \"basis\": []}}", "line 2, column"},
      {"float", R"({"format": "linf/1", "algebra": {"max_arity": 2, "basis": [{"id": "x", "degree": 1, "weight": 1}],
        "brackets": [{"inputs": ["x", "x"], "output": [["x", 0.5]]}]}})",
       "/algebra/brackets/0/output/0/1"},
      {"unknown", R"({"format": "linf/1", "algebra": {"max_arity": 2, "basis": [{"id": "x", "degree": 1, "weight": 1}],
        "brackets": [{"inputs": ["x", "q"], "output": [["x", "1"]]}]}})",
       "/algebra/brackets/0/inputs/1"},
      {"version", R"({"format": "linf/0", "algebra": {"max_arity": 2, "basis": []}})", "/format"},
      {"weight", R"({"format": "linf/1", "algebra": {"max_arity": 2, "basis": [{"id": "x", "degree": 1, "weight": 0}]}})",
       "/algebra/basis/0/weight"},
      {"arity", R"({"format": "linf/1", "algebra": {"max_arity": 1, "basis": [{"id": "x", "degree": 1, "weight": 1}],
        "brackets": [{"inputs": ["x", "x"], "output": []}]}})",
       "/algebra/brackets/0/inputs"},
      {"field", R"({"format": "linf/1", "algebra": {"max_arity": 1, "basis": []}, "extra": 1})", "/extra"},
  };
  for (const auto& c : cases) {
    const Outcome r = run({"verify", write_temp(c.name, c.text)});
    EXPECT_EQ(r.code, 2) << c.name;
    EXPECT_NE(r.err.find(c.where), std::string::npos) << c.name << ": " << r.err;
    EXPECT_TRUE(r.out.empty()) << c.name;
  }
  EXPECT_EQ(run({"verify", corpus("missing.json")}).code, 2);
  EXPECT_EQ(run({"frobnicate", corpus("nil2.json")}).code, 2);
  EXPECT_EQ(run({"mc-residual", corpus("nil2.json"), "--element", "x:0.5"}).code, 2);
  EXPECT_EQ(run({"mc-residual", corpus("nil2.json"), "--element", "nope:1"}).code, 2);
  EXPECT_EQ(run({"gauge-act", corpus("heis0.json")}).code, 2);
  EXPECT_EQ(run({"gm-check", corpus("heis0.json")}).code, 2);
  EXPECT_EQ(run({"verify", corpus("nil2.json"), "--format", "xml"}).code, 2);
}
