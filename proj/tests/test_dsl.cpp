#include <gtest/gtest.h>

#include "rhocarroll/dsl/parser.hpp"
#include "rhocarroll/dsl/session.hpp"

using namespace rhoc;
using namespace rhoc::dsl;

namespace {

const char* kPlane = R"(params q
group Z^2
factor q_form=[[0,1],[-1,0]]
algebra qp integral_domain
generator x deg=(1,0) invertible
generator y deg=(0,1) invertible
derivation Dx { x -> x }
derivation Dy { y -> y }
pair QP {
  basis Dx; basis Dy
  anchor Dx -> Dx; anchor Dy -> Dy
}
metric G on QP { (Dx,Dx) -> 1 }
connection C on QP { (Dx,Dx) -> Dy }
carroll QPC { pair=QP metric=G sigma=Dy }
)";

std::string syntax_error(const std::string& src) {
  try {
    (void)parse(src);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Syntax);
    return e.what();
  }
  ADD_FAILURE() << "no syntax error for: " << src;
  return {};
}

Session run(const std::string& src) {
  Session s(3, 60);
  EXPECT_TRUE(s.run(parse(src))) << (s.records().empty() ? "" : s.records().back().message);
  return s;
}

bool is_nonzero(const Value& v) {
  return std::visit([](const auto& x) { return !x.is_zero(); }, v);
}

// Every failing record must carry a witness that evaluates to something nonzero.
int check_witnesses(Session& s) {
  int fails = 0;
  for (const auto& r : s.records()) {
    if (r.kind != Record::Kind::Check || r.check.status != Status::Fail) continue;
    ++fails;
    EXPECT_TRUE(r.check.witness) << r.check.check;
    if (!r.check.witness) continue;
    const Value v = s.evaluate(*r.check.witness);
    EXPECT_TRUE(is_nonzero(v)) << r.check.check << ": " << *r.check.witness;
  }
  return fails;
}

}  // namespace

TEST(Lexer, ParsesCommentsAndContinuations) {
  const SessionAst ast = parse("params q # deformation\nfactor q_form=[[0,1],\n  [-1,0]]\n\neval (x +\n y)\n");
  ASSERT_EQ(ast.statements.size(), 3u);
  EXPECT_EQ(ast.statements[2].keyword, "eval");
  EXPECT_EQ(ast.statements[2].pos.line, 5);
}

TEST(Parser, Errors) {
  EXPECT_EQ(syntax_error("eval x*"), "line 1, column 8: expected '(', '-', identifier or number, found end of line");
  EXPECT_EQ(syntax_error("frobnicate x"), "line 1, column 1: expected statement keyword, found 'frobnicate'");
  EXPECT_NE(syntax_error("derivation D { x -> 1").find("line 1"), std::string::npos);
  EXPECT_NE(syntax_error("group Z^2 x Q").find("'Z'"), std::string::npos);
  EXPECT_NE(syntax_error("eval (x\n").find("')'"), std::string::npos);
}

TEST(Parser, RenderRoundTrips) {
  for (const std::string src :
       {"x", "-x", "x + y - z", "x - (y - z)", "x*(y + z)", "(x*y)^3", "x^-2*y", "-(x + y)^2", "1/2*x",
        "x/(2*y)", "bracket(y*Dx, x*Dy)", "nabla(C, x*Dx, Dy) + G(Dx, Dx)*Dy", "-x^2", "(-x)^2", "x - -y"}) {
    const ExprPtr e = parse_expression(src);
    const std::string r = render(*e);
    const ExprPtr again = parse_expression(r);
    EXPECT_TRUE(same_shape(*e, *again)) << src << " -> " << r;
    EXPECT_EQ(render(*again), r);
  }
  EXPECT_EQ(render(*parse_expression("((x))*(y)")), "x*y");
  EXPECT_EQ(render(*parse_expression("x-(y+z)")), "x - (y + z)");
}

TEST(Session, DeclaredPlaneMatchesCatalog) {
  Session s = run(kPlane);
  const CatalogEntry qp = build_quantum_plane();
  const Value yx = s.evaluate("y*x");
  EXPECT_EQ(render_value(yx), "q^-1*x*y");
  EXPECT_EQ(render_value(s.evaluate("G(y*Dx, x*Dx)")), "q^-1*x*y");
  EXPECT_EQ(render_value(s.evaluate("bracket(y*Dx, x*Dy)")), "-q^-1*x*y*Dx + q^-1*x*y*Dy");
  EXPECT_EQ(render_value(s.evaluate("apply(Dy, x^2*y^3)")), "3*x^2*y^3");
  EXPECT_EQ(render_value(s.evaluate("1/2*x + x/2")), "x");
  EXPECT_EQ(render_value(s.evaluate("curvature(C, Dx, Dy, Dx)")), "0");
  EXPECT_EQ(render_value(s.evaluate("nabla(C, x*Dx, y*Dx)")), "x*y*Dy");
  EXPECT_EQ(render_value(yx), (Element::generator(qp.algebra, 1) * Element::generator(qp.algebra, 0)).to_string());
}

TEST(Session, EvaluationErrors) {
  Session s = run(kPlane);
  EXPECT_THROW(s.evaluate("w + x"), Error);
  EXPECT_THROW(s.evaluate("Dx*x"), Error);
  EXPECT_THROW(s.evaluate("x/(x + y)"), Error);
  EXPECT_THROW(s.evaluate("Dx + x"), Error);
  EXPECT_THROW(s.evaluate("G(Dx)"), Error);
}

TEST(Session, GoldenChecksPass) {
  Session s = run(std::string(kPlane) +
                  "check pair QP\ncheck connection C torsion_free flat metric G\ncheck carroll QPC with connection C\n");
  for (const auto& r : s.records()) {
    ASSERT_EQ(r.kind, Record::Kind::Check);
    EXPECT_EQ(r.check.status, Status::Pass) << r.check.check;
  }
}

TEST(Session, SemanticErrorsBecomeRecords) {
  const Report r = run_session("use builtin quantum_plane\ncheck pair NOPE\neval x\n", "t.rc");
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].kind, Record::Kind::Error);
  EXPECT_EQ(r.exit_code(), 2);
  const Report p = run_session("eval x*\n");
  EXPECT_EQ(p.exit_code(), 2);
  EXPECT_EQ(p.records[0].pos.line, 1);
  EXPECT_EQ(p.records[0].pos.column, 8);
}

TEST(NegativeControls, SymmetricQForm) {
  Session s = run(
      "group Z^2\nfactor q_form=[[0,1],[1,0]]\nalgebra bad\ngenerator x deg=(1,0)\ncheck factor\n");
  EXPECT_GE(check_witnesses(s), 1);
  EXPECT_EQ(s.records()[0].check.check, "factor.inverse");
  EXPECT_EQ(s.records()[0].check.status, Status::Fail);
}

TEST(NegativeControls, CorruptedStructureConstant) {
  Session s = run(
      "use builtin nc_torus\n"
      "pair T2 {\n  basis eu; basis ev\n  anchor eu -> Du; anchor ev -> Dv\n  bracket [eu,ev] -> eu\n}\n"
      "check pair T2\n");
  EXPECT_GE(check_witnesses(s), 1);
}

TEST(NegativeControls, NonKillingMetric) {
  Session s = run(std::string(kPlane) + "metric N on QP { (Dx,Dx) -> y }\ncarroll NC { pair=QP metric=N sigma=Dy }\n" +
                  "check carroll NC\n");
  EXPECT_GE(check_witnesses(s), 1);
  bool saw = false;
  for (const auto& r : s.records()) {
    if (r.check.check == "carroll.stationary") {
      saw = true;
      EXPECT_EQ(r.check.status, Status::Fail);
      EXPECT_EQ(*r.check.witness, "y");
    }
  }
  EXPECT_TRUE(saw);
}

TEST(NegativeControls, IncompatibleConnection) {
  Session s = run(std::string(kPlane) + "connection B on QP { (Dx,Dx) -> Dx }\ncheck connection B metric G\n");
  EXPECT_EQ(check_witnesses(s), 1);
}

TEST(Records, JsonAndText) {
  const Report r = run_session("use builtin quantum_plane\ncheck metric G\neval y*x\n", "m.rc", 5);
  EXPECT_EQ(r.exit_code(), 0);
  const std::string json = to_records(r);
  EXPECT_NE(json.find("\"schema\":\"rho-carroll-report/1\""), std::string::npos);
  EXPECT_NE(json.find("\"seed\":5"), std::string::npos);
  EXPECT_NE(json.find("{\"command\":\"eval\",\"input\":\"y*x\",\"kind\":\"value\",\"result\":\"q^-1*x*y\"}"),
            std::string::npos);
  const std::string text = to_text(r);
  EXPECT_EQ(text.rfind("# m.rc (seed 5)", 0), 0u);
  EXPECT_NE(text.find("# 2 pass, 0 fail, 0 uncertified"), std::string::npos);
}

TEST(Session, SameSeedReplays) {
  const std::string src = "use builtin eq2\ncheck builtin eq2\n";
  EXPECT_EQ(to_records(run_session(src, "a", 7)), to_records(run_session(src, "a", 7)));
}
