#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jsgen/jsfront.hpp"
#include "jsgen/metrics.hpp"
#include "testutil.hpp"

using namespace jsgen;

TEST_CASE("conditional with strict-equal test") {
  ConcretePtr root = parse_js("{contentType === 'live' ? liveTimeDesc : marketingTimeDesc}");
  REQUIRE(root->kind == NodeKind::Block);
  REQUIRE(root->children.size() == 1);
  const ConcreteNode& stmt = *root->children[0];
  REQUIRE(stmt.kind == NodeKind::ExpressionStmt);
  const ConcreteNode& cond = *stmt.children[0];
  REQUIRE(cond.kind == NodeKind::Conditional);
  const ConcreteNode& test = *cond.children[0];
  REQUIRE(test.kind == NodeKind::Binary);
  CHECK(test.binary_op == BinaryOp::StrictEqual);
  CHECK(test.children[0]->text == "contentType");
  CHECK(test.children[1]->literal_kind == LiteralKind::String);
  CHECK(test.children[1]->text == "live");
  CHECK(cond.children[1]->text == "liveTimeDesc");
  CHECK(cond.children[2]->text == "marketingTimeDesc");
}

TEST_CASE("logical precedence: or of and") {
  ConcretePtr root = parse_js("{ user && user.nick || \" \" }");
  const ConcreteNode& expr = *root->children[0]->children[0];
  REQUIRE(expr.kind == NodeKind::Logical);
  CHECK(expr.logical_op == LogicalOp::Or);
  const ConcreteNode& left = *expr.children[0];
  REQUIRE(left.kind == NodeKind::Logical);
  CHECK(left.logical_op == LogicalOp::And);
  const ConcreteNode& right = *expr.children[1];
  CHECK(right.literal_kind == LiteralKind::String);
  CHECK(right.text == " ");
  CHECK(print_js(root) == "{user && user.nick || ' ';}");
}

TEST_CASE("template literal with interpolation") {
  ConcretePtr root = parse_js("{`优惠券已抵扣${discountPrice}元`}");
  const ConcreteNode& tpl = *root->children[0]->children[0];
  REQUIRE(tpl.kind == NodeKind::Template);
  REQUIRE(tpl.quasis.size() == 2);
  CHECK(tpl.quasis[0] == "优惠券已抵扣");
  CHECK(tpl.quasis[1] == "元");
  REQUIRE(tpl.children.size() == 1);
  CHECK(tpl.children[0]->text == "discountPrice");
  CHECK(print_js(root) == "{`优惠券已抵扣${discountPrice}元`;}");
}

TEST_CASE("canonicalization pins quotes spacing and semicolon") {
  CHECK(canonicalize_js("{isLucky?\"恭喜你押中啦\":\"很遗憾未押中\"}") ==
        "{isLucky ? '恭喜你押中啦' : '很遗憾未押中';}");
}

TEST_CASE("canonicalization is idempotent on table examples") {
  for (const char* src : {
           "{contentType === 'live' ? liveTimeDesc : marketingTimeDesc}",
           "{ user && user.nick || \" \" }",
           "{`优惠券已抵扣${discountPrice}元`}",
           "{`${data.coinShowPrice.split(\".\")[1]}`}",
           "{isShowMid ? title.substring(0, 15) : title.substring(0, 10) || '';}",
           "{trainHeadTitle || '春运火车票';}",
           "a + b * c",
           "{(a + b) * c;}",
           "{!(a || b);}",
           "{-(-x);}",
           "{break label;}",
       }) {
    std::string once = canonicalize_js(src);
    CHECK(canonicalize_js(once) == once);
  }
}

TEST_CASE("canonical fixed point and reparse equality on random trees") {
  testutil::TreeGen gen(20240811);
  for (int i = 0; i < 500; ++i) {
    ConcretePtr tree = gen.program();
    std::string printed = print_js(tree);
    ConcretePtr reparsed = parse_js(printed);
    CHECK(equal(reparsed, tree));
    CHECK(print_js(reparsed) == printed);
  }
}

TEST_CASE("no double-quoted plain string in canonical output") {
  CHECK(canonicalize_js("{\"x\";}") == "{'x';}");
  CHECK(canonicalize_js("{'he said \"hi\"';}") == "{'he said \"hi\"';}");
  // An embedded single quote is escaped, not re-quoted.
  CHECK(canonicalize_js("{\"don't\";}") == "{'don\\'t';}");
}

TEST_CASE("bare expression is wrapped in a block") {
  CHECK(canonicalize_js("picUrl") == "{picUrl;}");
  CHECK(canonicalize_js("a ? b : c") == "{a ? b : c;}");
}

TEST_CASE("parse errors carry position and name the construct") {
  CHECK_THROWS_AS(parse_js("{x => y}"), JsParseError);
  CHECK_THROWS_AS(parse_js("{function f() {}}"), JsParseError);
  CHECK_THROWS_AS(parse_js("{a = b}"), JsParseError);
  CHECK_THROWS_AS(parse_js("{@}"), JsParseError);
  CHECK_THROWS_AS(parse_js("{`abc}"), JsParseError);   // unbalanced template
  CHECK_THROWS_AS(parse_js("{'abc}"), JsParseError);   // unterminated string
  CHECK_THROWS_AS(parse_js("{a + }"), JsParseError);
  try {
    parse_js("{\n  new Foo()\n}");
    FAIL("expected JsParseError");
  } catch (const JsParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("new") != std::string::npos);
  }
}

TEST_CASE("to_abstract of a bare identifier program") {
  const Grammar& g = testutil::js_grammar();
  AbstractPtr tree = to_abstract(parse_js("{picUrl;}"), g);
  CHECK(g.constructor(tree->ctor).name == "BlockStatement");
  REQUIRE(tree->fields.size() == 1);
  REQUIRE(tree->fields[0].size() == 1);
  const AbstractNode& stmt = *std::get<AbstractPtr>(tree->fields[0][0]);
  CHECK(g.constructor(stmt.ctor).name == "ExpressionStatement");
  const AbstractNode& ident = *std::get<AbstractPtr>(stmt.fields[0][0]);
  CHECK(g.constructor(ident.ctor).name == "Identifier");
  const AbstractLeaf& leaf = std::get<AbstractLeaf>(ident.fields[0][0]);
  CHECK(leaf.text == "picUrl");
  CHECK_FALSE(leaf.is_string);
}

TEST_CASE("to_abstract of an empty block") {
  const Grammar& g = testutil::js_grammar();
  AbstractPtr tree = to_abstract(parse_js("{}"), g);
  REQUIRE(tree->fields.size() == 1);
  CHECK(tree->fields[0].empty());
}

TEST_CASE("to_concrete inverts to_abstract on random trees") {
  const Grammar& g = testutil::js_grammar();
  testutil::TreeGen gen(987654);
  for (int i = 0; i < 300; ++i) {
    ConcretePtr tree = gen.program();
    ConcretePtr back = to_concrete(to_abstract(tree, g), g);
    CHECK(equal(back, tree));
  }
}

TEST_CASE("break label must be an identifier") {
  const Grammar& g = testutil::js_grammar();
  GrammarBinding b(g);
  auto literal_five = std::make_shared<AbstractNode>();
  literal_five->ctor = b.literal;
  literal_five->fields = {{AbstractLeaf{"5", false}}};
  auto brk = std::make_shared<AbstractNode>();
  brk->ctor = b.break_stmt;
  brk->fields = {{AbstractNode::Child(AbstractPtr(literal_five))}};
  CHECK_THROWS_AS(to_concrete(brk, g), IllegalJsAstError);
}

TEST_CASE("hand-built conditional of identifiers becomes a legal ternary") {
  const Grammar& g = testutil::js_grammar();
  GrammarBinding b(g);
  auto ident = [&](const char* name) {
    auto n = std::make_shared<AbstractNode>();
    n->ctor = b.identifier;
    n->fields = {{AbstractLeaf{name, false}}};
    return AbstractNode::Child(AbstractPtr(n));
  };
  auto cond = std::make_shared<AbstractNode>();
  cond->ctor = b.conditional;
  cond->fields = {{ident("isLucky")}, {ident("win")}, {ident("lose")}};
  auto stmt = std::make_shared<AbstractNode>();
  stmt->ctor = b.expression_stmt;
  stmt->fields = {{AbstractNode::Child(AbstractPtr(cond))}};
  auto block = std::make_shared<AbstractNode>();
  block->ctor = b.block;
  block->fields = {{AbstractNode::Child(AbstractPtr(stmt))}};
  CHECK(print_js(to_concrete(block, g)) == "{isLucky ? win : lose;}");
}

TEST_CASE("illegal literal spellings are rejected") {
  const Grammar& g = testutil::js_grammar();
  GrammarBinding b(g);
  auto lit = std::make_shared<AbstractNode>();
  lit->ctor = b.literal;
  lit->fields = {{AbstractLeaf{"not_a_number", false}}};
  auto stmt = std::make_shared<AbstractNode>();
  stmt->ctor = b.expression_stmt;
  stmt->fields = {{AbstractNode::Child(AbstractPtr(lit))}};
  CHECK_THROWS_AS(to_concrete(stmt, g), IllegalJsAstError);
}

TEST_CASE("lexer token stream for BLEU") {
  auto tokens = lex_js_tokens("{a || 'x';}");
  std::vector<std::string> expected = {"{", "a", "||", "'x'", ";", "}"};
  CHECK(tokens == expected);
  auto tpl = lex_js_tokens("{`ab${x}cd`;}");
  std::vector<std::string> expected_tpl = {"{", "`ab${", "x", "}cd`", ";", "}"};
  CHECK(tpl == expected_tpl);
}

TEST_CASE("numeric member bases get parentheses") {
  // A hand-built tree; source `5.x` would not even lex as member access.
  ConcretePtr tree =
      make_block({make_expression_stmt(make_static_member(make_number("5"), "toString"))});
  std::string printed = print_js(tree);
  CHECK(printed == "{(5).toString;}");
  CHECK(equal(parse_js(printed), tree));
}
