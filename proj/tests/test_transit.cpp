#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jsgen/subtoken.hpp"
#include "jsgen/transit.hpp"
#include "testutil.hpp"

using namespace jsgen;

namespace {

AbstractPtr abstract_of(const std::string& source) {
  return to_abstract(parse_js(source), testutil::js_grammar());
}

// Internal node count of an abstract tree (every AbstractNode).
int node_count(const AbstractNode& n) {
  int count = 1;
  for (const auto& field : n.fields) {
    for (const auto& child : field) {
      if (std::holds_alternative<AbstractPtr>(child)) {
        count += node_count(*std::get<AbstractPtr>(child));
      }
    }
  }
  return count;
}

// Expected Reduce count: one per multiple field plus one per empty optional.
int reduce_count(const AbstractNode& n, const Grammar& g) {
  const Constructor& c = g.constructor(n.ctor);
  int count = 0;
  for (size_t f = 0; f < c.fields.size(); ++f) {
    if (c.fields[f].cardinality == Cardinality::Multiple) ++count;
    if (c.fields[f].cardinality == Cardinality::Optional && n.fields[f].empty()) ++count;
    for (const auto& child : n.fields[f]) {
      if (std::holds_alternative<AbstractPtr>(child)) {
        count += reduce_count(*std::get<AbstractPtr>(child), g);
      }
    }
  }
  return count;
}

}  // namespace

TEST_CASE("figure-style golden action dump") {
  const Grammar& g = testutil::js_grammar();
  AbstractPtr tree = abstract_of("{contentType === 'live' ? liveTimeDesc : marketingTimeDesc;}");
  std::vector<Action> actions = oracle_actions(tree, g, true);
  CHECK(actions.size() == 24);
  int apply_count = 0;
  for (const Action& a : actions) {
    if (a.kind == Action::Kind::ApplyConstr) ++apply_count;
  }
  CHECK(apply_count == 9);
  CHECK(actions.back() == Action::reduce());

  std::string dump = dump_actions(actions, g);
  std::string golden = read_text_file(testutil::source_path("tests/golden/fig1_actions.txt"));
  CHECK(dump == golden);
}

TEST_CASE("replaying the golden sequence reproduces the code") {
  const Grammar& g = testutil::js_grammar();
  AbstractPtr tree = abstract_of("{contentType === 'live' ? liveTimeDesc : marketingTimeDesc;}");
  std::vector<Action> actions = oracle_actions(tree, g, true);
  AbstractPtr replayed = replay(actions, g);
  CHECK(equal(replayed, tree));
  CHECK(print_js(to_concrete(replayed, g)) ==
        "{contentType === 'live' ? liveTimeDesc : marketingTimeDesc;}");
}

TEST_CASE("picUrl oracle sequence") {
  const Grammar& g = testutil::js_grammar();
  std::vector<Action> actions = oracle_actions(abstract_of("{picUrl;}"), g, true);
  REQUIRE(actions.size() == 7);
  CHECK(actions[0] == Action::apply(g.constructor_id("BlockStatement")));
  CHECK(actions[1] == Action::apply(g.constructor_id("ExpressionStatement")));
  CHECK(actions[2] == Action::apply(g.constructor_id("Identifier")));
  CHECK(actions[3] == Action::gen("pic"));
  CHECK(actions[4] == Action::gen("##Url"));
  CHECK(actions[5] == Action::gen(kEot));
  CHECK(actions[6] == Action::reduce());
}

TEST_CASE("token-level mode emits one token per leaf") {
  const Grammar& g = testutil::js_grammar();
  testutil::TreeGen gen(1311);
  for (int i = 0; i < 100; ++i) {
    AbstractPtr tree = to_abstract(gen.program(), g);
    std::vector<Action> actions = oracle_actions(tree, g, false);
    // Content runs between terminators have length exactly one.
    int run = 0;
    for (const Action& a : actions) {
      if (a.kind != Action::Kind::GenSubtoken) continue;
      if (a.token == kSos) {
        run = 0;
      } else if (a.token == kEos || a.token == kEot) {
        CHECK(run <= 1);
        run = 0;
      } else {
        ++run;
      }
    }
    CHECK(equal(replay(actions, g), tree));
  }
}

TEST_CASE("replay inverts oracle over random trees in both modes") {
  const Grammar& g = testutil::js_grammar();
  testutil::TreeGen gen(424242);
  for (int i = 0; i < 1000; ++i) {
    AbstractPtr tree = to_abstract(gen.program(), g);
    for (bool subtok : {true, false}) {
      std::vector<Action> actions = oracle_actions(tree, g, subtok);
      CHECK(equal(replay(actions, g), tree));
    }
  }
}

TEST_CASE("every oracle prefix stays inside the legality mask") {
  const Grammar& g = testutil::js_grammar();
  testutil::TreeGen gen(777);
  for (int i = 0; i < 200; ++i) {
    AbstractPtr tree = to_abstract(gen.program(), g);
    std::vector<Action> actions = oracle_actions(tree, g, true);
    FrontierState state(g);
    for (const Action& a : actions) {
      CHECK(state.permits(a));
      state.apply(a);
    }
    CHECK(state.complete());
  }
}

TEST_CASE("derivation length accounting") {
  const Grammar& g = testutil::js_grammar();
  testutil::TreeGen gen(5150);
  for (int i = 0; i < 200; ++i) {
    AbstractPtr tree = to_abstract(gen.program(), g);
    std::vector<Action> actions = oracle_actions(tree, g, true);
    int applies = 0, reduces = 0;
    for (const Action& a : actions) {
      if (a.kind == Action::Kind::ApplyConstr) ++applies;
      if (a.kind == Action::Kind::Reduce) ++reduces;
    }
    CHECK(applies == node_count(*tree));
    CHECK(reduces == reduce_count(*tree, g));
  }
}

TEST_CASE("joined subtoken runs are sentinel-free and lossless") {
  const Grammar& g = testutil::js_grammar();
  testutil::TreeGen gen(31337);
  for (int i = 0; i < 500; ++i) {
    std::string ident = gen.identifier();
    auto pieces = subtokenize(ident);
    for (const std::string& p : pieces) CHECK_FALSE(is_sentinel(p));
    CHECK(join_subtokens(pieces) == ident);
  }
  (void)g;
}

TEST_CASE("illegal actions are rejected with a step index") {
  const Grammar& g = testutil::js_grammar();
  FrontierState state(g);
  state.apply(Action::apply(g.constructor_id("BlockStatement")));
  state.apply(Action::apply(g.constructor_id("ExpressionStatement")));
  // Frontier is now an expr field: an operator constructor is illegal.
  try {
    state.apply(Action::apply(g.constructor_id("StrictEqual")));
    FAIL("expected IllegalActionError");
  } catch (const IllegalActionError& e) {
    CHECK(e.step == 2);
  }
}

TEST_CASE("incomplete sequences are rejected") {
  const Grammar& g = testutil::js_grammar();
  std::vector<Action> actions = {Action::apply(g.constructor_id("BlockStatement"))};
  CHECK_THROWS_AS(replay(actions, g), IncompleteDerivationError);
}

TEST_CASE("legality masks by frontier") {
  const Grammar& g = testutil::js_grammar();
  FrontierState state(g);

  // Root: statement constructors only.
  ActionMask m = state.legal_actions();
  CHECK(m.constructors == g.constructors_for_type("stmt"));
  CHECK_FALSE(m.reduce);
  CHECK_FALSE(m.content);

  // stmt* body with zero emitted: Reduce already legal (empty block).
  state.apply(Action::apply(g.constructor_id("BlockStatement")));
  m = state.legal_actions();
  CHECK(m.reduce);
  CHECK(m.constructors == g.constructors_for_type("stmt"));

  // binary_operator frontier: only operator constructors.
  state.apply(Action::apply(g.constructor_id("ExpressionStatement")));
  state.apply(Action::apply(g.constructor_id("BinaryExpression")));
  m = state.legal_actions();
  CHECK(m.constructors == g.constructors_for_type("binary_operator"));
  CHECK_FALSE(m.reduce);
  CHECK_FALSE(m.content);

  // identifier frontier with empty buffer: content only, no <EOT>.
  state.apply(Action::apply(g.constructor_id("StrictEqual")));
  state.apply(Action::apply(g.constructor_id("Identifier")));
  m = state.legal_actions();
  CHECK(m.content);
  CHECK_FALSE(m.eot);
  CHECK_FALSE(m.sos);
  CHECK(m.constructors.empty());

  // After one subtoken, <EOT> opens up.
  state.apply(Action::gen("pic"));
  m = state.legal_actions();
  CHECK(m.content);
  CHECK(m.eot);

  // literal? frontier: content, <SOS>, and Reduce (null).
  state.apply(Action::gen(kEot));
  state.apply(Action::apply(g.constructor_id("Literal")));
  m = state.legal_actions();
  CHECK(m.content);
  CHECK(m.sos);
  CHECK(m.reduce);
  CHECK_FALSE(m.eot);

  // A plain literal token forces <EOT> next (numbers are unsplittable).
  state.apply(Action::gen("15"));
  m = state.legal_actions();
  CHECK(m.eot);
  CHECK_FALSE(m.content);
  CHECK_FALSE(m.reduce);
}

TEST_CASE("string runs keep spaces and empty strings") {
  const Grammar& g = testutil::js_grammar();
  for (const char* src : {"{x || ' ';}", "{x || '';}", "{'满 xx 使用';}"}) {
    AbstractPtr tree = abstract_of(src);
    std::vector<Action> actions = oracle_actions(tree, g, true);
    CHECK(equal(replay(actions, g), tree));
    CHECK(print_js(to_concrete(replay(actions, g), g)) == canonicalize_js(src));
  }
  // The empty string is the bare <SOS>,<EOS> pair.
  std::vector<Action> actions = oracle_actions(abstract_of("{x || '';}"), g, true);
  bool saw_empty_pair = false;
  for (size_t i = 0; i + 1 < actions.size(); ++i) {
    if (actions[i] == Action::gen(kSos) && actions[i + 1] == Action::gen(kEos)) {
      saw_empty_pair = true;
    }
  }
  CHECK(saw_empty_pair);
}

TEST_CASE("null literal derives as an empty optional field") {
  const Grammar& g = testutil::js_grammar();
  AbstractPtr tree = abstract_of("{x || null;}");
  std::vector<Action> actions = oracle_actions(tree, g, true);
  // Literal() immediately closed by Reduce.
  bool saw = false;
  for (size_t i = 0; i + 1 < actions.size(); ++i) {
    if (actions[i] == Action::apply(g.constructor_id("Literal")) &&
        actions[i + 1] == Action::reduce()) {
      saw = true;
    }
  }
  CHECK(saw);
  CHECK(print_js(to_concrete(replay(actions, g), g)) == "{x || null;}");
}
