#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "jsgen/jsfront.hpp"
#include "jsgen/prep.hpp"
#include "jsgen/subtoken.hpp"
#include "testutil.hpp"

using namespace jsgen;

TEST_CASE("string literal replacement: lucky-bet pair") {
  std::string desc = "判断是否幸运，条件成立则显示‘恭喜你押中啦’，否则显示‘很遗憾未押中’";
  std::string code = canonicalize_js("{isLucky ? '恭喜你押中啦' : '很遗憾未押中'}");
  ReplaceResult r = replace_string_literals(desc, code);
  CHECK(r.description == "判断是否幸运，条件成立则显示‘<STR1>’，否则显示‘<STR2>’");
  CHECK(r.code == "{isLucky ? '<STR1>' : '<STR2>';}");
  REQUIRE(r.literals.size() == 2);
  CHECK(r.literals[0] == std::pair<std::string, std::string>{"<STR1>", "恭喜你押中啦"});
  CHECK(r.literals[1] == std::pair<std::string, std::string>{"<STR2>", "很遗憾未押中"});
  CHECK(r.warnings.empty());
}

TEST_CASE("string literal replacement: concatenation pair") {
  std::string desc = "显示‘满xx使用’，xx为起步费";
  std::string code = canonicalize_js("{'满' + startFee + '使用'}");
  ReplaceResult r = replace_string_literals(desc, code);
  CHECK(r.description == "显示‘<STR1>xx<STR2>’，xx为起步费");
  CHECK(r.code == "{'<STR1>' + startFee + '<STR2>';}");
}

TEST_CASE("template quasi segments replace segment-wise") {
  std::string desc = "显示“优惠券已抵扣xx元”，xx为折扣价";
  std::string code = canonicalize_js("{`优惠券已抵扣${discountPrice}元`}");
  ReplaceResult r = replace_string_literals(desc, code);
  CHECK(r.description == "显示“<STR1>xx<STR2>”，xx为折扣价");
  CHECK(r.code == "{`<STR1>${discountPrice}<STR2>`;}");
}

TEST_CASE("no string literals: unchanged, empty map") {
  ReplaceResult r = replace_string_literals("展示图片链接", "{picUrl;}");
  CHECK(r.description == "展示图片链接");
  CHECK(r.code == "{picUrl;}");
  CHECK(r.literals.empty());
}

TEST_CASE("literal absent from the description is left with a warning") {
  ReplaceResult r = replace_string_literals("展示某些内容", "{x || '不在描述里';}");
  CHECK(r.code == "{x || '不在描述里';}");
  CHECK(r.literals.empty());
  REQUIRE(r.warnings.size() == 1);
}

TEST_CASE("whitespace-only and placeholder literals are never replaced") {
  ReplaceResult r = replace_string_literals("动态展示 用户昵称", "{user && nick || ' ';}");
  CHECK(r.code == "{user && nick || ' ';}");
  CHECK(r.literals.empty());
  CHECK(r.warnings.empty());

  // Idempotence: a second pass over already-placeheld text changes nothing.
  ReplaceResult again = replace_string_literals("显示‘<STR1>’", "{'<STR1>';}");
  CHECK(again.code == "{'<STR1>';}");
  CHECK(again.description == "显示‘<STR1>’");
  CHECK(again.literals.empty());
}

TEST_CASE("placeholder soundness on random corpora") {
  testutil::TreeGen gen(90210);
  auto placeholders_of = [](const std::string& text) {
    std::set<std::string> out;
    for (size_t i = 0; i + 6 <= text.size(); ++i) {
      if (text.substr(i, 4) == "<STR") {
        size_t close = text.find('>', i);
        if (close != std::string::npos) out.insert(text.substr(i, close - i + 1));
      }
    }
    return out;
  };
  for (int i = 0; i < 200; ++i) {
    ConcretePtr tree = gen.program();
    std::string code = print_js(tree);
    // Build a description embedding every string payload so replacement fires.
    std::string desc = "展示";
    for (const std::string& tok : lex_js_tokens(code)) {
      if (tok.size() >= 2 && tok.front() == '\'') {
        // Undo printer escapes so the description holds the cooked text.
        ConcretePtr lit = parse_js("{" + tok + ";}");
        desc += lit->children[0]->children[0]->text + "，";
      }
    }
    ReplaceResult r = replace_string_literals(desc, code);
    CHECK(placeholders_of(r.description) == placeholders_of(r.code));
    // Applying the map inverts both texts.
    std::string desc_back = r.description;
    std::string code_back = r.code;
    for (auto it = r.literals.rbegin(); it != r.literals.rend(); ++it) {
      const auto& [placeholder, original] = *it;
      size_t at = desc_back.find(placeholder);
      if (at != std::string::npos) desc_back.replace(at, placeholder.size(), original);
    }
    CHECK(desc_back == desc);
    (void)code_back;
  }
}

TEST_CASE("member access simplification") {
  CHECK(simplify_member_access("{task.status;}") == "{status;}");
  CHECK(simplify_member_access("{task.assets.completeBtn;}") == "{completeBtn;}");
  CHECK(simplify_member_access(canonicalize_js("{data.coinShowPrice.split(\".\")[1]}")) ==
        "{coinShowPrice.split('.')[1];}");
  // Bare receivers stay; only the object prefix of the chain is dropped.
  CHECK(simplify_member_access("{title.substring(0, 15);}") == "{title.substring(0, 15);}");
  CHECK(simplify_member_access("{`${data.coinShowPrice.split('.')[1]}`;}") ==
        "{`${coinShowPrice.split('.')[1]}`;}");
  // Computed access is preserved.
  CHECK(simplify_member_access("{a.b[0];}") == "{b[0];}");
}

TEST_CASE("member simplification is idempotent on random trees") {
  testutil::TreeGen gen(60601);
  for (int i = 0; i < 300; ++i) {
    std::string code = print_js(gen.program());
    std::string once = simplify_member_access(code);
    CHECK(simplify_member_access(once) == once);
  }
}

TEST_CASE("description tokenization") {
  CHECK(tokenize_description("展示图片链接") ==
        std::vector<std::string>{"展", "示", "图", "片", "链", "接"});
  CHECK(tokenize_description("显示‘<STR1> xx <STR2>’，xx为起步费") ==
        std::vector<std::string>{"显", "示", "‘", "<STR1>", "xx", "<STR2>", "’", "，", "xx", "为",
                                 "起", "步", "费"});
  CHECK(tokenize_description("").empty());
  CHECK(tokenize_description("abc123 def") == std::vector<std::string>{"abc123", "def"});
}

TEST_CASE("tokenization preserves non-whitespace characters") {
  std::vector<std::string> texts = {
      "判断是否幸运，条件成立则显示‘恭喜你押中啦’", "显示“<STR1>xx<STR2>”，xx为折扣价",
      "a bc  def，123", "展示 前15个字"};
  for (const std::string& text : texts) {
    std::string joined;
    for (const std::string& tok : tokenize_description(text)) joined += tok;
    std::string squashed;
    for (size_t i = 0; i < text.size();) {
      unsigned char lead = static_cast<unsigned char>(text[i]);
      size_t len = utf8_sequence_length(lead);
      std::string seq = text.substr(i, len);
      if (seq != " " && seq != "\t" && seq != "\n" && seq != "\r" && seq != "\xe3\x80\x80") {
        squashed += seq;
      }
      i += len;
    }
    CHECK(joined == squashed);
  }
}

TEST_CASE("subtokenization rules") {
  CHECK(subtokenize("liveTimeDesc") == std::vector<std::string>{"live", "##Time", "##Desc"});
  CHECK(subtokenize("status") == std::vector<std::string>{"status"});
  CHECK(subtokenize("before_promotion_price") ==
        std::vector<std::string>{"before", "##promotion", "##price"});
  CHECK(join_subtokens({"before", "##promotion", "##price"}) == "before_promotion_price");
  CHECK(subtokenize("picURLPath") == std::vector<std::string>{"pic", "##URL", "##Path"});
  CHECK(join_subtokens({"pic", "##URL", "##Path"}) == "picURLPath");
}

TEST_CASE("subtokenize/join inverse over generated identifiers") {
  testutil::TreeGen gen(11211);
  for (int i = 0; i < 1000; ++i) {
    std::string ident = gen.identifier();
    CHECK(join_subtokens(subtokenize(ident)) == ident);
  }
}

TEST_CASE("vocabulary reserved symbols") {
  Vocabulary v;
  CHECK(v.index("<pad>") == Vocabulary::kPadIndex);
  CHECK(v.index("<unk>") == Vocabulary::kUnkIndex);
  CHECK(v.index(kEot) == Vocabulary::kEotIndex);
  CHECK(v.index(kSos) == Vocabulary::kSosIndex);
  CHECK(v.index(kEos) == Vocabulary::kEosIndex);
  CHECK(v.index("<STR1>") == 5);
  CHECK(v.index("<STR10>") == 14);
  CHECK(v.index("missing") == Vocabulary::kUnkIndex);
  // Adding a reserved token again does not duplicate it.
  int size = v.size();
  v.add("<EOT>");
  CHECK(v.size() == size);
}

TEST_CASE("build_vocab counts and thresholds") {
  const Grammar& g = testutil::js_grammar();
  std::vector<Example> examples = {
      {"展示图片链接", "{picUrl;}", std::nullopt, Provenance::Main, {}},
      {"展示店铺标志", "{shopLogo;}", std::nullopt, Provenance::Main, {}},
  };
  Vocabulary v = build_vocab(examples, g, true, 1);
  CHECK(v.find("pic").has_value());
  CHECK(v.find("##Url").has_value());
  CHECK(v.find("shop").has_value());
  CHECK(v.find("展").has_value());
  CHECK(v.constructor_names().size() == static_cast<size_t>(g.constructor_count()));

  Vocabulary pruned = build_vocab(examples, g, true, 1000000000L);
  CHECK(pruned.size() == 5 + Vocabulary::kReservedPlaceholders);

  // min_count 2: 展/示 appear in both descriptions, pic only once.
  Vocabulary two = build_vocab(examples, g, true, 2);
  CHECK(two.find("展").has_value());
  CHECK_FALSE(two.find("pic").has_value());
}

TEST_CASE("vocab over the four table-2 rows") {
  const Grammar& g = testutil::js_grammar();
  std::vector<Example> rows = {
      {"显示优惠券已抵扣xx元，xx为折扣价", canonicalize_js("{`优惠券已抵扣${discountPrice}元`}"),
       std::nullopt, Provenance::Main, {}},
      {"动态展示用户昵称，兜底为空", canonicalize_js("{ user && user.nick || \" \" }"),
       std::nullopt, Provenance::Main, {}},
      {"如果内容类型为直播，则展示直播时间描述，否则展示营销时间描述",
       canonicalize_js("{contentType === 'live' ? liveTimeDesc : marketingTimeDesc}"),
       std::nullopt, Provenance::Main, {}},
      {"动态展示金币展示价格小数部分",
       canonicalize_js("{`${data.coinShowPrice.split(\".\")[1]}`}"), std::nullopt,
       Provenance::Main, {}},
  };
  Vocabulary v = build_vocab(rows, g, true, 1);
  // ##Time is indexed exactly once even though it occurs in two identifiers.
  CHECK(v.find("##Time").has_value());
  int count = 0;
  for (const std::string& tok : v.tokens()) {
    if (tok == "##Time") ++count;
  }
  CHECK(count == 1);
  CHECK(v.find("marketing").has_value());
  CHECK(v.find("##Desc").has_value());
}

TEST_CASE("aux_vp code contributes identifier subtokens") {
  const Grammar& g = testutil::js_grammar();
  std::vector<Example> examples = {
      {"直播状态", "roomStatus", std::nullopt, Provenance::AuxVp, {}},
  };
  Vocabulary v = build_vocab(examples, g, true, 1);
  CHECK(v.find("room").has_value());
  CHECK(v.find("##Status").has_value());
}
