#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "jsgen/jsfront.hpp"
#include "jsgen/metrics.hpp"
#include "testutil.hpp"

using namespace jsgen;

namespace {

// Independent BLEU oracle: naive nested loops over n-gram windows, no maps
// shared with the implementation path.
double bleu_oracle(const std::vector<std::vector<std::string>>& preds,
                   const std::vector<std::vector<std::string>>& refs) {
  double log_sum = 0;
  long pred_len = 0, ref_len = 0;
  for (size_t i = 0; i < preds.size(); ++i) {
    pred_len += static_cast<long>(preds[i].size());
    ref_len += static_cast<long>(refs[i].size());
  }
  for (size_t n = 1; n <= 4; ++n) {
    long matched = 0, total = 0;
    for (size_t i = 0; i < preds.size(); ++i) {
      const auto& p = preds[i];
      const auto& r = refs[i];
      if (p.size() < n) continue;
      std::vector<bool> used(r.size(), false);
      for (size_t a = 0; a + n <= p.size(); ++a) {
        ++total;
        // Clipped matching: claim the first unused reference window equal to
        // this prediction window.
        for (size_t b = 0; r.size() >= n && b + n <= r.size(); ++b) {
          if (used[b]) continue;
          bool same = true;
          for (size_t k = 0; k < n; ++k) {
            if (p[a + k] != r[b + k]) {
              same = false;
              break;
            }
          }
          if (same) {
            used[b] = true;
            ++matched;
            break;
          }
        }
      }
    }
    double precision = total > 0 ? static_cast<double>(matched) / total : 0.0;
    if (precision <= 0.0) return 0.0;
    log_sum += std::log(precision) / 4.0;
  }
  double bp = 1.0;
  if (pred_len <= ref_len) {
    if (pred_len == 0) return 0.0;
    bp = std::exp(1.0 - static_cast<double>(ref_len) / pred_len);
  }
  return 100.0 * bp * std::exp(log_sum);
}

// Full-matrix Wagner-Fischer oracle (the implementation keeps two rows).
long levenshtein_oracle(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  std::vector<std::vector<long>> d(a.size() + 1, std::vector<long>(b.size() + 1));
  for (size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<long>(i);
  for (size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<long>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      long cost = a[i - 1] == b[j - 1] ? 0 : 1;
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
    }
  }
  return d[a.size()][b.size()];
}

}  // namespace

TEST_CASE("exact match basics") {
  MatchResult r = exact_match({"{picUrl;}"}, "{picUrl;}");
  CHECK(r.top1);
  CHECK(r.topk);

  // Canonicalization differences do not matter.
  r = exact_match({"{ picUrl }"}, "{picUrl;}");
  CHECK(r.top1);

  // Functionally equal but literally different is a miss.
  r = exact_match({"{a || b;}"}, "{b || a;}");
  CHECK_FALSE(r.top1);
  CHECK_FALSE(r.topk);

  // Reference in position 3 of 5.
  r = exact_match({"{x;}", "{y;}", "{target;}", "{z;}", "{w;}"}, "{target;}");
  CHECK_FALSE(r.top1);
  CHECK(r.topk);

  // Unparseable candidates never match and never throw.
  r = exact_match({"{{{", "{target;}"}, "{target;}");
  CHECK_FALSE(r.top1);
  CHECK(r.topk);
}

TEST_CASE("bleu trivial and pinned cases") {
  std::vector<std::vector<std::string>> ref = {{"a", "b", "c", "d", "e"}};
  CHECK(corpus_bleu(ref, ref) == doctest::Approx(100.0));

  // p1..p4 are all 1, BP = exp(1 - 5/4).
  std::vector<std::vector<std::string>> pred = {{"a", "b", "c", "d"}};
  CHECK(corpus_bleu(pred, ref) == doctest::Approx(77.88).epsilon(0.0002));

  // No matching 4-gram anywhere: geometric mean collapses to zero.
  std::vector<std::vector<std::string>> miss = {{"a", "b", "c", "x"}};
  CHECK(corpus_bleu(miss, ref) == 0.0);
}

TEST_CASE("bleu agrees with the brute-force oracle") {
  std::mt19937_64 rng(5);
  std::vector<std::string> alphabet = {"a", "b", "c", "d", "e", "f"};
  for (int corpus = 0; corpus < 10; ++corpus) {
    std::vector<std::vector<std::string>> preds, refs;
    int pairs = 1 + static_cast<int>(rng() % 9);
    for (int i = 0; i < pairs; ++i) {
      auto draw = [&](size_t len) {
        std::vector<std::string> out;
        for (size_t k = 0; k < len; ++k) out.push_back(alphabet[rng() % alphabet.size()]);
        return out;
      };
      preds.push_back(draw(4 + rng() % 8));
      refs.push_back(draw(4 + rng() % 8));
    }
    CHECK(corpus_bleu(preds, refs) == doctest::Approx(bleu_oracle(preds, refs)).epsilon(1e-11));
  }
}

TEST_CASE("edit similarity basics") {
  CHECK(edit_similarity("abc", "abc") == 100.0);
  CHECK(edit_similarity("abc", "abd") == doctest::Approx(100.0 * (1.0 - 1.0 / 3.0)));
  CHECK(edit_similarity("", "abc") == 0.0);
  CHECK(edit_similarity("", "") == 100.0);
  // Codepoint level: one substituted CJK char out of two.
  CHECK(edit_similarity("图片", "图标") == doctest::Approx(50.0));
}

TEST_CASE("edit similarity agrees with the DP oracle and is symmetric") {
  std::mt19937_64 rng(17);
  std::vector<std::string> pieces = {"a", "b", "展", "示", "{", "}", "'", " ", "1"};
  for (int i = 0; i < 1000; ++i) {
    auto draw = [&] {
      std::string out;
      size_t len = rng() % 12;
      for (size_t k = 0; k < len; ++k) out += pieces[rng() % pieces.size()];
      return out;
    };
    std::string a = draw(), b = draw();
    auto ca = utf8_decode(a);
    auto cb = utf8_decode(b);
    double expected =
        (ca.empty() && cb.empty())
            ? 100.0
            : 100.0 * (1.0 - static_cast<double>(levenshtein_oracle(ca, cb)) /
                                 static_cast<double>(std::max(ca.size(), cb.size())));
    CHECK(edit_similarity(a, b) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(edit_similarity(a, b) == doctest::Approx(edit_similarity(b, a)));
    CHECK((edit_similarity(a, b) == 100.0) == (a == b));
  }
}

TEST_CASE("variable usage counts") {
  VariableUsageCounts c = variable_usage("{picUrl;}", "{picUrl;}");
  CHECK(c.tp == 1);
  CHECK(c.fp == 0);
  CHECK(c.fn == 0);

  c = variable_usage("{downTitle || '<STR1>';}", "{trainHeadTitle || '<STR1>';}");
  CHECK(c.tp == 0);
  CHECK(c.fp == 1);
  CHECK(c.fn == 1);

  // Multiset semantics: duplicated prediction identifier.
  c = variable_usage("{a + a;}", "{a;}");
  CHECK(c.tp == 1);
  CHECK(c.fp == 1);
  CHECK(c.fn == 0);

  // Unparseable prediction contributes only false negatives.
  c = variable_usage("{{{", "{a.b(c);}");
  CHECK(c.tp == 0);
  CHECK(c.fp == 0);
  CHECK(c.fn == 3);
}

TEST_CASE("identifier extraction includes member properties") {
  CHECK(extract_identifiers("{data.coinShowPrice.split('.')[1];}") ==
        std::vector<std::string>{"data", "coinShowPrice", "split"});
  CHECK(extract_identifiers("{a[b];}") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("report aggregation and f1 conventions") {
  std::vector<EvalRecord> records = {
      {{"{picUrl;}"}, "{picUrl;}", std::string("STE")},
      {{"{wrong;}"}, "{right;}", std::string("OLE")},
      {{"{a;}", "{b;}"}, "{b;}", std::string("OLE")},
  };
  EvalReport report = evaluate_corpus(records);
  CHECK(report.overall.example_count == 3);
  CHECK(report.overall.acc_1 == doctest::Approx(100.0 / 3.0));
  CHECK(report.overall.acc_5 == doctest::Approx(200.0 / 3.0));
  CHECK(report.per_category.at("STE").acc_1 == doctest::Approx(100.0));
  CHECK(report.per_category.at("OLE").example_count == 2);
  CHECK(report.overall.acc_1 <= report.overall.acc_5);

  // Perfect predictions give the trivial ceiling.
  std::vector<EvalRecord> perfect = {{{"{picUrl;}"}, "{picUrl;}", std::nullopt}};
  EvalReport p = evaluate_corpus(perfect);
  CHECK(p.overall.acc_1 == 100.0);
  CHECK(p.overall.bleu == doctest::Approx(100.0));
  CHECK(p.overall.edit_sim == doctest::Approx(100.0));
  CHECK(p.overall.var_f1 == doctest::Approx(100.0));

  // 0/0 convention: no identifiers anywhere.
  std::vector<EvalRecord> empty_ids = {{{"{1;}"}, "{2;}", std::nullopt}};
  EvalReport z = evaluate_corpus(empty_ids);
  CHECK(z.overall.var_precision == 0.0);
  CHECK(z.overall.var_recall == 0.0);
  CHECK(z.overall.var_f1 == 0.0);

  // Adding a true positive raises precision and recall.
  VariableUsageCounts base{1, 1, 1};
  VariableUsageCounts more{2, 1, 1};
  double p_base = static_cast<double>(base.tp) / (base.tp + base.fp);
  double p_more = static_cast<double>(more.tp) / (more.tp + more.fp);
  CHECK(p_more > p_base);
}

TEST_CASE("report serialization") {
  std::vector<EvalRecord> records = {{{"{picUrl;}"}, "{picUrl;}", std::string("STE")}};
  EvalReport report = evaluate_corpus(records);
  std::string json = report_to_json(report);
  CHECK(json.find("\"acc_1\"") != std::string::npos);
  CHECK(json.find("\"STE\"") != std::string::npos);
  std::string table = report_to_table(report);
  CHECK(table.find("Acc-1") != std::string::npos);
  CHECK(table.find("EditSim") != std::string::npos);
}
