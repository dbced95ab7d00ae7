#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace jsgen {

// Canonical form for comparison; nullopt when the text does not parse.
std::optional<std::string> try_canonicalize(const std::string& code);

struct MatchResult {
  bool top1 = false;
  bool topk = false;
};

// String equality on canonical forms; an unparseable candidate never matches.
MatchResult exact_match(const std::vector<std::string>& ranked_candidates,
                        const std::string& reference);

// Corpus-level BLEU-4 with uniform 1/4 weights and no smoothing, x100.
double corpus_bleu(const std::vector<std::vector<std::string>>& predictions,
                   const std::vector<std::vector<std::string>>& references);

// 100 * (1 - levenshtein / max length) over Unicode codepoints.
double edit_similarity(const std::string& prediction, const std::string& reference);

struct VariableUsageCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;

  VariableUsageCounts& operator+=(const VariableUsageCounts& other) {
    tp += other.tp;
    fp += other.fp;
    fn += other.fn;
    return *this;
  }
};

// Multiset overlap of identifier leaves (including member property names)
// between the two parsed codes. An unparseable prediction contributes
// (0, 0, |reference identifiers|).
VariableUsageCounts variable_usage(const std::string& prediction, const std::string& reference);

// All identifier-valued leaves of a parseable code, in order.
std::vector<std::string> extract_identifiers(const std::string& code);

struct MetricBundle {
  double acc_1 = 0;
  double acc_5 = 0;
  double bleu = 0;
  double edit_sim = 0;
  double var_precision = 0;
  double var_recall = 0;
  double var_f1 = 0;
  long example_count = 0;
};

struct EvalReport {
  MetricBundle overall;
  std::map<std::string, MetricBundle> per_category;  // STE | OLE | CE | DPE
};

struct EvalRecord {
  std::vector<std::string> candidates;  // ranked, best first
  std::string reference;
  std::optional<std::string> category;
};

EvalReport evaluate_corpus(const std::vector<EvalRecord>& records);

std::string report_to_json(const EvalReport& report);
std::string report_to_table(const EvalReport& report);

}  // namespace jsgen
