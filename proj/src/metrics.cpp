#include "jsgen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

#include "jsgen/jsfront.hpp"
#include "jsgen/subtoken.hpp"

namespace jsgen {

std::optional<std::string> try_canonicalize(const std::string& code) {
  try {
    return canonicalize_js(code);
  } catch (const JsParseError&) {
    return std::nullopt;
  }
}

MatchResult exact_match(const std::vector<std::string>& ranked_candidates,
                        const std::string& reference) {
  MatchResult result;
  std::optional<std::string> ref = try_canonicalize(reference);
  if (!ref) return result;
  for (size_t i = 0; i < ranked_candidates.size(); ++i) {
    std::optional<std::string> cand = try_canonicalize(ranked_candidates[i]);
    if (cand && *cand == *ref) {
      result.topk = true;
      if (i == 0) result.top1 = true;
      break;
    }
  }
  return result;
}

namespace {

using Ngram = std::vector<std::string>;

std::map<Ngram, long> ngram_counts(const std::vector<std::string>& tokens, size_t n) {
  std::map<Ngram, long> counts;
  if (tokens.size() < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    counts[Ngram(tokens.begin() + i, tokens.begin() + i + n)]++;
  }
  return counts;
}

}  // namespace

double corpus_bleu(const std::vector<std::vector<std::string>>& predictions,
                   const std::vector<std::vector<std::string>>& references) {
  if (predictions.empty() || predictions.size() != references.size()) {
    throw Error("corpus_bleu needs equal non-empty prediction/reference lists");
  }
  constexpr size_t kMaxOrder = 4;
  long matched[kMaxOrder] = {0, 0, 0, 0};
  long total[kMaxOrder] = {0, 0, 0, 0};
  long pred_len = 0, ref_len = 0;
  for (size_t i = 0; i < predictions.size(); ++i) {
    pred_len += static_cast<long>(predictions[i].size());
    ref_len += static_cast<long>(references[i].size());
    for (size_t n = 1; n <= kMaxOrder; ++n) {
      auto pred_counts = ngram_counts(predictions[i], n);
      auto ref_counts = ngram_counts(references[i], n);
      for (const auto& [gram, count] : pred_counts) {
        total[n - 1] += count;
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) matched[n - 1] += std::min(count, it->second);
      }
    }
  }
  double log_sum = 0;
  for (size_t n = 0; n < kMaxOrder; ++n) {
    // Zero denominator behaves as zero precision (no smoothing anywhere).
    double p = total[n] > 0 ? static_cast<double>(matched[n]) / static_cast<double>(total[n]) : 0.0;
    if (p <= 0.0) return 0.0;
    log_sum += std::log(p) / kMaxOrder;
  }
  double bp = 1.0;
  if (pred_len <= ref_len) {
    if (pred_len == 0) return 0.0;
    bp = std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(pred_len));
  }
  return 100.0 * bp * std::exp(log_sum);
}

double edit_similarity(const std::string& prediction, const std::string& reference) {
  std::vector<uint32_t> a = utf8_decode(prediction);
  std::vector<uint32_t> b = utf8_decode(reference);
  if (a.empty() && b.empty()) return 100.0;
  std::vector<long> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<long>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<long>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      long subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  double dist = static_cast<double>(prev[b.size()]);
  double max_len = static_cast<double>(std::max(a.size(), b.size()));
  return 100.0 * (1.0 - dist / max_len);
}

namespace {

void collect_identifiers(const ConcreteNode& n, std::vector<std::string>& out) {
  if (n.kind == NodeKind::Identifier) out.push_back(n.text);
  if (n.kind == NodeKind::StaticMember) out.push_back(n.text);
  for (const auto& child : n.children) collect_identifiers(*child, out);
}

}  // namespace

std::vector<std::string> extract_identifiers(const std::string& code) {
  std::vector<std::string> out;
  ConcretePtr tree = parse_js(code);
  // Walk object before property to keep source order for member accesses.
  struct Walker {
    static void walk(const ConcreteNode& n, std::vector<std::string>& out) {
      if (n.kind == NodeKind::Identifier) {
        out.push_back(n.text);
        return;
      }
      if (n.kind == NodeKind::StaticMember) {
        walk(*n.children[0], out);
        out.push_back(n.text);
        return;
      }
      for (const auto& child : n.children) walk(*child, out);
    }
  };
  Walker::walk(*tree, out);
  return out;
}

VariableUsageCounts variable_usage(const std::string& prediction, const std::string& reference) {
  VariableUsageCounts counts;
  std::vector<std::string> ref_ids = extract_identifiers(reference);
  std::vector<std::string> pred_ids;
  try {
    pred_ids = extract_identifiers(prediction);
  } catch (const JsParseError&) {
    counts.fn = static_cast<long>(ref_ids.size());
    return counts;
  }
  std::map<std::string, long> ref_counts;
  for (const std::string& id : ref_ids) ref_counts[id]++;
  long tp = 0;
  std::map<std::string, long> pred_counts;
  for (const std::string& id : pred_ids) pred_counts[id]++;
  for (const auto& [id, count] : pred_counts) {
    auto it = ref_counts.find(id);
    if (it != ref_counts.end()) tp += std::min(count, it->second);
  }
  counts.tp = tp;
  counts.fp = static_cast<long>(pred_ids.size()) - tp;
  counts.fn = static_cast<long>(ref_ids.size()) - tp;
  return counts;
}

namespace {

struct Accumulator {
  long top1_hits = 0;
  long topk_hits = 0;
  long count = 0;
  double edit_sum = 0;
  VariableUsageCounts usage;
  std::vector<std::vector<std::string>> pred_tokens;
  std::vector<std::vector<std::string>> ref_tokens;

  void add(const EvalRecord& record) {
    ++count;
    MatchResult match = exact_match(record.candidates, record.reference);
    top1_hits += match.top1 ? 1 : 0;
    topk_hits += match.topk ? 1 : 0;
    std::string top = record.candidates.empty() ? std::string() : record.candidates[0];
    edit_sum += edit_similarity(top, record.reference);
    usage += variable_usage(top, record.reference);
    std::vector<std::string> pt;
    try {
      pt = lex_js_tokens(top);
    } catch (const JsParseError&) {
      pt.clear();
    }
    pred_tokens.push_back(std::move(pt));
    ref_tokens.push_back(lex_js_tokens(record.reference));
  }

  MetricBundle finish() const {
    MetricBundle m;
    m.example_count = count;
    if (count == 0) return m;
    m.acc_1 = 100.0 * static_cast<double>(top1_hits) / static_cast<double>(count);
    m.acc_5 = 100.0 * static_cast<double>(topk_hits) / static_cast<double>(count);
    m.bleu = corpus_bleu(pred_tokens, ref_tokens);
    m.edit_sim = edit_sum / static_cast<double>(count);
    double tp = static_cast<double>(usage.tp);
    double p_den = tp + static_cast<double>(usage.fp);
    double r_den = tp + static_cast<double>(usage.fn);
    m.var_precision = p_den > 0 ? 100.0 * tp / p_den : 0.0;
    m.var_recall = r_den > 0 ? 100.0 * tp / r_den : 0.0;
    m.var_f1 = (m.var_precision + m.var_recall) > 0
                   ? 2.0 * m.var_precision * m.var_recall / (m.var_precision + m.var_recall)
                   : 0.0;
    return m;
  }
};

nlohmann::json bundle_to_json(const MetricBundle& m) {
  nlohmann::json j;
  j["examples"] = m.example_count;
  j["acc_1"] = m.acc_1;
  j["acc_5"] = m.acc_5;
  j["bleu"] = m.bleu;
  j["edit_sim"] = m.edit_sim;
  j["var_precision"] = m.var_precision;
  j["var_recall"] = m.var_recall;
  j["var_f1"] = m.var_f1;
  return j;
}

}  // namespace

EvalReport evaluate_corpus(const std::vector<EvalRecord>& records) {
  Accumulator overall;
  std::map<std::string, Accumulator> per_category;
  for (const EvalRecord& record : records) {
    overall.add(record);
    if (record.category) per_category[*record.category].add(record);
  }
  EvalReport report;
  report.overall = overall.finish();
  for (const auto& [category, acc] : per_category) {
    report.per_category[category] = acc.finish();
  }
  return report;
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["overall"] = bundle_to_json(report.overall);
  nlohmann::json cats = nlohmann::json::object();
  for (const auto& [category, bundle] : report.per_category) {
    cats[category] = bundle_to_json(bundle);
  }
  j["categories"] = cats;
  return j.dump(2);
}

std::string report_to_table(const EvalReport& report) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  auto row = [&](const std::string& name, const MetricBundle& m) {
    out << std::left << std::setw(10) << name << std::right << std::setw(8) << m.acc_1
        << std::setw(8) << m.acc_5 << std::setw(8) << m.bleu << std::setw(9) << m.edit_sim
        << std::setw(8) << m.var_precision << std::setw(8) << m.var_recall << std::setw(8)
        << m.var_f1 << std::setw(7) << m.example_count << "\n";
  };
  out << std::left << std::setw(10) << "Split" << std::right << std::setw(8) << "Acc-1"
      << std::setw(8) << "Acc-5" << std::setw(8) << "BLEU" << std::setw(9) << "EditSim"
      << std::setw(8) << "VarP" << std::setw(8) << "VarR" << std::setw(8) << "VarF1"
      << std::setw(7) << "N" << "\n";
  row("all", report.overall);
  for (const auto& [category, bundle] : report.per_category) row(category, bundle);
  return out.str();
}

}  // namespace jsgen
