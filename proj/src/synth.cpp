#include "jsgen/synth.hpp"

#include <algorithm>
#include <random>

#include "jsgen/errors.hpp"

namespace jsgen {

namespace {

struct Piece {
  const char* en;
  const char* zh;
};

constexpr Piece kCommonFirst[] = {
    {"shop", "店铺"},     {"user", "用户"},     {"live", "直播"},   {"room", "房间"},
    {"coupon", "优惠券"}, {"goods", "商品"},    {"order", "订单"},  {"member", "会员"},
    {"activity", "活动"}, {"market", "营销"},   {"coin", "金币"},   {"store", "门店"},
    {"video", "视频"},    {"banner", "横幅"},   {"head", "头部"},   {"detail", "详情"},
    {"main", "主要"},     {"sub", "次要"},      {"promo", "促销"},  {"page", "页面"},
};

constexpr Piece kCommonSecond[] = {
    {"Title", "标题"},  {"Price", "价格"},  {"Status", "状态"}, {"Url", "链接"},
    {"Pic", "图片"},    {"Name", "名称"},   {"Time", "时间"},   {"Desc", "描述"},
    {"Count", "数量"},  {"Tag", "标签"},    {"Text", "文本"},   {"Icon", "图标"},
    {"Logo", "标志"},   {"Nick", "昵称"},   {"Type", "类型"},   {"Level", "等级"},
    {"Score", "积分"},  {"Fee", "费用"},    {"Tip", "提示"},    {"Rate", "比率"},
    {"Color", "颜色"},  {"City", "城市"},   {"Num", "编号"},    {"Flag", "标记"},
    {"Label", "文案"},
};

// Leading pieces reserved for held-out identifiers: their subtokens never
// occur in main-task training names, so a model without the semantic table
// cannot produce them.
constexpr Piece kRareFirst[] = {
    {"train", "火车"},     {"festival", "春节"},  {"lottery", "抽奖"}, {"puzzle", "拼图"},
    {"subsidy", "补贴"},   {"deposit", "定金"},   {"freight", "运费"}, {"invoice", "发票"},
    {"umbrella", "雨伞"},  {"lantern", "灯笼"},   {"firework", "烟花"}, {"mooncake", "月饼"},
    {"redpacket", "红包"}, {"dragonboat", "龙舟"},
};

constexpr const char* kPhrases[] = {
    "满减", "立即使用", "已抵扣", "元", "件起售", "去看看", "马上抢", "暂无数据", "已售罄",
    "火热进行中", "优惠券已生效", "春运火车票",
};

std::vector<SemanticEntry> cross_pairs(const Piece* first, size_t first_n, uint64_t seed) {
  std::vector<SemanticEntry> out;
  for (size_t i = 0; i < first_n; ++i) {
    for (const Piece& second : kCommonSecond) {
      out.push_back({std::string(first[i].en) + second.en,
                     std::string(first[i].zh) + second.zh});
    }
  }
  std::mt19937_64 rng(seed);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

class TemplateBuilder {
 public:
  explicit TemplateBuilder(uint64_t seed) : rng_(seed) {}

  const SemanticEntry& pick(const std::vector<SemanticEntry>& pool) {
    return pool[rng_() % pool.size()];
  }

  const char* phrase() { return kPhrases[rng_() % std::size(kPhrases)]; }

  Example ste(const SemanticEntry& e) {
    std::string pre = phrase();
    std::string post = phrase();
    Example ex;
    ex.description = "显示“<STR1>xx<STR2>”，xx为" + e.semantic;
    ex.code = "{`<STR1>${" + e.name + "}<STR2>`;}";
    ex.literals = {{"<STR1>", pre}, {"<STR2>", post}};
    return ex;
  }

  Example ole_blank(const SemanticEntry& e) {
    Example ex;
    ex.description = "动态展示" + e.semantic + "，兜底为空";
    ex.code = "{" + e.name + " || ' ';}";
    return ex;
  }

  Example ole_default(const SemanticEntry& e) {
    Example ex;
    ex.description = "动态展示" + e.semantic + "，兜底显示“<STR1>”";
    ex.code = "{" + e.name + " || '<STR1>';}";
    ex.literals = {{"<STR1>", phrase()}};
    return ex;
  }

  Example ole_pair(const SemanticEntry& a, const SemanticEntry& b) {
    Example ex;
    ex.description = "优先展示" + a.semantic + "，否则展示" + b.semantic;
    ex.code = "{" + a.name + " || " + b.name + ";}";
    return ex;
  }

  Example ce_flag(const SemanticEntry& cond, const SemanticEntry& a, const SemanticEntry& b) {
    Example ex;
    ex.description = "如果" + cond.semantic + "成立，则展示" + a.semantic + "，否则展示" +
                     b.semantic;
    ex.code = "{" + cond.name + " ? " + a.name + " : " + b.name + ";}";
    return ex;
  }

  Example ce_compare(const SemanticEntry& x, const SemanticEntry& a, const SemanticEntry& b) {
    Example ex;
    ex.description = "如果" + x.semantic + "为“<STR1>”，则展示" + a.semantic + "，否则展示" +
                     b.semantic;
    ex.code = "{" + x.name + " === '<STR1>' ? " + a.name + " : " + b.name + ";}";
    ex.literals = {{"<STR1>", phrase()}};
    return ex;
  }

  Example dpe_split(const SemanticEntry& e) {
    Example ex;
    ex.description = "动态展示" + e.semantic + "小数部分";
    ex.code = "{`${" + e.name + ".split('.')[1]}`;}";
    return ex;
  }

  Example dpe_substring(const SemanticEntry& e) {
    int k = 5 + static_cast<int>(rng_() % 16);
    Example ex;
    ex.description = "展示" + e.semantic + "前" + std::to_string(k) + "个字";
    ex.code = "{" + e.name + ".substring(0, " + std::to_string(k) + ");}";
    return ex;
  }

  std::mt19937_64 rng_;
};

}  // namespace

std::vector<SemanticEntry> builtin_semantic_table(int common_count, int rare_count,
                                                  uint64_t seed) {
  std::vector<SemanticEntry> common = cross_pairs(kCommonFirst, std::size(kCommonFirst), seed);
  std::vector<SemanticEntry> rare = cross_pairs(kRareFirst, std::size(kRareFirst), seed + 1);
  if (common_count > static_cast<int>(common.size()) ||
      rare_count > static_cast<int>(rare.size())) {
    throw Error("identifier pool smaller than the requested diversity");
  }
  common.resize(common_count);
  rare.resize(rare_count);
  common.insert(common.end(), rare.begin(), rare.end());
  return common;
}

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec) {
  SyntheticCorpus corpus;
  std::mt19937_64 rng(spec.seed);

  std::vector<SemanticEntry> common, heldout;
  if (spec.table.empty()) {
    corpus.table =
        builtin_semantic_table(spec.table_size - spec.heldout_count, spec.heldout_count,
                               spec.seed);
    common.assign(corpus.table.begin(), corpus.table.end() - spec.heldout_count);
    heldout.assign(corpus.table.end() - spec.heldout_count, corpus.table.end());
  } else {
    corpus.table = spec.table;
    if (spec.heldout_count >= static_cast<int>(corpus.table.size())) {
      throw Error("held-out count exceeds the semantic table size");
    }
    std::vector<SemanticEntry> shuffled = corpus.table;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    heldout.assign(shuffled.begin(), shuffled.begin() + spec.heldout_count);
    common.assign(shuffled.begin() + spec.heldout_count, shuffled.end());
  }
  for (const SemanticEntry& e : heldout) corpus.heldout_names.push_back(e.name);

  TemplateBuilder tb(spec.seed + 17);
  std::vector<Example> main;
  for (int i = 0; i < spec.ste; ++i) main.push_back(tb.ste(tb.pick(common)));
  for (int i = 0; i < spec.ole; ++i) {
    switch (i % 3) {
      case 0: main.push_back(tb.ole_blank(tb.pick(common))); break;
      case 1: main.push_back(tb.ole_default(tb.pick(common))); break;
      default: main.push_back(tb.ole_pair(tb.pick(common), tb.pick(common)));
    }
  }
  for (int i = 0; i < spec.ce; ++i) {
    if (i % 2 == 0) {
      main.push_back(tb.ce_flag(tb.pick(common), tb.pick(common), tb.pick(common)));
    } else {
      main.push_back(tb.ce_compare(tb.pick(common), tb.pick(common), tb.pick(common)));
    }
  }
  for (int i = 0; i < spec.dpe; ++i) {
    main.push_back(i % 2 == 0 ? tb.dpe_split(tb.pick(common))
                              : tb.dpe_substring(tb.pick(common)));
  }

  std::shuffle(main.begin(), main.end(), rng);
  size_t val_count = static_cast<size_t>(spec.val_fraction * static_cast<double>(main.size()));
  corpus.val.assign(main.end() - static_cast<long>(val_count), main.end());
  main.resize(main.size() - val_count);
  corpus.train = std::move(main);

  // One test example per held-out identifier, rotating name-critical templates.
  for (size_t i = 0; i < heldout.size(); ++i) {
    const SemanticEntry& e = heldout[i];
    Example ex;
    switch (i % 10) {
      case 0:
      case 4:
      case 7:
        ex = tb.ste(e);
        ex.category = "STE";
        break;
      case 3:
        ex = tb.ce_flag(tb.pick(common), e, tb.pick(common));
        ex.category = "CE";
        break;
      case 9:
        ex = tb.dpe_substring(e);
        ex.category = "DPE";
        break;
      case 1:
      case 5:
      case 8:
        ex = tb.ole_blank(e);
        ex.category = "OLE";
        break;
      default:
        ex = tb.ole_default(e);
        ex.category = "OLE";
    }
    corpus.test.push_back(std::move(ex));
  }
  return corpus;
}

}  // namespace jsgen
