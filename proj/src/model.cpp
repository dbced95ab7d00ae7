#include "jsgen/neural/model.hpp"

#include <cmath>
#include <random>

#include "jsgen/subtoken.hpp"

namespace jsgen::neural {

namespace {

Mat uniform_init(long rows, long cols, double limit, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-limit, limit);
  Mat m(rows, cols);
  for (long c = 0; c < cols; ++c) {
    for (long r = 0; r < rows; ++r) m(r, c) = dist(rng);
  }
  return m;
}

Mat xavier_init(long rows, long cols, std::mt19937_64& rng) {
  double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  return uniform_init(rows, cols, limit, rng);
}

}  // namespace

ModelState ModelState::init(const Grammar& g, Vocabulary vocab, const NetConfig& config) {
  ModelState m;
  m.config = config;
  m.vocab = std::move(vocab);
  m.constructor_count = g.constructor_count();
  m.field_slot_count = g.field_slot_count();

  const int h = config.hidden;
  const int e = config.embed;
  const int v = m.vocab.size();
  std::mt19937_64 rng(config.seed);

  // Embeddings: one column per item; constructors get an extra Reduce column.
  m.params["tok_embed"] = uniform_init(e, v, 0.1, rng);
  m.params["ctor_embed"] = uniform_init(e, m.constructor_count + 1, 0.1, rng);
  m.params["field_embed"] = uniform_init(e, m.field_slot_count, 0.1, rng);

  for (const char* dir : {"enc_fw", "enc_bw"}) {
    m.params[std::string(dir) + "_Wih"] = xavier_init(4 * h, e, rng);
    m.params[std::string(dir) + "_Whh"] = xavier_init(4 * h, h, rng);
    Mat b = Mat::Zero(4 * h, 1);
    b.middleRows(h, h).setOnes();  // forget-gate bias +1
    m.params[std::string(dir) + "_b"] = b;
  }

  // Decoder input: [prev action embed; prev attentional; field embed; parent attentional].
  const int dec_in = 2 * e + 2 * h;
  m.params["dec_Wih"] = xavier_init(4 * h, dec_in, rng);
  m.params["dec_Whh"] = xavier_init(4 * h, h, rng);
  Mat dec_b = Mat::Zero(4 * h, 1);
  dec_b.middleRows(h, h).setOnes();
  m.params["dec_b"] = dec_b;

  m.params["init_h_W"] = xavier_init(h, 2 * h, rng);
  m.params["init_h_b"] = Mat::Zero(h, 1);
  m.params["init_c_W"] = xavier_init(h, 2 * h, rng);
  m.params["init_c_b"] = Mat::Zero(h, 1);

  m.params["att_W"] = xavier_init(2 * h, h, rng);
  m.params["comb_W"] = xavier_init(h, 3 * h, rng);
  m.params["apply_W"] = xavier_init(e, h, rng);
  m.params["gen_W"] = xavier_init(e, h, rng);
  m.params["copy_W"] = xavier_init(2 * h, h, rng);
  m.params["gate_W"] = xavier_init(2, h, rng);
  m.params["gate_b"] = Mat::Zero(2, 1);
  return m;
}

Mat& ModelState::p(const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) throw Error("unknown parameter '" + name + "'");
  return it->second;
}

const Mat& ModelState::p(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end()) throw Error("unknown parameter '" + name + "'");
  return it->second;
}

ParamGrads zero_grads_like(const ModelState& m) {
  ParamGrads grads;
  for (const auto& [name, value] : m.params) {
    grads[name] = Mat::Zero(value.rows(), value.cols());
  }
  return grads;
}

CopyMap build_copy_map(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
  CopyMap map;
  for (const std::string& tok : tokens) {
    if (auto idx = vocab.find(tok)) {
      map.position_slot.push_back(*idx);
      continue;
    }
    int slot = -1;
    for (size_t k = 0; k < map.oov_tokens.size(); ++k) {
      if (map.oov_tokens[k] == tok) {
        slot = static_cast<int>(k);
        break;
      }
    }
    if (slot < 0) {
      slot = static_cast<int>(map.oov_tokens.size());
      map.oov_tokens.push_back(tok);
    }
    map.position_slot.push_back(vocab.size() + slot);
  }
  return map;
}

DecoderRun::DecoderRun(Tape& tape, const ModelState& model, const Grammar& grammar,
                       const std::vector<std::string>& tokens, ParamGrads* grads)
    : tape_(tape), model_(model), grammar_(grammar), grads_(grads), tokens_(tokens) {
  if (tokens.empty()) throw Error("cannot encode an empty description");
  copy_ = build_copy_map(tokens, model.vocab);

  const int h = model_.config.hidden;
  zero_h_ = tape_.constant(Mat::Zero(h, 1));
  zero_emb_ = tape_.constant(Mat::Zero(model_.config.embed, 1));

  // Bidirectional encoder over the token embeddings.
  Tape::Ref tok_embed = param("tok_embed");
  std::vector<Tape::Ref> inputs;
  inputs.reserve(tokens.size());
  for (const std::string& tok : tokens) {
    inputs.push_back(tape_.col(tok_embed, model_.vocab.index(tok)));
  }
  const size_t n = inputs.size();
  std::vector<Tape::Ref> fw(n), bw(n);
  Tape::Ref h_fw = zero_h_, c_fw = zero_h_;
  for (size_t i = 0; i < n; ++i) {
    h_fw = lstm_cell("enc_fw", inputs[i], h_fw, c_fw, &c_fw);
    fw[i] = h_fw;
  }
  Tape::Ref h_bw = zero_h_, c_bw = zero_h_;
  for (size_t i = n; i-- > 0;) {
    h_bw = lstm_cell("enc_bw", inputs[i], h_bw, c_bw, &c_bw);
    bw[i] = h_bw;
  }
  std::vector<Tape::Ref> cols(n);
  for (size_t i = 0; i < n; ++i) cols[i] = tape_.concat({fw[i], bw[i]});
  enc_mat_ = tape_.from_cols(cols);

  // Decoder start state from the two final hidden states.
  Tape::Ref summary = tape_.concat({fw[n - 1], bw[0]});
  initial_.h = tape_.tanh(
      tape_.add(tape_.matvec(param("init_h_W"), summary), param("init_h_b")));
  initial_.c = tape_.add(tape_.matvec(param("init_c_W"), summary), param("init_c_b"));
  initial_.stilde = zero_h_;
}

Tape::Ref DecoderRun::param(const std::string& name) {
  auto it = param_refs_.find(name);
  if (it != param_refs_.end()) return it->second;
  Tape::Ref ref;
  if (grads_) {
    ref = tape_.parameter(model_.p(name), &grads_->at(name));
  } else {
    ref = tape_.constant(model_.p(name));
  }
  param_refs_[name] = ref;
  return ref;
}

Tape::Ref DecoderRun::lstm_cell(const std::string& prefix, Tape::Ref x, Tape::Ref h_prev,
                                Tape::Ref c_prev, Tape::Ref* c_out) {
  const int h = model_.config.hidden;
  Tape::Ref pre = tape_.add(tape_.add(tape_.matvec(param(prefix + "_Wih"), x),
                                      tape_.matvec(param(prefix + "_Whh"), h_prev)),
                            param(prefix + "_b"));
  Tape::Ref i = tape_.sigmoid(tape_.slice(pre, 0, h));
  Tape::Ref f = tape_.sigmoid(tape_.slice(pre, h, h));
  Tape::Ref g = tape_.tanh(tape_.slice(pre, 2 * h, h));
  Tape::Ref o = tape_.sigmoid(tape_.slice(pre, 3 * h, h));
  Tape::Ref c = tape_.add(tape_.mul(f, c_prev), tape_.mul(i, g));
  *c_out = c;
  return tape_.mul(o, tape_.tanh(c));
}

Tape::Ref DecoderRun::action_embedding(const Action& a) {
  switch (a.kind) {
    case Action::Kind::ApplyConstr:
      return tape_.col(param("ctor_embed"), a.ctor);
    case Action::Kind::Reduce:
      return tape_.col(param("ctor_embed"), model_.reduce_index());
    case Action::Kind::GenSubtoken:
      return tape_.col(param("tok_embed"), model_.vocab.index(a.token));
  }
  return zero_emb_;
}

Eigen::ArrayXd DecoderRun::legal_mask(const FrontierState& frontier) const {
  const Vocabulary& vocab = model_.vocab;
  Eigen::ArrayXd keep = Eigen::ArrayXd::Zero(joint_size());
  ActionMask m = frontier.legal_actions();
  for (int ctor : m.constructors) keep[ctor] = 1.0;
  if (m.reduce) keep[model_.reduce_index()] = 1.0;
  const int base = model_.vocab_base();
  if (m.content) {
    for (int v = 0; v < vocab.size(); ++v) keep[base + v] = 1.0;
    keep[base + Vocabulary::kPadIndex] = 0.0;
    keep[base + Vocabulary::kEotIndex] = 0.0;
    keep[base + Vocabulary::kSosIndex] = 0.0;
    keep[base + Vocabulary::kEosIndex] = 0.0;
    for (size_t k = 0; k < copy_.oov_tokens.size(); ++k) {
      keep[base + vocab.size() + static_cast<int>(k)] = 1.0;
    }
  }
  if (m.eot) keep[base + Vocabulary::kEotIndex] = 1.0;
  if (m.sos) keep[base + Vocabulary::kSosIndex] = 1.0;
  if (m.eos) keep[base + Vocabulary::kEosIndex] = 1.0;
  return keep;
}

DecoderRun::StepResult DecoderRun::step(const StepState& prev, const Action* prev_action,
                                        Tape::Ref parent_stilde,
                                        const FrontierState& frontier) {
  Tape::Ref a_prev = prev_action ? action_embedding(*prev_action) : zero_emb_;
  Tape::Ref field_embed = tape_.col(param("field_embed"), frontier.frontier_field_slot());
  Tape::Ref parent = parent_stilde.valid() ? parent_stilde : zero_h_;

  Tape::Ref x = tape_.concat({a_prev, prev.stilde, field_embed, parent});
  StepState next;
  next.h = lstm_cell("dec", x, prev.h, prev.c, &next.c);

  // Attention over encoder states, then the combined attentional vector.
  Tape::Ref scores = tape_.mat_t_vec(enc_mat_, tape_.matvec(param("att_W"), next.h));
  Tape::Ref alpha = tape_.softmax(scores);
  Tape::Ref context = tape_.matvec(enc_mat_, alpha);
  next.stilde = tape_.tanh(tape_.matvec(param("comb_W"), tape_.concat({context, next.h})));

  // Constructor family (ApplyConstr + Reduce).
  Tape::Ref ctor_logits =
      tape_.mat_t_vec(param("ctor_embed"), tape_.matvec(param("apply_W"), next.stilde));
  Tape::Ref ctor_probs = tape_.softmax(ctor_logits);

  // Subtoken family: generation mixed with copy by the gate.
  Tape::Ref gen_logits =
      tape_.mat_t_vec(param("tok_embed"), tape_.matvec(param("gen_W"), next.stilde));
  Tape::Ref gen_probs = tape_.softmax(gen_logits);
  Tape::Ref copy_scores =
      tape_.mat_t_vec(enc_mat_, tape_.matvec(param("copy_W"), next.stilde));
  Tape::Ref copy_probs = tape_.softmax(copy_scores);
  Tape::Ref gate =
      tape_.softmax(tape_.add(tape_.matvec(param("gate_W"), next.stilde), param("gate_b")));

  const int oov = static_cast<int>(copy_.oov_tokens.size());
  Tape::Ref gen_ext = gen_probs;
  if (oov > 0) gen_ext = tape_.concat({gen_probs, tape_.constant(Mat::Zero(oov, 1))});
  Tape::Ref sub_probs = tape_.scatter_add(tape_.scale(gen_ext, tape_.pick(gate, 0)),
                                          tape_.scale(copy_probs, tape_.pick(gate, 1)),
                                          copy_.position_slot);

  // Joint distribution, masked to the legal set and renormalized.
  Tape::Ref joint = tape_.concat({ctor_probs, sub_probs});
  Tape::Ref masked = tape_.mask(joint, legal_mask(frontier));
  Tape::Ref probs = tape_.div_by(masked, tape_.sum(masked));

  return {next, probs};
}

int DecoderRun::action_index(const Action& a) const {
  switch (a.kind) {
    case Action::Kind::ApplyConstr:
      return a.ctor;
    case Action::Kind::Reduce:
      return model_.reduce_index();
    case Action::Kind::GenSubtoken: {
      const int base = model_.vocab_base();
      if (auto idx = model_.vocab.find(a.token)) return base + *idx;
      for (size_t k = 0; k < copy_.oov_tokens.size(); ++k) {
        if (copy_.oov_tokens[k] == a.token) {
          return base + model_.vocab.size() + static_cast<int>(k);
        }
      }
      return base + Vocabulary::kUnkIndex;
    }
  }
  return -1;
}

Action DecoderRun::action_at(int index) const {
  if (index < model_.constructor_count) return Action::apply(index);
  if (index == model_.reduce_index()) return Action::reduce();
  int offset = index - model_.vocab_base();
  if (offset < model_.vocab.size()) return Action::gen(model_.vocab.token(offset));
  return Action::gen(copy_.oov_tokens.at(offset - model_.vocab.size()));
}

int DecoderRun::joint_size() const {
  return model_.joint_size(static_cast<int>(copy_.oov_tokens.size()));
}

Tape::Ref sequence_nll(Tape& tape, DecoderRun& run, const Grammar& g,
                       const std::vector<Action>& oracle) {
  FrontierState frontier(g);
  DecoderRun::StepState state = run.initial_state();
  std::vector<Tape::Ref> stildes;
  std::vector<Tape::Ref> losses;
  const Action* prev = nullptr;
  for (const Action& action : oracle) {
    int parent_step = frontier.frontier_parent_step();
    Tape::Ref parent = parent_step >= 0 ? stildes[parent_step] : Tape::Ref{};
    auto [next, probs] = run.step(state, prev, parent, frontier);
    int target = run.action_index(action);
    losses.push_back(tape.neg(tape.log(tape.pick(probs, target))));
    frontier.apply(action);
    stildes.push_back(next.stilde);
    state = next;
    prev = &action;
  }
  return tape.add_all(losses);
}

double example_nll(const ModelState& m, const Grammar& g,
                   const std::vector<std::string>& tokens, const std::vector<Action>& oracle) {
  Tape tape;
  DecoderRun run(tape, m, g, tokens);
  Tape::Ref loss = sequence_nll(tape, run, g, oracle);
  return tape.value(loss)(0, 0);
}

}  // namespace jsgen::neural
