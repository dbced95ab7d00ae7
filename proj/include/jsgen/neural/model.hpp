#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "jsgen/augment.hpp"
#include "jsgen/grammar.hpp"
#include "jsgen/neural/tape.hpp"
#include "jsgen/prep.hpp"
#include "jsgen/transit.hpp"

namespace jsgen::neural {

struct NetConfig {
  int hidden = 256;  // encoder/decoder LSTM size
  int embed = 128;   // token, constructor, and field embedding size
  uint64_t seed = 1;

  bool operator==(const NetConfig&) const = default;
};

// All learnable parameters plus the vocabularies they are indexed by.
// Embedding matrices are stored column-per-item.
struct ModelState {
  NetConfig config;
  Vocabulary vocab;
  int constructor_count = 0;  // C; the extra embedding column C is Reduce
  int field_slot_count = 0;
  std::map<std::string, Mat> params;

  static ModelState init(const Grammar& g, Vocabulary vocab, const NetConfig& config);

  Mat& p(const std::string& name);
  const Mat& p(const std::string& name) const;

  int reduce_index() const { return constructor_count; }
  int vocab_base() const { return constructor_count + 1; }
  int joint_size(int oov_count) const { return vocab_base() + vocab.size() + oov_count; }
};

using ParamGrads = std::map<std::string, Mat>;
ParamGrads zero_grads_like(const ModelState& m);

// Copy slots for one input: position -> slot in the extended token range
// (vocab index, or vocab.size()+k for the k-th distinct out-of-vocab token).
struct CopyMap {
  std::vector<int> position_slot;
  std::vector<std::string> oov_tokens;
};
CopyMap build_copy_map(const std::vector<std::string>& tokens, const Vocabulary& vocab);

// One input sentence bound to one tape: encoder output plus the per-step
// decoder computation shared by teacher forcing and beam search.
class DecoderRun {
 public:
  DecoderRun(Tape& tape, const ModelState& model, const Grammar& grammar,
             const std::vector<std::string>& tokens, ParamGrads* grads = nullptr);

  struct StepState {
    Tape::Ref h, c, stilde;
  };

  StepState initial_state() const { return initial_; }

  // Computes the masked, renormalized action distribution at the current
  // frontier. `prev_action` is null on the first step; `parent_stilde` is the
  // attentional vector of the step that applied the frontier's constructor
  // (invalid Ref at the root).
  struct StepResult {
    StepState state;
    Tape::Ref probs;
  };
  StepResult step(const StepState& prev, const Action* prev_action, Tape::Ref parent_stilde,
                  const FrontierState& frontier);

  // Index of an action in the joint distribution; out-of-vocabulary
  // uncopyable GenSubtoken payloads fall back to <unk>.
  int action_index(const Action& a) const;
  Action action_at(int index) const;
  int joint_size() const;

  const CopyMap& copy_map() const { return copy_; }
  Tape::Ref zero_stilde() const { return zero_h_; }

 private:
  Tape::Ref param(const std::string& name);
  Tape::Ref lstm_cell(const std::string& prefix, Tape::Ref x, Tape::Ref h_prev, Tape::Ref c_prev,
                      Tape::Ref* c_out);
  Tape::Ref action_embedding(const Action& a);
  Eigen::ArrayXd legal_mask(const FrontierState& frontier) const;

  Tape& tape_;
  const ModelState& model_;
  const Grammar& grammar_;
  ParamGrads* grads_;
  std::map<std::string, Tape::Ref> param_refs_;
  std::vector<std::string> tokens_;
  CopyMap copy_;
  Tape::Ref enc_mat_;   // 2H x n
  Tape::Ref zero_h_;    // H x 1 zeros
  Tape::Ref zero_emb_;  // E x 1 zeros
  StepState initial_;
};

// Teacher-forced negative log-likelihood of an oracle action sequence.
// Appends the per-step attentional vectors for parent feeding internally.
Tape::Ref sequence_nll(Tape& tape, DecoderRun& run, const Grammar& g,
                       const std::vector<Action>& oracle);

double example_nll(const ModelState& m, const Grammar& g,
                   const std::vector<std::string>& tokens, const std::vector<Action>& oracle);

struct TrainOptions {
  int batch_size = 32;
  double learning_rate = 1e-3;
  uint64_t seed = 1;
  bool subtokenize = true;
  bool quiet = false;
};

struct CurveRow {
  int epoch;
  double train_nll;
  double val_nll;
};

struct TrainResult {
  std::vector<CurveRow> curve;
  int best_epoch = -1;
  double best_val_nll = 0;
};

// Minimizes sequence NLL with Adam over the schedule's phases, reshuffling
// each epoch. AuxVp examples are skipped (no tree form). Keeps the
// best-validation parameters; with an empty validation set the train NLL is
// used instead.
TrainResult train(ModelState& m, const TrainingSchedule& schedule,
                  const std::vector<Example>& validation, const Grammar& g,
                  const TrainOptions& options);

struct Candidate {
  std::string code;
  double score;  // sum of per-step log-probabilities
  std::vector<Action> actions;
};

// Grammar-masked beam search; hypotheses finish when the frontier stack
// empties, are converted through to_concrete + print_js, and candidates whose
// relaxed-typing trees are not legal JavaScript are discarded.
std::vector<Candidate> beam_decode(const ModelState& m, const Grammar& g,
                                   const std::vector<std::string>& tokens, int width);

// Checkpoint I/O (MessagePack; bit-exact doubles). The format version is
// checked on load; the stored constructor table must match the grammar.
inline constexpr int kCheckpointVersion = 1;
void save_checkpoint(const ModelState& m, const std::string& path,
                     const std::string& config_echo_json);
ModelState load_checkpoint(const std::string& path, std::string* config_echo_json = nullptr);
void check_grammar_compatible(const ModelState& m, const Grammar& g);

}  // namespace jsgen::neural
