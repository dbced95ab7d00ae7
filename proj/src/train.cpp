#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>

#include "jsgen/jsfront.hpp"
#include "jsgen/neural/model.hpp"
#include "jsgen/prep.hpp"
#include "jsgen/subtoken.hpp"

namespace jsgen::neural {

namespace {

struct Prepared {
  std::vector<std::string> tokens;
  std::vector<Action> oracle;
};

std::vector<Prepared> prepare(const std::vector<Example>& pool, const Grammar& g,
                              bool subtokenize_flag, bool quiet) {
  std::vector<Prepared> out;
  for (const Example& ex : pool) {
    if (ex.provenance == Provenance::AuxVp) {
      if (!quiet) {
        std::cerr << "train: skipping aux_vp example (no tree form): " << ex.code << "\n";
      }
      continue;
    }
    Prepared p;
    p.tokens = tokenize_description(ex.description);
    if (p.tokens.empty()) throw DataError("example with empty description: " + ex.code);
    p.oracle = oracle_actions(to_abstract(parse_js(ex.code), g), g, subtokenize_flag);
    out.push_back(std::move(p));
  }
  return out;
}

class Adam {
 public:
  Adam(const ModelState& m, double lr) : lr_(lr) {
    for (const auto& [name, value] : m.params) {
      m_[name] = Mat::Zero(value.rows(), value.cols());
      v_[name] = Mat::Zero(value.rows(), value.cols());
    }
  }

  void step(ModelState& model, const ParamGrads& grads) {
    ++t_;
    double bc1 = 1.0 - std::pow(kBeta1, t_);
    double bc2 = 1.0 - std::pow(kBeta2, t_);
    for (auto& [name, value] : model.params) {
      const Mat& g = grads.at(name);
      Mat& m = m_[name];
      Mat& v = v_[name];
      m = kBeta1 * m + (1.0 - kBeta1) * g;
      v = (kBeta2 * v).array() + (1.0 - kBeta2) * g.array().square();
      value.array() -=
          lr_ * (m.array() / bc1) / ((v.array() / bc2).sqrt() + kEpsilon);
    }
  }

 private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;
  double lr_;
  long t_ = 0;
  std::map<std::string, Mat> m_, v_;
};

double mean_nll(const ModelState& m, const Grammar& g, const std::vector<Prepared>& pool) {
  if (pool.empty()) return 0.0;
  double total = 0;
  for (const Prepared& p : pool) total += example_nll(m, g, p.tokens, p.oracle);
  return total / static_cast<double>(pool.size());
}

}  // namespace

TrainResult train(ModelState& m, const TrainingSchedule& schedule,
                  const std::vector<Example>& validation, const Grammar& g,
                  const TrainOptions& options) {
  std::vector<Prepared> val = prepare(validation, g, options.subtokenize, options.quiet);

  TrainResult result;
  Adam optimizer(m, options.learning_rate);
  std::mt19937_64 rng(options.seed);
  std::map<std::string, Mat> best_params;
  double best_metric = std::numeric_limits<double>::infinity();
  int epoch_counter = 0;

  for (const TrainingSchedule::Phase& phase : schedule.phases) {
    std::vector<Prepared> pool = prepare(phase.pool, g, options.subtokenize, options.quiet);
    if (pool.empty()) continue;
    std::vector<size_t> order(pool.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 0; epoch < phase.epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      double epoch_loss = 0;
      for (size_t begin = 0; begin < order.size(); begin += options.batch_size) {
        size_t end = std::min(order.size(), begin + options.batch_size);
        ParamGrads grads = zero_grads_like(m);
        double batch_loss = 0;
        for (size_t k = begin; k < end; ++k) {
          const Prepared& p = pool[order[k]];
          Tape tape;
          DecoderRun run(tape, m, g, p.tokens, &grads);
          Tape::Ref loss = sequence_nll(tape, run, g, p.oracle);
          batch_loss += tape.value(loss)(0, 0);
          tape.backward(loss);
        }
        double count = static_cast<double>(end - begin);
        if (!std::isfinite(batch_loss)) {
          throw Error("non-finite loss in phase '" + phase.name + "', epoch " +
                      std::to_string(epoch_counter + 1));
        }
        for (auto& [name, grad] : grads) grad /= count;
        optimizer.step(m, grads);
        epoch_loss += batch_loss;
      }
      ++epoch_counter;
      double train_nll = epoch_loss / static_cast<double>(pool.size());
      double val_nll = val.empty() ? train_nll : mean_nll(m, g, val);
      result.curve.push_back({epoch_counter, train_nll, val_nll});
      if (val_nll < best_metric) {
        best_metric = val_nll;
        best_params = m.params;
        result.best_epoch = epoch_counter;
        result.best_val_nll = val_nll;
      }
      if (!options.quiet && (epoch_counter % 10 == 0 || epoch == phase.epochs - 1)) {
        std::cerr << "epoch " << epoch_counter << " [" << phase.name
                  << "] train_nll=" << train_nll << " val_nll=" << val_nll << "\n";
      }
    }
  }
  if (!best_params.empty()) m.params = std::move(best_params);
  return result;
}

}  // namespace jsgen::neural
