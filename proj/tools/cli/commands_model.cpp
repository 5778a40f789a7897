//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include <nlohmann/json.hpp>

#include "cli/commands.h"
#include "molrl/common/error.h"
#include "molrl/common/io.h"
#include "molrl/common/rng.h"
#include "molrl/model/checkpoint.h"
#include "molrl/model/network.h"
#include "molrl/model/optimizer.h"
#include "molrl/model/sampler.h"
#include "molrl/rl/trace.h"
#include "molrl/rl/trainer.h"
#include "molrl/scoring/scoring.h"
#include "molrl/smiles/corpus.h"
#include "molrl/smiles/parser.h"

namespace molrl::cli {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::map<std::string, std::string> with_common(std::map<std::string, std::string> keys) {
  keys.emplace("seed", "1");
  keys.emplace("threads", "1");
  keys.emplace("out", "");
  return keys;
}

}  // namespace

const CommandDef& pretrain_def() {
  static const CommandDef s{"pretrain",
                             with_common({{"corpus", ""},
                                          {"layers", "2"},
                                          {"hidden", "256"},
                                          {"one_hot", "false"},
                                          {"steps", "2000"},
                                          {"batch_size", "128"},
                                          {"learning_rate", "0.001"},
                                          {"decay_rate", "0.02"},
                                          {"decay_interval", "100"},
                                          {"clip", "3"},
                                          {"max_tokens", "200"},
                                          {"checkpoint_every", "500"},
                                          {"init_checkpoint", ""},
                                          {"init_scale", "0.1"},
                                          {"update_gate_bias", "5"},
                                          {"log_every", "100"}}),
                             {"corpus", "out"},
                             {"corpus", "init_checkpoint"}};
  return s;
}

void cmd_pretrain(Run& run, std::ostream& log) {
  const smiles::Corpus corpus = smiles::read_corpus(run.get("corpus"), static_cast<std::size_t>(run.get_int("max_tokens")));
  if (corpus.entries.empty()) throw DataError(run.get("corpus") + ": corpus has no usable SMILES");
  const std::vector<std::string> texts = corpus.smiles();

  Rng rng(run.seed());
  model::Checkpoint ckpt;
  model::AdamState adam;
  if (run.has_value("init_checkpoint")) {
    ckpt = model::load_checkpoint(run.get("init_checkpoint"));
    adam = ckpt.adam ? *ckpt.adam : model::AdamState::for_params(ckpt.params);
    log << "resuming from " << run.get("init_checkpoint") << " at step " << adam.step << "\n";
  } else {
    ckpt.vocab = smiles::Vocabulary::build(texts);
    model::ModelShape shape;
    shape.vocab_size = ckpt.vocab.size();
    shape.num_layers = static_cast<int>(run.get_int("layers"));
    shape.hidden_size = static_cast<int>(run.get_int("hidden"));
    shape.one_hot_input = run.get_bool("one_hot");
    if (shape.num_layers < 1 || shape.hidden_size < 1) throw ConfigError("layers and hidden must be >= 1");
    model::InitOptions init;
    init.scale = run.get_double("init_scale");
    init.update_gate_bias = run.get_double("update_gate_bias");
    ckpt.params = model::ModelParams::random(shape, rng, init);
    adam = model::AdamState::for_params(ckpt.params);
  }
  std::vector<smiles::TokenSequence> data;
  data.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    try {
      data.push_back(ckpt.vocab.encode(texts[i]));
    } catch (const DataError& e) {
      throw DataError(run.get("corpus") + ":" + std::to_string(corpus.entries[i].line) + ": " + e.what());
    }
  }
  log << "corpus " << data.size() << " SMILES (" << corpus.rejected_too_long << " too long), vocab "
      << ckpt.vocab.size() << ", parameters " << ckpt.params.num_parameters() << "\n";

  model::AdamConfig ac;
  ac.learning_rate = run.get_double("learning_rate");
  ac.decay_rate = run.get_double("decay_rate");
  ac.decay_interval = static_cast<int>(run.get_int("decay_interval"));
  const double clip = run.get_double("clip");
  const auto steps = run.get_int("steps");
  const auto batch_size = static_cast<std::size_t>(run.get_int("batch_size"));
  const auto ckpt_every = run.get_int("checkpoint_every");
  const auto log_every = std::max<std::int64_t>(1, run.get_int("log_every"));
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");

  ckpt.metadata["corpus_checksum"] = io::file_checksum(run.get("corpus"));
  std::string jsonl;
  std::string csv = "step,loss,token_nll,learning_rate\n";
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::size_t cursor = order.size();

  auto save = [&](const std::string& name) {
    ckpt.adam = adam;
    ckpt.metadata["steps"] = std::to_string(adam.step);
    model::save_checkpoint(ckpt, run.path(name));
    run.write("train_log.jsonl", jsonl);
    run.write("train_log.csv", csv);
  };

  for (std::int64_t s = 0; s < steps; ++s) {
    std::vector<smiles::TokenSequence> batch;
    batch.reserve(batch_size);
    std::size_t batch_steps = 0;
    for (std::size_t k = 0; k < batch_size; ++k) {
      if (cursor == order.size()) {
        rng.shuffle(order.begin(), order.end());
        cursor = 0;
      }
      batch.push_back(data[order[cursor++]]);
      batch_steps += batch.back().length() + 1;
    }
    model::LossAndGrad lg = model::mle_loss_and_grad(ckpt.params, batch);
    if (!std::isfinite(lg.loss) || !lg.grad.all_finite()) {
      save("prior_last_good.ckpt");
      throw NumericalError("non-finite loss at step " + std::to_string(adam.step + 1) +
                           "; last good state saved to prior_last_good.ckpt");
    }
    const double lr = model::scheduled_learning_rate(ac, adam.step);
    model::clip_gradients(lg.grad, clip);
    model::adam_update(ckpt.params, lg.grad, ac, adam);
    // Mean NLL per predicted token, EOS included.
    const double token_nll = lg.loss * static_cast<double>(batch.size()) / static_cast<double>(batch_steps);
    nlohmann::json row = {{"step", adam.step}, {"loss", lg.loss}, {"token_nll", token_nll}, {"learning_rate", lr}};
    jsonl += row.dump() + "\n";
    csv += std::to_string(adam.step) + "," + fmt(lg.loss) + "," + fmt(token_nll) + "," + fmt(lr) + "\n";
    if ((s + 1) % log_every == 0) log << "step " << adam.step << " loss " << lg.loss << "\n";
    if (ckpt_every > 0 && (s + 1) % ckpt_every == 0 && s + 1 < steps) save("prior.ckpt");
  }
  save("prior.ckpt");
  log << "wrote " << run.path("prior.ckpt") << "\n";
}

const CommandDef& sample_def() {
  static const CommandDef s{"sample",
                             with_common({{"checkpoint", ""}, {"num_samples", "1000"}, {"max_len", "100"}}),
                             {"checkpoint", "out"},
                             {"checkpoint"}};
  return s;
}

void cmd_sample(Run& run, std::ostream& log) {
  const model::Checkpoint ckpt = model::load_checkpoint(run.get("checkpoint"));
  const auto n = run.get_int("num_samples");
  const auto max_len = static_cast<int>(run.get_int("max_len"));
  if (n < 0) throw ConfigError("num_samples must be >= 0");
  Rng rng(run.seed());
  std::string tsv = "smiles\tlog_likelihood\tvalid\ttruncated\n";
  std::size_t valid = 0;
  std::size_t truncated = 0;
  double sum_logp = 0.0;
  constexpr std::int64_t kChunk = 512;
  for (std::int64_t done = 0; done < n; done += kChunk) {
    const auto m = static_cast<int>(std::min(kChunk, n - done));
    for (const auto& s : model::sample_batch(ckpt.params, m, max_len, rng)) {
      const std::string text = ckpt.vocab.decode(s.tokens);
      const bool ok = smiles::is_valid_smiles(text);
      valid += ok;
      truncated += s.truncated;
      sum_logp += s.log_likelihood;
      tsv += text + "\t" + fmt(s.log_likelihood) + "\t" + (ok ? "1" : "0") + "\t" + (s.truncated ? "1" : "0") + "\n";
    }
  }
  const double dn = static_cast<double>(n);
  nlohmann::json stats = {{"num_samples", n},
                          {"fraction_valid", n > 0 ? static_cast<double>(valid) / dn : 0.0},
                          {"fraction_truncated", n > 0 ? static_cast<double>(truncated) / dn : 0.0},
                          {"mean_log_likelihood", n > 0 ? sum_logp / dn : 0.0}};
  run.write("samples.tsv", tsv);
  run.write("sample_stats.json", stats.dump(2) + "\n");
  log << "sampled " << n << ", fraction valid " << stats["fraction_valid"].get<double>() << "\n";
}

const CommandDef& train_agent_def() {
  static const CommandDef s{"train-agent",
                             with_common({{"prior", ""},
                                          {"task", ""},
                                          {"query_smiles", ""},
                                          {"k", "1"},
                                          {"model_path", ""},
                                          {"strategy", "agent"},
                                          {"sigma", "2"},
                                          {"learning_rate", ""},
                                          {"batch_size", "128"},
                                          {"steps", "1000"},
                                          {"max_len", "100"},
                                          {"clip", "3"},
                                          {"snapshot_every", "100"},
                                          {"log_every", "50"}}),
                             {"prior", "task", "out"},
                             {"prior", "model_path"}};
  return s;
}

void cmd_train_agent(Run& run, std::ostream& log) {
  // Everything that can fail on configuration is checked before training.
  const model::Checkpoint prior = model::load_checkpoint(run.get("prior"));
  const auto scorer = scoring::make_scorer(run.config());
  rl::AgentConfig ac;
  ac.strategy = rl::strategy_from_string(run.get("strategy"));
  if (!run.has_value("learning_rate")) {
    const bool reinforce = ac.strategy == rl::Strategy::kReinforce || ac.strategy == rl::Strategy::kReinforcePrior;
    run.resolve("learning_rate", reinforce ? "0.0001" : "0.0005");
  }
  ac.sigma = run.get_double("sigma");
  ac.learning_rate = run.get_double("learning_rate");
  ac.batch_size = static_cast<int>(run.get_int("batch_size"));
  ac.num_steps = static_cast<int>(run.get_int("steps"));
  ac.max_len = static_cast<int>(run.get_int("max_len"));
  ac.clip = run.get_double("clip");
  ac.seed = run.seed();
  ac.threads = run.threads();
  ac.validate();
  const auto snapshot_every = run.get_int("snapshot_every");
  const auto log_every = std::max<std::int64_t>(1, run.get_int("log_every"));

  rl::AgentTrainer trainer(prior.params, prior.vocab, *scorer, ac);
  const std::uint32_t prior_crc = prior.params.checksum();
  std::string jsonl;
  std::string csv = "step,mean_score,fraction_valid,mean_agent_logp,mean_augmented_logp,loss\n";
  for (int s = 0; s < ac.num_steps; ++s) {
    rl::EpisodeBatch episodes;
    const rl::TrainStats st = trainer.step(&episodes);
    nlohmann::json row = {{"step", st.step},
                          {"mean_score", st.mean_score},
                          {"fraction_valid", st.fraction_valid},
                          {"mean_agent_logp", st.mean_agent_logp},
                          {"mean_augmented_logp", st.mean_augmented_logp},
                          {"loss", st.loss}};
    jsonl += row.dump() + "\n";
    csv += std::to_string(st.step) + "," + fmt(st.mean_score) + "," + fmt(st.fraction_valid) + "," +
           fmt(st.mean_agent_logp) + "," + fmt(st.mean_augmented_logp) + "," + fmt(st.loss) + "\n";
    if (st.step % log_every == 0) {
      log << "step " << st.step << " score " << st.mean_score << " valid " << st.fraction_valid << " loss " << st.loss
          << "\n";
    }
    if (snapshot_every > 0 && st.step % snapshot_every == 0) {
      std::string snap;
      for (const auto& smi : episodes.smiles) snap += smi + "\n";
      char name[64];
      std::snprintf(name, sizeof name, "snapshots/step_%06lld.smi", static_cast<long long>(st.step));
      run.write(name, snap);
      run.write("agent_log.jsonl", jsonl);
      run.write("agent_log.csv", csv);
    }
  }
  if (prior.params.checksum() != prior_crc) throw NumericalError("prior parameters changed during agent training");

  model::Checkpoint out;
  out.vocab = prior.vocab;
  out.params = trainer.agent();
  out.metadata = {{"role", "agent"},
                  {"strategy", rl::to_string(ac.strategy)},
                  {"steps", std::to_string(trainer.steps_done())},
                  {"prior_checksum", io::file_checksum(run.get("prior"))}};
  model::save_checkpoint(out, run.path("agent.ckpt"));
  run.write("agent_log.jsonl", jsonl);
  run.write("agent_log.csv", csv);
  log << "wrote " << run.path("agent.ckpt") << "\n";
}

const CommandDef& trace_def() {
  static const CommandDef s{"trace",
                             with_common({{"checkpoint", ""}, {"smiles", ""}, {"checkpoint2", ""}}),
                             {"checkpoint", "smiles", "out"},
                             {"checkpoint", "checkpoint2"}};
  return s;
}

void cmd_trace(Run& run, std::ostream& log) {
  const std::string smi = run.get("smiles");
  std::vector<model::Checkpoint> models;
  models.push_back(model::load_checkpoint(run.get("checkpoint")));
  if (run.has_value("checkpoint2")) {
    models.push_back(model::load_checkpoint(run.get("checkpoint2")));
    if (!(models[0].vocab == models[1].vocab)) throw DataError("paired trace checkpoints use different vocabularies");
  }
  const smiles::TokenSequence seq = models[0].vocab.encode(smi);
  for (std::size_t k = 0; k < models.size(); ++k) {
    const Eigen::MatrixXd m = rl::probability_trace(models[k].params, seq);
    const std::string name = k == 0 ? "trace.csv" : "trace_2.csv";
    run.write(name, rl::trace_csv(m, models[k].vocab, seq));
    log << "wrote " << run.path(name) << " (" << m.rows() << " x " << m.cols() << ")\n";
  }
}

}  // namespace molrl::cli
