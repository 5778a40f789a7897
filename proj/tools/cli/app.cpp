//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "cli/commands.h"
#include "molrl/common/error.h"

namespace molrl::cli {
namespace {

struct Command {
  const CommandDef& (*def)();
  void (*run)(Run&, std::ostream&);
  const char* help;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> table = {
      {pretrain_def, cmd_pretrain, "Train a SMILES prior by maximum likelihood"},
      {sample_def, cmd_sample, "Sample SMILES from a checkpoint"},
      {train_agent_def, cmd_train_agent, "Fine-tune an agent against a scoring function"},
      {eval_def, cmd_eval, "Summarize a sample file"},
      {trace_def, cmd_trace, "Per-step token probabilities for one SMILES"},
      {split_def, cmd_split, "Cluster-split a labeled dataset"},
      {train_qsar_def, cmd_train_qsar, "Grid-search and train the activity SVM"},
      {fingerprint_def, cmd_fingerprint, "Write circular fingerprints"},
      {synth_def, cmd_synth, "Generate a synthetic corpus or activity dataset"},
  };
  return table;
}

std::string describe_keys(const CommandDef& def) {
  std::string text = "Config keys (default):";
  for (const auto& [key, value] : def.defaults) {
    text += "\n  " + key + (def.required.count(key) ? " (required)" : " = " + value);
  }
  return text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"molrl: recurrent SMILES generation with likelihood-anchored agent fine-tuning", "molrl"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  Invocation inv;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out_dir;
  const Command* selected = nullptr;
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& cmd : commands()) {
    const CommandDef& def = cmd.def();
    CLI::App* sub = app.add_subcommand(def.name, cmd.help);
    sub->footer(describe_keys(def));
    sub->add_option("--config", inv.config_path, "key=value config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--set", inv.assignments, "override a config key (key=value); repeatable")->take_all();
    subs.emplace_back(sub, &cmd);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; everything else is a usage error.
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  for (const auto& [sub, cmd] : subs) {
    if (!sub->parsed()) continue;
    selected = cmd;
    if (sub->count("--seed")) inv.seed = seed;
    if (sub->count("--threads")) inv.threads = threads;
    if (sub->count("--out")) inv.out = out_dir;
  }

  try {
    Run run(selected->def(), inv);
    selected->run(run, out);
    return 0;
  } catch (const Error& e) {
    const char* label = e.category() == ErrorCategory::kUsage ? "config error"
                        : e.category() == ErrorCategory::kData ? "data error"
                                                               : "numerical failure";
    err << label << ": " << e.what() << "\n";
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    err << "data error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace molrl::cli
