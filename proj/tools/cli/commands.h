//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_TOOLS_CLI_COMMANDS_H_
#define MOLRL_TOOLS_CLI_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/run.h"

namespace molrl::cli {

const CommandDef& pretrain_def();
const CommandDef& sample_def();
const CommandDef& train_agent_def();
const CommandDef& eval_def();
const CommandDef& trace_def();
const CommandDef& split_def();
const CommandDef& train_qsar_def();
const CommandDef& fingerprint_def();
const CommandDef& synth_def();

// Each command reads its resolved config from `run` and writes into its
// output directory. Progress lines go to `log`.
void cmd_pretrain(Run& run, std::ostream& log);
void cmd_sample(Run& run, std::ostream& log);
void cmd_train_agent(Run& run, std::ostream& log);
void cmd_eval(Run& run, std::ostream& log);
void cmd_trace(Run& run, std::ostream& log);
void cmd_split(Run& run, std::ostream& log);
void cmd_train_qsar(Run& run, std::ostream& log);
void cmd_fingerprint(Run& run, std::ostream& log);
void cmd_synth(Run& run, std::ostream& log);

// Parses argv, runs the command and maps failures to exit codes: 0 success,
// 1 usage or config error, 2 data error, 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace molrl::cli

#endif  // MOLRL_TOOLS_CLI_COMMANDS_H_
