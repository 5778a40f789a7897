//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_QSAR_MODEL_IO_H_
#define MOLRL_QSAR_MODEL_IO_H_

#include <string>

#include "molrl/qsar/svm.h"

namespace molrl::qsar {

inline constexpr int kSvmModelVersion = 1;

// JSON document: version, C, gamma, calibration, bias, counts, fingerprint
// settings, then one {features, coef} entry per support vector.
std::string svm_to_json(const SvmModel& model);
SvmModel svm_from_json(const std::string& text);

void save_svm(const SvmModel& model, const std::string& path);
SvmModel load_svm(const std::string& path);

}  // namespace molrl::qsar

#endif  // MOLRL_QSAR_MODEL_IO_H_
