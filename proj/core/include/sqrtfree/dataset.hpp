// Copyright 2026 The sqrtfree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>

#include "sqrtfree/mat.hpp"

namespace sqrtfree {

/// Feature matrix (one sample per row) + binary labels.
struct Dataset {
  Mat features;
  Vec labels;
  std::size_t num_samples() const noexcept { return labels.size(); }
};

/// Parse CSV text: header row, one sample per line, final column the label.
/// Every cell must be a number; ParseError reports the 1-based line.
Dataset parse_csv_dataset(std::string_view text);
Dataset load_csv_dataset(const std::filesystem::path& path);

/// Seeded logistic-regression data. Features are i.i.d. N(0, 1); a fixed
/// linear teacher w ~ N(0, teacher_scale^2 I) labels each sample by
/// sign(w . x), and each label is flipped independently with probability
/// `label_noise`.
Dataset synthetic_logreg_data(std::size_t num_samples, std::size_t dim, std::uint64_t seed,
                              double label_noise = 0.1, double teacher_scale = 1.0);

/// Inputs X (d x n) and targets Y = W* X + noise (p x n) for matfact_make.
struct MatfactData {
  Mat inputs;
  Mat targets;
  Mat teacher;
};

MatfactData synthetic_matfact_data(std::size_t p, std::size_t d, std::size_t n,
                                   std::uint64_t seed, double noise = 0.1);

}  // namespace sqrtfree
