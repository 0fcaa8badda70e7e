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

#include "sqrtfree/dataset.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sqrtfree/errors.hpp"
#include "sqrtfree/random.hpp"

namespace sqrtfree {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_cell(std::string_view cell, int line, std::size_t column) {
  double value = 0.0;
  const char* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (cell.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("non-numeric cell '" + std::string(cell) + "' in column " +
                         std::to_string(column + 1),
                     line);
  }
  return value;
}

}  // namespace

Dataset parse_csv_dataset(std::string_view text) {
  std::size_t columns = 0;
  std::vector<double> features;
  Vec labels;
  int line_no = 0;
  bool header_seen = false;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto cells = split(line);
    if (!header_seen) {
      header_seen = true;
      columns = cells.size();
      if (columns < 2) throw ParseError("header needs at least one feature and a label", line_no);
      continue;
    }
    if (cells.size() != columns) {
      throw ParseError("expected " + std::to_string(columns) + " cells, found " +
                           std::to_string(cells.size()),
                       line_no);
    }
    for (std::size_t c = 0; c + 1 < columns; ++c) features.push_back(parse_cell(cells[c], line_no, c));
    labels.push_back(parse_cell(cells.back(), line_no, columns - 1));
  }
  if (!header_seen) throw ParseError("empty CSV input", 0);
  if (labels.empty()) throw ParseError("CSV has a header but no samples", line_no);
  return Dataset{Mat(labels.size(), columns - 1, std::move(features)), std::move(labels)};
}

Dataset load_csv_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv_dataset(buffer.str());
}

Dataset synthetic_logreg_data(std::size_t num_samples, std::size_t dim, std::uint64_t seed,
                              double label_noise, double teacher_scale) {
  Rng rng(seed);
  const Vec teacher = normal_vec(dim, rng, teacher_scale);
  Mat x = normal_mat(num_samples, dim, rng);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Vec y(num_samples);
  for (std::size_t i = 0; i < num_samples; ++i) {
    double z = 0.0;
    for (std::size_t k = 0; k < dim; ++k) z += teacher[k] * x(i, k);
    bool label = z > 0.0;
    if (coin(rng) < label_noise) label = !label;
    y[i] = label ? 1.0 : 0.0;
  }
  return Dataset{std::move(x), std::move(y)};
}

MatfactData synthetic_matfact_data(std::size_t p, std::size_t d, std::size_t n,
                                   std::uint64_t seed, double noise) {
  Rng rng(seed);
  Mat teacher = normal_mat(p, d, rng);
  Mat inputs = normal_mat(d, n, rng);
  Mat targets = teacher * inputs + normal_mat(p, n, rng, noise);
  return MatfactData{std::move(inputs), std::move(targets), std::move(teacher)};
}

}  // namespace sqrtfree
