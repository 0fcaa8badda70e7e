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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "sqrtfree/dataset.hpp"
#include "sqrtfree/errors.hpp"

namespace sqrtfree {
namespace {

TEST(Csv, ParsesHeaderRowsAndLabels) {
  const Dataset d = parse_csv_dataset("a,b,label\n1,2,0\n\n-3.5,4e-1,1\n");
  EXPECT_EQ(d.num_samples(), 2u);
  EXPECT_EQ(d.features, (Mat{{1, 2}, {-3.5, 0.4}}));
  EXPECT_EQ(d.labels, (Vec{0, 1}));
}

TEST(Csv, ReportsLineOfBadCell) {
  try {
    parse_csv_dataset("a,label\n1,0\nx,1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_csv_dataset("a,label\n1,0,2\n"), ParseError);
  EXPECT_THROW(parse_csv_dataset("a,label\n1.5.2,0\n"), ParseError);
  EXPECT_THROW(parse_csv_dataset("a,label\n"), ParseError);
}

TEST(Csv, LoadsFromDisk) {
  const auto path = std::filesystem::temp_directory_path() / "sqrtfree_test_ds.csv";
  {
    std::ofstream f(path);
    f << "x,y\n0.5,1\n";
  }
  const Dataset d = load_csv_dataset(path);
  EXPECT_EQ(d.labels, (Vec{1}));
  std::filesystem::remove(path);
  EXPECT_THROW(load_csv_dataset("/nonexistent/dir/none.csv"), IoError);
}

TEST(Synthetic, SeededAndWellFormed) {
  const Dataset a = synthetic_logreg_data(50, 3, 11);
  const Dataset b = synthetic_logreg_data(50, 3, 11);
  const Dataset c = synthetic_logreg_data(50, 3, 12);
  EXPECT_EQ(a.features, b.features);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_NE(a.features, c.features);
  for (double y : a.labels) EXPECT_TRUE(y == 0.0 || y == 1.0);

  // Without label noise every label agrees with the teacher sign, so some
  // direction separates the data; both classes still appear.
  const Dataset clean = synthetic_logreg_data(200, 2, 3, 0.0);
  double ones = 0;
  for (double y : clean.labels) ones += y;
  EXPECT_GT(ones, 0.0);
  EXPECT_LT(ones, 200.0);

  const MatfactData m = synthetic_matfact_data(3, 2, 7, 1, 0.0);
  EXPECT_EQ(m.inputs.rows(), 2u);
  EXPECT_EQ(m.inputs.cols(), 7u);
  EXPECT_LT(max_abs_diff(m.targets, m.teacher * m.inputs), 1e-15);
}

}  // namespace
}  // namespace sqrtfree
