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

#include "sqrtfree/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqrtfree/errors.hpp"
#include "sqrtfree/linalg.hpp"

namespace sqrtfree {

std::string_view to_string(FisherKind k) {
  switch (k) {
    case FisherKind::standard:
      return "standard";
    case FisherKind::new_:
      return "new";
    case FisherKind::scaled:
      return "scaled";
    case FisherKind::mini_exact:
      return "mini_exact";
    case FisherKind::full_exact:
      return "full_exact";
  }
  return "standard";
}

namespace {

std::size_t common_dim(std::span<const Vec> grads, const char* op) {
  if (grads.empty()) throw DomainError(std::string(op) + ": no gradients");
  const std::size_t d = grads.front().size();
  for (const Vec& g : grads) {
    if (g.size() != d) throw ShapeError(std::string(op) + ": gradient dimensions differ");
  }
  if (d == 0) throw ShapeError(std::string(op) + ": zero-length gradient");
  return d;
}

Vec gradient_sum(std::span<const Vec> grads, std::size_t d) {
  Vec s(d, 0.0);
  for (const Vec& g : grads)
    for (std::size_t k = 0; k < d; ++k) s[k] += g[k];
  return s;
}

void add_outer(Mat& acc, std::span<const double> v, double w) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) acc(i, j) += w * v[i] * v[j];
}

const BinaryLabelModel& require_binary(const Problem& p) {
  const BinaryLabelModel* model = p.binary_labels();
  if (model == nullptr) {
    throw UnsupportedError("exact Fisher needs a finite label space; '" + std::string(p.kind()) +
                           "' has continuous targets");
  }
  return *model;
}

FisherKind exact_kind(const Problem& p, std::size_t subset_size) {
  return subset_size >= p.num_samples() ? FisherKind::full_exact : FisherKind::mini_exact;
}

// Visit every k-subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

FisherEstimate emp_fisher_standard(std::span<const Vec> grads) {
  const std::size_t d = common_dim(grads, "emp_fisher_standard");
  Mat f(d, d);
  for (const Vec& g : grads) add_outer(f, g, 1.0);
  return {std::move(f), FisherKind::standard, grads.size()};
}

FisherEstimate emp_fisher_new(std::span<const Vec> grads) {
  const std::size_t d = common_dim(grads, "emp_fisher_new");
  const Vec s = gradient_sum(grads, d);
  return {outer(s, s), FisherKind::new_, grads.size()};
}

FisherEstimate emp_fisher_scaled(std::span<const Vec> grads, std::size_t n) {
  if (n == 0) throw DomainError("emp_fisher_scaled: N must be >= 1");
  const std::size_t d = common_dim(grads, "emp_fisher_scaled");
  const Vec s = gradient_sum(grads, d);
  return {outer(s, s) * (1.0 / static_cast<double>(n)), FisherKind::scaled, n};
}

FisherEstimate exact_fisher(const Problem& p, std::span<const double> mu,
                            std::span<const std::size_t> subset) {
  const BinaryLabelModel& model = require_binary(p);
  if (subset.empty()) throw DomainError("exact_fisher: empty subset");
  Mat f(p.dim(), p.dim());
  for (std::size_t i : subset) {
    const double p1 = model.prob_positive(mu, i);
    add_outer(f, model.score(mu, i, 1), p1);
    add_outer(f, model.score(mu, i, 0), 1.0 - p1);
  }
  return {symmetrize(f), exact_kind(p, subset.size()), subset.size()};
}

FisherEstimate joint_fisher(const Problem& p, std::span<const double> mu,
                            std::span<const std::size_t> subset) {
  const BinaryLabelModel& model = require_binary(p);
  const std::size_t b = subset.size();
  if (b == 0) throw DomainError("joint_fisher: empty subset");
  if (b > kMaxJointLabels) {
    throw SizeError("joint_fisher: 2^" + std::to_string(b) + " label vectors exceed the guard");
  }

  std::vector<double> p1(b);
  std::vector<Vec> pos(b), neg(b);
  for (std::size_t k = 0; k < b; ++k) {
    p1[k] = model.prob_positive(mu, subset[k]);
    pos[k] = model.score(mu, subset[k], 1);
    neg[k] = model.score(mu, subset[k], 0);
  }

  Mat f(p.dim(), p.dim());
  Vec total(p.dim());
  for (std::size_t labels = 0; labels < (std::size_t{1} << b); ++labels) {
    double prob = 1.0;
    std::fill(total.begin(), total.end(), 0.0);
    for (std::size_t k = 0; k < b; ++k) {
      const bool positive = (labels >> k) & 1U;
      prob *= positive ? p1[k] : 1.0 - p1[k];
      const Vec& s = positive ? pos[k] : neg[k];
      for (std::size_t j = 0; j < total.size(); ++j) total[j] += s[j];
    }
    add_outer(f, total, prob);
  }
  return {symmetrize(f), exact_kind(p, b), b};
}

double max_mean_score(const Problem& p, std::span<const double> mu) {
  const BinaryLabelModel& model = require_binary(p);
  double worst = 0.0;
  for (std::size_t i = 0; i < p.num_samples(); ++i) {
    const double p1 = model.prob_positive(mu, i);
    const Vec s1 = model.score(mu, i, 1);
    const Vec s0 = model.score(mu, i, 0);
    for (std::size_t k = 0; k < s1.size(); ++k) {
      worst = std::max(worst, std::abs(p1 * s1[k] + (1.0 - p1) * s0[k]));
    }
  }
  return worst;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(c);
}

double check_unbiasedness(const Problem& p, std::span<const double> mu, std::size_t batch_size) {
  const std::size_t n = p.num_samples();
  if (batch_size == 0 || batch_size > n) {
    throw DomainError("check_unbiasedness: B must lie in [1, N]");
  }
  const double count = binomial(n, batch_size);
  if (count > kMaxSubsets) {
    throw SizeError("check_unbiasedness: C(" + std::to_string(n) + ", " +
                    std::to_string(batch_size) + ") subsets exceed the enumeration guard");
  }

  Mat average(p.dim(), p.dim());
  const double weight = 1.0 / (static_cast<double>(batch_size) * count);
  for_each_subset(n, batch_size, [&](std::span<const std::size_t> subset) {
    average += joint_fisher(p, mu, subset).matrix * weight;
  });

  const Mat full = joint_fisher(p, mu, full_batch(n).indices).matrix *
                   (1.0 / static_cast<double>(n));
  return max_abs_diff(average, full);
}

std::size_t numerical_rank(const Mat& symmetric, double rel_tol) {
  const SymEig eig = sym_eig(symmetric);
  double largest = 0.0;
  for (double v : eig.eigenvalues) largest = std::max(largest, std::abs(v));
  if (largest == 0.0) return 0;
  std::size_t rank = 0;
  for (double v : eig.eigenvalues)
    if (std::abs(v) > rel_tol * largest) ++rank;
  return rank;
}

}  // namespace sqrtfree
