// core/include/protosed/losses.hpp
//
// Copyright 2026 The protosed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROTOSED_LOSSES_HPP_
#define PROTOSED_LOSSES_HPP_

#include <Eigen/Dense>
#include <vector>

namespace protosed {

// Scalar knobs shared by the contrastive objectives.
struct LossConfig {
  double temperature = 0.06;  // tau
  double tcr_eps2 = 0.05;     // squared coding precision
  double tcr_lambda = 1e-4;   // coding-rate regularization weight
  bool anchor_mean = true;    // mean over anchors (false: plain sum)
  void validate() const;
};

// A two-view batch of projected embeddings. Rows are L2-normalized at
// construction; the loss functions below take plain matrices so they stay
// checkable against finite differences of arbitrary inputs.
struct ProjectedBatch {
  Eigen::MatrixXd z;              // [rows x dim]
  std::vector<int> labels;        // class id per row
  std::vector<int> view_partner;  // row index of the same original's other view

  int rows() const { return static_cast<int>(z.rows()); }
  // Checks unit-norm rows (1 +- 1e-6), partner symmetry, and label agreement
  // between the two views of each original.
  void validate() const;
};

// Supervised contrastive loss over a batch where every row has at least one
// other row with the same label. For each anchor i, positives P(i) are the
// same-label rows (excluding i) and the denominator runs over every other
// row. Averaged over anchors when anchor_mean is set, summed otherwise.
// Throws UsageError when a row has no positive.
double scl_loss(const Eigen::MatrixXd& z, const std::vector<int>& labels,
                double temperature, Eigen::MatrixXd* grad = nullptr,
                bool anchor_mean = true);

// Total coding rate of a [b x d] feature batch:
//   R(Z) = 1/2 logdet(I + d/(b*eps2) * Z Z^T)
// evaluated through the eigenvalues of the smaller Gram matrix, clamped at
// zero from below: 1/2 * sum_i log(1 + d/(b*eps2) * lambda_i).
double total_coding_rate(const Eigen::MatrixXd& z, double eps2,
                         Eigen::MatrixXd* grad = nullptr);

// Pre-training objective: scl_loss - tcr_lambda * total_coding_rate, with the
// coding rate computed on the same (full two-view) batch fed to the SCL term.
// Optionally reports the two components.
double pretrain_loss(const Eigen::MatrixXd& z, const std::vector<int>& labels,
                     const LossConfig& cfg, Eigen::MatrixXd* grad = nullptr,
                     double* scl_part = nullptr, double* tcr_part = nullptr);

// Prototypical fine-tuning loss with the anchor's own prototype removed from
// the denominator: per anchor, -log exp(z_i . m_c) / sum_{c' != c} exp(z_i .
// m_{c'}), where m_c is the in-batch mean of class-c rows (anchor included).
// Needs at least two classes; unbounded below.
double finetune_proto_loss(const Eigen::MatrixXd& z,
                           const std::vector<int>& labels,
                           Eigen::MatrixXd* grad = nullptr);

// Original prototypical softmax (denominator over all classes, own included);
// always >= 0.
double protonets_loss(const Eigen::MatrixXd& z, const std::vector<int>& labels,
                      Eigen::MatrixXd* grad = nullptr);

// Normalized temperature-scaled cross-entropy with the positive pair removed
// from the denominator: per anchor i with paired view i', the denominator
// runs over all rows except i and i'. Labels are ignored.
double ntxent_loss(const Eigen::MatrixXd& z,
                   const std::vector<int>& view_partner, double temperature,
                   Eigen::MatrixXd* grad = nullptr);

// Softmax cross-entropy over [n x k] logits, mean over the batch.
double cross_entropy_loss(const Eigen::MatrixXd& logits,
                          const std::vector<int>& labels,
                          Eigen::MatrixXd* grad = nullptr);

// exp(entropy) of the normalized singular-value distribution; a smooth rank
// surrogate used to diagnose dimensional collapse. Undefined for a zero
// matrix.
double effective_rank(const Eigen::MatrixXd& z);

}  // namespace protosed

#endif  // PROTOSED_LOSSES_HPP_
