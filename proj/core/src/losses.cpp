// core/src/losses.cpp
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

#include "protosed/losses.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "protosed/error.hpp"

namespace protosed {

void LossConfig::validate() const {
  if (temperature <= 0) throw UsageError("temperature must be > 0");
  if (tcr_eps2 <= 0) throw UsageError("tcr_eps2 must be > 0");
  if (tcr_lambda < 0) throw UsageError("tcr_lambda must be >= 0");
}

void ProjectedBatch::validate() const {
  const int n = rows();
  if (static_cast<int>(labels.size()) != n ||
      static_cast<int>(view_partner.size()) != n)
    throw UsageError("ProjectedBatch: labels/view_partner size mismatch");
  for (int i = 0; i < n; ++i) {
    const double norm = z.row(i).norm();
    if (std::abs(norm - 1.0) > 1e-6)
      throw UsageError("ProjectedBatch: row " + std::to_string(i) +
                       " is not unit-norm (|z| = " + std::to_string(norm) + ")");
    const int p = view_partner[i];
    if (p < 0 || p >= n || p == i || view_partner[p] != i)
      throw UsageError("ProjectedBatch: row " + std::to_string(i) +
                       " has no consistent paired view");
    if (labels[p] != labels[i])
      throw UsageError("ProjectedBatch: views of one sample disagree on label");
  }
}

namespace {

// log sum_{j in allowed} exp(s_j), with the softmax weights written into
// `weights` (zero outside the allowed set).
double masked_logsumexp(const Eigen::VectorXd& s,
                        const std::vector<int>& allowed,
                        Eigen::VectorXd* weights) {
  double m = -std::numeric_limits<double>::infinity();
  for (int j : allowed) m = std::max(m, s(j));
  double sum = 0.0;
  for (int j : allowed) sum += std::exp(s(j) - m);
  const double lse = m + std::log(sum);
  if (weights) {
    weights->setZero(s.size());
    for (int j : allowed) (*weights)(j) = std::exp(s(j) - lse);
  }
  return lse;
}

void check_finite(const Eigen::MatrixXd& z, const char* who) {
  if (!z.allFinite())
    throw NumericError(std::string(who) + ": non-finite input");
}

// Maps labels to dense class indices 0..C-1 (sorted by label value).
std::vector<int> dense_classes(const std::vector<int>& labels, int* n_classes,
                               std::vector<int>* counts) {
  std::map<int, int> index;
  for (int y : labels) index.emplace(y, 0);
  int next = 0;
  for (auto& kv : index) kv.second = next++;
  *n_classes = next;
  std::vector<int> dense(labels.size());
  counts->assign(next, 0);
  for (size_t i = 0; i < labels.size(); ++i) {
    dense[i] = index[labels[i]];
    ++(*counts)[dense[i]];
  }
  return dense;
}

}  // namespace

double scl_loss(const Eigen::MatrixXd& z, const std::vector<int>& labels,
                double temperature, Eigen::MatrixXd* grad, bool anchor_mean) {
  const int n = static_cast<int>(z.rows());
  if (static_cast<int>(labels.size()) != n)
    throw UsageError("scl_loss: labels size mismatch");
  if (n < 2) throw UsageError("scl_loss: need at least 2 rows");
  if (temperature <= 0) throw UsageError("scl_loss: temperature must be > 0");
  check_finite(z, "scl_loss");

  const Eigen::MatrixXd s = (z * z.transpose()) / temperature;
  const double anchor_coef = anchor_mean ? 1.0 / n : 1.0;

  Eigen::MatrixXd g;  // dL/dS
  if (grad) g.setZero(n, n);

  double loss = 0.0;
  std::vector<int> others;
  others.reserve(n - 1);
  Eigen::VectorXd w;
  for (int i = 0; i < n; ++i) {
    others.clear();
    int n_pos = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      others.push_back(j);
      if (labels[j] == labels[i]) ++n_pos;
    }
    if (n_pos == 0)
      throw UsageError("scl_loss: row " + std::to_string(i) +
                       " has no positive in the batch");

    const double lse = masked_logsumexp(s.row(i), others, grad ? &w : nullptr);
    double mean_pos = 0.0;
    for (int j : others)
      if (labels[j] == labels[i]) mean_pos += s(i, j);
    mean_pos /= n_pos;
    loss += anchor_coef * (lse - mean_pos);

    if (grad) {
      for (int j : others) {
        double d = w(j);
        if (labels[j] == labels[i]) d -= 1.0 / n_pos;
        g(i, j) = anchor_coef * d;
      }
    }
  }

  if (grad) *grad = (g + g.transpose()) * z / temperature;
  return loss;
}

double total_coding_rate(const Eigen::MatrixXd& z, double eps2,
                         Eigen::MatrixXd* grad) {
  if (eps2 <= 0) throw UsageError("total_coding_rate: eps2 must be > 0");
  check_finite(z, "total_coding_rate");
  const int b = static_cast<int>(z.rows());
  const int d = static_cast<int>(z.cols());
  if (b == 0 || d == 0) throw UsageError("total_coding_rate: empty matrix");
  const double c = static_cast<double>(d) / (static_cast<double>(b) * eps2);

  // logdet(I_b + c ZZ^T) equals logdet(I_d + c Z^T Z); work on the smaller
  // Gram and clamp eigenvalues at zero so rank-deficient batches stay stable.
  const bool feature_side = d <= b;
  const Eigen::MatrixXd gram =
      feature_side ? Eigen::MatrixXd(z.transpose() * z)
                   : Eigen::MatrixXd(z * z.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success)
    throw NumericError("total_coding_rate: eigendecomposition failed");

  const Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
  double r = 0.0;
  for (int i = 0; i < lambda.size(); ++i) r += std::log1p(c * lambda(i));
  r *= 0.5;

  if (grad) {
    // dR/dZ = c Z (I_d + c Z^T Z)^{-1} = c (I_b + c Z Z^T)^{-1} Z
    const Eigen::MatrixXd& v = eig.eigenvectors();
    const Eigen::VectorXd inv = (1.0 + c * lambda.array()).inverse().matrix();
    const Eigen::MatrixXd m_inv = v * inv.asDiagonal() * v.transpose();
    *grad = feature_side ? Eigen::MatrixXd(c * z * m_inv)
                         : Eigen::MatrixXd(c * m_inv * z);
  }
  return r;
}

double pretrain_loss(const Eigen::MatrixXd& z, const std::vector<int>& labels,
                     const LossConfig& cfg, Eigen::MatrixXd* grad,
                     double* scl_part, double* tcr_part) {
  cfg.validate();
  Eigen::MatrixXd scl_grad, tcr_grad;
  const double scl = scl_loss(z, labels, cfg.temperature,
                              grad ? &scl_grad : nullptr, cfg.anchor_mean);
  const double tcr =
      total_coding_rate(z, cfg.tcr_eps2, grad ? &tcr_grad : nullptr);
  if (scl_part) *scl_part = scl;
  if (tcr_part) *tcr_part = tcr;
  if (grad) *grad = scl_grad - cfg.tcr_lambda * tcr_grad;
  return scl - cfg.tcr_lambda * tcr;
}

namespace {

// Shared body of the two prototypical losses. Prototypes are in-batch class
// means (anchor's own row included); gradients flow through both the anchor
// similarity and the prototypes.
double proto_loss_impl(const Eigen::MatrixXd& z, const std::vector<int>& labels,
                       bool exclude_own, Eigen::MatrixXd* grad,
                       const char* who) {
  const int n = static_cast<int>(z.rows());
  if (static_cast<int>(labels.size()) != n)
    throw UsageError(std::string(who) + ": labels size mismatch");
  if (n < 2) throw UsageError(std::string(who) + ": need at least 2 rows");
  check_finite(z, who);

  int n_classes = 0;
  std::vector<int> counts;
  const std::vector<int> cls = dense_classes(labels, &n_classes, &counts);
  if (n_classes < 2)
    throw UsageError(std::string(who) +
                     ": batch must contain at least 2 classes");

  // P: [n x C], row i has 1/n_c at the anchor's class column.
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n_classes);
  for (int i = 0; i < n; ++i) p(i, cls[i]) = 1.0 / counts[cls[i]];
  const Eigen::MatrixXd protos = p.transpose() * z;   // [C x d]
  const Eigen::MatrixXd sims = z * protos.transpose();  // [n x C]

  Eigen::MatrixXd a;  // dL/dsims
  if (grad) a.setZero(n, n_classes);

  double loss = 0.0;
  std::vector<int> allowed;
  Eigen::VectorXd w;
  for (int i = 0; i < n; ++i) {
    allowed.clear();
    for (int c = 0; c < n_classes; ++c)
      if (!(exclude_own && c == cls[i])) allowed.push_back(c);
    const double lse =
        masked_logsumexp(sims.row(i), allowed, grad ? &w : nullptr);
    loss += (lse - sims(i, cls[i])) / n;
    if (grad) {
      for (int c : allowed) a(i, c) = w(c) / n;
      a(i, cls[i]) -= 1.0 / n;
    }
  }

  if (grad) *grad = a * protos + p * (a.transpose() * z);
  return loss;
}

}  // namespace

double finetune_proto_loss(const Eigen::MatrixXd& z,
                           const std::vector<int>& labels,
                           Eigen::MatrixXd* grad) {
  return proto_loss_impl(z, labels, /*exclude_own=*/true, grad,
                         "finetune_proto_loss");
}

double protonets_loss(const Eigen::MatrixXd& z, const std::vector<int>& labels,
                      Eigen::MatrixXd* grad) {
  return proto_loss_impl(z, labels, /*exclude_own=*/false, grad,
                         "protonets_loss");
}

double ntxent_loss(const Eigen::MatrixXd& z,
                   const std::vector<int>& view_partner, double temperature,
                   Eigen::MatrixXd* grad) {
  const int n = static_cast<int>(z.rows());
  if (static_cast<int>(view_partner.size()) != n)
    throw UsageError("ntxent_loss: view_partner size mismatch");
  if (n < 4) throw UsageError("ntxent_loss: need at least 2 originals (4 rows)");
  if (temperature <= 0) throw UsageError("ntxent_loss: temperature must be > 0");
  check_finite(z, "ntxent_loss");
  for (int i = 0; i < n; ++i) {
    const int p = view_partner[i];
    if (p < 0 || p >= n || p == i || view_partner[p] != i)
      throw UsageError("ntxent_loss: row " + std::to_string(i) +
                       " is not paired with a view");
  }

  const Eigen::MatrixXd s = (z * z.transpose()) / temperature;
  Eigen::MatrixXd g;
  if (grad) g.setZero(n, n);

  double loss = 0.0;
  std::vector<int> allowed;
  Eigen::VectorXd w;
  for (int i = 0; i < n; ++i) {
    const int ip = view_partner[i];
    allowed.clear();
    for (int j = 0; j < n; ++j)
      if (j != i && j != ip) allowed.push_back(j);
    const double lse = masked_logsumexp(s.row(i), allowed, grad ? &w : nullptr);
    loss += (lse - s(i, ip)) / n;
    if (grad) {
      for (int j : allowed) g(i, j) = w(j) / n;
      g(i, ip) -= 1.0 / n;
    }
  }

  if (grad) *grad = (g + g.transpose()) * z / temperature;
  return loss;
}

double cross_entropy_loss(const Eigen::MatrixXd& logits,
                          const std::vector<int>& labels,
                          Eigen::MatrixXd* grad) {
  const int n = static_cast<int>(logits.rows());
  const int k = static_cast<int>(logits.cols());
  if (static_cast<int>(labels.size()) != n)
    throw UsageError("cross_entropy_loss: labels size mismatch");
  if (n == 0 || k == 0) throw UsageError("cross_entropy_loss: empty batch");
  check_finite(logits, "cross_entropy_loss");

  if (grad) grad->setZero(n, k);
  double loss = 0.0;
  for (int i = 0; i < n; ++i) {
    if (labels[i] < 0 || labels[i] >= k)
      throw UsageError("cross_entropy_loss: label " +
                       std::to_string(labels[i]) + " out of range [0, " +
                       std::to_string(k) + ")");
    const double m = logits.row(i).maxCoeff();
    double sum = 0.0;
    for (int c = 0; c < k; ++c) sum += std::exp(logits(i, c) - m);
    const double lse = m + std::log(sum);
    loss += (lse - logits(i, labels[i])) / n;
    if (grad) {
      for (int c = 0; c < k; ++c)
        (*grad)(i, c) = std::exp(logits(i, c) - lse) / n;
      (*grad)(i, labels[i]) -= 1.0 / n;
    }
  }
  return loss;
}

double effective_rank(const Eigen::MatrixXd& z) {
  check_finite(z, "effective_rank");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(z);
  const Eigen::VectorXd sigma = svd.singularValues();
  const double total = sigma.sum();
  if (total <= 0) throw NumericError("effective_rank: zero matrix");
  double entropy = 0.0;
  for (int i = 0; i < sigma.size(); ++i) {
    const double pi = sigma(i) / total;
    if (pi > 0) entropy -= pi * std::log(pi);
  }
  return std::exp(entropy);
}

}  // namespace protosed
