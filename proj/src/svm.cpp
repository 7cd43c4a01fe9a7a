#include "sst/svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sst/rng.hpp"

namespace sst {

double LinearModel::score(const SparseVec& x) const {
  double s = const_term_;
  for (const auto& [i, v] : x.ix) {
    if (i < 0 || i >= static_cast<int>(weights.size())) continue;
    s += weights[i] * v * inv_std[i];
  }
  return s;
}

std::vector<double> LinearModel::unit_weights() const {
  double norm = 0.0;
  for (double w : weights) norm += w * w;
  norm = std::sqrt(norm);
  std::vector<double> out = weights;
  if (norm > 0)
    for (double& w : out) w /= norm;
  return out;
}

void LinearModel::finalize() {
  const_term_ = bias;
  for (std::size_t j = 0; j < weights.size(); ++j)
    const_term_ -= weights[j] * mean[j] * inv_std[j];
}

LinearModel svm_train(std::span<const SparseVec> vectors, std::span<const int> labels,
                      double C, int epochs, std::uint64_t seed) {
  if (vectors.size() != labels.size() || vectors.empty())
    throw std::invalid_argument("svm_train: bad input sizes");
  bool has_pos = false, has_neg = false;
  int dim = 0;
  for (const auto& x : vectors)
    for (const auto& [i, v] : x.ix) dim = std::max(dim, i + 1);
  for (int y : labels) {
    if (y == 1) has_pos = true;
    else if (y == -1) has_neg = true;
    else throw std::invalid_argument("labels must be +1/-1");
  }
  if (!has_pos || !has_neg)
    throw std::invalid_argument("svm_train: both classes required");
  if (C <= 0 || epochs < 1) throw std::invalid_argument("bad C or epochs");

  const std::size_t n = vectors.size();
  LinearModel m;
  m.C = C;
  m.epochs = epochs;
  m.seed = seed;
  m.mean.assign(dim, 0.0);
  m.inv_std.assign(dim, 0.0);
  m.weights.assign(dim, 0.0);

  std::vector<double> sq(dim, 0.0);
  for (const auto& x : vectors)
    for (const auto& [i, v] : x.ix) {
      m.mean[i] += v;
      sq[i] += static_cast<double>(v) * v;
    }
  for (int j = 0; j < dim; ++j) {
    m.mean[j] /= static_cast<double>(n);
    const double var = sq[j] / static_cast<double>(n) - m.mean[j] * m.mean[j];
    m.inv_std[j] = var > 1e-12 ? 1.0 / std::sqrt(var) : 0.0;
  }

  // Pegasos: lambda = 1/(C n), eta_t = 1/(lambda t), projection onto the
  // 1/sqrt(lambda) ball. Dense standardized sample reused per step.
  const double lambda = 1.0 / (C * static_cast<double>(n));
  const double radius = 1.0 / std::sqrt(lambda);
  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> z(dim);
  std::vector<double>& w = m.weights;
  double b = 0.0;
  long t = 0;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t s = 0; s < n; ++s) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const SparseVec& x = vectors[order[s]];
      const int y = labels[order[s]];
      for (int j = 0; j < dim; ++j) z[j] = -m.mean[j] * m.inv_std[j];
      for (const auto& [i, v] : x.ix) z[i] = (v - m.mean[i]) * m.inv_std[i];
      double margin = b;
      for (int j = 0; j < dim; ++j) margin += w[j] * z[j];
      margin *= y;
      const double decay = 1.0 - eta * lambda;
      for (int j = 0; j < dim; ++j) w[j] *= decay;
      if (margin < 1.0) {
        const double step = eta * y;
        for (int j = 0; j < dim; ++j) w[j] += step * z[j];
        b += y / static_cast<double>(t);  // decaying unregularized-bias step
      }
      double norm2 = 0.0;
      for (int j = 0; j < dim; ++j) norm2 += w[j] * w[j];
      if (norm2 > radius * radius) {
        const double scale = radius / std::sqrt(norm2);
        for (int j = 0; j < dim; ++j) w[j] *= scale;
      }
    }
  }
  m.bias = b;
  m.finalize();
  return m;
}

double training_accuracy(const LinearModel& m, std::span<const SparseVec> vectors,
                         std::span<const int> labels) {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const double s = m.score(vectors[i]);
    if ((s >= 0 && labels[i] == 1) || (s < 0 && labels[i] == -1)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(vectors.size());
}

}  // namespace sst
