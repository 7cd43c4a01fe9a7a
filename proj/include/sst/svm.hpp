#ifndef SST_SVM_HPP_
#define SST_SVM_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace sst {

// Sparse feature vector: (feature index, count), sorted by index.
struct SparseVec {
  std::vector<std::pair<int, float>> ix;

  void add(int index, float value) { ix.emplace_back(index, value); }
  float get(int index) const {
    for (const auto& [i, v] : ix)
      if (i == index) return v;
    return 0.0f;
  }
};

// Linear max-margin classifier over standardized features. Weights live in
// standardized space; score(x) is affine in the raw counts, monotone in
// <w, z> + b. Feature ids beyond the training dimension score zero.
struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> mean;     // per-feature training mean
  std::vector<double> inv_std;  // 1/std, 0 for constant features
  double C = 1.0;
  int epochs = 50;
  std::uint64_t seed = 0;

  double score(const SparseVec& x) const;
  // Unit-normalized weight vector (the hyperplane direction) for reports.
  std::vector<double> unit_weights() const;

 private:
  friend LinearModel svm_train(std::span<const SparseVec>, std::span<const int>,
                               double, int, std::uint64_t);
  void finalize();  // precomputes the constant term
  double const_term_ = 0.0;
};

// Deterministic epoch-based subgradient descent (Pegasos schedule with the
// 1/sqrt(lambda) projection) on the L2-regularized hinge objective, features
// standardized with training statistics. labels are +1/-1; both classes must
// be present.
LinearModel svm_train(std::span<const SparseVec> vectors, std::span<const int> labels,
                      double C = 1.0, int epochs = 50, std::uint64_t seed = 1);

// Training accuracy of a fitted model (used by tests).
double training_accuracy(const LinearModel& m, std::span<const SparseVec> vectors,
                         std::span<const int> labels);

}  // namespace sst

#endif  // SST_SVM_HPP_
