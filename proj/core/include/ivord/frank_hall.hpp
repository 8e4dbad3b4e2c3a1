#pragma once

#include <span>
#include <string>
#include <vector>

#include "ivord/error.hpp"
#include "ivord/lda_id.hpp"

namespace ivord {

/// Q-1 binary sub-models; sub-model q separates {1..q} (label 1) from
/// {q+1..Q} (label 2) and supplies p_q = P(y > q | x).
template <typename SubModel>
struct FhModel {
  int num_classes = 0;
  std::vector<SubModel> stack;
};

/// P(1) = 1 - p_1, P(q) = p_{q-1} - p_q, P(Q) = p_{Q-1}; negative entries are
/// clipped to zero and the vector renormalized.
std::vector<double> fh_assemble(std::span<const double> exceed_probs);

/// `fitter(x, binary_labels)` must return a sub-model trained on labels in
/// {1, 2}. Throws EmptySplit when a split has an empty side and FitFailed
/// naming the split when a sub-fit fails.
template <typename Obs, typename Fitter>
auto fh_fit(std::span<const Obs> x, std::span<const int> y, int num_classes, Fitter&& fitter)
    -> FhModel<decltype(fitter(x, std::span<const int>{}))> {
  using Sub = decltype(fitter(x, std::span<const int>{}));
  FhModel<Sub> model;
  model.num_classes = num_classes;
  std::vector<int> binary(y.size());
  for (int q = 1; q < num_classes; ++q) {
    std::size_t low = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      binary[i] = y[i] <= q ? 1 : 2;
      low += binary[i] == 1;
    }
    if (low == 0 || low == y.size()) {
      fail(ErrorCode::EmptySplit, "split " + std::to_string(q) + " has an empty side");
    }
    try {
      model.stack.push_back(fitter(x, std::span<const int>(binary)));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DegenerateInterval || e.code() == ErrorCode::ShapeMismatch) throw;
      fail(ErrorCode::FitFailed, "split " + std::to_string(q) + ": " + e.what());
    }
  }
  return model;
}

/// `exceed(sub, x)` returns P(y > q | x) from sub-model q.
template <typename SubModel, typename Obs, typename Exceed>
std::vector<double> fh_predict_proba(const FhModel<SubModel>& model, const Obs& x,
                                     Exceed&& exceed) {
  std::vector<double> p;
  p.reserve(model.stack.size());
  for (const auto& sub : model.stack) p.push_back(exceed(sub, x));
  return fh_assemble(p);
}

// FH with LDA-ID binary sub-models.
using FhLdaIdModel = FhModel<LdaIdModel>;

FhLdaIdModel fh_lda_id_fit(std::span<const IntervalVector> x, std::span<const int> y,
                           int num_classes);
std::vector<double> fh_lda_id_predict_proba(const FhLdaIdModel& model, const IntervalVector& x);

}  // namespace ivord
