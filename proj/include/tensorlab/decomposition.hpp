#pragma once

#include <vector>

#include "tensorlab/tensor.hpp"

namespace tensorlab {

/// An ordered list of rank-one summands; summand i holds its factor vectors
/// a_i^(1), ..., a_i^(d), one per factor of the target shape.
template <Scalar T>
struct Decomposition {
  using Summand = std::vector<std::vector<T>>;

  Shape shape;
  std::vector<Summand> summands;
  ring_t<T> ring{};

  std::size_t size() const { return summands.size(); }

  /// Throws std::invalid_argument if a factor vector is zero or a length
  /// disagrees with the shape.
  void validate() const {
    for (const auto& s : summands) {
      if (s.size() != shape.order())
        throw std::invalid_argument("Decomposition: summand has wrong factor count");
      for (std::size_t k = 0; k < s.size(); ++k)
        if (s[k].size() != shape[k])
          throw std::invalid_argument("Decomposition: factor length disagrees with shape");
    }
  }

  DenseTensor<T> reconstruct() const {
    validate();
    DenseTensor<T> acc(shape, ring);
    for (const auto& s : summands) acc = add(acc, rank_one(s, ring));
    return acc;
  }
};

}  // namespace tensorlab
