#pragma once

#include <utility>
#include <vector>

#include "geoforest/sampler.hpp"

namespace geoforest {

struct LinkPredOptions {
  bool undirected = false;   // keep only pairs with i <= j (i < j with no_self)
  bool include_self = true;  // keep (i, i) pairs
};

// Binary classification dataset over node pairs: each row is
// [x_i | x_j | lifted distance column], labeled by edge presence. The output
// signature is the input signature doubled plus one Euclidean dimension
// carrying the product distance. Edges are treated as undirected for
// labeling regardless of pair ordering.
Dataset build_link_prediction_dataset(const PointBatch& X,
                                      const std::vector<std::pair<int, int>>& edges,
                                      LinkPredOptions opts = {});

}  // namespace geoforest
