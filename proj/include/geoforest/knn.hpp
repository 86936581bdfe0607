#pragma once

#include <vector>

#include "geoforest/geometry.hpp"

namespace geoforest {

// k nearest neighbors under the product-manifold distance. Distance ties
// resolve to the lowest training-row index; classification vote ties resolve
// to the lowest class id.
std::vector<int> knn_classify(const PointBatch& train, const std::vector<int>& y,
                              const PointBatch& test, int k);
std::vector<double> knn_regress(const PointBatch& train, const std::vector<double>& y,
                                const PointBatch& test, int k);

// Full pairwise product-distance matrix, rows = queries, cols = references.
RowMatrix product_distance_matrix(const PointBatch& queries, const PointBatch& references);

}  // namespace geoforest
