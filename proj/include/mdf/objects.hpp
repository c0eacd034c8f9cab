#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "mdf/metrics.hpp"

namespace mdf {

/// A homogeneous list of metric-space objects of one type.
using ObjectList = std::variant<std::vector<Eigen::VectorXd>, std::vector<SpdMatrix>,
                                std::vector<ShapeObject>, std::vector<FunctionalCurve>>;

enum class ObjectType { vector, spd, shape, curve, precomputed };
enum class MetricKind { lp, cholesky, air, shape_riemannian, sphere, l2, precomputed };

ObjectType parse_object_type(std::string_view name);
MetricKind parse_metric(std::string_view name);
std::string_view to_string(ObjectType type);
std::string_view to_string(MetricKind metric);

/// Object type a metric is defined on.
ObjectType natural_type(MetricKind metric);
/// Throws std::invalid_argument if `metric` is not defined on `type`.
void require_compatible(ObjectType type, MetricKind metric);

std::size_t object_count(const ObjectList& objects);
ObjectType object_type(const ObjectList& objects);

/// Pairwise matrix of `objects` under `metric`; `p` is used by lp only.
DistanceMatrix object_distances(const ObjectList& objects, MetricKind metric, double p = 2.0,
                                std::size_t workers = 1);

}  // namespace mdf
