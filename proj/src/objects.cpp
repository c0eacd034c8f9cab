#include "mdf/objects.hpp"

#include <stdexcept>

namespace mdf {

ObjectType parse_object_type(std::string_view name) {
  if (name == "vector") return ObjectType::vector;
  if (name == "spd") return ObjectType::spd;
  if (name == "shape") return ObjectType::shape;
  if (name == "curve") return ObjectType::curve;
  if (name == "precomputed") return ObjectType::precomputed;
  throw std::invalid_argument("unknown object type '" + std::string(name) + "'");
}

MetricKind parse_metric(std::string_view name) {
  if (name == "lp") return MetricKind::lp;
  if (name == "cholesky") return MetricKind::cholesky;
  if (name == "air") return MetricKind::air;
  if (name == "shape-riemannian") return MetricKind::shape_riemannian;
  if (name == "sphere") return MetricKind::sphere;
  if (name == "l2") return MetricKind::l2;
  if (name == "precomputed" || name == "identity-of-precomputed") return MetricKind::precomputed;
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

std::string_view to_string(ObjectType type) {
  switch (type) {
    case ObjectType::vector: return "vector";
    case ObjectType::spd: return "spd";
    case ObjectType::shape: return "shape";
    case ObjectType::curve: return "curve";
    case ObjectType::precomputed: return "precomputed";
  }
  return "?";
}

std::string_view to_string(MetricKind metric) {
  switch (metric) {
    case MetricKind::lp: return "lp";
    case MetricKind::cholesky: return "cholesky";
    case MetricKind::air: return "air";
    case MetricKind::shape_riemannian: return "shape-riemannian";
    case MetricKind::sphere: return "sphere";
    case MetricKind::l2: return "l2";
    case MetricKind::precomputed: return "precomputed";
  }
  return "?";
}

ObjectType natural_type(MetricKind metric) {
  switch (metric) {
    case MetricKind::lp:
    case MetricKind::sphere: return ObjectType::vector;
    case MetricKind::cholesky:
    case MetricKind::air: return ObjectType::spd;
    case MetricKind::shape_riemannian: return ObjectType::shape;
    case MetricKind::l2: return ObjectType::curve;
    case MetricKind::precomputed: return ObjectType::precomputed;
  }
  return ObjectType::precomputed;
}

void require_compatible(ObjectType type, MetricKind metric) {
  if (natural_type(metric) != type)
    throw std::invalid_argument("metric '" + std::string(to_string(metric)) + "' is not defined on '" +
                                std::string(to_string(type)) + "' objects");
}

std::size_t object_count(const ObjectList& objects) {
  return std::visit([](const auto& list) { return list.size(); }, objects);
}

ObjectType object_type(const ObjectList& objects) {
  switch (objects.index()) {
    case 0: return ObjectType::vector;
    case 1: return ObjectType::spd;
    case 2: return ObjectType::shape;
    default: return ObjectType::curve;
  }
}

DistanceMatrix object_distances(const ObjectList& objects, MetricKind metric, double p, std::size_t workers) {
  require_compatible(object_type(objects), metric);
  switch (metric) {
    case MetricKind::lp: {
      const auto& v = std::get<std::vector<Eigen::VectorXd>>(objects);
      return pairwise_matrix(std::span(v), [p](const auto& a, const auto& b) { return lp_distance(a, b, p); },
                             workers);
    }
    case MetricKind::sphere: {
      const auto& v = std::get<std::vector<Eigen::VectorXd>>(objects);
      return pairwise_matrix(std::span(v), [](const auto& a, const auto& b) { return sphere_geodesic(a, b); },
                             workers);
    }
    case MetricKind::cholesky: {
      const auto& v = std::get<std::vector<SpdMatrix>>(objects);
      return pairwise_matrix(std::span(v), [](const auto& a, const auto& b) { return cholesky_distance(a, b); },
                             workers);
    }
    case MetricKind::air: {
      const auto& v = std::get<std::vector<SpdMatrix>>(objects);
      return pairwise_matrix(std::span(v), [](const auto& a, const auto& b) { return air_distance(a, b); },
                             workers);
    }
    case MetricKind::shape_riemannian: {
      const auto& v = std::get<std::vector<ShapeObject>>(objects);
      return pairwise_matrix(
          std::span(v), [](const auto& a, const auto& b) { return riemannian_shape_distance(a, b); }, workers);
    }
    case MetricKind::l2: {
      const auto& v = std::get<std::vector<FunctionalCurve>>(objects);
      return pairwise_matrix(std::span(v), [](const auto& a, const auto& b) { return l2_distance(a, b); },
                             workers);
    }
    case MetricKind::precomputed: break;
  }
  throw std::invalid_argument("precomputed distances are not derived from objects");
}

}  // namespace mdf
