#include "mdf/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

namespace mdf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxShapeAttempts = 100;

std::uint64_t fnv1a(std::uint64_t hash, const double* data, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &data[i], sizeof(double));
    for (const unsigned char b : bytes) {
      hash ^= b;
      hash *= 0x100000001b3ULL;
    }
  }
  return hash;
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

}  // namespace

SpdMatrix synthetic_spd_base(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("synthetic_spd_base: dim must be positive");
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = std::pow(0.5, static_cast<double>(std::abs(i - j)));
  return SpdMatrix(std::move(a));
}

double quantile(std::vector<double> values, double prob) {
  if (values.empty()) throw std::invalid_argument("quantile: empty input");
  if (!(prob >= 0.0 && prob <= 1.0)) throw std::invalid_argument("quantile: prob outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

SpdScenario SpdScenario::from_base(SpdMatrix base, std::size_t sparsity) {
  const Eigen::Index d = base.dim();
  std::vector<double> magnitudes(base.entries().size());
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r) magnitudes[static_cast<std::size_t>(c * d + r)] = std::abs(base.entries()(r, c));
  const double q = quantile(std::move(magnitudes), 0.05);

  std::vector<std::pair<Eigen::Index, Eigen::Index>> positions;
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c <= r; ++c) positions.emplace_back(r, c);
  if (sparsity == 0 || sparsity > positions.size())
    throw std::invalid_argument("SpdScenario: sparsity must lie in [1, d(d+1)/2]");

  Eigen::MatrixXd factor = base.cholesky_factor();
  return SpdScenario{std::move(base), std::move(factor), q, sparsity, std::move(positions)};
}

PerturbedSpd perturbed_spd(const SpdScenario& scenario, double scale, const ScalarSampler& v_sampler, Rng& rng) {
  if (!(scale >= 0.0)) throw std::invalid_argument("perturbed_spd: scale must be nonnegative");
  if (scenario.lower_positions.size() < scenario.sparsity || scenario.q < 0.0)
    throw std::invalid_argument("perturbed_spd: invalid scenario");

  // Positions without replacement (Floyd's algorithm), then values.
  const std::size_t total = scenario.lower_positions.size();
  std::vector<std::size_t> chosen;
  chosen.reserve(scenario.sparsity);
  for (std::size_t j = total - scenario.sparsity; j < total; ++j) {
    const std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
    chosen.push_back(std::find(chosen.begin(), chosen.end(), t) == chosen.end() ? t : j);
  }

  Eigen::MatrixXd m = scenario.factor;
  const double unit = scale * scenario.q;
  for (const std::size_t idx : chosen) {
    const auto [r, c] = scenario.lower_positions[idx];
    m(r, c) += unit * v_sampler(rng);
  }

  Eigen::MatrixXd p = m * m.transpose();
  p = (0.5 * (p + p.transpose())).eval();
  try {
    return {SpdMatrix(p), false};
  } catch (const std::invalid_argument&) {
    p.diagonal().array() += kJitter;
    return {SpdMatrix(p), true};
  }
}

EfaCoefficients efa_coefficients(const ShapeObject& outline, std::size_t harmonics) {
  if (harmonics == 0) throw std::invalid_argument("efa_coefficients: need at least one harmonic");
  const Eigen::MatrixX2d& pts = outline.landmarks();
  const Eigen::Index count = pts.rows();

  struct Segment {
    double dx, dy, dt, t0, t1;
  };
  std::vector<Segment> segments;
  double t = 0.0;
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (Eigen::Index s = 0; s < count; ++s) {
    const Eigen::Vector2d from = pts.row(s);
    const Eigen::Vector2d to = pts.row((s + 1) % count);
    const Eigen::Vector2d delta = to - from;
    const double dt = delta.norm();
    if (dt == 0.0) continue;
    segments.push_back({delta.x(), delta.y(), dt, t, t + dt});
    mean_x += 0.5 * dt * (from.x() + to.x());
    mean_y += 0.5 * dt * (from.y() + to.y());
    t += dt;
  }
  const double period = t;
  if (!(period > 0.0)) throw std::invalid_argument("efa_coefficients: zero perimeter");

  EfaCoefficients coef;
  coef.period = period;
  coef.a0 = 2.0 * mean_x / period;
  coef.c0 = 2.0 * mean_y / period;
  coef.harmonics.resize(harmonics);
  for (std::size_t h = 1; h <= harmonics; ++h) {
    const double omega = kTwoPi * static_cast<double>(h) / period;
    const double factor = period / (2.0 * std::numbers::pi * std::numbers::pi * static_cast<double>(h * h));
    std::array<double, 4> acc{0.0, 0.0, 0.0, 0.0};
    for (const Segment& seg : segments) {
      const double dcos = std::cos(omega * seg.t1) - std::cos(omega * seg.t0);
      const double dsin = std::sin(omega * seg.t1) - std::sin(omega * seg.t0);
      const double sx = seg.dx / seg.dt;
      const double sy = seg.dy / seg.dt;
      acc[0] += sx * dcos;
      acc[1] += sx * dsin;
      acc[2] += sy * dcos;
      acc[3] += sy * dsin;
    }
    for (auto& v : acc) v *= factor;
    coef.harmonics[h - 1] = acc;
  }
  return coef;
}

Eigen::Vector2d efa_evaluate(const EfaCoefficients& coef, double t) {
  Eigen::Vector2d p(coef.a0 / 2.0, coef.c0 / 2.0);
  for (std::size_t h = 1; h <= coef.harmonics.size(); ++h) {
    const double phase = kTwoPi * static_cast<double>(h) * t / coef.period;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    const auto& [a, b, cc, d] = coef.harmonics[h - 1];
    p.x() += a * c + b * s;
    p.y() += cc * c + d * s;
  }
  return p;
}

Eigen::MatrixX2d efa_reconstruct(const EfaCoefficients& coef, std::size_t m) {
  if (m < 3) throw std::invalid_argument("efa_reconstruct: need at least 3 landmarks");
  Eigen::MatrixX2d out(static_cast<Eigen::Index>(m), 2);
  for (std::size_t j = 0; j < m; ++j)
    out.row(static_cast<Eigen::Index>(j)) =
        efa_evaluate(coef, static_cast<double>(j) * coef.period / static_cast<double>(m)).transpose();
  return out;
}

std::vector<double> chord_parameters(const ShapeObject& outline) {
  const Eigen::MatrixX2d& pts = outline.landmarks();
  std::vector<double> t(static_cast<std::size_t>(pts.rows()), 0.0);
  for (Eigen::Index s = 1; s < pts.rows(); ++s)
    t[static_cast<std::size_t>(s)] = t[static_cast<std::size_t>(s - 1)] + (pts.row(s) - pts.row(s - 1)).norm();
  return t;
}

Eigen::MatrixX2d shape_from_perturbations(const EfaCoefficients& coef,
                                          const std::vector<std::array<double, 4>>& perturbations,
                                          std::size_t m, double scale, double theta) {
  if (perturbations.size() != coef.harmonics.size())
    throw std::invalid_argument("shape_from_perturbations: one quadruple per harmonic required");
  EfaCoefficients perturbed = coef;
  for (std::size_t h = 0; h < perturbed.harmonics.size(); ++h)
    for (std::size_t e = 0; e < 4; ++e) perturbed.harmonics[h][e] *= perturbations[h][e];

  const Eigen::MatrixX2d q = efa_reconstruct(perturbed, m);
  Eigen::Matrix2d u;
  u << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  u *= scale;
  return q * u.transpose();
}

ShapeObject random_shape(const EfaCoefficients& coef, const PerturbationSampler& sampler, std::size_t m, Rng& rng) {
  for (int attempt = 0; attempt < kMaxShapeAttempts; ++attempt) {
    std::vector<std::array<double, 4>> perturbations(coef.harmonics.size());
    for (std::size_t h = 0; h < perturbations.size(); ++h) perturbations[h] = sampler(h + 1, rng);
    const double theta = uniform(rng, 0.0, kTwoPi);
    const double scale = uniform(rng, 0.0, 20.0);
    try {
      return ShapeObject(shape_from_perturbations(coef, perturbations, m, scale, theta));
    } catch (const std::invalid_argument&) {
      // degenerate draw, try again
    }
  }
  throw std::runtime_error("random_shape: no non-degenerate shape after 100 attempts");
}

PerturbationSampler first_harmonic_sampler(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("first_harmonic_sampler: empty interval");
  return [lo, hi](std::size_t harmonic, Rng& rng) {
    const double a = harmonic == 1 ? lo : 0.8;
    const double b = harmonic == 1 ? hi : 1.2;
    std::array<double, 4> e{};
    for (auto& v : e) v = a == b ? a : uniform(rng, a, b);
    return e;
  };
}

ShapeObject synthetic_outline(std::size_t m) {
  if (m < 3) throw std::invalid_argument("synthetic_outline: need at least 3 landmarks");
  Eigen::MatrixX2d pts(static_cast<Eigen::Index>(m), 2);
  for (std::size_t j = 0; j < m; ++j) {
    const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
    const double dent = 0.55 * std::exp(-std::pow(phi - std::numbers::pi / 2.0, 2) / 0.35);
    pts(static_cast<Eigen::Index>(j), 0) = 1.8 * std::cos(phi) + 0.15 * std::cos(2.0 * phi);
    pts(static_cast<Eigen::Index>(j), 1) = std::sin(phi) - dent;
  }
  return ShapeObject(std::move(pts));
}

ScenarioLibrary::ScenarioLibrary(ScenarioConfig config)
    : config_(config),
      spd_(SpdScenario::from_base(synthetic_spd_base(config.spd_dim), config.sparsity)),
      base_outline_(synthetic_outline(config.landmarks)),
      outline_(efa_coefficients(base_outline_, config.harmonics)) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  hash = fnv1a(hash, spd_.base.entries().data(), static_cast<std::size_t>(spd_.base.entries().size()));
  hash = fnv1a(hash, base_outline_.landmarks().data(), static_cast<std::size_t>(base_outline_.landmarks().size()));
  checksum_ = hash;
}

const std::vector<std::string>& ScenarioLibrary::names() {
  static const std::vector<std::string> kNames{"spd-hom", "shape-hom", "spd-ind", "shape-ind"};
  return kNames;
}

bool ScenarioLibrary::is_homogeneity(std::string_view name) { return name == "spd-hom" || name == "shape-hom"; }

Dataset ScenarioLibrary::generate(std::string_view name, double kappa, std::size_t n, Rng& rng) const {
  if (n == 0) throw std::invalid_argument("scenario: n must be positive");
  Dataset out;
  if (name == "spd-hom") {
    out = spd_hom(kappa, n, rng);
  } else if (name == "shape-hom") {
    out = shape_hom(kappa, n, rng);
  } else if (name == "spd-ind") {
    out = spd_ind(kappa, n, rng);
  } else if (name == "shape-ind") {
    out = shape_ind(kappa, n, rng);
  } else {
    throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
  }
  out.scenario = std::string(name);
  out.kappa = kappa;
  out.n = n;
  return out;
}

Dataset ScenarioLibrary::spd_hom(double kappa, std::size_t n, Rng& rng) const {
  if (!(kappa >= 0.0)) throw std::invalid_argument("spd-hom: kappa must be nonnegative");
  const ScalarSampler cauchy = [](Rng& r) { return std::cauchy_distribution<double>(0.0, 1.0)(r); };
  Dataset d;
  std::vector<SpdMatrix> pooled;
  pooled.reserve(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    PerturbedSpd draw = perturbed_spd(spd_, i < n ? 1.0 : kappa, cauchy, rng);
    d.jittered += draw.jittered ? 1 : 0;
    pooled.push_back(std::move(draw.matrix));
  }
  d.components.emplace_back(std::move(pooled));
  d.metrics = {MetricKind::cholesky};
  d.groups.assign(2 * n, 1);
  std::fill_n(d.groups.begin(), n, 0);
  return d;
}

Dataset ScenarioLibrary::shape_hom(double kappa, std::size_t n, Rng& rng) const {
  if (!(kappa >= 0.0)) throw std::invalid_argument("shape-hom: kappa must be nonnegative");
  const PerturbationSampler base = first_harmonic_sampler(0.8, 1.2);
  const PerturbationSampler shifted = first_harmonic_sampler(0.8 - kappa, 1.2 + kappa);
  Dataset d;
  std::vector<ShapeObject> pooled;
  pooled.reserve(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i)
    pooled.push_back(random_shape(outline_, i < n ? base : shifted, config_.landmarks, rng));
  d.components.emplace_back(std::move(pooled));
  d.metrics = {MetricKind::shape_riemannian};
  d.groups.assign(2 * n, 1);
  std::fill_n(d.groups.begin(), n, 0);
  return d;
}

Dataset ScenarioLibrary::spd_ind(double kappa, std::size_t n, Rng& rng) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::VectorXd> xs, ys;
  std::vector<SpdMatrix> zs;
  Dataset d;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = normal(rng);
    const double y = normal(rng);
    // Every nonzero entry of W is an independent copy of kappa (X + Y) + eps.
    const ScalarSampler v = [kappa, x, y](Rng& r) {
      return kappa * (x + y) + std::normal_distribution<double>(0.0, 1.0)(r);
    };
    PerturbedSpd draw = perturbed_spd(spd_, 1.0, v, rng);
    d.jittered += draw.jittered ? 1 : 0;
    xs.push_back(Eigen::VectorXd::Constant(1, x));
    ys.push_back(Eigen::VectorXd::Constant(1, y));
    zs.push_back(std::move(draw.matrix));
  }
  d.components.emplace_back(std::move(xs));
  d.components.emplace_back(std::move(ys));
  d.components.emplace_back(std::move(zs));
  d.metrics = {MetricKind::lp, MetricKind::lp, MetricKind::cholesky};
  return d;
}

Dataset ScenarioLibrary::shape_ind(double kappa, std::size_t n, Rng& rng) const {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw std::invalid_argument("shape-ind: kappa must lie in [0, 1]");
  const PerturbationSampler z1 = first_harmonic_sampler(0.0, 2.0);
  const PerturbationSampler z2 = first_harmonic_sampler(0.8, 1.2);
  std::bernoulli_distribution primary(kappa);
  std::bernoulli_distribution fair(0.5);
  std::vector<Eigen::VectorXd> xs, ys;
  std::vector<ShapeObject> zs;
  for (std::size_t i = 0; i < n; ++i) {
    const int x_primary = primary(rng) ? 1 : 0;
    const int y_primary = primary(rng) ? 1 : 0;
    const int x_extra = fair(rng) ? 1 : 0;
    const int y_extra = fair(rng) ? 1 : 0;
    const bool null_case = kappa == 0.0;
    const int x = x_primary + (null_case ? x_extra : 0);
    const int y = y_primary + (null_case ? y_extra : 0);
    const bool first = null_case || x == y;
    zs.push_back(random_shape(outline_, first ? z1 : z2, config_.landmarks, rng));
    xs.push_back(Eigen::VectorXd::Constant(1, static_cast<double>(x)));
    ys.push_back(Eigen::VectorXd::Constant(1, static_cast<double>(y)));
  }
  Dataset d;
  d.components.emplace_back(std::move(xs));
  d.components.emplace_back(std::move(ys));
  d.components.emplace_back(std::move(zs));
  d.metrics = {MetricKind::lp, MetricKind::lp, MetricKind::shape_riemannian};
  return d;
}

}  // namespace mdf
