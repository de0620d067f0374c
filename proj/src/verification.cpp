#include "fsim/verification.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace fsim {

double cosine_similarity(const Embedding& a, const Embedding& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cosine_similarity: dimension mismatch");
  }
  const double na = a.norm();
  const double nb = b.norm();
  if (na <= 0.0 || nb <= 0.0) {
    throw std::invalid_argument("cosine_similarity: zero-norm embedding");
  }
  return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

Embedding synthetic_embedding(double bearing, double range,
                              const EmbeddingParams& params, Rng& rng) {
  Embedding e = Embedding::Zero(params.dim);
  e[0] = std::cos(params.angle_gain * bearing);
  e[1] = std::sin(params.angle_gain * bearing);
  if (params.range_terms && params.dim > 2) {
    e[2] = params.range_gain * (range - params.range_ref) / params.range_scale;
  }
  if (params.noise_sigma > 0.0) {
    const double per_component =
        params.noise_sigma * (range / 5.0) / std::sqrt(double(params.dim));
    for (int i = 0; i < params.dim; ++i) {
      e[i] += per_component * rng.gaussian();
    }
  }
  return e;
}

Embedding reference_embedding(const EmbeddingParams& params) {
  EmbeddingParams clean = params;
  clean.noise_sigma = 0.0;
  Rng unused(0);
  return synthetic_embedding(0.0, params.range_ref, clean, unused);
}

std::vector<SimilarityRecord> record_similarity(
    const std::vector<std::tuple<double, double, double>>& face_events,
    const EmbeddingParams& params, Rng& rng) {
  const Embedding ref = reference_embedding(params);
  std::vector<SimilarityRecord> out;
  out.reserve(face_events.size());
  for (const auto& [t, bearing, range] : face_events) {
    const Embedding e = synthetic_embedding(bearing, range, params, rng);
    out.push_back({t, cosine_similarity(e, ref), bearing, range});
  }
  return out;
}

}  // namespace fsim
