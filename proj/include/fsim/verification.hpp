#pragma once

#include <Eigen/Core>
#include <vector>

#include "fsim/rng.hpp"

// Face-verification proxy: cosine similarity over embeddings, with a
// synthetic view-dependent embedding standing in for a deep feature
// extractor. Providers are pluggable; anything producing an Embedding per
// face event can replace the synthetic one.

namespace fsim {

using Embedding = Eigen::VectorXd;

struct EmbeddingParams {
  int dim = 8;
  double angle_gain = 0.5;    // similarity to frontal = cos(angle_gain * bearing)
  double range_gain = 4.5;    // weight of the range-mismatch component
  double range_ref = 1.5;     // meters; range of the registered reference
  double range_scale = 2.0;   // meters; normalization of the range component
  double noise_sigma = 0.15;  // perturbation magnitude at 5 m range
  bool range_terms = true;
};

struct SimilarityRecord {
  double timestamp = 0.0;
  double similarity = 0.0;  // in [-1, 1]
  double bearing = 0.0;     // radians at capture
  double range = 0.0;       // meters at capture
};

/// CS(A, B) = A.B / (|A| |B|). Throws std::invalid_argument on a zero norm.
double cosine_similarity(const Embedding& a, const Embedding& b);

/// Deterministic base vector (cos(a*theta), sin(a*theta), range component,
/// zero padding) plus a seeded Gaussian perturbation whose magnitude scales
/// with range / 5 m. With noise_sigma = 0 and range_terms disabled,
/// CS(e(theta), e(0)) = cos(angle_gain * theta) exactly.
Embedding synthetic_embedding(double bearing, double range,
                              const EmbeddingParams& params, Rng& rng);

/// Noiseless frontal embedding at the reference range — the registered face.
Embedding reference_embedding(const EmbeddingParams& params);

/// One record per face event, scored against the registered reference.
/// Each tuple is (timestamp, bearing, range) at capture.
std::vector<SimilarityRecord> record_similarity(
    const std::vector<std::tuple<double, double, double>>& face_events,
    const EmbeddingParams& params, Rng& rng);

}  // namespace fsim
