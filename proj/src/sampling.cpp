#include "gcv/sampling.hpp"

#include <cmath>

#include "gcv/fields.hpp"

namespace gcv {

std::vector<SamplePoint> sample_points(int dim, std::uint32_t seed, int extra) {
  const double twopi = 2.0 * M_PI;
  std::vector<SamplePoint> pts;
  int count = 1;
  for (int i = 0; i < dim; ++i) count *= 3;
  pts.reserve(count + extra);
  for (int idx = 0; idx < count; ++idx) {
    SamplePoint p(dim);
    int rest = idx;
    for (int i = 0; i < dim; ++i) {
      p[i] = (rest % 3) * twopi / 3.0;
      rest /= 3;
    }
    pts.push_back(std::move(p));
  }
  std::mt19937 rng(seed);
  for (int j = 0; j < extra; ++j) {
    SamplePoint p(dim);
    for (int i = 0; i < dim; ++i) p[i] = uniform01(rng) * twopi;
    pts.push_back(std::move(p));
  }
  return pts;
}

ScalarField random_field(int dim, std::mt19937& rng, int max_terms) {
  ScalarField f = ScalarField::zero(dim);
  const int nterms = 1 + static_cast<int>(uniform01(rng) * max_terms);
  for (int t = 0; t < nterms; ++t) {
    Freq k{};
    for (int i = 0; i < dim; ++i) k[i] = static_cast<int>(uniform01(rng) * 5) - 2;
    const double c = 2.0 * uniform01(rng) - 1.0;
    const double s = 2.0 * uniform01(rng) - 1.0;
    f += ScalarField::harmonic(dim, k, c, s);
  }
  return f;
}

}  // namespace gcv
