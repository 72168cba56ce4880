#ifndef DERCAT_SAMPLING_HPP
#define DERCAT_SAMPLING_HPP

#include "dercat/complex.hpp"

#include <cstddef>
#include <optional>
#include <random>

namespace dercat {

// Seeded generators for property tests, benchmarks and the CLI. The same
// seed gives the same objects on a given standard library.

using Rng = std::mt19937_64;

/// Random homogeneous polynomial with coefficients in [-bound, bound].
HomogPoly random_poly(int nvars, int degree, Rng& rng, long bound = 3);

struct RandomComplexOptions {
    int min_degree = -1;
    int max_degree = 1;
    std::size_t max_rank = 2;    // summands per degree, at least one
    std::optional<int> min_twist;  // defaults to -n
    std::optional<int> max_twist;  // defaults to 0
    long coefficient_bound = 3;
};

/// Complex with random terms in [min_degree, max_degree]. Each differential
/// is a random element of {X : X d_prev = 0}, so the result always
/// satisfies d^2 = 0. With the default twist range the complex lies in the
/// window.
LineBundleComplex random_complex(int n, Rng& rng, const RandomComplexOptions& opts = {});

/// Random degree-0 cycle of the Hom complex, i.e. a random chain map.
ChainMap random_chain_map(const LineBundleComplex& a, const LineBundleComplex& b, Rng& rng, long bound = 3);

}  // namespace dercat

#endif  // DERCAT_SAMPLING_HPP
