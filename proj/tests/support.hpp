#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "oracle/oracle.hpp"
#include "signbal/signed_graph.hpp"

namespace testing_support {

inline signbal::SignedAdjacency to_adjacency(const oracle::Dense& a) {
    signbal::RawMatrix m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a[i][j];
    return signbal::SignedAdjacency::from_matrix(m);
}

inline signbal::SignedAdjacency random_adjacency(std::size_t n, double density, double neg, std::uint64_t seed) {
    return to_adjacency(oracle::random_dense(n, density, neg, seed));
}

inline double rel_err(double got, double want) {
    return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
}

// |got - want| relative to the larger of |want| and `scale`, the magnitude of
// the terms summed into `want`.
inline double rel_err(double got, double want, double scale) {
    return std::abs(got - want) / std::max(std::abs(want), scale);
}

// Max abs deviation over a vector relative to the vector's largest entry;
// entries of q1 and q2 cross zero, so entry-wise relative error is meaningless.
// `floor` bounds the scale from below for vectors that are zero up to rounding.
template <class A, class B>
double vec_rel_err(const A& got, const B& want, double floor = 0.0) {
    double diff = 0.0, scale = floor;
    for (std::size_t i = 0; i < want.size(); ++i) {
        diff = std::max(diff, std::abs(static_cast<double>(got[i]) - static_cast<double>(want[i])));
        scale = std::max(scale, std::abs(static_cast<double>(want[i])));
    }
    return scale == 0.0 ? diff : diff / scale;
}

}  // namespace testing_support
