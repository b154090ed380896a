#pragma once

#include <perfrank/sampling.hpp>

namespace randomgen {

inline perfrank::FreeComplex complex(perfrank::Rng& rng, const perfrank::AlgebraRef& alg) {
    return perfrank::sampling::random_complex(rng, alg, 3);
}

inline perfrank::ChainMap chain_map(perfrank::Rng& rng, const perfrank::FreeComplex& x,
                                    const perfrank::FreeComplex& y) {
    return perfrank::sampling::random_chain_map(rng, x, y);
}

} // namespace randomgen
