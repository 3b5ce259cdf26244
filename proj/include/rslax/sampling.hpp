#pragma once

#include <cstdint>
#include <vector>

#include "rslax/lax.hpp"

namespace rslax {

// xoshiro256** seeded through splitmix64. Doubles use the top 53 bits and
// normals use Box-Muller, so draws are identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();
    double uniform();
    double uniform(double lo, double hi);
    double normal();
    Complex complex_normal(double scale = 1.0);
    std::size_t index(std::size_t n);

    // independent stream keyed by a tag, stable under reordering of callers
    Rng substream(std::uint64_t tag) const;

private:
    std::uint64_t s_[4];
    std::uint64_t seed_;
};

std::uint64_t hash_tag(const char* name);

Lattice random_lattice(Rng& rng);

// well-separated positions inside one period cell
std::vector<Complex> random_positions(Rng& rng, std::size_t n, const Lattice& lat);

RSConfig random_rs_config(Rng& rng, std::size_t n, const Lattice& lat);

// evenly spaced positions and damped rapidities; Hamiltonian flows from these
// points stay clear of collisions over unit time
RSConfig random_flow_config(Rng& rng, std::size_t n, const Lattice& lat);

CMConfig random_cm_config(Rng& rng, std::size_t n, const Lattice& lat);

// a spectral point away from the lattice and from the shifted zeros of the Lax entries
Complex random_spectral_point(Rng& rng, const Lattice& lat);

} // namespace rslax
