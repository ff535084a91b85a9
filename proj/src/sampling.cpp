#include "conelab/sampling.hpp"

#include "conelab/order.hpp"
#include "conelab/spectral.hpp"

#include <cmath>

namespace conelab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

Element random_element(const AlgebraSpec& a, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Element x(a.dim());
    for (int i = 0; i < a.dim(); ++i) x(i) = gauss(rng);
    return x;
}

Element random_unit_element(const AlgebraSpec& a, Rng& rng) {
    Element x = random_element(a, rng);
    return x / a.norm(x);
}

Element random_interior(const AlgebraSpec& a, Rng& rng, double spread) {
    Element x = random_element(a, rng);
    const double n = order_unit_norm(a, x);
    if (n > 0.0) x *= spread / n;
    return functional_calculus(a, x, [](double v) { return std::exp(v); });
}

}  // namespace conelab
