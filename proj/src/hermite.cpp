#include "drivendot/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace drivendot {

namespace {
const double kQuarticRootPi = std::pow(std::numbers::pi, -0.25);
}

double hermite_function(int n, double u) {
    if (n < 0) throw std::invalid_argument("quantum number must be >= 0");
    double h0 = kQuarticRootPi * std::exp(-0.5 * u * u);
    if (n == 0) return h0;
    double h1 = std::numbers::sqrt2 * u * h0;
    for (int k = 1; k < n; ++k) {
        const double h2 = std::sqrt(2.0 / (k + 1)) * u * h1 - std::sqrt(double(k) / (k + 1)) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

void hermite_functions(int n_max, double u, std::span<double> out) {
    if (n_max < 0) throw std::invalid_argument("quantum number must be >= 0");
    if (out.size() != static_cast<std::size_t>(n_max) + 1) {
        throw std::invalid_argument("output span size must be n_max + 1");
    }
    out[0] = kQuarticRootPi * std::exp(-0.5 * u * u);
    if (n_max == 0) return;
    out[1] = std::numbers::sqrt2 * u * out[0];
    for (int k = 1; k < n_max; ++k) {
        out[k + 1] = std::sqrt(2.0 / (k + 1)) * u * out[k] - std::sqrt(double(k) / (k + 1)) * out[k - 1];
    }
}

}  // namespace drivendot
