#pragma once

#include <span>

namespace drivendot {

// Normalized harmonic-oscillator eigenfunctions psi_n(u) for m = omega = 1,
// psi_n = H_n(u) e^{-u^2/2} / sqrt(2^n n! sqrt(pi)), evaluated through the
// three-term recurrence on the normalized functions themselves so the
// Gaussian is folded in from the start and no overflow occurs up to large n.
double hermite_function(int n, double u);

// All orders 0..n_max at once; out.size() must be n_max + 1.
void hermite_functions(int n_max, double u, std::span<double> out);

}  // namespace drivendot
