#pragma once

#include <string>

#include "drivendot/table.hpp"

namespace drivendot {

// Plot-ready data behind the reference panels, all in the display
// convention sigma = 0.1 * xi(T) with xi(T) = pi*lambda_so/2 (so xi_T = 10
// sigma and lambda_so = 20 sigma/pi).
//
// fig2a: residual amplitude a/xi(T) vs T/T0 for the four named drivings.
// fig2b: post-stop ground-doublet occupation P0(T) vs T/T0.
// fig3a: S_z vs xi/xi(T) for linear ramp and smooth sinusoidal driving at
//        T/T0 = 2 and 5, plus the adiabatic limit.
// fig3b: ground-doublet pseudo-spin T_z0 likewise.
// fig3c: P0(t) vs t/T for smooth sinusoidal driving, T/T0 in
//        {2, 2.5, 3.5, 4.5, 6.5}.
// fig3d: min_t P0(t) vs T/T0 for smooth sinusoidal driving.
Table figure_data(const std::string& panel);

// All panel names accepted by figure_data.
const std::vector<std::string>& figure_panels();

}  // namespace drivendot
