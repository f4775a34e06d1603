#ifndef SVOL_BESSEL_HPP
#define SVOL_BESSEL_HPP

namespace svol {

// Modified Bessel function of the third kind K_nu, real order.
// K_{-nu} = K_nu, so only |nu| matters.
double log_bessel_k(double nu, double x);       // ln K_nu(x)
double bessel_k_scaled(double nu, double x);    // e^x K_nu(x)

} // namespace svol

#endif
