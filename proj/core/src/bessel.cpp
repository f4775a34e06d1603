#include "svol/bessel.hpp"

#include <cmath>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include "svol/errors.hpp"

namespace svol {

namespace {
const int kHandlerOff = [] {
    gsl_set_error_handler_off();
    return 0;
}();
} // namespace

double log_bessel_k(double nu, double x) {
    if (!(x > 0.0)) throw domain_error("log_bessel_k: argument must be > 0");
    gsl_sf_result res;
    int status = gsl_sf_bessel_lnKnu_e(std::fabs(nu), x, &res);
    if (status != GSL_SUCCESS)
        throw numerical_error("log_bessel_k failed: nu=" + std::to_string(nu) +
                              " x=" + std::to_string(x));
    return res.val;
}

double bessel_k_scaled(double nu, double x) {
    if (!(x > 0.0)) throw domain_error("bessel_k_scaled: argument must be > 0");
    gsl_sf_result res;
    int status = gsl_sf_bessel_Knu_scaled_e(std::fabs(nu), x, &res);
    if (status != GSL_SUCCESS)
        throw numerical_error("bessel_k_scaled failed: nu=" + std::to_string(nu) +
                              " x=" + std::to_string(x));
    return res.val;
}

} // namespace svol
