#include "svol/fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <gsl/gsl_multimin.h>

#include "svol/errors.hpp"

namespace svol {

namespace {

struct FitContext {
    std::span<const double> data;
};

GHParams decode(const gsl_vector* v) {
    double lambda = gsl_vector_get(v, 0);
    double delta = std::exp(gsl_vector_get(v, 1));
    double gamma = std::exp(gsl_vector_get(v, 2));
    double beta = gsl_vector_get(v, 3);
    double mu = gsl_vector_get(v, 4);
    double alpha = std::sqrt(gamma * gamma + beta * beta);
    return GHParams(lambda, alpha, beta, delta, mu);
}

double neg_mean_loglik(const gsl_vector* v, void* raw) {
    auto* ctx = static_cast<FitContext*>(raw);
    // clamp the unconstrained coordinates to keep Bessel evaluation in range
    for (std::size_t i = 0; i < 5; ++i) {
        double x = gsl_vector_get(v, i);
        if (!std::isfinite(x)) return 1e10;
    }
    if (std::fabs(gsl_vector_get(v, 0)) > 20.0) return 1e10;
    if (std::fabs(gsl_vector_get(v, 1)) > 30.0) return 1e10;
    if (std::fabs(gsl_vector_get(v, 2)) > 30.0) return 1e10;
    try {
        GHParams h = decode(v);
        double acc = 0.0;
        for (double x : ctx->data) {
            double lp = gh_log_pdf(h, x);
            if (!std::isfinite(lp)) return 1e10;
            acc += lp;
        }
        return -acc / static_cast<double>(ctx->data.size());
    } catch (const std::exception&) {
        return 1e10;
    }
}

// One Nelder-Mead run from x0; returns (x_opt, f_opt, iterations).
std::size_t nm_minimize(FitContext& ctx, std::vector<double>& x0, double step_scale, double& fbest) {
    gsl_multimin_function f;
    f.n = 5;
    f.f = &neg_mean_loglik;
    f.params = &ctx;

    gsl_vector* x = gsl_vector_alloc(5);
    gsl_vector* step = gsl_vector_alloc(5);
    for (std::size_t i = 0; i < 5; ++i) {
        gsl_vector_set(x, i, x0[i]);
        gsl_vector_set(step, i, step_scale);
    }
    gsl_multimin_fminimizer* s =
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 5);
    gsl_multimin_fminimizer_set(s, &f, x, step);

    std::size_t iter = 0;
    for (; iter < 20000; ++iter) {
        if (gsl_multimin_fminimizer_iterate(s) != 0) break;
        if (gsl_multimin_fminimizer_size(s) < 1e-10) break;
    }
    for (std::size_t i = 0; i < 5; ++i) x0[i] = gsl_vector_get(s->x, i);
    fbest = s->fval;
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(step);
    gsl_vector_free(x);
    return iter;
}

} // namespace

double gh_log_likelihood(const GHParams& h, std::span<const double> data) {
    double acc = 0.0;
    for (double x : data) acc += gh_log_pdf(h, x);
    return acc;
}

GhFit fit_gh_mle(std::span<const double> raw, std::optional<GHParams> init) {
    if (raw.size() < 500) throw domain_error("fit_gh_mle: need at least 500 observations");

    // sort once so the likelihood sum (and hence the fit) is permutation invariant
    std::vector<double> sorted(raw.begin(), raw.end());
    std::sort(sorted.begin(), sorted.end());
    std::span<const double> data(sorted);

    double mean = 0.0;
    for (double x : data) mean += x;
    mean /= static_cast<double>(data.size());
    double var = 0.0;
    for (double x : data) var += (x - mean) * (x - mean);
    var /= static_cast<double>(data.size() - 1);
    if (!(var > 0.0)) throw domain_error("fit_gh_mle: degenerate (constant) data");
    double sd = std::sqrt(var);

    std::vector<double> x0(5);
    if (init) {
        double g = init->gamma();
        if (!(g > 0.0 && init->delta > 0.0))
            throw domain_error("fit_gh_mle: init must lie in the interior of the domain");
        x0 = {init->lambda, std::log(init->delta), std::log(g), init->beta, init->mu};
    } else {
        // NIG-flavoured moment start: delta/gamma matches the sample variance
        x0 = {-0.5, std::log(sd), std::log(1.0 / sd), 0.0, mean};
    }

    FitContext ctx{data};
    double fbest = 0.0;
    std::size_t total_iter = 0;
    double fprev = 1e300;
    for (int restart = 0; restart < 6; ++restart) {
        total_iter += nm_minimize(ctx, x0, restart == 0 ? 0.25 : 0.05, fbest);
        if (fprev - fbest < 1e-12 * std::max(1.0, std::fabs(fbest))) break;
        fprev = fbest;
    }
    if (fbest >= 1e9) throw numerical_error("fit_gh_mle: optimizer failed to find a finite optimum");

    // central-difference gradient of the mean log-likelihood at the optimum
    double gnorm = 0.0;
    {
        gsl_vector* v = gsl_vector_alloc(5);
        for (std::size_t i = 0; i < 5; ++i) gsl_vector_set(v, i, x0[i]);
        for (std::size_t i = 0; i < 5; ++i) {
            double h = 1e-5 * std::max(1.0, std::fabs(x0[i]));
            gsl_vector_set(v, i, x0[i] + h);
            double fp = neg_mean_loglik(v, &ctx);
            gsl_vector_set(v, i, x0[i] - h);
            double fm = neg_mean_loglik(v, &ctx);
            gsl_vector_set(v, i, x0[i]);
            gnorm = std::max(gnorm, std::fabs((fp - fm) / (2.0 * h)));
        }
        gsl_vector_free(v);
    }

    GHParams h(x0[0], std::sqrt(std::exp(2.0 * x0[2]) + x0[3] * x0[3]), x0[3],
               std::exp(x0[1]), x0[4]);
    double ll = -fbest * static_cast<double>(data.size());
    if (init) {
        double ll0 = gh_log_likelihood(*init, data);
        if (ll < ll0) { // never return worse than the caller's start
            h = *init;
            ll = ll0;
        }
    }
    return {h, ll, total_iter, gnorm, gnorm < 1e-4};
}

} // namespace svol
