// Copyright 2026 The fluxctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "fluxctl/least_squares.hpp"

#include <cmath>
#include <exception>
#include <mutex>

#include <gsl/gsl_blas.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multifit_nlinear.h>

#include "fluxctl/errors.hpp"

namespace fluxctl::lsq {
namespace {

void disable_gsl_abort() {
    static std::once_flag flag;
    std::call_once(flag, [] { gsl_set_error_handler_off(); });
}

struct Context {
    const Problem *problem;
    Eigen::VectorXd x, r;
    Eigen::MatrixXd jac;
    std::exception_ptr error;
};

void load(const gsl_vector *v, Eigen::VectorXd &x) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = gsl_vector_get(v, i);
}

int eval_f(const gsl_vector *xv, void *data, gsl_vector *f) {
    auto *ctx = static_cast<Context *>(data);
    try {
        load(xv, ctx->x);
        ctx->problem->residual(ctx->x, ctx->r);
        for (Eigen::Index i = 0; i < ctx->r.size(); ++i) {
            if (!std::isfinite(ctx->r(i))) return GSL_EDOM;
            gsl_vector_set(f, i, ctx->r(i));
        }
    } catch (...) {
        ctx->error = std::current_exception();
        return GSL_EFAILED;
    }
    return GSL_SUCCESS;
}

int eval_df(const gsl_vector *xv, void *data, gsl_matrix *jm) {
    auto *ctx = static_cast<Context *>(data);
    try {
        load(xv, ctx->x);
        ctx->problem->jacobian(ctx->x, ctx->jac);
        for (Eigen::Index i = 0; i < ctx->jac.rows(); ++i)
            for (Eigen::Index j = 0; j < ctx->jac.cols(); ++j) {
                if (!std::isfinite(ctx->jac(i, j))) return GSL_EDOM;
                gsl_matrix_set(jm, i, j, ctx->jac(i, j));
            }
    } catch (...) {
        ctx->error = std::current_exception();
        return GSL_EFAILED;
    }
    return GSL_SUCCESS;
}

Eigen::MatrixXd scaled_inverse(const Eigen::MatrixXd &jac, double rss, Eigen::Index n,
                               Eigen::Index p) {
    if (n <= p) return {};
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(jtj);
    return cod.pseudoInverse() * (rss / double(n - p));
}

}  // namespace

Result solve(const Problem &problem, const Eigen::VectorXd &x0, const Options &opt) {
    const Eigen::Index p = problem.n_params, n = problem.n_residuals;
    if (p < 1 || n < p || x0.size() != p)
        throw InvalidArgument("least squares: need n_residuals >= n_params and matching x0");
    disable_gsl_abort();

    Context ctx{&problem, Eigen::VectorXd(p), Eigen::VectorXd(n), Eigen::MatrixXd(n, p), nullptr};

    gsl_multifit_nlinear_fdf fdf;
    fdf.f = eval_f;
    fdf.df = eval_df;
    fdf.fvv = nullptr;
    fdf.n = static_cast<size_t>(n);
    fdf.p = static_cast<size_t>(p);
    fdf.params = &ctx;

    gsl_multifit_nlinear_parameters params = gsl_multifit_nlinear_default_parameters();
    gsl_multifit_nlinear_workspace *w =
        gsl_multifit_nlinear_alloc(gsl_multifit_nlinear_trust, &params, fdf.n, fdf.p);
    if (!w) throw NumericalFailure("least squares: workspace allocation failed");

    gsl_vector *xv = gsl_vector_alloc(fdf.p);
    for (Eigen::Index i = 0; i < p; ++i) gsl_vector_set(xv, i, x0(i));

    Result res;
    int status = gsl_multifit_nlinear_init(xv, &fdf, w);
    int info = 0;
    if (status == GSL_SUCCESS)
        status = gsl_multifit_nlinear_driver(opt.max_iterations, opt.xtol, opt.gtol, opt.ftol,
                                             nullptr, nullptr, &info, w);

    res.x.resize(p);
    load(w->x, res.x);
    res.residual.resize(n);
    load(w->f, res.residual);
    res.iterations = static_cast<int>(gsl_multifit_nlinear_niter(w));
    // No further acceptable step means the trust region has collapsed onto a minimum.
    res.converged = (status == GSL_SUCCESS || status == GSL_ENOPROG);
    gsl_vector_free(xv);
    gsl_multifit_nlinear_free(w);

    if (ctx.error) std::rethrow_exception(ctx.error);
    res.rss = res.residual.squaredNorm();
    if (!std::isfinite(res.rss)) res.converged = false;
    if (res.converged) {
        Eigen::MatrixXd jac(n, p);
        problem.jacobian(res.x, jac);
        res.covariance = scaled_inverse(jac, res.rss, n, p);
    }
    return res;
}

Eigen::MatrixXd covariance_at(const Problem &problem, const Eigen::VectorXd &x) {
    Eigen::VectorXd r(problem.n_residuals);
    Eigen::MatrixXd jac(problem.n_residuals, problem.n_params);
    problem.residual(x, r);
    problem.jacobian(x, jac);
    return scaled_inverse(jac, r.squaredNorm(), problem.n_residuals, problem.n_params);
}

}  // namespace fluxctl::lsq
