#include "kramers/kramers.h"

#include "kramers/bgk_oracle.hpp"
#include "kramers/error.hpp"
#include "kramers/hme_system.hpp"
#include "kramers/kramers_solver.hpp"

#include <exception>
#include <new>
#include <string>

struct kr_solution {
    kramers::KramersSolution impl;
};

struct kr_oracle {
    kramers::EquivalenceReport report;
};

namespace {

thread_local std::string g_last_error;

kr_status fail(kr_status code, const char* what)
{
    g_last_error = what;
    return code;
}

template <class F>
kr_status guarded(F&& body)
{
    try {
        g_last_error.clear();
        return body();
    } catch (const kramers::InvalidArgument& e) {
        return fail(KR_ERR_INVALID, e.what());
    } catch (const kramers::NumericalFailure& e) {
        return fail(KR_ERR_NUMERICAL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(KR_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(KR_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(KR_ERR_INTERNAL, "unknown error");
    }
}

kr_status null_argument(const char* name)
{
    return fail(KR_ERR_INVALID, (std::string("null argument: ") + name).c_str());
}

} // namespace

extern "C" {

const char* kr_version(void) { return "0.1.0"; }

const char* kr_last_error(void) { return g_last_error.c_str(); }

double kr_singular_rcond(void) { return kramers::kSingularRcond; }

kr_status kr_solution_create(int order, double chi, double kn, double sigma12, kr_solution** out)
{
    if (!out)
        return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        auto* h = new kr_solution{kramers::solve_kramers(order, chi, kn, sigma12)};
        *out = h;
        return KR_OK;
    });
}

void kr_solution_destroy(kr_solution* sol) { delete sol; }

kr_status kr_solution_info_get(const kr_solution* sol, kr_solution_info* out)
{
    if (!sol)
        return null_argument("sol");
    if (!out)
        return null_argument("out");
    return guarded([&] {
        const auto& s = sol->impl;
        out->order = s.order;
        out->mode_count = s.mode_count();
        out->chi = s.chi;
        out->kn = s.kn;
        out->sigma12 = s.sigma12;
        out->c0 = s.c0;
        out->zeta = s.sigma12 != 0.0 ? s.slip_coefficient() : 0.0;
        return KR_OK;
    });
}

kr_status kr_solution_modes(const kr_solution* sol, double* lambda_hat, double* c_hat,
                            size_t capacity, size_t* count)
{
    if (!sol)
        return null_argument("sol");
    if (!count)
        return null_argument("count");
    const auto& s = sol->impl;
    const auto n = static_cast<size_t>(s.mode_count());
    *count = n;
    if ((lambda_hat || c_hat) && capacity < n)
        return fail(KR_ERR_BUFFER, "mode buffer too small");
    for (size_t i = 0; i < n; ++i) {
        if (lambda_hat)
            lambda_hat[i] = s.lambda_hat[i];
        if (c_hat)
            c_hat[i] = s.c_hat[i];
    }
    g_last_error.clear();
    return KR_OK;
}

kr_status kr_solution_eval(const kr_solution* sol, double y, kr_point* out)
{
    if (!sol)
        return null_argument("sol");
    if (!out)
        return null_argument("out");
    return guarded([&] {
        const auto& s = sol->impl;
        kr_point p;
        p.u = s.velocity(y);
        p.u_tilde = s.normalized_velocity(y);
        p.u_defect = s.velocity_defect(y);
        p.mu_eff_ratio = s.effective_viscosity(y);
        *out = p;
        return KR_OK;
    });
}

kr_status kr_spectrum(int order, double* lambda_hat, size_t capacity, size_t* count)
{
    if (!count)
        return null_argument("count");
    return guarded([&] {
        if (order < 3)
            throw kramers::InvalidArgument("order must be >= 3, got " + std::to_string(order));
        const std::vector<double> rates = kramers::layer_rates(order);
        *count = rates.size();
        if (lambda_hat) {
            if (capacity < rates.size())
                return fail(KR_ERR_BUFFER, "spectrum buffer too small");
            for (size_t i = 0; i < rates.size(); ++i)
                lambda_hat[i] = rates[i];
        }
        return KR_OK;
    });
}

kr_status kr_boundary_det(int order, double chi, double* det, double* cond, int* singular)
{
    return guarded([&] {
        const kramers::BoundaryAssembly a = kramers::assemble_boundary_system(order, chi);
        if (det)
            *det = a.det_a;
        if (cond)
            *cond = a.cond_a;
        if (singular)
            *singular = a.numerically_singular() ? 1 : 0;
        return KR_OK;
    });
}

kr_status kr_viscosity_gu(double chi, double kn, double y, double* out)
{
    if (!out)
        return null_argument("out");
    return guarded([&] {
        *out = kramers::gu_r26_viscosity(chi, kn, y);
        return KR_OK;
    });
}

kr_status kr_viscosity_lockerby(double y, double* out)
{
    if (!out)
        return null_argument("out");
    return guarded([&] {
        *out = kramers::lockerby_viscosity(y);
        return KR_OK;
    });
}

kr_status kr_oracle_run(int order, double chi, double kn, double sigma12, double y_max,
                        int n_cells, kr_oracle** out)
{
    if (!out)
        return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        auto* h = new kr_oracle{kramers::run_oracle(order, chi, kn, sigma12, y_max, n_cells)};
        *out = h;
        return KR_OK;
    });
}

void kr_oracle_destroy(kr_oracle* oracle) { delete oracle; }

kr_status kr_oracle_summary_get(const kr_oracle* oracle, kr_oracle_summary* out)
{
    if (!oracle)
        return null_argument("oracle");
    if (!out)
        return null_argument("out");
    const auto& r = oracle->report;
    kr_oracle_summary s;
    s.order = r.order;
    s.n_cells = r.n_cells;
    s.chi = r.chi;
    s.kn = r.kn;
    s.y_max = r.y_max;
    s.profile_error_analytic = r.profile_error_analytic;
    s.profile_error_modal = r.profile_error_modal;
    s.model_gap = r.model_gap;
    s.wall_moment_residual = r.wall_moment_residual;
    s.wall_ordinate_residual = r.wall_ordinate_residual;
    s.ode_residual = r.ode_residual;
    s.s_identity_error = r.s_identity_error;
    s.s_identity_error_exact = r.s_identity_error_exact;
    s.kv_condition = r.kv_condition;
    s.wall_inflow_max = r.wall_inflow_max;
    s.far_slope_rel_error = r.far_slope_rel_error;
    s.solve_residual = r.solve_residual;
    s.slip_moment = r.slip_moment;
    s.slip_ordinates = r.slip_ordinates;
    s.identity_rw_one = r.identities.rw_one;
    s.identity_omega = r.identities.omega;
    s.identity_inverse = r.identities.inverse;
    s.identity_inverse_scaled = r.identities.inverse_scaled;
    s.all_asserted_pass = r.all_asserted_pass() ? 1 : 0;
    *out = s;
    g_last_error.clear();
    return KR_OK;
}

size_t kr_oracle_check_count(const kr_oracle* oracle)
{
    return oracle ? oracle->report.checks.size() : 0;
}

kr_status kr_oracle_check_get(const kr_oracle* oracle, size_t index, kr_oracle_check* out)
{
    if (!oracle)
        return null_argument("oracle");
    if (!out)
        return null_argument("out");
    if (index >= oracle->report.checks.size())
        return fail(KR_ERR_INVALID, "oracle check index out of range");
    const auto& c = oracle->report.checks[index];
    out->name = c.name.c_str();
    out->value = c.value;
    out->tolerance = c.tolerance;
    out->asserted = c.asserted ? 1 : 0;
    out->pass = c.pass() ? 1 : 0;
    g_last_error.clear();
    return KR_OK;
}

kr_status kr_mesh_convergence(int order, double chi, double kn, double y_max, int n_cells,
                              double* coarse, double* fine, double* ratio)
{
    return guarded([&] {
        const kramers::OrdinatesSystem osys = kramers::build_ordinates_system(order, chi, kn);
        if (!(y_max > 0.0))
            y_max = 1.25 * kramers::oracle_minimum_extent(osys);
        const kramers::MeshConvergence mc = kramers::mesh_convergence(osys, y_max, n_cells);
        if (coarse)
            *coarse = mc.coarse_error;
        if (fine)
            *fine = mc.fine_error;
        if (ratio)
            *ratio = mc.ratio;
        return KR_OK;
    });
}

} // extern "C"
