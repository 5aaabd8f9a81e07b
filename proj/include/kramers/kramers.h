#ifndef KRAMERS_KRAMERS_H
#define KRAMERS_KRAMERS_H

/*
 * C interface to the Kramers-problem solver for the linearized shear
 * moment system. All functions return a kr_status; on failure a message
 * is available from kr_last_error() on the calling thread.
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(KRAMERS_BUILDING_LIBRARY)
#    define KRAMERS_API __declspec(dllexport)
#  else
#    define KRAMERS_API __declspec(dllimport)
#  endif
#else
#  define KRAMERS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kr_status {
    KR_OK = 0,
    KR_ERR_INVALID = 2,   /* argument outside its domain */
    KR_ERR_NUMERICAL = 3, /* singular system, pole, failed solve */
    KR_ERR_BUFFER = 4,    /* caller buffer too small; *count holds the need */
    KR_ERR_INTERNAL = 5
} kr_status;

typedef struct kr_solution kr_solution;
typedef struct kr_oracle kr_oracle;

typedef struct kr_solution_info {
    int order;
    int mode_count;
    double chi;
    double kn;
    double sigma12;
    double c0;
    double zeta; /* slip coefficient -Kn c0 / sigma12 */
} kr_solution_info;

typedef struct kr_point {
    double u;            /* u_1(y) */
    double u_tilde;      /* -Kn u_1 / sigma12 */
    double u_defect;     /* u_tilde = y + zeta - u_defect */
    double mu_eff_ratio; /* 1 / (d u_tilde / dy) */
} kr_point;

typedef struct kr_oracle_summary {
    int order;
    int n_cells;
    double chi;
    double kn;
    double y_max;
    double profile_error_analytic;
    double profile_error_modal;
    double model_gap;
    double wall_moment_residual;
    double wall_ordinate_residual;
    double ode_residual;
    double s_identity_error;
    double s_identity_error_exact;
    double kv_condition;
    double wall_inflow_max;
    double far_slope_rel_error;
    double solve_residual;
    double slip_moment;
    double slip_ordinates;
    double identity_rw_one;
    double identity_omega;
    double identity_inverse;
    double identity_inverse_scaled;
    int all_asserted_pass;
} kr_oracle_summary;

typedef struct kr_oracle_check {
    const char* name; /* owned by the oracle handle */
    double value;
    double tolerance;
    int asserted;
    int pass;
} kr_oracle_check;

KRAMERS_API const char* kr_version(void);
KRAMERS_API const char* kr_last_error(void);

/* Reciprocal equilibrated condition number below which the boundary
 * system counts as numerically singular. */
KRAMERS_API double kr_singular_rcond(void);

KRAMERS_API kr_status kr_solution_create(int order, double chi, double kn, double sigma12,
                                         kr_solution** out);
KRAMERS_API void kr_solution_destroy(kr_solution* sol);
KRAMERS_API kr_status kr_solution_info_get(const kr_solution* sol, kr_solution_info* out);

/* Decay rates (descending) and amplitudes; either array may be NULL. */
KRAMERS_API kr_status kr_solution_modes(const kr_solution* sol, double* lambda_hat, double* c_hat,
                                        size_t capacity, size_t* count);
KRAMERS_API kr_status kr_solution_eval(const kr_solution* sol, double y, kr_point* out);

/* Positive layer rates of order M, descending. */
KRAMERS_API kr_status kr_spectrum(int order, double* lambda_hat, size_t capacity, size_t* count);

KRAMERS_API kr_status kr_boundary_det(int order, double chi, double* det, double* cond,
                                      int* singular);

KRAMERS_API kr_status kr_viscosity_gu(double chi, double kn, double y, double* out);
/* Fails with KR_ERR_INVALID at y = 0 where the fit is singular. */
KRAMERS_API kr_status kr_viscosity_lockerby(double y, double* out);

/* y_max <= 0 selects 25 Kn max(lambda_hat). */
KRAMERS_API kr_status kr_oracle_run(int order, double chi, double kn, double sigma12,
                                    double y_max, int n_cells, kr_oracle** out);
KRAMERS_API void kr_oracle_destroy(kr_oracle* oracle);
KRAMERS_API kr_status kr_oracle_summary_get(const kr_oracle* oracle, kr_oracle_summary* out);
KRAMERS_API size_t kr_oracle_check_count(const kr_oracle* oracle);
KRAMERS_API kr_status kr_oracle_check_get(const kr_oracle* oracle, size_t index,
                                          kr_oracle_check* out);

/* Max profile error of the finite-difference oracle against the exact
 * ordinate solution on n_cells/2 and n_cells cells. */
KRAMERS_API kr_status kr_mesh_convergence(int order, double chi, double kn, double y_max,
                                          int n_cells, double* coarse, double* fine,
                                          double* ratio);

#ifdef __cplusplus
}
#endif

#endif /* KRAMERS_KRAMERS_H */
