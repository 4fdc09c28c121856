/* C interface to the tail laboratory: special functions, rate tables,
 * resonance families, and the config-driven simulate/verify/report pipeline.
 *
 * All functions return a tl_status; on failure tl_last_error() describes the
 * problem (thread-local).  Handles are opaque and must be released with the
 * matching _destroy call. */
#ifndef TAIL_LAB_H
#define TAIL_LAB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tl_status {
  TL_OK = 0,
  TL_EVERIFY = 1,  /* verification produced a fail verdict */
  TL_EINVAL = 2,   /* invalid argument, config, or unsupported parameter */
  TL_ENUMERIC = 3  /* numerical failure (instability, non-convergence) */
} tl_status;

const char* tl_last_error(void);

/* --- special functions ------------------------------------------------- */

tl_status tl_ln_gamma(double re, double im, double* out_re, double* out_im);
tl_status tl_hyp2f1(double a_re, double a_im, double b_re, double b_im,
                    double c_re, double c_im, double x, double* out_re,
                    double* out_im);

/* --- rate tables ------------------------------------------------------- */

typedef struct tl_rate_table tl_rate_table;

/* problem: "wave" or "dirac"; coupling is f (wave) or Z (dirac). */
tl_status tl_rate_table_create(const char* problem, int n, double coupling,
                               int mode_max, tl_rate_table** out);
void tl_rate_table_destroy(tl_rate_table* table);
tl_status tl_rate_table_rates(const tl_rate_table* table, double* rate_C_plus,
                              double* rate_tf_plus, int* sharpness_notice);
tl_status tl_rate_table_mode_count(const tl_rate_table* table, int* count);
tl_status tl_rate_table_mode_row(const tl_rate_table* table, int index,
                                 int* mode, double* rate_C_plus,
                                 double* rate_tf_plus, int* exceptional);

/* --- resonances (wave sectors) ----------------------------------------- */

typedef struct tl_resonance_family tl_resonance_family;

tl_status tl_resonances_closed_form(int n, double coupling, int j, int kmax,
                                    tl_resonance_family** out);
void tl_resonances_destroy(tl_resonance_family* family);
tl_status tl_resonances_count(const tl_resonance_family* family, int* count);
tl_status tl_resonances_get(const tl_resonance_family* family, int index,
                            double* re, double* im);
/* Numerically locate zeros of the connection coefficient in the box; writes
 * up to capacity zeros and reports how many were found. */
tl_status tl_resonances_locate(int n, double coupling, int j, double re_lo,
                               double re_hi, double im_lo, double im_hi,
                               int grid, double* out_re, double* out_im,
                               int capacity, int* found);

/* --- experiment pipeline ----------------------------------------------- */

typedef struct tl_run_config tl_run_config;

tl_status tl_config_parse(const char* json_text, tl_run_config** out);
tl_status tl_config_load(const char* path, tl_run_config** out);
void tl_config_destroy(tl_run_config* config);

/* Each stage appends to <output_dir>/run.log; with echo nonzero the log is
 * mirrored to stdout.  tl_verify returns TL_EVERIFY (and all_pass = 0) when
 * any trajectory fails its verdict. */
tl_status tl_simulate(const tl_run_config* config, int echo);
tl_status tl_verify(const tl_run_config* config, int echo, int* all_pass);
tl_status tl_report(const tl_run_config* config, int echo);

#ifdef __cplusplus
}
#endif

#endif
