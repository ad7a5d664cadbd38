/*
 * C interface to the monty library: exact posteriors for the biased-host
 * three-box game, seeded Monte Carlo runs, bias sweeps and the interactive
 * session server.
 *
 * Every function returns a monty_status. On failure, monty_last_error()
 * returns a message for the calling thread, valid until the next call.
 * Opaque handles are released with their matching *_free function.
 *
 * Host bias convention: q = P(host opens R | car behind the contestant's box T).
 */
#ifndef MONTY_MONTY_H
#define MONTY_MONTY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MONTY_BUILDING_LIBRARY)
#    define MONTY_API __declspec(dllexport)
#  else
#    define MONTY_API __declspec(dllimport)
#  endif
#else
#  define MONTY_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum monty_status {
    MONTY_OK = 0,
    MONTY_E_INVALID_ARGUMENT = 1,
    MONTY_E_INVALID_DOOR = 2,
    MONTY_E_OUT_OF_RANGE = 3,
    MONTY_E_PARSE = 4,
    MONTY_E_OVERFLOW = 5,
    MONTY_E_IO = 6,
    MONTY_E_INTERNAL = 7
} monty_status;

typedef enum monty_box { MONTY_BOX_T = 0, MONTY_BOX_L = 1, MONTY_BOX_R = 2 } monty_box;
typedef enum monty_variant { MONTY_GAME_I = 0, MONTY_GAME_II = 1 } monty_variant;
typedef enum monty_decision { MONTY_STAY = 0, MONTY_SWITCH = 1 } monty_decision;
typedef enum monty_outcome { MONTY_WIN = 0, MONTY_LOSE = 1 } monty_outcome;

typedef enum monty_strategy_kind {
    MONTY_STRATEGY_ALWAYS_STAY = 0,
    MONTY_STRATEGY_ALWAYS_SWITCH = 1,
    MONTY_STRATEGY_MIXED = 2,
    MONTY_STRATEGY_BIAS_AWARE = 3
} monty_strategy_kind;

/* Lowest terms, den > 0. */
typedef struct monty_rational {
    int64_t num;
    int64_t den;
} monty_rational;

MONTY_API const char* monty_last_error(void);
MONTY_API const char* monty_version(void);

/* "a/b", integers, or decimal literals (converted exactly). */
MONTY_API monty_status monty_rational_parse(const char* text, monty_rational* out);
/* As monty_rational_parse, and additionally requires 0 <= q <= 1. */
MONTY_API monty_status monty_bias_parse(const char* text, monty_rational* out);

/* ---- core model ---- */

typedef struct monty_transcript {
    monty_variant variant;
    monty_box car;
    monty_rational bias;
    monty_box host_opened;
    monty_decision decision;
    monty_outcome outcome;
    uint64_t seed_index;
    int decided_before_reveal;
} monty_transcript;

/* Writes up to 2 doors into `doors` and their count into `count`. */
MONTY_API monty_status monty_legal_host_doors(monty_box car, monty_box doors[2], size_t* count);
MONTY_API monty_status monty_host_choose(monty_box car, monty_rational q, double draw, monty_box* out);
MONTY_API monty_status monty_play(monty_variant variant, monty_box car, monty_rational q,
                                  monty_decision decision, double draw, monty_transcript* out);

/* ---- exact analytics ---- */

typedef struct monty_posterior {
    monty_box opened;
    monty_rational p_switch_win;
    monty_rational p_stay_win;
    monty_rational bayes_ratio; /* meaningless when bayes_ratio_infinite */
    int bayes_ratio_infinite;
} monty_posterior;

typedef struct monty_atom {
    monty_box car;
    monty_box switch_target;
    monty_outcome result;
    monty_rational probability;
} monty_atom;

typedef struct monty_game2_report {
    monty_decision decision;
    monty_rational p_win_switch;
    monty_rational p_win_stay;
    monty_rational per_placement[3]; /* indexed by monty_box */
} monty_game2_report;

MONTY_API monty_status monty_posterior_given_opened(monty_rational q, monty_box opened, monty_posterior* out);
MONTY_API monty_status monty_posterior_from_sample_space(monty_rational q, monty_box opened, monty_posterior* out);
MONTY_API monty_status monty_bayes_ratio(monty_rational q, monty_rational* out, int* infinite);
MONTY_API monty_status monty_enumerate_sample_space(monty_rational q, monty_atom out[4]);
MONTY_API monty_status monty_game_two_win(monty_decision decision, monty_game2_report* out);
MONTY_API monty_status monty_long_run_switch_rate(monty_rational q, monty_rational* out);

/* ---- simulation ---- */

typedef struct monty_sim_config {
    monty_variant variant;
    monty_rational bias;
    monty_strategy_kind strategy;
    monty_rational mixed_switch_probability; /* MONTY_STRATEGY_MIXED only */
    uint64_t trials;
    uint64_t seed;
    uint64_t batch_size; /* 0: default */
    unsigned threads;    /* 0: hardware concurrency */
} monty_sim_config;

MONTY_API void monty_sim_config_init(monty_sim_config* config);

typedef struct monty_rate {
    uint64_t wins;
    uint64_t games;
    int defined; /* 0 when games == 0; rate and ci are then unset */
    double rate;
    double ci_low;
    double ci_high;
} monty_rate;

typedef struct monty_sim_summary {
    monty_sim_config config;
    uint64_t wins_total;
    monty_rate overall;
    monty_rate given_opened[3]; /* L and R entries used */
    monty_rational exact_rate;
    monty_rational exact_given_opened[3];
    monty_rational exact_opened_fraction[3];
    int agrees_3sigma;
    double elapsed_seconds;
} monty_sim_summary;

typedef struct monty_sigma_check {
    const char* name; /* owned by the simulation handle */
    double observed;
    monty_rational expected;
    uint64_t n;
    double bound;
    int pass;
} monty_sigma_check;

typedef struct monty_simulation monty_simulation;

MONTY_API monty_status monty_simulate(const monty_sim_config* config, monty_simulation** out);
MONTY_API monty_status monty_simulation_summary(const monty_simulation* sim, monty_sim_summary* out);
MONTY_API size_t monty_simulation_check_count(const monty_simulation* sim);
MONTY_API monty_status monty_simulation_check(const monty_simulation* sim, size_t index, monty_sigma_check* out);
MONTY_API void monty_simulation_free(monty_simulation* sim);

MONTY_API monty_status monty_wilson_interval(uint64_t wins, uint64_t games, double* low, double* high);

typedef struct monty_sweep monty_sweep;

/* One simulation per grid point; the row i seed is derived from base->seed and i. */
MONTY_API monty_status monty_sweep_bias(const monty_rational* grid, size_t count,
                                        const monty_sim_config* base, monty_sweep** out);
MONTY_API size_t monty_sweep_size(const monty_sweep* sweep);
/* Borrowed view of row `index`; valid until monty_sweep_free. */
MONTY_API const monty_simulation* monty_sweep_row(const monty_sweep* sweep, size_t index);
MONTY_API void monty_sweep_free(monty_sweep* sweep);

/* ---- session service ---- */

typedef struct monty_server_config {
    const char* bind_address; /* NULL: 127.0.0.1 */
    int port;                 /* 0: any free port */
    const char* cors_origin;  /* NULL: "*"; "" disables CORS headers */
    monty_rational q_default;
    const char* transcript_log; /* NULL or "": no log */
    int has_seed;
    uint64_t seed;
} monty_server_config;

MONTY_API void monty_server_config_init(monty_server_config* config);

typedef struct monty_server monty_server;

MONTY_API monty_status monty_server_create(const monty_server_config* config, monty_server** out);
/* Binds the socket; MONTY_E_IO when the address is unavailable. */
MONTY_API monty_status monty_server_bind(monty_server* server, int* port);
/* Blocks serving requests until monty_server_stop. */
MONTY_API monty_status monty_server_run(monty_server* server);
/* Bind and serve on a background thread. */
MONTY_API monty_status monty_server_start(monty_server* server, int* port);
MONTY_API void monty_server_stop(monty_server* server);
MONTY_API void monty_server_free(monty_server* server);

#ifdef __cplusplus
}
#endif

#endif /* MONTY_MONTY_H */
