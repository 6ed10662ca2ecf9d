#ifndef RESIL_RESIL_H
#define RESIL_RESIL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RS_API __declspec(dllexport)
#else
#define RS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Nonzero values mirror resil::ErrorCode. */
enum {
    RS_OK = 0,
    RS_E_INVALID_ARGUMENT = 1,
    RS_E_PARSE = 2,
    RS_E_DIMENSION_MISMATCH = 3,
    RS_E_DUPLICATE_CONTROL = 4,
    RS_E_X0_NOT_SAFE = 5,
    RS_E_M_TOO_LARGE = 6,
    RS_E_EMPTY_CONTROL_SET = 7,
    RS_E_TOO_LARGE = 8,
    RS_E_CAP_EXCEEDED = 9,
    RS_E_PRECONDITION = 10,
    RS_E_DECODE = 11,
    RS_E_DESIGN_NOT_FOUND = 12,
    RS_E_CONFIG = 13,
    RS_E_CANCELLED = 14,
    RS_E_INTERNAL = 99
};

/* Synthesis verdicts. */
enum { RS_SOLVED = 0, RS_INFEASIBLE = 1, RS_UNKNOWN = 2 };

enum { RS_SOLVER_COUNTER = 0, RS_SOLVER_NAIVE = 1 };

enum {
    RS_ADV_CONSTANT = 0,
    RS_ADV_UNIFORM = 1,
    RS_ADV_SCRIPTED = 2,
    RS_ADV_GREEDY = 3,
    RS_ADV_CALLBACK = 4
};

typedef struct rs_instance rs_instance;
typedef struct rs_labeling rs_labeling;
typedef struct rs_policy rs_policy;
typedef struct rs_outcome rs_outcome;
typedef struct rs_code rs_code;
typedef struct rs_encoder rs_encoder;
typedef struct rs_decoder rs_decoder;

/* Message of the last failing call on this thread; never NULL. */
RS_API const char* rs_last_error(void);
RS_API const char* rs_status_name(int status);
RS_API const char* rs_version(void);
/* Frees strings returned through char** out-parameters. */
RS_API void rs_string_free(char* s);

/* Instances: JSON text in, validated handle out. */
RS_API int rs_instance_parse(const char* json, rs_instance** out);
RS_API void rs_instance_free(rs_instance* inst);
RS_API int rs_instance_to_json(const rs_instance* inst, char** json_out);
RS_API size_t rs_instance_dimension(const rs_instance* inst);
RS_API int rs_instance_label_count(const rs_instance* inst);
/* Condition report of the subgraph left after peeling S to min degree m. */
RS_API int rs_instance_report(const rs_instance* inst, char** json_out);

/* Labelings (partitions of U): {"labels":{"<control>":d}} with d in [1, m]. */
RS_API int rs_labeling_parse(const rs_instance* inst, const char* json, rs_labeling** out);
RS_API int rs_labeling_to_json(const rs_instance* inst, const rs_labeling* lab, char** json_out);
RS_API void rs_labeling_free(rs_labeling* lab);

/* Policies: {"winning_set":[..],"policy":{"<state>|<d>":"<control index>"}}. */
RS_API int rs_policy_parse(const rs_instance* inst, const char* json, rs_policy** out);
RS_API int rs_policy_to_json(const rs_policy* policy, char** json_out);
RS_API size_t rs_policy_size(const rs_policy* policy);
RS_API void rs_policy_free(rs_policy* policy);

/* RPCP for a fixed partition. policy_out (optional) receives the policy on
   the maximal winning set, even when x0 is not winning. */
RS_API int rs_solve(const rs_instance* inst, const rs_labeling* lab, int solver, int* solvable,
                    rs_policy** policy_out);

/* Checks a partition (and optionally a policy) against an instance.
   *ok is 1 when the partition wins from x0 and the policy, if given, is a
   closed-loop invariant strategy. report_json (optional) explains. */
RS_API int rs_verify(const rs_instance* inst, const rs_labeling* lab, const rs_policy* policy, int* ok,
                     char** report_json);

typedef struct {
    int64_t seeds;
    uint64_t seed;
    int64_t oracle_cap;
    int use_oracle;
} rs_synth_config;

RS_API void rs_synth_config_default(rs_synth_config* config);
RS_API int rs_synthesize(const rs_instance* inst, const rs_synth_config* config, rs_outcome** out);
RS_API int rs_outcome_status(const rs_outcome* outcome);
/* RS_E_PRECONDITION unless the outcome is RS_SOLVED. */
RS_API int rs_outcome_labeling(const rs_outcome* outcome, rs_labeling** out);
RS_API int rs_outcome_policy(const rs_outcome* outcome, rs_policy** out);
RS_API int rs_outcome_report(const rs_outcome* outcome, char** json_out);
RS_API void rs_outcome_free(rs_outcome* outcome);

/* Exhaustive FPCP search; RS_E_CAP_EXCEEDED when m^|U| > cap. */
RS_API int rs_oracle_fpcp(const rs_instance* inst, uint64_t cap, int* solvable, uint64_t* examined,
                          rs_labeling** witness);
/* Depth-bounded minimax for a fixed partition; depth 0 means |S| + 1. */
RS_API int rs_oracle_game_tree(const rs_instance* inst, const rs_labeling* lab, size_t depth, int* solvable);

/* Returns a label in [1, m]; any other value stops the run with RS_E_CANCELLED. */
typedef int (*rs_adversary_fn)(void* user, const int64_t* state, size_t n, size_t t);
/* One JSON object per visited state: {"t","state","d","u"} ("d"/"u" absent on the last). */
typedef void (*rs_line_fn)(void* user, const char* line);

typedef struct {
    int kind;
    int label;           /* RS_ADV_CONSTANT, 1-based */
    uint64_t seed;       /* RS_ADV_UNIFORM */
    const int* script;   /* RS_ADV_SCRIPTED, 1-based, cycled */
    size_t script_len;
    rs_adversary_fn callback; /* RS_ADV_CALLBACK */
    void* callback_user;
} rs_adversary;

/* *safe is 1 when no violation occurred; *violation_step is the first
   violating time index (or the step count when safe). */
RS_API int rs_simulate(const rs_instance* inst, const rs_labeling* lab, const rs_policy* policy,
                       const rs_adversary* adversary, size_t steps, rs_line_fn sink, void* sink_user, int* safe,
                       size_t* violation_step);
/* Text board for n <= 2. */
RS_API int rs_render_board(const rs_instance* inst, const rs_policy* policy, const int64_t* state, size_t n,
                           char** text_out);

/* Bounded-RDS block codes over {-1,1}^n. Messages are 1-based; codewords
   travel as bit strings with 0 standing for -1. *verdict (optional) gets
   the synthesis status; RS_E_DESIGN_NOT_FOUND unless it is RS_SOLVED. */
RS_API int rs_code_design(size_t n, int m, int64_t k, const rs_synth_config* config, rs_code** out, int* verdict);
RS_API int rs_code_parse(const char* json, rs_code** out);
RS_API int rs_code_to_json(const rs_code* code, char** json_out);
RS_API size_t rs_code_length(const rs_code* code);
RS_API int rs_code_message_count(const rs_code* code);
RS_API void rs_code_free(rs_code* code);

RS_API int rs_encoder_new(const rs_code* code, rs_encoder** out);
/* bits_out must hold at least n + 1 bytes. */
RS_API int rs_encoder_encode(rs_encoder* enc, int message, char* bits_out, size_t bits_cap);
RS_API int rs_encoder_rds(const rs_encoder* enc, int64_t* rds_out, size_t n);
RS_API void rs_encoder_free(rs_encoder* enc);

RS_API int rs_decoder_new(const rs_code* code, rs_decoder** out);
RS_API int rs_decoder_decode(rs_decoder* dec, const char* bits, int* message);
RS_API int rs_decoder_decode_vector(rs_decoder* dec, const int64_t* word, size_t n, int* message);
RS_API void rs_decoder_free(rs_decoder* dec);

#ifdef __cplusplus
}
#endif

#endif
