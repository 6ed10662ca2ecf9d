#include "resil/resil.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "resil/game.hpp"
#include "resil/graph.hpp"
#include "resil/io.hpp"
#include "resil/labeling.hpp"
#include "resil/oracle.hpp"
#include "resil/rds.hpp"
#include "resil/simulator.hpp"
#include "resil/synthesis.hpp"

struct rs_instance {
    resil::Instance inst;
};

struct rs_labeling {
    resil::Labeling lab;
    resil::Partition part;
};

struct rs_policy {
    resil::Policy policy;
};

struct rs_outcome {
    resil::SynthesisOutcome out;
};

struct rs_code {
    resil::rds::CodeDesign design;
};

// Encoders and decoders borrow the design; the code must outlive them.
struct rs_encoder {
    resil::rds::Encoder enc;
    std::size_t n;
};

struct rs_decoder {
    resil::rds::Decoder dec;
};

namespace {

thread_local std::string g_last_error;

struct Cancelled {};

template <typename F>
int guard(F&& f) noexcept {
    try {
        f();
        g_last_error.clear();
        return RS_OK;
    } catch (const resil::Error& e) {
        g_last_error = e.what();
        return static_cast<int>(e.code());
    } catch (const Cancelled&) {
        g_last_error = "cancelled by the adversary callback";
        return RS_E_CANCELLED;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RS_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return RS_E_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (p == nullptr) {
        throw resil::Error(resil::ErrorCode::InvalidArgument, std::string(what) + " is null");
    }
}

char* dup_string(const std::string& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

rs_labeling* wrap_labeling(const resil::Labeling& lab, int m) {
    return new rs_labeling{lab, resil::labeling_to_partition(lab, m)};
}

nlohmann::json coords(const resil::IntVector& v) {
    return nlohmann::json(std::vector<std::int64_t>(v.coords().begin(), v.coords().end()));
}

}  // namespace

extern "C" {

const char* rs_last_error(void) {
    return g_last_error.c_str();
}

const char* rs_status_name(int status) {
    switch (status) {
        case RS_OK: return "OK";
        case RS_E_CANCELLED: return "Cancelled";
        case RS_E_INTERNAL: return "Internal";
        default: break;
    }
    if (status >= RS_E_INVALID_ARGUMENT && status <= RS_E_CONFIG) {
        return resil::error_code_name(static_cast<resil::ErrorCode>(status));
    }
    return "Unknown";
}

const char* rs_version(void) {
    return "1.0.0";
}

void rs_string_free(char* s) {
    std::free(s);
}

int rs_instance_parse(const char* json, rs_instance** out) {
    return guard([&] {
        need(json, "json");
        need(out, "out");
        *out = nullptr;
        *out = new rs_instance{resil::io::parse_instance(json)};
    });
}

void rs_instance_free(rs_instance* inst) {
    delete inst;
}

int rs_instance_to_json(const rs_instance* inst, char** json_out) {
    return guard([&] {
        need(inst, "instance");
        need(json_out, "json_out");
        *json_out = dup_string(resil::io::instance_to_json(inst->inst));
    });
}

size_t rs_instance_dimension(const rs_instance* inst) {
    return inst == nullptr ? 0 : inst->inst.n;
}

int rs_instance_label_count(const rs_instance* inst) {
    return inst == nullptr ? 0 : inst->inst.m;
}

int rs_instance_report(const rs_instance* inst, char** json_out) {
    return guard([&] {
        need(inst, "instance");
        need(json_out, "json_out");
        const auto& in = inst->inst;
        nlohmann::json doc;
        doc["n"] = in.n;
        doc["m"] = in.m;
        doc["control_count"] = in.controls.size();
        doc["safe_set_size"] = in.safe.size();
        doc["labeling_count"] = resil::oracle::labeling_count(in.controls.size(), in.m);
        const auto core = resil::peel_to_min_degree(in.safe.points(), in.controls, static_cast<std::size_t>(in.m), in.x0);
        if (core) {
            doc["m_core"] = nlohmann::json::parse(resil::io::condition_report_to_json(resil::check_conditions(*core, in.m)));
        } else {
            doc["m_core"] = nullptr;
        }
        *json_out = dup_string(doc.dump(2) + "\n");
    });
}

int rs_labeling_parse(const rs_instance* inst, const char* json, rs_labeling** out) {
    return guard([&] {
        need(inst, "instance");
        need(json, "json");
        need(out, "out");
        *out = nullptr;
        *out = wrap_labeling(resil::io::parse_labeling(json, inst->inst), inst->inst.m);
    });
}

int rs_labeling_to_json(const rs_instance* inst, const rs_labeling* lab, char** json_out) {
    return guard([&] {
        need(inst, "instance");
        need(lab, "labeling");
        need(json_out, "json_out");
        *json_out = dup_string(resil::io::labeling_to_json(lab->lab, inst->inst));
    });
}

void rs_labeling_free(rs_labeling* lab) {
    delete lab;
}

int rs_policy_parse(const rs_instance* inst, const char* json, rs_policy** out) {
    return guard([&] {
        need(inst, "instance");
        need(json, "json");
        need(out, "out");
        *out = nullptr;
        *out = new rs_policy{resil::io::parse_policy(json, inst->inst)};
    });
}

int rs_policy_to_json(const rs_policy* policy, char** json_out) {
    return guard([&] {
        need(policy, "policy");
        need(json_out, "json_out");
        *json_out = dup_string(resil::io::policy_to_json(policy->policy));
    });
}

size_t rs_policy_size(const rs_policy* policy) {
    return policy == nullptr ? 0 : policy->policy.size();
}

void rs_policy_free(rs_policy* policy) {
    delete policy;
}

int rs_solve(const rs_instance* inst, const rs_labeling* lab, int solver, int* solvable, rs_policy** policy_out) {
    return guard([&] {
        need(inst, "instance");
        need(lab, "labeling");
        need(solvable, "solvable");
        if (solver != RS_SOLVER_COUNTER && solver != RS_SOLVER_NAIVE) {
            throw resil::Error(resil::ErrorCode::InvalidArgument, "unknown solver");
        }
        auto result = solver == RS_SOLVER_NAIVE ? resil::solve_rpcp(inst->inst, lab->part)
                                                : resil::counter_based_attractor(inst->inst, lab->part);
        *solvable = result.solvable ? 1 : 0;
        if (policy_out != nullptr) {
            *policy_out = new rs_policy{std::move(result.policy)};
        }
    });
}

int rs_verify(const rs_instance* inst, const rs_labeling* lab, const rs_policy* policy, int* ok, char** report_json) {
    return guard([&] {
        need(inst, "instance");
        need(lab, "labeling");
        need(ok, "ok");
        const auto& in = inst->inst;
        const auto game = resil::counter_based_attractor(in, lab->part);
        nlohmann::json doc;
        doc["partition_solvable"] = game.solvable;
        doc["winning_set_size"] = game.winning_set().size();
        bool good = game.solvable;
        if (game.solvable) {
            // The winning set is an invariant subgraph; the labeling must cover it.
            const auto g = resil::build_induced(game.winning_set(), in.controls);
            const auto v = resil::verify_labeling(g, lab->lab, in.x0, in.m);
            doc["labels_cover_winning_set"] = v.ok;
            good = good && v.ok;
        }
        if (policy != nullptr) {
            const auto check = resil::check_policy(in, lab->part, policy->policy);
            doc["policy_ok"] = check.ok;
            doc["policy_domain_size"] = policy->policy.size();
            if (!check.ok) {
                doc["policy_problem"] = check.problem;
            }
            good = good && check.ok;
        }
        doc["ok"] = good;
        *ok = good ? 1 : 0;
        if (report_json != nullptr) {
            *report_json = dup_string(doc.dump(2) + "\n");
        }
    });
}

void rs_synth_config_default(rs_synth_config* config) {
    if (config == nullptr) {
        return;
    }
    const resil::SynthesisConfig d;
    config->seeds = d.seeds;
    config->seed = d.seed;
    config->oracle_cap = d.oracle_cap;
    config->use_oracle = d.use_oracle ? 1 : 0;
}

namespace {
resil::SynthesisConfig to_config(const rs_synth_config* c) {
    resil::SynthesisConfig cfg;
    if (c != nullptr) {
        cfg.seeds = c->seeds;
        cfg.seed = c->seed;
        cfg.oracle_cap = c->oracle_cap;
        cfg.use_oracle = c->use_oracle != 0;
    }
    return cfg;
}
}  // namespace

int rs_synthesize(const rs_instance* inst, const rs_synth_config* config, rs_outcome** out) {
    return guard([&] {
        need(inst, "instance");
        need(out, "out");
        *out = nullptr;
        *out = new rs_outcome{resil::synthesize_fpcp(inst->inst, to_config(config))};
    });
}

int rs_outcome_status(const rs_outcome* outcome) {
    if (outcome == nullptr) {
        return RS_UNKNOWN;
    }
    switch (outcome->out.status) {
        case resil::SynthesisStatus::Solved: return RS_SOLVED;
        case resil::SynthesisStatus::InfeasibleProven: return RS_INFEASIBLE;
        case resil::SynthesisStatus::Unknown: return RS_UNKNOWN;
    }
    return RS_UNKNOWN;
}

int rs_outcome_labeling(const rs_outcome* outcome, rs_labeling** out) {
    return guard([&] {
        need(outcome, "outcome");
        need(out, "out");
        *out = nullptr;
        if (!outcome->out.labeling) {
            throw resil::Error(resil::ErrorCode::PreconditionViolated, "outcome carries no labeling");
        }
        *out = new rs_labeling{*outcome->out.labeling, *outcome->out.partition};
    });
}

int rs_outcome_policy(const rs_outcome* outcome, rs_policy** out) {
    return guard([&] {
        need(outcome, "outcome");
        need(out, "out");
        *out = nullptr;
        if (!outcome->out.policy) {
            throw resil::Error(resil::ErrorCode::PreconditionViolated, "outcome carries no policy");
        }
        *out = new rs_policy{*outcome->out.policy};
    });
}

int rs_outcome_report(const rs_outcome* outcome, char** json_out) {
    return guard([&] {
        need(outcome, "outcome");
        need(json_out, "json_out");
        *json_out = dup_string(resil::io::outcome_report_to_json(outcome->out));
    });
}

void rs_outcome_free(rs_outcome* outcome) {
    delete outcome;
}

int rs_oracle_fpcp(const rs_instance* inst, uint64_t cap, int* solvable, uint64_t* examined, rs_labeling** witness) {
    return guard([&] {
        need(inst, "instance");
        need(solvable, "solvable");
        const auto verdict = resil::oracle::exhaustive_fpcp(inst->inst, cap);
        *solvable = verdict.solvable ? 1 : 0;
        if (examined != nullptr) {
            *examined = verdict.examined;
        }
        if (witness != nullptr) {
            *witness = verdict.witness ? wrap_labeling(*verdict.witness, inst->inst.m) : nullptr;
        }
    });
}

int rs_oracle_game_tree(const rs_instance* inst, const rs_labeling* lab, size_t depth, int* solvable) {
    return guard([&] {
        need(inst, "instance");
        need(lab, "labeling");
        need(solvable, "solvable");
        const auto d = depth == 0 ? inst->inst.safe.size() + 1 : depth;
        *solvable = resil::oracle::game_tree_rpcp(inst->inst, lab->part, d) ? 1 : 0;
    });
}

int rs_simulate(const rs_instance* inst, const rs_labeling* lab, const rs_policy* policy,
                const rs_adversary* adversary, size_t steps, rs_line_fn sink, void* sink_user, int* safe,
                size_t* violation_step) {
    return guard([&] {
        need(inst, "instance");
        need(lab, "labeling");
        need(policy, "policy");
        need(adversary, "adversary");
        need(safe, "safe");
        const auto& in = inst->inst;
        resil::check_partition(in, lab->part);
        auto label_in_range = [&](int d) {
            if (d < 1 || d > in.m) {
                throw resil::Error(resil::ErrorCode::InvalidArgument,
                                   "adversary label " + std::to_string(d) + " outside [1, " + std::to_string(in.m) + "]");
            }
            return static_cast<resil::Label>(d - 1);
        };
        std::unique_ptr<resil::sim::Adversary> adv;
        switch (adversary->kind) {
            case RS_ADV_CONSTANT:
                adv = std::make_unique<resil::sim::ConstantAdversary>(label_in_range(adversary->label));
                break;
            case RS_ADV_UNIFORM:
                adv = std::make_unique<resil::sim::UniformAdversary>(in.m, adversary->seed);
                break;
            case RS_ADV_SCRIPTED: {
                if (adversary->script == nullptr && adversary->script_len > 0) {
                    throw resil::Error(resil::ErrorCode::InvalidArgument, "script is null");
                }
                std::vector<resil::Label> script;
                for (std::size_t i = 0; i < adversary->script_len; ++i) {
                    script.push_back(label_in_range(adversary->script[i]));
                }
                adv = std::make_unique<resil::sim::ScriptedAdversary>(std::move(script));
                break;
            }
            case RS_ADV_GREEDY:
                adv = std::make_unique<resil::sim::GreedyEscapeAdversary>(in, lab->part, policy->policy);
                break;
            case RS_ADV_CALLBACK: {
                need(reinterpret_cast<const void*>(adversary->callback), "callback");
                auto fn = adversary->callback;
                auto* user = adversary->callback_user;
                const int m = in.m;
                adv = std::make_unique<resil::sim::CallbackAdversary>(
                    [fn, user, m](const resil::IntVector& x, std::size_t t) {
                        const int d = fn(user, x.coords().data(), x.size(), t);
                        if (d < 1 || d > m) {
                            throw Cancelled{};
                        }
                        return static_cast<resil::Label>(d - 1);
                    });
                break;
            }
            default:
                throw resil::Error(resil::ErrorCode::InvalidArgument, "unknown adversary kind");
        }
        resil::sim::RunOptions options;
        if (sink != nullptr) {
            options.sink = [&](std::size_t t, const resil::IntVector& x, const std::optional<resil::sim::Step>& in_step) {
                nlohmann::json line{{"t", t}, {"state", coords(x)}};
                if (in_step) {
                    line["d"] = in_step->d + 1;
                    line["u"] = coords(in.controls[in_step->control]);
                }
                sink(sink_user, line.dump().c_str());
            };
        }
        const auto traj = resil::sim::run(in, lab->part, policy->policy, *adv, steps, options);
        *safe = traj.safe ? 1 : 0;
        if (violation_step != nullptr) {
            *violation_step = traj.first_violation.value_or(steps);
        }
    });
}

int rs_render_board(const rs_instance* inst, const rs_policy* policy, const int64_t* state, size_t n, char** text_out) {
    return guard([&] {
        need(inst, "instance");
        need(policy, "policy");
        need(state, "state");
        need(text_out, "text_out");
        resil::IntVector x(std::vector<std::int64_t>(state, state + n));
        *text_out = dup_string(resil::sim::render_board(inst->inst, policy->policy, x));
    });
}

int rs_code_design(size_t n, int m, int64_t k, const rs_synth_config* config, rs_code** out, int* verdict) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        auto attempt = resil::rds::try_design_code(n, m, k, to_config(config));
        if (verdict != nullptr) {
            *verdict = attempt.status == resil::SynthesisStatus::Solved           ? RS_SOLVED
                       : attempt.status == resil::SynthesisStatus::InfeasibleProven ? RS_INFEASIBLE
                                                                                  : RS_UNKNOWN;
        }
        if (!attempt.design) {
            throw resil::Error(resil::ErrorCode::DesignNotFound,
                               std::string("no code with RDS bound ") + std::to_string(k) + " found (" +
                                   resil::to_string(attempt.status) + ")");
        }
        *out = new rs_code{std::move(*attempt.design)};
    });
}

int rs_code_parse(const char* json, rs_code** out) {
    return guard([&] {
        need(json, "json");
        need(out, "out");
        *out = nullptr;
        *out = new rs_code{resil::io::parse_code(json)};
    });
}

int rs_code_to_json(const rs_code* code, char** json_out) {
    return guard([&] {
        need(code, "code");
        need(json_out, "json_out");
        *json_out = dup_string(resil::io::code_to_json(code->design));
    });
}

size_t rs_code_length(const rs_code* code) {
    return code == nullptr ? 0 : code->design.n;
}

int rs_code_message_count(const rs_code* code) {
    return code == nullptr ? 0 : code->design.m;
}

void rs_code_free(rs_code* code) {
    delete code;
}

int rs_encoder_new(const rs_code* code, rs_encoder** out) {
    return guard([&] {
        need(code, "code");
        need(out, "out");
        *out = nullptr;
        *out = new rs_encoder{resil::rds::Encoder(code->design), code->design.n};
    });
}

int rs_encoder_encode(rs_encoder* enc, int message, char* bits_out, size_t bits_cap) {
    return guard([&] {
        need(enc, "encoder");
        need(bits_out, "bits_out");
        if (bits_cap < enc->n + 1) {
            throw resil::Error(resil::ErrorCode::InvalidArgument, "output buffer too small");
        }
        const auto k = enc->enc.encode(message - 1);
        // Codeword index k spells its own bit string.
        for (std::size_t i = 0; i < enc->n; ++i) {
            bits_out[i] = ((k >> (enc->n - 1 - i)) & 1U) != 0 ? '1' : '0';
        }
        bits_out[enc->n] = '\0';
    });
}

int rs_encoder_rds(const rs_encoder* enc, int64_t* rds_out, size_t n) {
    return guard([&] {
        need(enc, "encoder");
        need(rds_out, "rds_out");
        if (n != enc->n) {
            throw resil::Error(resil::ErrorCode::DimensionMismatch, "buffer length differs from code length");
        }
        const auto& r = enc->enc.rds();
        for (std::size_t i = 0; i < n; ++i) {
            rds_out[i] = r[i];
        }
    });
}

void rs_encoder_free(rs_encoder* enc) {
    delete enc;
}

int rs_decoder_new(const rs_code* code, rs_decoder** out) {
    return guard([&] {
        need(code, "code");
        need(out, "out");
        *out = nullptr;
        *out = new rs_decoder{resil::rds::Decoder(code->design)};
    });
}

int rs_decoder_decode(rs_decoder* dec, const char* bits, int* message) {
    return guard([&] {
        need(dec, "decoder");
        need(bits, "bits");
        need(message, "message");
        const auto w = resil::rds::from_bits(bits, dec->dec.rds().size());
        *message = dec->dec.decode(w) + 1;
    });
}

int rs_decoder_decode_vector(rs_decoder* dec, const int64_t* word, size_t n, int* message) {
    return guard([&] {
        need(dec, "decoder");
        need(word, "word");
        need(message, "message");
        *message = dec->dec.decode(resil::IntVector(std::vector<std::int64_t>(word, word + n))) + 1;
    });
}

void rs_decoder_free(rs_decoder* dec) {
    delete dec;
}

}  // extern "C"
