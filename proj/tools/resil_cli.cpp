// resil: command-line front end over the C API in resil/resil.h.
//
// Exit codes: 0 success / SOLVED, 1 unsolvable / INFEASIBLE_PROVEN / unsafe,
// 2 UNKNOWN, 3 usage or I/O error.

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "resil/resil.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNo = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 3;

constexpr const char* kInstanceSchema = R"(instance file:
  {"n": 2, "x0": [0, 0], "m": 2,
   "controls": [[1, 0], [-1, 0], [0, 1], [0, -1], [0, 0]],
   "safe_set": {"type": "inf_ball", "k": 1}}
  safe_set.type is inf_ball or one_ball (with integer "k") or explicit
  (with "points": [[..], ..]).)";

constexpr const char* kPartitionSchema = R"(partition file:
  {"labels": {"1,0": 1, "-1,0": 1, "0,1": 2, "0,-1": 2, "0,0": 2}}
  one entry per control, labels in [1, m].)";

constexpr const char* kPolicySchema = R"(policy file:
  {"winning_set": [[0, 0], ..], "policy": {"0,0|1": "0", ..}}
  keys are "<state>|<label>", values are 0-based control indices.)";

constexpr const char* kCodeSchema = R"(code file:
  {"n", "m", "k", "method", "codewords": ["00", ..], "messages": {"00": 1, ..},
   "shat": [[..], ..], "encoder": {"<rds state>|<message>": "<bits>", ..}})";

// Raised for anything that should end the process with a message.
struct Exit {
    int code;
    std::string message;
};

template <typename T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};

using Instance = std::unique_ptr<rs_instance, Deleter<rs_instance, rs_instance_free>>;
using Labeling = std::unique_ptr<rs_labeling, Deleter<rs_labeling, rs_labeling_free>>;
using PolicyH = std::unique_ptr<rs_policy, Deleter<rs_policy, rs_policy_free>>;
using Outcome = std::unique_ptr<rs_outcome, Deleter<rs_outcome, rs_outcome_free>>;
using Code = std::unique_ptr<rs_code, Deleter<rs_code, rs_code_free>>;
using EncoderH = std::unique_ptr<rs_encoder, Deleter<rs_encoder, rs_encoder_free>>;
using DecoderH = std::unique_ptr<rs_decoder, Deleter<rs_decoder, rs_decoder_free>>;

std::string take(char* s) {
    std::string out = s == nullptr ? std::string() : std::string(s);
    rs_string_free(s);
    return out;
}

[[noreturn]] void fail_status(int status, const std::string& context, const char* schema = nullptr) {
    std::string msg = context + ": " + rs_status_name(status) + ": " + rs_last_error();
    if (schema != nullptr && (status == RS_E_PARSE || status == RS_E_DIMENSION_MISMATCH)) {
        msg += "\n\nexpected ";
        msg += schema;
    }
    throw Exit{kExitUsage, msg};
}

void check(int status, const std::string& context, const char* schema = nullptr) {
    if (status != RS_OK) {
        fail_status(status, context, schema);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Exit{kExitUsage, "cannot read " + path};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw Exit{kExitUsage, "cannot write " + path.string()};
    }
}

Instance load_instance(const std::string& path) {
    const auto text = read_file(path);
    rs_instance* raw = nullptr;
    check(rs_instance_parse(text.c_str(), &raw), path, kInstanceSchema);
    return Instance(raw);
}

Labeling load_labeling(const rs_instance* inst, const std::string& path) {
    const auto text = read_file(path);
    rs_labeling* raw = nullptr;
    check(rs_labeling_parse(inst, text.c_str(), &raw), path, kPartitionSchema);
    return Labeling(raw);
}

PolicyH load_policy(const rs_instance* inst, const std::string& path) {
    const auto text = read_file(path);
    rs_policy* raw = nullptr;
    check(rs_policy_parse(inst, text.c_str(), &raw), path, kPolicySchema);
    return PolicyH(raw);
}

Code load_code(const std::string& path) {
    const auto text = read_file(path);
    rs_code* raw = nullptr;
    check(rs_code_parse(text.c_str(), &raw), path, kCodeSchema);
    return Code(raw);
}

// An explicit flag wins; otherwise RP_ORACLE_CAP; otherwise the default.
std::int64_t resolve_cap(const CLI::Option* flag, std::int64_t flag_value, std::int64_t fallback) {
    if (flag != nullptr && flag->count() > 0) {
        return flag_value;
    }
    if (const char* env = std::getenv("RP_ORACLE_CAP"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        errno = 0;
        const long long v = std::strtoll(env, &end, 10);
        if (errno != 0 || end == env || *end != '\0' || v <= 0) {
            throw Exit{kExitUsage, std::string("RP_ORACLE_CAP must be a positive integer, got '") + env + "'"};
        }
        return v;
    }
    return fallback;
}

int verdict_exit(int verdict) {
    switch (verdict) {
        case RS_SOLVED: return kExitOk;
        case RS_INFEASIBLE: return kExitNo;
        default: return kExitUnknown;
    }
}

const char* verdict_name(int verdict) {
    switch (verdict) {
        case RS_SOLVED: return "SOLVED";
        case RS_INFEASIBLE: return "INFEASIBLE_PROVEN";
        default: return "UNKNOWN";
    }
}

struct Options {
    std::string instance;
    std::string partition;
    std::string policy;
    std::string out;
    std::string solver = "counter";
    std::string adversary = "random";
    std::string script;
    std::string code;
    std::int64_t seeds = 32;
    std::uint64_t seed = 0;
    std::int64_t oracle_cap = 1'000'000;
    std::size_t steps = 100;
    std::size_t depth = 0;
    int label = 1;
    bool no_oracle = false;
    bool quiet = false;
    std::size_t rds_n = 0;
    int rds_m = 0;
    std::int64_t rds_k = 2;
};

int cmd_validate(const Options& o) {
    auto inst = load_instance(o.instance);
    char* report = nullptr;
    check(rs_instance_report(inst.get(), &report), "report");
    std::cout << take(report);
    return kExitOk;
}

int cmd_solve(const Options& o) {
    auto inst = load_instance(o.instance);
    auto lab = load_labeling(inst.get(), o.partition);
    int solvable = 0;
    rs_policy* raw = nullptr;
    check(rs_solve(inst.get(), lab.get(), o.solver == "naive" ? RS_SOLVER_NAIVE : RS_SOLVER_COUNTER, &solvable, &raw),
          "solve");
    PolicyH policy(raw);
    std::cout << (solvable != 0 ? "SOLVABLE" : "UNSOLVABLE") << " winning_set=" << rs_policy_size(policy.get()) << "\n";
    if (!o.out.empty()) {
        char* json = nullptr;
        check(rs_policy_to_json(policy.get(), &json), "policy");
        write_file(o.out, take(json));
    }
    return solvable != 0 ? kExitOk : kExitNo;
}

int cmd_synthesize(const Options& o, const CLI::Option* cap_flag) {
    auto inst = load_instance(o.instance);
    rs_synth_config cfg;
    rs_synth_config_default(&cfg);
    cfg.seeds = o.seeds;
    cfg.seed = o.seed;
    cfg.oracle_cap = resolve_cap(cap_flag, o.oracle_cap, cfg.oracle_cap);
    cfg.use_oracle = o.no_oracle ? 0 : 1;
    rs_outcome* raw = nullptr;
    check(rs_synthesize(inst.get(), &cfg, &raw), "synthesize");
    Outcome outcome(raw);
    const int verdict = rs_outcome_status(outcome.get());
    char* report = nullptr;
    check(rs_outcome_report(outcome.get(), &report), "report");
    const auto report_text = take(report);

    std::string partition_text;
    std::string policy_text;
    if (verdict == RS_SOLVED) {
        rs_labeling* lab_raw = nullptr;
        check(rs_outcome_labeling(outcome.get(), &lab_raw), "labeling");
        Labeling lab(lab_raw);
        char* json = nullptr;
        check(rs_labeling_to_json(inst.get(), lab.get(), &json), "labeling");
        partition_text = take(json);
        rs_policy* pol_raw = nullptr;
        check(rs_outcome_policy(outcome.get(), &pol_raw), "policy");
        PolicyH policy(pol_raw);
        check(rs_policy_to_json(policy.get(), &json), "policy");
        policy_text = take(json);
    }

    std::cout << verdict_name(verdict) << "\n";
    if (!o.quiet) {
        std::cout << report_text;
        std::cout << partition_text;
    }
    if (!o.out.empty()) {
        const std::filesystem::path dir(o.out);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) {
            throw Exit{kExitUsage, "cannot create " + dir.string() + ": " + ec.message()};
        }
        write_file(dir / "report.json", report_text);
        if (verdict == RS_SOLVED) {
            write_file(dir / "partition.json", partition_text);
            write_file(dir / "policy.json", policy_text);
        }
    }
    return verdict_exit(verdict);
}

int cmd_verify(const Options& o) {
    auto inst = load_instance(o.instance);
    auto lab = load_labeling(inst.get(), o.partition);
    PolicyH policy;
    if (!o.policy.empty()) {
        policy = load_policy(inst.get(), o.policy);
    }
    int ok = 0;
    char* report = nullptr;
    check(rs_verify(inst.get(), lab.get(), policy.get(), &ok, &report), "verify");
    std::cout << take(report);
    return ok != 0 ? kExitOk : kExitNo;
}

struct Interactive {
    const rs_instance* inst;
    const rs_policy* policy;
};

int ask_label(void* user, const int64_t* state, size_t n, size_t t) {
    const auto* ctx = static_cast<const Interactive*>(user);
    if (n <= 2) {
        char* board = nullptr;
        if (rs_render_board(ctx->inst, ctx->policy, state, n, &board) == RS_OK) {
            std::cerr << take(board);
        }
    }
    std::cerr << "t=" << t << " label in [1, " << rs_instance_label_count(ctx->inst) << "] (q to stop)> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) {
        return 0;
    }
    try {
        return std::stoi(line);
    } catch (const std::exception&) {
        return 0;
    }
}

void print_line(void*, const char* line) {
    std::cout << line << "\n";
}

std::vector<int> parse_script(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw Exit{kExitUsage, "--script must be a comma-separated list of labels"};
        }
    }
    if (out.empty()) {
        throw Exit{kExitUsage, "--script is required for the scripted adversary"};
    }
    return out;
}

int cmd_simulate(const Options& o) {
    auto inst = load_instance(o.instance);
    auto lab = load_labeling(inst.get(), o.partition);
    auto policy = load_policy(inst.get(), o.policy);

    rs_adversary adv{};
    std::vector<int> script;
    Interactive ctx{inst.get(), policy.get()};
    if (o.adversary == "constant") {
        adv.kind = RS_ADV_CONSTANT;
        adv.label = o.label;
    } else if (o.adversary == "random") {
        adv.kind = RS_ADV_UNIFORM;
        adv.seed = o.seed;
    } else if (o.adversary == "scripted") {
        adv.kind = RS_ADV_SCRIPTED;
        script = parse_script(o.script);
        adv.script = script.data();
        adv.script_len = script.size();
    } else if (o.adversary == "greedy") {
        adv.kind = RS_ADV_GREEDY;
    } else {
        adv.kind = RS_ADV_CALLBACK;
        adv.callback = ask_label;
        adv.callback_user = &ctx;
    }
    int safe = 0;
    std::size_t violation = 0;
    const int status =
        rs_simulate(inst.get(), lab.get(), policy.get(), &adv, o.steps, print_line, nullptr, &safe, &violation);
    if (status == RS_E_CANCELLED) {
        std::cerr << "stopped\n";
        return kExitOk;
    }
    check(status, "simulate");
    std::cout << "{\"safe\":" << (safe != 0 ? "true" : "false") << ",\"steps\":" << o.steps;
    if (safe == 0) {
        std::cout << ",\"violation_at\":" << violation;
    }
    std::cout << "}\n";
    return safe != 0 ? kExitOk : kExitNo;
}

int cmd_oracle(const Options& o, const CLI::Option* cap_flag) {
    auto inst = load_instance(o.instance);
    if (!o.partition.empty()) {
        auto lab = load_labeling(inst.get(), o.partition);
        int solvable = 0;
        check(rs_oracle_game_tree(inst.get(), lab.get(), o.depth, &solvable), "game tree");
        std::cout << (solvable != 0 ? "SOLVABLE" : "UNSOLVABLE") << "\n";
        return solvable != 0 ? kExitOk : kExitNo;
    }
    const auto cap = resolve_cap(cap_flag, o.oracle_cap, 1'000'000);
    int solvable = 0;
    std::uint64_t examined = 0;
    rs_labeling* raw = nullptr;
    const int status = rs_oracle_fpcp(inst.get(), static_cast<std::uint64_t>(cap), &solvable, &examined, &raw);
    if (status == RS_E_CAP_EXCEEDED) {
        std::cout << "UNKNOWN\n";
        std::cerr << rs_last_error() << "\n";
        return kExitUnknown;
    }
    check(status, "oracle");
    Labeling witness(raw);
    std::cout << (solvable != 0 ? "SOLVED" : "INFEASIBLE_PROVEN") << " examined=" << examined << "\n";
    if (witness) {
        char* json = nullptr;
        check(rs_labeling_to_json(inst.get(), witness.get(), &json), "witness");
        const auto text = take(json);
        std::cout << text;
        if (!o.out.empty()) {
            write_file(o.out, text);
        }
    }
    return solvable != 0 ? kExitOk : kExitNo;
}

int cmd_rds_design(const Options& o) {
    rs_synth_config cfg;
    rs_synth_config_default(&cfg);
    cfg.seeds = o.seeds;
    cfg.seed = o.seed;
    cfg.oracle_cap = resolve_cap(nullptr, 0, cfg.oracle_cap);
    rs_code* raw = nullptr;
    int verdict = RS_UNKNOWN;
    const int status = rs_code_design(o.rds_n, o.rds_m, o.rds_k, &cfg, &raw, &verdict);
    if (status == RS_E_DESIGN_NOT_FOUND) {
        std::cout << verdict_name(verdict) << "\n";
        std::cerr << rs_last_error() << "\n";
        return verdict_exit(verdict);
    }
    check(status, "rds design");
    Code code(raw);
    char* json = nullptr;
    check(rs_code_to_json(code.get(), &json), "code");
    const auto text = take(json);
    std::cout << "SOLVED\n";
    if (o.out.empty()) {
        std::cout << text;
    } else {
        write_file(o.out, text);
    }
    return kExitOk;
}

int cmd_rds_encode(const Options& o) {
    auto code = load_code(o.code);
    rs_encoder* raw = nullptr;
    check(rs_encoder_new(code.get(), &raw), "encoder");
    EncoderH enc(raw);
    std::vector<char> bits(rs_code_length(code.get()) + 1);
    std::string token;
    while (std::cin >> token) {
        int msg = 0;
        try {
            std::size_t used = 0;
            msg = std::stoi(token, &used);
            if (used != token.size()) {
                throw std::invalid_argument(token);
            }
        } catch (const std::exception&) {
            throw Exit{kExitUsage, "message '" + token + "' is not an integer"};
        }
        check(rs_encoder_encode(enc.get(), msg, bits.data(), bits.size()), "encode");
        std::cout << bits.data() << "\n";
    }
    return kExitOk;
}

int cmd_rds_decode(const Options& o) {
    auto code = load_code(o.code);
    rs_decoder* raw = nullptr;
    check(rs_decoder_new(code.get(), &raw), "decoder");
    DecoderH dec(raw);
    std::string token;
    while (std::cin >> token) {
        int msg = 0;
        check(rs_decoder_decode(dec.get(), token.c_str(), &msg), "decode");
        std::cout << msg << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resilient control synthesis for driftless systems with adversarial input partitions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(rs_version()));
    Options o;

    auto* validate = app.add_subcommand("validate", "Parse and validate an instance; print its condition report");
    validate->add_option("-i,--instance", o.instance, "Instance JSON")->required();

    auto* solve = app.add_subcommand("solve", "Solve the safety game for a fixed partition");
    solve->add_option("-i,--instance", o.instance, "Instance JSON")->required();
    solve->add_option("-p,--partition", o.partition, "Partition JSON")->required();
    solve->add_option("--solver", o.solver, "Game solver")->check(CLI::IsMember({"counter", "naive"}));
    solve->add_option("-o,--out", o.out, "Write the winning-set policy here");

    auto* synth = app.add_subcommand("synthesize", "Choose a partition and policy that keep the state safe");
    synth->add_option("-i,--instance", o.instance, "Instance JSON")->required();
    synth->add_option("--seeds", o.seeds, "Random labelings tried per candidate subgraph")->check(CLI::NonNegativeNumber);
    synth->add_option("--seed", o.seed, "Base seed for randomized steps");
    auto* synth_cap = synth->add_option("--oracle-cap", o.oracle_cap, "Largest m^|U| enumerated exhaustively")
                          ->check(CLI::PositiveNumber);
    synth->add_flag("--no-oracle", o.no_oracle, "Never fall back to exhaustive search");
    synth->add_flag("-q,--quiet", o.quiet, "Print the verdict only");
    synth->add_option("-o,--out", o.out, "Directory for partition.json, policy.json and report.json");

    auto* verify = app.add_subcommand("verify", "Check a partition, and optionally a policy, against an instance");
    verify->add_option("-i,--instance", o.instance, "Instance JSON")->required();
    verify->add_option("-p,--partition", o.partition, "Partition JSON")->required();
    verify->add_option("--policy", o.policy, "Policy JSON");

    auto* simulate = app.add_subcommand("simulate", "Replay a policy against an adversary; prints JSON lines");
    simulate->add_option("-i,--instance", o.instance, "Instance JSON")->required();
    simulate->add_option("-p,--partition", o.partition, "Partition JSON")->required();
    simulate->add_option("--policy", o.policy, "Policy JSON")->required();
    simulate->add_option("--adversary", o.adversary, "Adversary")
        ->check(CLI::IsMember({"constant", "random", "scripted", "greedy", "interactive"}));
    simulate->add_option("--label", o.label, "Label for the constant adversary");
    simulate->add_option("--script", o.script, "Comma-separated labels for the scripted adversary");
    simulate->add_option("--steps", o.steps, "Number of steps");
    simulate->add_option("--seed", o.seed, "Seed for the random adversary");

    auto* oracle = app.add_subcommand("oracle", "Exhaustive FPCP search, or game-tree search with --partition");
    oracle->add_option("-i,--instance", o.instance, "Instance JSON")->required();
    oracle->add_option("-p,--partition", o.partition, "Decide this partition by game-tree search instead");
    oracle->add_option("--depth", o.depth, "Game-tree depth (0 means |S| + 1)");
    auto* oracle_cap = oracle->add_option("--cap", o.oracle_cap, "Largest m^|U| enumerated")->check(CLI::PositiveNumber);
    oracle->add_option("-o,--out", o.out, "Write the witness partition here");

    auto* rds = app.add_subcommand("rds", "Block codes with bounded running digital sum");
    rds->require_subcommand(1);
    auto* design = rds->add_subcommand("design", "Design a code");
    design->add_option("--n", o.rds_n, "Codeword length")->required();
    design->add_option("--m", o.rds_m, "Number of messages")->required();
    design->add_option("--k", o.rds_k, "RDS bound");
    design->add_option("--seeds", o.seeds, "Random labelings tried per candidate subgraph")->check(CLI::NonNegativeNumber);
    design->add_option("--seed", o.seed, "Base seed for randomized steps");
    design->add_option("-o,--out", o.out, "Write code JSON here");
    auto* encode = rds->add_subcommand("encode", "Read messages from stdin, write codewords");
    encode->add_option("--code", o.code, "Code JSON")->required();
    auto* decode = rds->add_subcommand("decode", "Read codewords from stdin, write messages");
    decode->add_option("--code", o.code, "Code JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*validate) return cmd_validate(o);
        if (*solve) return cmd_solve(o);
        if (*synth) return cmd_synthesize(o, synth_cap);
        if (*verify) return cmd_verify(o);
        if (*simulate) return cmd_simulate(o);
        if (*oracle) return cmd_oracle(o, oracle_cap);
        if (*design) return cmd_rds_design(o);
        if (*encode) return cmd_rds_encode(o);
        if (*decode) return cmd_rds_decode(o);
    } catch (const Exit& e) {
        std::cerr << e.message << "\n";
        return e.code;
    }
    return kExitUsage;
}
