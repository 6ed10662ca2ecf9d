#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "resil/resil.h"

namespace {

const char* kVehicle = R"({"n":2,"x0":[0,0],"m":2,"controls":[[1,0],[-1,0],[0,1],[0,-1],[0,0]],
  "safe_set":{"type":"inf_ball","k":1}})";
const char* kGood = R"({"labels":{"1,0":1,"-1,0":1,"0,1":2,"0,-1":2,"0,0":2}})";
const char* kBad = R"({"labels":{"1,0":1,"0,1":1,"-1,0":2,"0,-1":2,"0,0":2}})";

std::string take(char* s) {
    std::string out = s == nullptr ? "" : s;
    rs_string_free(s);
    return out;
}

rs_instance* parse(const char* text) {
    rs_instance* inst = nullptr;
    REQUIRE(rs_instance_parse(text, &inst) == RS_OK);
    return inst;
}

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(rs_version()) == "1.0.0");
    CHECK(std::string(rs_status_name(RS_OK)) == "OK");
    CHECK(std::string(rs_status_name(RS_E_PARSE)).size() > 0);
}

TEST_CASE("instance errors surface as codes with a message") {
    rs_instance* inst = nullptr;
    CHECK(rs_instance_parse("{", &inst) == RS_E_PARSE);
    CHECK(inst == nullptr);
    CHECK(std::strlen(rs_last_error()) > 0);
    CHECK(rs_instance_parse(R"({"n":1,"x0":[4],"m":1,"controls":[[0]],"safe_set":{"type":"inf_ball","k":1}})",
                            &inst) == RS_E_X0_NOT_SAFE);
    CHECK(rs_instance_parse(nullptr, &inst) == RS_E_INVALID_ARGUMENT);
}

TEST_CASE("solve and verify fixed partitions") {
    auto* inst = parse(kVehicle);
    CHECK(rs_instance_dimension(inst) == 2);
    CHECK(rs_instance_label_count(inst) == 2);

    rs_labeling* good = nullptr;
    rs_labeling* bad = nullptr;
    REQUIRE(rs_labeling_parse(inst, kGood, &good) == RS_OK);
    REQUIRE(rs_labeling_parse(inst, kBad, &bad) == RS_OK);

    for (int solver : {RS_SOLVER_COUNTER, RS_SOLVER_NAIVE}) {
        int solvable = -1;
        rs_policy* policy = nullptr;
        REQUIRE(rs_solve(inst, good, solver, &solvable, &policy) == RS_OK);
        CHECK(solvable == 1);
        CHECK(rs_policy_size(policy) == 9);
        int ok = 0;
        CHECK(rs_verify(inst, good, policy, &ok, nullptr) == RS_OK);
        CHECK(ok == 1);
        rs_policy_free(policy);

        REQUIRE(rs_solve(inst, bad, solver, &solvable, nullptr) == RS_OK);
        CHECK(solvable == 0);
    }
    int ok = 1;
    char* report = nullptr;
    CHECK(rs_verify(inst, bad, nullptr, &ok, &report) == RS_OK);
    CHECK(ok == 0);
    CHECK(take(report).find("\"partition_solvable\": false") != std::string::npos);

    int wins = -1;
    CHECK(rs_oracle_game_tree(inst, good, 0, &wins) == RS_OK);
    CHECK(wins == 1);
    CHECK(rs_oracle_game_tree(inst, bad, 0, &wins) == RS_OK);
    CHECK(wins == 0);

    rs_labeling_free(good);
    rs_labeling_free(bad);
    rs_instance_free(inst);
}

TEST_CASE("synthesis, outcome accessors and simulation") {
    auto* inst = parse(kVehicle);
    rs_synth_config cfg;
    rs_synth_config_default(&cfg);
    CHECK(cfg.seeds == 32);
    rs_outcome* out = nullptr;
    REQUIRE(rs_synthesize(inst, &cfg, &out) == RS_OK);
    CHECK(rs_outcome_status(out) == RS_SOLVED);

    rs_labeling* lab = nullptr;
    rs_policy* policy = nullptr;
    REQUIRE(rs_outcome_labeling(out, &lab) == RS_OK);
    REQUIRE(rs_outcome_policy(out, &policy) == RS_OK);
    CHECK(take([&] {
              char* s = nullptr;
              rs_outcome_report(out, &s);
              return s;
          }()).find("\"status\": \"SOLVED\"") != std::string::npos);

    rs_adversary adv{};
    adv.kind = RS_ADV_UNIFORM;
    adv.seed = 3;
    int safe = 0;
    size_t at = 0;
    CHECK(rs_simulate(inst, lab, policy, &adv, 10000, nullptr, nullptr, &safe, &at) == RS_OK);
    CHECK(safe == 1);
    CHECK(at == 10000);

    std::vector<std::string> lines;
    adv.kind = RS_ADV_CONSTANT;
    adv.label = 1;
    CHECK(rs_simulate(
              inst, lab, policy, &adv, 3,
              [](void* user, const char* line) { static_cast<std::vector<std::string>*>(user)->push_back(line); },
              &lines, &safe, &at) == RS_OK);
    REQUIRE(lines.size() == 4);
    CHECK(lines.back().find("\"d\"") == std::string::npos);
    CHECK(lines.front().find("\"t\":0") != std::string::npos);

    // A callback returning 0 cancels the run.
    adv.kind = RS_ADV_CALLBACK;
    adv.callback = [](void*, const int64_t*, size_t, size_t t) { return t < 2 ? 1 : 0; };
    CHECK(rs_simulate(inst, lab, policy, &adv, 10, nullptr, nullptr, &safe, &at) == RS_E_CANCELLED);

    adv.kind = RS_ADV_CONSTANT;
    adv.label = 3;
    CHECK(rs_simulate(inst, lab, policy, &adv, 10, nullptr, nullptr, &safe, &at) == RS_E_INVALID_ARGUMENT);

    const int64_t origin[2] = {0, 0};
    char* board = nullptr;
    CHECK(rs_render_board(inst, policy, origin, 2, &board) == RS_OK);
    CHECK(take(board).find('@') != std::string::npos);

    rs_policy_free(policy);
    rs_labeling_free(lab);
    rs_outcome_free(out);
    rs_instance_free(inst);
}

TEST_CASE("unsolved outcomes hold no labeling") {
    auto* inst = parse(R"({"n":2,"x0":[0,0],"m":4,"controls":[[1,0],[-1,0],[0,1],[0,-1],[0,0]],
        "safe_set":{"type":"inf_ball","k":1}})");
    rs_synth_config cfg;
    rs_synth_config_default(&cfg);
    rs_outcome* out = nullptr;
    REQUIRE(rs_synthesize(inst, &cfg, &out) == RS_OK);
    CHECK(rs_outcome_status(out) == RS_INFEASIBLE);
    rs_labeling* lab = nullptr;
    CHECK(rs_outcome_labeling(out, &lab) == RS_E_PRECONDITION);
    rs_outcome_free(out);

    int solvable = -1;
    uint64_t examined = 0;
    CHECK(rs_oracle_fpcp(inst, 1000000, &solvable, &examined, nullptr) == RS_OK);
    CHECK(solvable == 0);
    CHECK(examined == 256);
    CHECK(rs_oracle_fpcp(inst, 10, &solvable, &examined, nullptr) == RS_E_CAP_EXCEEDED);

    cfg.oracle_cap = 0;
    CHECK(rs_synthesize(inst, &cfg, &out) == RS_E_CONFIG);
    rs_instance_free(inst);
}

TEST_CASE("codes through the C interface") {
    rs_code* code = nullptr;
    int verdict = -1;
    REQUIRE(rs_code_design(2, 2, 2, nullptr, &code, &verdict) == RS_OK);
    CHECK(verdict == RS_SOLVED);
    CHECK(rs_code_length(code) == 2);
    CHECK(rs_code_message_count(code) == 2);

    char* text = nullptr;
    REQUIRE(rs_code_to_json(code, &text) == RS_OK);
    rs_code* again = nullptr;
    REQUIRE(rs_code_parse(text, &again) == RS_OK);
    rs_string_free(text);

    rs_encoder* enc = nullptr;
    rs_decoder* dec = nullptr;
    REQUIRE(rs_encoder_new(code, &enc) == RS_OK);
    REQUIRE(rs_decoder_new(again, &dec) == RS_OK);
    char bits[8];
    int64_t rds[2];
    for (int i = 0; i < 1000; ++i) {
        const int msg = 1 + (i * 7 % 3 == 0 ? 1 : 0);
        REQUIRE(rs_encoder_encode(enc, msg, bits, sizeof bits) == RS_OK);
        CHECK(std::strlen(bits) == 2);
        int got = 0;
        REQUIRE(rs_decoder_decode(dec, bits, &got) == RS_OK);
        CHECK(got == msg);
        REQUIRE(rs_encoder_rds(enc, rds, 2) == RS_OK);
        CHECK(rds[0] >= -2);
        CHECK(rds[0] <= 2);
        CHECK(rds[1] >= -2);
        CHECK(rds[1] <= 2);
    }
    CHECK(rs_encoder_encode(enc, 3, bits, sizeof bits) == RS_E_INVALID_ARGUMENT);
    CHECK(rs_encoder_encode(enc, 1, bits, 2) == RS_E_INVALID_ARGUMENT);
    int got = 0;
    CHECK(rs_decoder_decode(dec, "1x", &got) == RS_E_DECODE);
    const int64_t zero[2] = {0, 0};
    CHECK(rs_decoder_decode_vector(dec, zero, 2, &got) == RS_E_DECODE);

    rs_encoder_free(enc);
    rs_decoder_free(dec);
    rs_code_free(again);
    rs_code_free(code);

    CHECK(rs_code_design(1, 1, 0, nullptr, &code, &verdict) == RS_E_DESIGN_NOT_FOUND);
    CHECK(verdict == RS_INFEASIBLE);
    CHECK(code == nullptr);
}
