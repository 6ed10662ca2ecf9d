#pragma once

#include <string>

#include "resil/game.hpp"
#include "resil/labeling.hpp"
#include "resil/rds.hpp"
#include "resil/synthesis.hpp"
#include "resil/types.hpp"

// JSON file formats. Output is pretty-printed with sorted keys so files are
// byte-stable; every parser throws Error(ParseError) on malformed input and
// the usual validation errors on well-formed but invalid content.
namespace resil::io {

/// {"n":2, "x0":[0,0], "controls":[[1,0],...], "m":2,
///  "safe_set":{"type":"inf_ball"|"one_ball"|"explicit", "k":1 | "points":[[..]]}}
Instance parse_instance(const std::string& text);
std::string instance_to_json(const Instance& inst);

/// {"labels":{"1,0":1, ...}} with 1-based labels, one entry per control.
Labeling parse_labeling(const std::string& text, const Instance& inst);
std::string labeling_to_json(const Labeling& lab, const Instance& inst);

/// {"winning_set":[[..]], "policy":{"<state>|<d>":"<control index>"}} with
/// 1-based d and 0-based control indices into the instance's control list.
Policy parse_policy(const std::string& text, const Instance& inst);
std::string policy_to_json(const Policy& policy);

std::string condition_report_to_json(const ConditionReport& report);
std::string outcome_report_to_json(const SynthesisOutcome& outcome);

/// {"n","m","k","method","codewords":["00",..],"messages":{"00":1,..},
///  "shat":[[..]],"encoder":{"<state>|<message>":"<bits>"}}
rds::CodeDesign parse_code(const std::string& text);
std::string code_to_json(const rds::CodeDesign& design);

}  // namespace resil::io
