#include "resil/io.hpp"

#include <algorithm>
#include <limits>

#include <json.hpp>

namespace resil::io {

using nlohmann::json;

namespace {

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
}

template <typename F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("unexpected JSON shape: ") + e.what());
    }
}

const json& require(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    }
    return obj.at(key);
}

std::int64_t as_int(const json& v, const char* what) {
    if (!v.is_number_integer()) {
        throw Error(ErrorCode::ParseError, std::string(what) + " must be an integer");
    }
    return v.get<std::int64_t>();
}

IntVector as_vector(const json& v, const char* what) {
    if (!v.is_array()) {
        throw Error(ErrorCode::ParseError, std::string(what) + " must be an array of integers");
    }
    std::vector<std::int64_t> coords;
    coords.reserve(v.size());
    for (const auto& c : v) {
        coords.push_back(as_int(c, what));
    }
    return IntVector(std::move(coords));
}

json vector_json(const IntVector& v) {
    return json(std::vector<std::int64_t>(v.coords().begin(), v.coords().end()));
}

std::string dump(const json& j) {
    return j.dump(2) + "\n";
}

// "<state>|<d>" keys shared by policy and encoder tables.
std::pair<IntVector, long long> split_state_key(const std::string& key) {
    const auto bar = key.find('|');
    if (bar == std::string::npos) {
        throw Error(ErrorCode::ParseError, "table key '" + key + "' lacks '|'");
    }
    const auto state = IntVector::from_key(key.substr(0, bar));
    const auto tail = key.substr(bar + 1);
    std::size_t used = 0;
    long long d = 0;
    try {
        d = std::stoll(tail, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != tail.size()) {
        throw Error(ErrorCode::ParseError, "table key '" + key + "' has a malformed label");
    }
    return {state, d};
}

}  // namespace

Instance parse_instance(const std::string& text) {
    const auto doc = parse_text(text);
    return guarded([&] {
        Instance inst;
        const auto n = as_int(require(doc, "n"), "n");
        if (n < 1) {
            throw Error(ErrorCode::DimensionMismatch, "n must be at least 1");
        }
        inst.n = static_cast<std::size_t>(n);
        inst.x0 = as_vector(require(doc, "x0"), "x0");
        const auto& controls = require(doc, "controls");
        if (!controls.is_array()) {
            throw Error(ErrorCode::ParseError, "controls must be an array");
        }
        std::vector<IntVector> us;
        for (const auto& u : controls) {
            us.push_back(as_vector(u, "control"));
        }
        inst.controls = ControlSet(std::move(us));
        const auto m = as_int(require(doc, "m"), "m");
        if (m < 1 || m > std::numeric_limits<int>::max()) {
            throw Error(ErrorCode::InvalidArgument, "m must be a positive integer");
        }
        inst.m = static_cast<int>(m);
        const auto& safe = require(doc, "safe_set");
        const auto& type = require(safe, "type");
        if (!type.is_string()) {
            throw Error(ErrorCode::ParseError, "safe_set.type must be a string");
        }
        const auto kind = type.get<std::string>();
        if (kind == "inf_ball") {
            inst.safe = SafeSet::inf_ball(inst.n, as_int(require(safe, "k"), "safe_set.k"));
        } else if (kind == "one_ball") {
            inst.safe = SafeSet::one_ball(inst.n, as_int(require(safe, "k"), "safe_set.k"));
        } else if (kind == "explicit") {
            const auto& pts = require(safe, "points");
            if (!pts.is_array()) {
                throw Error(ErrorCode::ParseError, "safe_set.points must be an array");
            }
            std::vector<IntVector> points;
            for (const auto& p : pts) {
                points.push_back(as_vector(p, "safe point"));
            }
            inst.safe = SafeSet::explicit_points(inst.n, std::move(points));
        } else {
            throw Error(ErrorCode::ParseError, "unknown safe_set.type '" + kind + "'");
        }
        return validate_instance(std::move(inst));
    });
}

std::string instance_to_json(const Instance& inst) {
    json doc;
    doc["n"] = inst.n;
    doc["x0"] = vector_json(inst.x0);
    doc["m"] = inst.m;
    json controls = json::array();
    for (const auto& u : inst.controls) {
        controls.push_back(vector_json(u));
    }
    doc["controls"] = controls;
    json safe;
    switch (inst.safe.kind()) {
        case SafeSetKind::InfBall:
            safe["type"] = "inf_ball";
            safe["k"] = inst.safe.radius();
            break;
        case SafeSetKind::OneBall:
            safe["type"] = "one_ball";
            safe["k"] = inst.safe.radius();
            break;
        case SafeSetKind::Explicit: {
            safe["type"] = "explicit";
            json pts = json::array();
            for (const auto& p : inst.safe.points()) {
                pts.push_back(vector_json(p));
            }
            safe["points"] = pts;
            break;
        }
    }
    doc["safe_set"] = safe;
    return dump(doc);
}

Labeling parse_labeling(const std::string& text, const Instance& inst) {
    const auto doc = parse_text(text);
    return guarded([&] {
        const auto& labels = require(doc, "labels");
        if (!labels.is_object()) {
            throw Error(ErrorCode::ParseError, "labels must be an object");
        }
        Labeling lab;
        lab.labels.assign(inst.controls.size(), -1);
        for (const auto& [key, value] : labels.items()) {
            const auto u = IntVector::from_key(key);
            const auto idx = inst.controls.index_of(u);
            if (idx < 0) {
                throw Error(ErrorCode::ParseError, "labeling mentions unknown control (" + key + ")");
            }
            const auto d = as_int(value, "label");
            if (d < 1 || d > inst.m) {
                throw Error(ErrorCode::ParseError, "label " + std::to_string(d) + " for control (" + key +
                                                       ") outside [1, " + std::to_string(inst.m) + "]");
            }
            lab.labels[static_cast<std::size_t>(idx)] = static_cast<Label>(d - 1);
        }
        for (std::size_t i = 0; i < lab.size(); ++i) {
            if (lab[i] < 0) {
                throw Error(ErrorCode::ParseError, "labeling misses control (" + inst.controls[i].key() + ")");
            }
        }
        return lab;
    });
}

std::string labeling_to_json(const Labeling& lab, const Instance& inst) {
    json labels = json::object();
    for (std::size_t i = 0; i < lab.size(); ++i) {
        labels[inst.controls[i].key()] = lab[i] + 1;
    }
    return dump(json{{"labels", labels}});
}

Policy parse_policy(const std::string& text, const Instance& inst) {
    const auto doc = parse_text(text);
    return guarded([&] {
        const auto& ws = require(doc, "winning_set");
        if (!ws.is_array()) {
            throw Error(ErrorCode::ParseError, "winning_set must be an array");
        }
        std::vector<IntVector> states;
        for (const auto& s : ws) {
            auto x = as_vector(s, "state");
            if (x.size() != inst.n) {
                throw Error(ErrorCode::DimensionMismatch, "policy state (" + x.key() + ") has wrong dimension");
            }
            states.push_back(std::move(x));
        }
        Policy policy(std::move(states), inst.m);
        const auto& table = require(doc, "policy");
        if (!table.is_object()) {
            throw Error(ErrorCode::ParseError, "policy must be an object");
        }
        for (const auto& [key, value] : table.items()) {
            const auto [state, d] = split_state_key(key);
            const auto idx = policy.index_of(state);
            if (!idx) {
                throw Error(ErrorCode::ParseError, "policy entry '" + key + "' is outside the winning set");
            }
            if (d < 1 || d > inst.m) {
                throw Error(ErrorCode::ParseError, "policy entry '" + key + "' has label outside [1, m]");
            }
            if (!value.is_string()) {
                throw Error(ErrorCode::ParseError, "policy entry '" + key + "' must map to a string");
            }
            const auto s = value.get<std::string>();
            std::size_t used = 0;
            long long k = -1;
            try {
                k = std::stoll(s, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != s.size() || k < 0 || static_cast<std::size_t>(k) >= inst.controls.size()) {
                throw Error(ErrorCode::ParseError, "policy entry '" + key + "' names no control");
            }
            policy.set(*idx, static_cast<Label>(d - 1), static_cast<int>(k));
        }
        return policy;
    });
}

std::string policy_to_json(const Policy& policy) {
    json ws = json::array();
    json table = json::object();
    for (std::size_t i = 0; i < policy.size(); ++i) {
        const auto& x = policy.states()[i];
        ws.push_back(vector_json(x));
        for (Label d = 0; d < policy.label_count(); ++d) {
            const int k = policy.at(i, d);
            if (k != Policy::kNoAction) {
                table[x.key() + "|" + std::to_string(d + 1)] = std::to_string(k);
            }
        }
    }
    return dump(json{{"winning_set", ws}, {"policy", table}});
}

namespace {

json report_json(const ConditionReport& r) {
    return json{{"vertex_count", r.vertex_count},
                {"min_out_degree", r.min_out_degree},
                {"m", r.m},
                {"necessary_ok", r.necessary_ok},
                {"sufficient_bound", r.sufficient_bound},
                {"sufficient_ok", r.sufficient_ok},
                {"failure_probability_bound", r.failure_probability_bound}};
}

}  // namespace

std::string condition_report_to_json(const ConditionReport& report) {
    return dump(report_json(report));
}

std::string outcome_report_to_json(const SynthesisOutcome& outcome) {
    json doc;
    doc["status"] = to_string(outcome.status);
    doc["method"] = to_string(outcome.method);
    doc["shat_size"] = outcome.shat.size();
    doc["peel_threshold"] = outcome.peel_threshold;
    doc["conditions"] = outcome.report ? report_json(*outcome.report) : json(nullptr);
    if (outcome.certificate) {
        doc["certified"] = outcome.certificate->solvable;
        doc["certified_winning_set_size"] = outcome.certificate->winning_set().size();
    }
    doc["log"] = outcome.log;
    return dump(doc);
}

rds::CodeDesign parse_code(const std::string& text) {
    const auto doc = parse_text(text);
    return guarded([&] {
        rds::CodeDesign design;
        const auto n = as_int(require(doc, "n"), "n");
        const auto m = as_int(require(doc, "m"), "m");
        design.k = as_int(require(doc, "k"), "k");
        if (n < 1 || n > 16 || m < 1 || m > (std::int64_t{1} << n)) {
            throw Error(ErrorCode::ParseError, "code has invalid n or m");
        }
        design.n = static_cast<std::size_t>(n);
        design.m = static_cast<int>(m);
        design.codewords = rds::codeword_alphabet(design.n);

        const auto& messages = require(doc, "messages");
        if (!messages.is_object()) {
            throw Error(ErrorCode::ParseError, "messages must be an object");
        }
        design.message_of.labels.assign(design.codewords.size(), -1);
        for (const auto& [bits, value] : messages.items()) {
            const auto w = rds::from_bits(bits, design.n);
            const auto idx = static_cast<std::size_t>(design.codewords.index_of(w));
            const auto msg = as_int(value, "message");
            if (msg < 1 || msg > m) {
                throw Error(ErrorCode::ParseError, "message for codeword " + bits + " outside [1, m]");
            }
            design.message_of.labels[idx] = static_cast<Label>(msg - 1);
        }
        if (std::find(design.message_of.labels.begin(), design.message_of.labels.end(), -1) !=
            design.message_of.labels.end()) {
            throw Error(ErrorCode::ParseError, "messages must assign every codeword");
        }

        const auto& shat = require(doc, "shat");
        if (!shat.is_array()) {
            throw Error(ErrorCode::ParseError, "shat must be an array");
        }
        for (const auto& s : shat) {
            auto x = as_vector(s, "state");
            if (x.size() != design.n) {
                throw Error(ErrorCode::ParseError, "shat state has wrong length");
            }
            design.shat.push_back(std::move(x));
        }
        design.encoder = Policy(design.shat, design.m);
        const auto& table = require(doc, "encoder");
        if (!table.is_object()) {
            throw Error(ErrorCode::ParseError, "encoder must be an object");
        }
        for (const auto& [key, value] : table.items()) {
            const auto [state, msg] = split_state_key(key);
            const auto idx = design.encoder.index_of(state);
            if (!idx || msg < 1 || msg > m || !value.is_string()) {
                throw Error(ErrorCode::ParseError, "bad encoder entry '" + key + "'");
            }
            const auto w = rds::from_bits(value.get<std::string>(), design.n);
            const auto k = design.codewords.index_of(w);
            if (design.message_of[static_cast<std::size_t>(k)] != static_cast<Label>(msg - 1)) {
                throw Error(ErrorCode::ParseError, "encoder entry '" + key + "' emits a codeword of another message");
            }
            design.encoder.set(*idx, static_cast<Label>(msg - 1), static_cast<int>(k));
        }
        if (doc.contains("method") && doc["method"].is_string()) {
            const auto name = doc["method"].get<std::string>();
            for (auto mth : {SynthesisMethod::SufficientBound, SynthesisMethod::VerifiedGreedy,
                             SynthesisMethod::Randomized, SynthesisMethod::Oracle}) {
                if (name == to_string(mth)) {
                    design.method = mth;
                }
            }
        }
        return design;
    });
}

std::string code_to_json(const rds::CodeDesign& design) {
    json doc;
    doc["n"] = design.n;
    doc["m"] = design.m;
    doc["k"] = design.k;
    doc["method"] = to_string(design.method);
    json words = json::array();
    json messages = json::object();
    for (std::size_t i = 0; i < design.codewords.size(); ++i) {
        const auto bits = rds::to_bits(design.codewords[i]);
        words.push_back(bits);
        messages[bits] = design.message_of[i] + 1;
    }
    doc["codewords"] = words;
    doc["messages"] = messages;
    json shat = json::array();
    json table = json::object();
    for (std::size_t i = 0; i < design.encoder.size(); ++i) {
        const auto& x = design.encoder.states()[i];
        shat.push_back(vector_json(x));
        for (Label d = 0; d < design.m; ++d) {
            const int k = design.encoder.at(i, d);
            if (k != Policy::kNoAction) {
                table[x.key() + "|" + std::to_string(d + 1)] = rds::to_bits(design.codewords[static_cast<std::size_t>(k)]);
            }
        }
    }
    doc["shat"] = shat;
    doc["encoder"] = table;
    return dump(doc);
}

}  // namespace resil::io
