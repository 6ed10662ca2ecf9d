#include "resil/rds.hpp"

#include <algorithm>
#include <cmath>

namespace resil::rds {

namespace {
constexpr std::size_t kMaxLength = 16;
}

ControlSet codeword_alphabet(std::size_t n) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidArgument, "codeword length must be at least 1");
    }
    if (n > kMaxLength) {
        throw Error(ErrorCode::TooLarge, "codeword length above " + std::to_string(kMaxLength));
    }
    std::vector<IntVector> words;
    words.reserve(std::size_t{1} << n);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
        IntVector w(n);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = ((b >> (n - 1 - i)) & 1U) != 0 ? 1 : -1;
        }
        words.push_back(std::move(w));
    }
    return ControlSet(std::move(words));
}

std::string to_bits(const IntVector& codeword) {
    std::string bits;
    bits.reserve(codeword.size());
    for (auto c : codeword.coords()) {
        bits += c > 0 ? '1' : '0';
    }
    return bits;
}

IntVector from_bits(const std::string& bits, std::size_t n) {
    if (bits.size() != n) {
        throw Error(ErrorCode::DecodeError, "codeword '" + bits + "' does not have length " + std::to_string(n));
    }
    IntVector w(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (bits[i] == '1') {
            w[i] = 1;
        } else if (bits[i] == '0') {
            w[i] = -1;
        } else {
            throw Error(ErrorCode::DecodeError, "codeword '" + bits + "' is not a bit string");
        }
    }
    return w;
}

std::vector<IntVector> balanced_core(std::size_t n) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidArgument, "codeword length must be at least 1");
    }
    if (n > kMaxLength) {
        throw Error(ErrorCode::TooLarge, "codeword length above " + std::to_string(kMaxLength));
    }
    std::vector<IntVector> out = codeword_alphabet(n).vectors();
    // Odd n: "at least n/2 zeros" is read as at least ceil(n/2).
    const std::size_t min_zeros = (n + 1) / 2;
    IntVector cur(n);
    auto rec = [&](auto&& self, std::size_t dim, std::size_t zeros) -> void {
        if (zeros + (n - dim) < min_zeros) {
            return;
        }
        if (dim == n) {
            out.push_back(cur);
            return;
        }
        for (std::int64_t v : {-2, 0, 2}) {
            cur[dim] = v;
            self(self, dim + 1, zeros + (v == 0 ? 1 : 0));
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

bool guaranteed_length(std::size_t n, std::uint64_t m) {
    if (n == 0 || m == 0) {
        throw Error(ErrorCode::InvalidArgument, "n and m must be at least 1");
    }
    return static_cast<double>(n) >= 3.0 * std::max(std::log2(static_cast<double>(m)), 11.0);
}

DesignAttempt try_design_code(std::size_t n, int m, std::int64_t k, const SynthesisConfig& config) {
    if (n == 0 || n > kMaxLength) {
        throw Error(n == 0 ? ErrorCode::InvalidArgument : ErrorCode::TooLarge,
                    "codeword length must be in [1, " + std::to_string(kMaxLength) + "]");
    }
    if (m < 1 || static_cast<std::uint64_t>(m) > (std::uint64_t{1} << n)) {
        throw Error(ErrorCode::InvalidArgument, "message count must be in [1, 2^n]");
    }
    if (k < 0) {
        throw Error(ErrorCode::InvalidArgument, "RDS bound must be nonnegative");
    }
    Instance inst;
    inst.n = n;
    inst.x0 = IntVector(n);
    inst.controls = codeword_alphabet(n);
    inst.m = m;
    inst.safe = SafeSet::inf_ball(n, k);
    inst = validate_instance(std::move(inst));

    std::optional<std::vector<IntVector>> hint;
    if (k == 2) {
        hint = balanced_core(n);
    }
    const auto outcome = synthesize_fpcp(inst, config, hint);
    DesignAttempt attempt;
    attempt.status = outcome.status;
    if (outcome.status != SynthesisStatus::Solved) {
        return attempt;
    }
    CodeDesign design;
    design.n = n;
    design.m = m;
    design.k = k;
    design.codewords = inst.controls;
    design.message_of = *outcome.labeling;
    design.encoder = *outcome.policy;
    design.shat = outcome.shat;
    design.method = outcome.method;
    attempt.design = std::move(design);
    return attempt;
}

CodeDesign design_code(std::size_t n, int m, std::int64_t k, const SynthesisConfig& config) {
    auto attempt = try_design_code(n, m, k, config);
    if (!attempt.design) {
        throw Error(ErrorCode::DesignNotFound, std::string("no code with RDS bound ") + std::to_string(k) +
                                                   " found for n=" + std::to_string(n) + ", m=" +
                                                   std::to_string(m) + " (" + to_string(attempt.status) + ")");
    }
    return std::move(*attempt.design);
}

Encoder::Encoder(const CodeDesign& design) : design_(design), rds_(design.n) {}

std::size_t Encoder::encode(int message) {
    if (message < 0 || message >= design_.m) {
        throw Error(ErrorCode::InvalidArgument, "message " + std::to_string(message + 1) + " outside [1, " +
                                                    std::to_string(design_.m) + "]");
    }
    const auto k = design_.encoder.action(rds_, message);
    if (!k) {
        throw Error(ErrorCode::PreconditionViolated, "encoder has no entry for RDS state (" + rds_.key() + ")");
    }
    rds_ += design_.codewords[*k];
    return *k;
}

Decoder::Decoder(const CodeDesign& design) : design_(design), rds_(design.n) {}

int Decoder::decode(const IntVector& codeword) {
    if (codeword.size() != design_.n) {
        throw Error(ErrorCode::DecodeError, "(" + codeword.key() + ") has the wrong length");
    }
    // Codeword order is the binary order of the bit strings.
    std::size_t idx = 0;
    for (auto c : codeword.coords()) {
        if (c != 1 && c != -1) {
            throw Error(ErrorCode::DecodeError, "(" + codeword.key() + ") is not a codeword");
        }
        idx = (idx << 1) | (c == 1 ? 1U : 0U);
    }
    rds_ += codeword;
    return design_.message_of[idx];
}

std::vector<IntVector> encode_stream(const CodeDesign& design, const std::vector<int>& messages) {
    Encoder enc(design);
    std::vector<IntVector> out;
    out.reserve(messages.size());
    for (auto msg : messages) {
        out.push_back(design.codewords[enc.encode(msg)]);
    }
    return out;
}

std::vector<int> decode_stream(const CodeDesign& design, const std::vector<IntVector>& codewords) {
    Decoder dec(design);
    std::vector<int> out;
    out.reserve(codewords.size());
    for (const auto& w : codewords) {
        out.push_back(dec.decode(w));
    }
    return out;
}

}  // namespace resil::rds
