#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resil/game.hpp"
#include "resil/synthesis.hpp"
#include "resil/types.hpp"

namespace resil::rds {

/// All 2^n codewords over {-1, 1}^n. Codeword b spells the bit string of b
/// (most significant bit first) with 0 sent as -1 and 1 as +1.
ControlSet codeword_alphabet(std::size_t n);

std::string to_bits(const IntVector& codeword);
/// Throws DecodeError on characters other than 0/1 or a wrong length.
IntVector from_bits(const std::string& bits, std::size_t n);

/// {-1,1}^n together with the points of {-2,0,2}^n that have at least
/// ceil(n/2) zero coordinates; contains 0 and lies in the radius-2 box.
std::vector<IntVector> balanced_core(std::size_t n);

/// n >= 3 max(log2 m, 11): codes with RDS bound 2 are guaranteed to exist.
bool guaranteed_length(std::size_t n, std::uint64_t m);

/// Encoder/decoder pair keeping the running digital sum within the
/// radius-k box. Messages are 0-based internally.
struct CodeDesign {
    std::size_t n = 0;
    int m = 1;
    std::int64_t k = 2;
    ControlSet codewords;
    Labeling message_of;  // codeword index -> message
    Policy encoder;       // (RDS state, message) -> codeword index
    std::vector<IntVector> shat;
    SynthesisMethod method = SynthesisMethod::None;
};

struct DesignAttempt {
    SynthesisStatus status = SynthesisStatus::Unknown;
    std::optional<CodeDesign> design;  // set when status is Solved
};

/// Throws InvalidArgument (m outside [1, 2^n], k < 0) or TooLarge (n > 16).
DesignAttempt try_design_code(std::size_t n, int m, std::int64_t k = 2, const SynthesisConfig& config = {});

/// As try_design_code, but throws DesignNotFound unless a code was found.
CodeDesign design_code(std::size_t n, int m, std::int64_t k = 2, const SynthesisConfig& config = {});

/// Stateful encoder; one RDS state per stream.
class Encoder {
  public:
    explicit Encoder(const CodeDesign& design);
    /// Codeword index for `message`; advances the RDS.
    std::size_t encode(int message);
    [[nodiscard]] const IntVector& rds() const noexcept { return rds_; }

  private:
    const CodeDesign& design_;
    IntVector rds_;
};

class Decoder {
  public:
    explicit Decoder(const CodeDesign& design);
    /// Throws DecodeError when the vector is not a codeword.
    int decode(const IntVector& codeword);
    [[nodiscard]] const IntVector& rds() const noexcept { return rds_; }

  private:
    const CodeDesign& design_;
    IntVector rds_;
};

std::vector<IntVector> encode_stream(const CodeDesign& design, const std::vector<int>& messages);
std::vector<int> decode_stream(const CodeDesign& design, const std::vector<IntVector>& codewords);

}  // namespace resil::rds
