#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "polarbd/bits.hpp"
#include "polarbd/code_spec.hpp"

namespace polarbd {

enum class Scenario { NoTx, RndTx, RegTx };

const char* scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

struct ChannelConfig {
    double ebn0_db = 0.0;
    // Rate used for Eb/N0 -> sigma conversion; callers default this to K/N.
    double rate_for_normalization = 0.0;
    Scenario scenario = Scenario::RegTx;
};

// sigma = sqrt(1 / (2 * R * 10^(EbN0dB/10)))
double ebn0_to_sigma(double ebn0_db, double rate);

// BPSK map: bit 0 -> +1, bit 1 -> -1
std::vector<double> modulate_bpsk(const BitVec& bits);

// alpha_i = 2 y_i / sigma^2
LlrVec llr_from_channel(const std::vector<double>& y, double sigma);

// Deterministic per-trial stream: a pure function of (seed, trial_index),
// independent of worker count and evaluation order.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t trial_index);
    double gauss() { return normal_(engine_); }
    std::uint8_t uniform_bit() { return static_cast<std::uint8_t>(engine_() & 1u); }
    double uniform01() { return uniform_(engine_); }
    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

struct FrameSample {
    LlrVec llr;
    Scenario scenario = Scenario::NoTx;
    // Populated for RegTx only.
    std::optional<BitVec> tx_payload;   // user bits, before CRC
    std::optional<BitVec> tx_info;      // payload plus CRC when attached, length K
    std::optional<BitVec> tx_codeword;  // length N
};

// NoTx: pure noise. RndTx: iid uniform BPSK symbols plus noise. RegTx: a valid
// (CRC'd when configured, systematic per spec) codeword plus noise.
FrameSample gen_frame(Scenario scenario, const CodeSpec& spec, const ChannelConfig& config,
                      TrialRng& rng);

}  // namespace polarbd
