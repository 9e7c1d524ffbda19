#include "polarbd/channel.hpp"

#include <cmath>
#include <string>

#include "polarbd/encoder.hpp"

namespace polarbd {

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::NoTx: return "notx";
        case Scenario::RndTx: return "rndtx";
        case Scenario::RegTx: return "regtx";
    }
    return "?";
}

Scenario scenario_from_name(const std::string& name) {
    if (name == "notx") return Scenario::NoTx;
    if (name == "rndtx") return Scenario::RndTx;
    if (name == "regtx") return Scenario::RegTx;
    throw std::invalid_argument("unknown scenario: " + name);
}

double ebn0_to_sigma(double ebn0_db, double rate) {
    if (rate <= 0.0 || rate > 1.0) throw std::invalid_argument("rate must be in (0,1]");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)));
}

std::vector<double> modulate_bpsk(const BitVec& bits) {
    std::vector<double> x(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) x[i] = bits[i] ? -1.0 : 1.0;
    return x;
}

LlrVec llr_from_channel(const std::vector<double>& y, double sigma) {
    if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
    LlrVec alpha(y.size());
    const double scale = 2.0 / (sigma * sigma);
    for (std::size_t i = 0; i < y.size(); ++i) alpha[i] = scale * y[i];
    return alpha;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial_index)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(trial_index + 0x51ED2701ull))) {}

FrameSample gen_frame(Scenario scenario, const CodeSpec& spec, const ChannelConfig& config,
                      TrialRng& rng) {
    const std::size_t n = static_cast<std::size_t>(spec.block_len_n);
    const double rate = config.rate_for_normalization > 0.0
                            ? config.rate_for_normalization
                            : static_cast<double>(spec.info_len_k) / spec.block_len_n;
    const double sigma = ebn0_to_sigma(config.ebn0_db, rate);

    FrameSample out;
    out.scenario = scenario;
    std::vector<double> y(n);
    switch (scenario) {
        case Scenario::NoTx:
            for (std::size_t i = 0; i < n; ++i) y[i] = sigma * rng.gauss();
            break;
        case Scenario::RndTx:
            for (std::size_t i = 0; i < n; ++i) y[i] = rng.uniform_bit() ? -1.0 : 1.0;
            for (std::size_t i = 0; i < n; ++i) y[i] += sigma * rng.gauss();
            break;
        case Scenario::RegTx: {
            BitVec payload(static_cast<std::size_t>(spec.payload_len()));
            for (auto& b : payload) b = rng.uniform_bit();
            BitVec info = spec.crc ? attach_crc(payload, *spec.crc) : payload;
            BitVec cw = spec.systematic ? encode_systematic(info, spec)
                                        : encode_nonsystematic(expand_info(info, spec));
            y = modulate_bpsk(cw);
            for (std::size_t i = 0; i < n; ++i) y[i] += sigma * rng.gauss();
            out.tx_payload = std::move(payload);
            out.tx_info = std::move(info);
            out.tx_codeword = std::move(cw);
            break;
        }
    }
    out.llr = llr_from_channel(y, sigma);
    return out;
}

}  // namespace polarbd
