#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polarbd/channel.hpp"
#include "polarbd/crc.hpp"
#include "polarbd/encoder.hpp"

using namespace polarbd;

TEST_CASE("scenario names round trip") {
    for (Scenario s : {Scenario::NoTx, Scenario::RndTx, Scenario::RegTx})
        CHECK(scenario_from_name(scenario_name(s)) == s);
    CHECK(std::string(scenario_name(Scenario::NoTx)) == "notx");
    CHECK(std::string(scenario_name(Scenario::RndTx)) == "rndtx");
    CHECK(std::string(scenario_name(Scenario::RegTx)) == "regtx");
    CHECK_THROWS_AS(scenario_from_name("tx"), std::invalid_argument);
}

TEST_CASE("noise deviation from signal-to-noise ratio") {
    CHECK(ebn0_to_sigma(0.0, 0.5) == 1.0);
    CHECK(ebn0_to_sigma(2.0, 80.0 / 512.0) == doctest::Approx(1.4209375434327218).epsilon(1e-15));
    CHECK(ebn0_to_sigma(0.0, 1.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    // Higher ratio, quieter channel.
    CHECK(ebn0_to_sigma(3.0, 0.5) < ebn0_to_sigma(2.0, 0.5));
    CHECK_THROWS_AS(ebn0_to_sigma(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ebn0_to_sigma(0.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(ebn0_to_sigma(0.0, -0.25), std::invalid_argument);
}

TEST_CASE("modulation and channel values") {
    CHECK(modulate_bpsk({0, 1, 1, 0}) == std::vector<double>{1.0, -1.0, -1.0, 1.0});
    LlrVec alpha = llr_from_channel({0.5, -1.0}, 2.0);
    CHECK(alpha == LlrVec{0.25, -0.5});
    CHECK_THROWS_AS(llr_from_channel({1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("the per-trial stream is a pure function of seed and trial index") {
    TrialRng a(42, 7);
    TrialRng b(42, 7);
    TrialRng other_trial(42, 8);
    TrialRng other_seed(43, 7);
    bool trial_differs = false;
    bool seed_differs = false;
    for (int i = 0; i < 16; ++i) {
        double v = a.gauss();
        CHECK(v == b.gauss());
        if (v != other_trial.gauss()) trial_differs = true;
        if (v != other_seed.gauss()) seed_differs = true;
    }
    CHECK(trial_differs);
    CHECK(seed_differs);
}

TEST_CASE("stream primitives have the right ranges and moments") {
    TrialRng rng(5, 0);
    int ones = 0;
    const int trials = 20000;
    double sum = 0.0;
    double sumsq = 0.0;
    for (int i = 0; i < trials; ++i) {
        std::uint8_t bit = rng.uniform_bit();
        REQUIRE(bit <= 1);
        ones += bit;
        double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        double g = rng.gauss();
        sum += g;
        sumsq += g * g;
    }
    CHECK(std::abs(ones / double(trials) - 0.5) < 0.01);
    CHECK(std::abs(sum / trials) < 0.03);
    CHECK(sumsq / trials == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("transmitted frames carry their ground truth") {
    CodeSpec spec = make_code_spec(512, 80, 2.0, crc_ccitt16(), true);
    ChannelConfig config{2.0, 0.0, Scenario::RegTx};
    TrialRng rng(9, 3);
    FrameSample frame = gen_frame(Scenario::RegTx, spec, config, rng);
    CHECK(frame.scenario == Scenario::RegTx);
    CHECK(frame.llr.size() == 512);
    REQUIRE(frame.tx_payload.has_value());
    REQUIRE(frame.tx_info.has_value());
    REQUIRE(frame.tx_codeword.has_value());
    CHECK(frame.tx_payload->size() == std::size_t(spec.payload_len()));
    CHECK(frame.tx_info->size() == 80);
    CHECK(frame.tx_codeword->size() == 512);
    CHECK(*frame.tx_info == attach_crc(*frame.tx_payload, *spec.crc));
    CHECK(crc_check(*frame.tx_info, *spec.crc));
    CHECK(*frame.tx_codeword == encode_systematic(*frame.tx_info, spec));
    // Systematic: the codeword carries the info bits in the clear.
    auto pos = spec.info_positions();
    for (std::size_t i = 0; i < pos.size(); ++i)
        CHECK((*frame.tx_codeword)[std::size_t(pos[i])] == (*frame.tx_info)[i]);
}

TEST_CASE("a quiet channel reproduces the codeword in the signs") {
    CodeSpec spec = make_code_spec(512, 80, 2.0);
    ChannelConfig config{20.0, 0.0, Scenario::RegTx};
    TrialRng rng(11, 0);
    FrameSample frame = gen_frame(Scenario::RegTx, spec, config, rng);
    for (std::size_t i = 0; i < frame.llr.size(); ++i)
        CHECK((frame.llr[i] < 0.0 ? 1 : 0) == (*frame.tx_codeword)[i]);
}

TEST_CASE("idle scenarios carry no ground truth") {
    CodeSpec spec = make_code_spec(512, 80, 2.0);
    ChannelConfig config{2.0, 0.0, Scenario::NoTx};
    TrialRng rng(13, 1);
    for (Scenario s : {Scenario::NoTx, Scenario::RndTx}) {
        FrameSample frame = gen_frame(s, spec, config, rng);
        CHECK(frame.scenario == s);
        CHECK(frame.llr.size() == 512);
        CHECK(!frame.tx_payload.has_value());
        CHECK(!frame.tx_info.has_value());
        CHECK(!frame.tx_codeword.has_value());
    }
}

TEST_CASE("channel statistics match the configured noise level") {
    CodeSpec spec = make_code_spec(512, 80, 2.0);
    const double sigma = ebn0_to_sigma(2.0, 80.0 / 512.0);
    ChannelConfig config{2.0, 0.0, Scenario::NoTx};

    // Idle channel: the observable is zero-mean noise with variance (2/sigma)^2.
    double sum = 0.0;
    double sumsq = 0.0;
    int count = 0;
    for (int t = 0; t < 100; ++t) {
        TrialRng rng(1, std::uint64_t(t));
        FrameSample frame = gen_frame(Scenario::NoTx, spec, config, rng);
        for (double v : frame.llr) {
            sum += v;
            sumsq += v * v;
            ++count;
        }
    }
    CHECK(std::abs(sum / count) < 0.02);
    CHECK(sumsq / count == doctest::Approx(4.0 / (sigma * sigma)).epsilon(0.05));

    // Transmitted frames: correlating with the sent signs recovers 2/sigma^2.
    double corr = 0.0;
    count = 0;
    for (int t = 0; t < 100; ++t) {
        TrialRng rng(1, std::uint64_t(t));
        FrameSample frame = gen_frame(Scenario::RegTx, spec, config, rng);
        for (std::size_t i = 0; i < frame.llr.size(); ++i) {
            corr += frame.llr[i] * ((*frame.tx_codeword)[i] ? -1.0 : 1.0);
            ++count;
        }
    }
    CHECK(corr / count == doctest::Approx(2.0 / (sigma * sigma)).epsilon(0.05));
}

TEST_CASE("the normalization rate override changes the operating point") {
    CodeSpec spec = make_code_spec(512, 80, 2.0);
    ChannelConfig payload_rate{2.0, 0.125, Scenario::NoTx};
    const double sigma = ebn0_to_sigma(2.0, 0.125);
    double sumsq = 0.0;
    int count = 0;
    for (int t = 0; t < 100; ++t) {
        TrialRng rng(2, std::uint64_t(t));
        FrameSample frame = gen_frame(Scenario::NoTx, spec, payload_rate, rng);
        for (double v : frame.llr) {
            sumsq += v * v;
            ++count;
        }
    }
    CHECK(sumsq / count == doctest::Approx(4.0 / (sigma * sigma)).epsilon(0.05));
}

TEST_CASE("frame generation is reproducible") {
    CodeSpec spec = make_code_spec(512, 80, 2.0, crc_ccitt16());
    ChannelConfig config{3.0, 0.0, Scenario::RegTx};
    for (Scenario s : {Scenario::NoTx, Scenario::RndTx, Scenario::RegTx}) {
        TrialRng a(77, 123);
        TrialRng b(77, 123);
        FrameSample fa = gen_frame(s, spec, config, a);
        FrameSample fb = gen_frame(s, spec, config, b);
        CHECK(fa.llr == fb.llr);
        CHECK(fa.tx_codeword == fb.tx_codeword);
    }
}
