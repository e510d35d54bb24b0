#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "hapsris/errors.hpp"
#include "hapsris/linkbudget.hpp"
#include "hapsris/rng.hpp"
#include "hapsris/units.hpp"

using namespace hapsris;

namespace {

// Frozen values from tests/oracles/link_budget_oracle.py (mpmath, 50 digits).
constexpr double kFriisDb_19647_1 = 124.32834121193535;
constexpr double kCsHapsDistance = 19647.137196039529;
constexpr double kHapsUserDistance = 20615.770662286676;
constexpr double kFriisDbCsHaps = 124.32835765611228;
constexpr double kFriisDbHapsUser = 124.74636358556615;
constexpr double kCascadeAmplitude = 5.0846836499438766e-11;
constexpr double kNoiseDbm = -112.06179973983887;
constexpr double kOneMinusPlos90 = 1.7436307659972234e-18;
constexpr double kAvgLoss45 = 140367750.43562605;
constexpr double kTwoUavSinr = 0.9999912686062437;

const Position3 kCs{-10000, 0, 1000};
const Position3 kHaps{-5000, 100, 20000};

double unit_gain_distance(const RadioParams& r) {
    return r.wave_speed_mps / (4.0 * std::numbers::pi * r.carrier_hz);
}

}  // namespace

TEST_CASE("Friis loss follows the inverse-square law") {
    const RadioParams radio;
    for (double d : {1.0, 37.5, 1000.0, 19647.1}) {
        CHECK(friis_path_loss(2 * d, radio) == doctest::Approx(4 * friis_path_loss(d, radio)).epsilon(1e-15));
    }
    CHECK(units::linear_to_db(friis_path_loss(19647.1, radio)) ==
          doctest::Approx(kFriisDb_19647_1).epsilon(1e-12));
    CHECK(friis_path_loss(unit_gain_distance(radio), radio) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Friis loss rejects zero distance") {
    const RadioParams radio;
    CHECK_THROWS_AS(friis_path_loss(0.0, radio), DomainError);
    CHECK_THROWS_AS(friis_path_loss(-5.0, radio), DomainError);
}

TEST_CASE("cascade amplitude on the reference geometry") {
    RadioParams radio;
    const Position3 user{0, 0, 0};
    CHECK(distance(kCs, kHaps) == doctest::Approx(kCsHapsDistance).epsilon(1e-14));
    CHECK(distance(kHaps, user) == doctest::Approx(kHapsUserDistance).epsilon(1e-14));
    CHECK(units::linear_to_db(friis_path_loss(kCsHapsDistance, radio)) ==
          doctest::Approx(kFriisDbCsHaps).epsilon(1e-12));
    CHECK(units::linear_to_db(friis_path_loss(kHapsUserDistance, radio)) ==
          doctest::Approx(kFriisDbHapsUser).epsilon(1e-12));

    const auto h = cascade_amplitude(user, kCs, kHaps, radio);
    CHECK(h.amplitude == doctest::Approx(kCascadeAmplitude).epsilon(1e-12));
    CHECK(h.amplitude == doctest::Approx(std::pow(10.0, -(kFriisDbCsHaps + kFriisDbHapsUser - 43.2) / 20.0)).epsilon(1e-12));
}

TEST_CASE("cascade amplitude is 1 at unit-gain hops with 0 dB antennas") {
    RadioParams radio;
    radio.cs_antenna_gain_db = 0.0;
    const double d = unit_gain_distance(radio);
    const Position3 haps{0, 0, 0}, cs{d, 0, 0}, user{0, d, 0};
    CHECK(cascade_amplitude(user, cs, haps, radio).amplitude == doctest::Approx(1.0).epsilon(1e-12));

    const Position3 cs2{2 * d, 0, 0}, user2{0, 2 * d, 0};
    CHECK(cascade_amplitude(user2, cs2, haps, radio).amplitude == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("cascade amplitude rejects coincident points") {
    const RadioParams radio;
    CHECK_THROWS_AS(cascade_amplitude(kHaps, kCs, kHaps, radio), DomainError);
    CHECK_THROWS_AS(cascade_amplitude({0, 0, 0}, kCs, kCs, radio), DomainError);
}

TEST_CASE("optimal phase") {
    CHECK(optimal_phase(0.0, 0.0) == 0.0);
    CHECK(optimal_phase(std::numbers::pi / 3, std::numbers::pi / 6) == doctest::Approx(std::numbers::pi / 2));
    ReflectionCoefficient rc{0.8, optimal_phase(0.3, 1.1), 0.3, 1.1};
    CHECK(rc.value().real() == doctest::Approx(0.8));
    CHECK(rc.value().imag() == doctest::Approx(0.0));
}

TEST_CASE("phase-aligned elements reach the coherent upper bound (grid scan)") {
    // Every element sees its own CS-side and user-side phase. With all other
    // elements aligned, scanning one element's phase must peak at xi + omega.
    Rng rng(5);
    const LinkGain h{3e-11};
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng.below(63);
        const double mu = 0.2 + 0.8 * rng.uniform();
        std::vector<ReflectionCoefficient> e;
        for (std::size_t m = 0; m < n; ++m) {
            const double xi = 2 * std::numbers::pi * rng.uniform();
            const double omega = 2 * std::numbers::pi * rng.uniform();
            e.push_back({mu, optimal_phase(xi, omega), xi, omega});
        }
        const double bound = static_cast<double>(n) * mu * h.amplitude;
        CHECK(coherent_amplitude(e, h) == doctest::Approx(bound).epsilon(1e-12));

        const std::size_t probe = rng.below(n);
        const double target = e[probe].cs_side_phase + e[probe].user_side_phase;
        double best = 0.0, best_phi = 0.0;
        for (int k = 0; k < 720; ++k) {
            const double phi = 2 * std::numbers::pi * k / 720.0;
            e[probe].ris_phase = phi;
            const double a = coherent_amplitude(e, h);
            CHECK(a <= bound * (1 + 1e-12));
            if (a > best) {
                best = a;
                best_phi = phi;
            }
        }
        const double wrapped = std::remainder(best_phi - target, 2 * std::numbers::pi);
        CHECK(std::abs(wrapped) <= std::numbers::pi / 720 + 1e-12);

        // Random phases never beat alignment.
        for (auto& x : e) x.ris_phase = 2 * std::numbers::pi * rng.uniform();
        CHECK(coherent_amplitude(e, h) < bound);
    }
}

TEST_CASE("HAPS SNR combining and noise floor") {
    RadioParams radio;
    CHECK(units::watts_to_dbm(radio.noise_power_w()) == doctest::Approx(kNoiseDbm).epsilon(1e-12));
    CHECK(radio.subcarrier_bandwidth_hz() == 1.5625e6);
    CHECK(radio.cs_subcarriers() == 32);

    const LinkGain h{kCascadeAmplitude};
    const double p = radio.cs_subcarrier_power_w();
    CHECK(haps_snr_per_subcarrier(h, 0, 1.0, p, radio) == 0.0);
    const double one = haps_snr_per_subcarrier(h, 1, 1.0, p, radio);
    for (std::size_t n : {2u, 7u, 11666u, 35000u}) {
        CHECK(haps_snr_per_subcarrier(h, n, 1.0, p, radio) / one ==
              doctest::Approx(static_cast<double>(n) * n).epsilon(1e-12));
    }
    CHECK(haps_snr_per_subcarrier(h, 10, 1.0, 2 * p, radio) ==
          doctest::Approx(2 * haps_snr_per_subcarrier(h, 10, 1.0, p, radio)));
}

TEST_CASE("HAPS user rate") {
    RadioParams radio;
    // Choose the amplitude that makes one element give SNR = 1.
    const double p = 1.0;
    const LinkGain h{std::sqrt(radio.noise_power_w() / p)};
    const std::vector<SubcarrierGroup> one{{0, 0, 1}};
    CHECK(haps_user_rate(one, h, 1.0, p, radio) == doctest::Approx(1.5625e6));
    CHECK(haps_user_rate({}, h, 1.0, p, radio) == 0.0);
    const std::vector<SubcarrierGroup> three{{0, 0, 1}, {5, 1, 1}, {31, 2, 1}};
    CHECK(haps_user_rate(three, h, 1.0, p, radio) == doctest::Approx(3 * 1.5625e6));

    const std::vector<SubcarrierGroup> outside{{32, 0, 1}};
    CHECK_THROWS_AS(haps_user_rate(outside, h, 1.0, p, radio), AllocationError);
    const std::vector<SubcarrierGroup> negative{{-1, 0, 1}};
    CHECK_THROWS_AS(haps_user_rate(negative, h, 1.0, p, radio), AllocationError);
}

TEST_CASE("rates grow with power and element count") {
    RadioParams radio;
    const LinkGain h{kCascadeAmplitude};
    double last = -1.0;
    for (std::size_t n = 0; n <= 40000; n += 2500) {
        const std::vector<SubcarrierGroup> g{{0, 0, n}};
        const double r = haps_user_rate(g, h, 1.0, radio.cs_subcarrier_power_w(), radio);
        CHECK(r >= 0.0);
        CHECK(r >= last);
        last = r;
    }
    last = -1.0;
    for (double dbm = 0; dbm <= 50; dbm += 5) {
        const std::vector<SubcarrierGroup> g{{0, 0, 5000}};
        const double r = haps_user_rate(g, h, 1.0, units::dbm_to_watts(dbm), radio);
        CHECK(r >= last);
        last = r;
    }
}

TEST_CASE("elevation angle") {
    CHECK(elevation_angle_deg({0, 0, 0}, {0, 0, 100}) == doctest::Approx(90.0));
    CHECK(elevation_angle_deg({0, 0, 0}, {100, 0, 100}) == doctest::Approx(45.0));
    // z = d/2 -> 30 degrees: horizontal offset sqrt(3) * z.
    CHECK(elevation_angle_deg({0, 0, 0}, {std::sqrt(3.0) * 50, 0, 50}) == doctest::Approx(30.0));
    CHECK_THROWS_AS(elevation_angle_deg({1, 2, 0}, {1, 2, 0}), DomainError);
}

TEST_CASE("LoS probability") {
    AtgParams atg;
    CHECK(los_probability(5.0, atg) == 1.0 / 6.0);
    CHECK(1.0 - los_probability(90.0, atg) == doctest::Approx(0.0).epsilon(1e-15));
    // 1 - P(90) is below double resolution near 1; check the odds ratio instead.
    const double p90 = los_probability(90.0, atg);
    CHECK((1.0 - p90) <= 2 * kOneMinusPlos90 + 1e-16);

    AtgParams flat = atg;
    flat.beta = 0.0;
    for (double t : {1.0, 30.0, 90.0}) CHECK(los_probability(t, flat) == doctest::Approx(1.0 / 6.0));

    double last = 0.0;
    for (double t = 0.5; t <= 90.0; t += 0.5) {
        const double p = los_probability(t, atg);
        CHECK(p > 0.0);
        CHECK(p < 1.0 + 1e-15);
        CHECK(p >= last);
        if (t < 60) CHECK(p > last);
        last = p;
    }
}

TEST_CASE("average UAV path loss") {
    RadioParams radio;
    AtgParams atg;
    const Position3 user{0, 0, 0}, uav{100, 0, 100};
    CHECK(uav_avg_path_loss(user, uav, radio, atg) == doctest::Approx(kAvgLoss45).epsilon(1e-12));

    // Equal excess losses make the LoS weighting irrelevant.
    AtgParams same = atg;
    same.eta_los = same.eta_nlos = 7.0;
    const double d = distance(user, uav);
    CHECK(uav_avg_path_loss(user, uav, radio, same) ==
          doctest::Approx(7.0 * friis_path_loss(d, radio)).epsilon(1e-12));

    // Pure-LoS and pure-NLoS bracket the average.
    const Position3 low{400, 0, 100};
    const double fs = friis_path_loss(distance(user, low), radio);
    const double avg = uav_avg_path_loss(user, low, radio, atg);
    CHECK(avg > atg.eta_los * fs);
    CHECK(avg < atg.eta_nlos * fs);

    // loss(k d) = k^alpha loss(d) along a fixed elevation.
    AtgParams cubic = atg;
    cubic.alpha = 3.0;
    CHECK(uav_avg_path_loss(user, {200, 0, 200}, radio, cubic) ==
          doctest::Approx(8.0 * uav_avg_path_loss(user, {100, 0, 100}, radio, cubic)).epsilon(1e-12));

    CHECK_THROWS_AS(uav_avg_path_loss(user, user, radio, atg), DomainError);
    CHECK_THROWS_AS(uav_avg_path_loss(user, {0, 0, 0.5}, radio, atg), DomainError);
}

namespace {

UavDeployment two_uav_shared(double second_x) {
    UavDeployment d;
    d.uav_positions = {{-100, 0, 100}, {second_x, 0, 100}};
    d.users = {0, 1};
    d.user_positions = {{0, 0, 0}, {second_x + 10, 0, 0}};
    d.association = {0, 1};
    d.subcarriers = {{0}, {0}};
    return d;
}

}  // namespace

TEST_CASE("UAV SINR") {
    RadioParams radio;
    AtgParams atg;

    SUBCASE("single UAV has no interference") {
        UavDeployment d;
        d.uav_positions = {{0, 0, 100}};
        d.users = {3};
        d.user_positions = {{10, 0, 0}};
        d.association = {0};
        d.subcarriers = {{0, 1, 2}};
        const double snr = radio.uav_power_w() / 3 *
                           uav_channel_power_gain(d.user_positions[0], d.uav_positions[0], radio, atg) /
                           radio.noise_power_w();
        CHECK(uav_sinr(d, 0, 1, radio, atg) == doctest::Approx(snr).epsilon(1e-12));
    }

    SUBCASE("far interferer vanishes") {
        const auto near = two_uav_shared(100);
        const auto far = two_uav_shared(1e9);
        const double snr = radio.uav_power_w() *
                           uav_channel_power_gain({0, 0, 0}, {-100, 0, 100}, radio, atg) /
                           radio.noise_power_w();
        CHECK(uav_sinr(far, 0, 0, radio, atg) == doctest::Approx(snr).epsilon(1e-9));
        CHECK(uav_sinr(near, 0, 0, radio, atg) < snr);
    }

    SUBCASE("equidistant co-channel UAVs") {
        const auto d = two_uav_shared(100);
        CHECK(uav_sinr(d, 0, 0, radio, atg) == doctest::Approx(kTwoUavSinr).epsilon(1e-12));
        CHECK(uav_sinr(d, 0, 0, radio, atg) < 1.0);
    }

    SUBCASE("different subcarriers do not interfere") {
        auto d = two_uav_shared(100);
        d.subcarriers = {{0}, {1}};
        const double snr = radio.uav_power_w() *
                           uav_channel_power_gain({0, 0, 0}, {-100, 0, 100}, radio, atg) /
                           radio.noise_power_w();
        CHECK(uav_sinr(d, 0, 0, radio, atg) == doctest::Approx(snr).epsilon(1e-12));
    }

    SUBCASE("asking for an unassigned subcarrier is a contract violation") {
        const auto d = two_uav_shared(100);
        CHECK_THROWS_AS(uav_sinr(d, 0, 5, radio, atg), ContractViolation);
    }

    SUBCASE("idle UAV is silent") {
        auto d = two_uav_shared(100);
        d.uav_positions.push_back({0, 0, 100});
        UavLinkEvaluator eval(d, radio, atg);
        CHECK(eval.subcarrier_power_w(2) == 0.0);
        CHECK_FALSE(eval.active(2, 0));
    }
}

TEST_CASE("UAV user rate") {
    RadioParams radio;
    AtgParams atg;
    UavDeployment d;
    d.uav_positions = {{0, 0, 100}};
    d.users = {0, 1};
    d.user_positions = {{0, 0, 0}, {50, 0, 0}};
    d.association = {0, 0};
    d.subcarriers = {{0, 2}, {}};
    CHECK(uav_user_rate(d, 1, radio, atg) == 0.0);
    UavLinkEvaluator eval(d, radio, atg);
    CHECK(eval.rate(0) == doctest::Approx(radio.subcarrier_bandwidth_hz() *
                                          (std::log2(1 + eval.sinr(0, 0)) + std::log2(1 + eval.sinr(0, 2)))));

    // SINR = 3 on one subcarrier -> 2 bits/s/Hz.
    const double g = uav_channel_power_gain(d.user_positions[0], d.uav_positions[0], radio, atg);
    RadioParams tuned = radio;
    tuned.uav_power_dbm = units::watts_to_dbm(3.0 * radio.noise_power_w() / g);
    UavDeployment single = d;
    single.users = {0};
    single.user_positions = {d.user_positions[0]};
    single.association = {0};
    single.subcarriers = {{4}};
    CHECK(uav_user_rate(single, 0, tuned, atg) == doctest::Approx(3.125e6).epsilon(1e-9));
}

TEST_CASE("dBm <-> W round trip") {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double dbm = -200.0 + 300.0 * rng.uniform();
        const double back = units::watts_to_dbm(units::dbm_to_watts(dbm));
        CHECK(std::abs(back - dbm) <= 1e-12 * std::max(1.0, std::abs(dbm)));
    }
    CHECK(units::dbm_to_watts(30.0) == doctest::Approx(1.0));
}
