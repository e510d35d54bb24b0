#include "hapsris/linkbudget.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hapsris/errors.hpp"
#include "hapsris/units.hpp"

namespace hapsris {

namespace {

// Air-to-ground links below this separation are outside the far-field model.
constexpr double kMinUavLinkDistanceM = 1.0;

double wavenumber_factor(const RadioParams& radio) {
    return 4.0 * std::numbers::pi * radio.carrier_hz / radio.wave_speed_mps;
}

double checked_uav_distance(const Position3& user, const Position3& uav) {
    const double d = distance(user, uav);
    if (!(d >= kMinUavLinkDistanceM)) {
        throw DomainError("user-UAV distance " + std::to_string(d) + " m is below " +
                          std::to_string(kMinUavLinkDistanceM) + " m");
    }
    return d;
}

}  // namespace

double RadioParams::subcarrier_bandwidth_hz() const {
    return total_bandwidth_hz / static_cast<double>(total_subcarriers);
}

double RadioParams::noise_power_w() const {
    return units::dbm_to_watts(noise_psd_dbm_per_hz) * subcarrier_bandwidth_hz();
}

double RadioParams::cs_subcarrier_power_w() const {
    return units::dbm_to_watts(cs_power_dbm) / static_cast<double>(cs_subcarriers());
}

double RadioParams::uav_power_w() const { return units::dbm_to_watts(uav_power_dbm); }

std::complex<double> ReflectionCoefficient::value() const {
    return std::polar(mu, -(ris_phase - cs_side_phase - user_side_phase));
}

double friis_path_loss(double distance_m, const RadioParams& radio) {
    if (!(distance_m > 0.0) || !std::isfinite(distance_m)) {
        throw DomainError("Friis path loss needs a positive finite distance, got " +
                          std::to_string(distance_m));
    }
    const double k = wavenumber_factor(radio) * distance_m;
    return k * k;
}

LinkGain cascade_amplitude(const Position3& user, const Position3& cs, const Position3& haps,
                           const RadioParams& radio) {
    if (user == cs || user == haps || cs == haps) {
        throw DomainError("cascade channel needs distinct user, CS and HAPS positions");
    }
    const double cs_ris = friis_path_loss(distance(cs, haps), radio);
    const double ris_user = friis_path_loss(distance(haps, user), radio);
    const double gains = units::db_to_linear(radio.cs_antenna_gain_db) *
                         units::db_to_linear(radio.user_antenna_gain_db);
    return {std::sqrt(gains / (cs_ris * ris_user))};
}

double optimal_phase(double cs_side_phase, double user_side_phase) {
    return cs_side_phase + user_side_phase;
}

double coherent_amplitude(std::span<const ReflectionCoefficient> elements, LinkGain gain) {
    std::complex<double> sum{0.0, 0.0};
    for (const auto& e : elements) sum += gain.amplitude * e.value();
    return std::abs(sum);
}

double haps_snr_per_subcarrier(LinkGain gain, std::size_t elements_on_subcarrier, double mu,
                               double subcarrier_power_w, const RadioParams& radio) {
    if (!(subcarrier_power_w >= 0.0)) {
        throw ParameterError("subcarrier power must be non-negative");
    }
    const double combined = static_cast<double>(elements_on_subcarrier) * mu * gain.amplitude;
    return subcarrier_power_w * combined * combined / radio.noise_power_w();
}

double haps_user_rate(std::span<const SubcarrierGroup> groups, LinkGain gain, double mu,
                      double subcarrier_power_w, const RadioParams& radio) {
    const int band = radio.cs_subcarriers();
    double rate = 0.0;
    for (const auto& g : groups) {
        if (g.subcarrier < 0 || g.subcarrier >= band) {
            throw AllocationError("subcarrier " + std::to_string(g.subcarrier) +
                                  " outside the CS half-band [0, " + std::to_string(band) + ")");
        }
        const double snr =
            haps_snr_per_subcarrier(gain, g.element_count, mu, subcarrier_power_w, radio);
        rate += radio.subcarrier_bandwidth_hz() * std::log2(1.0 + snr);
    }
    return rate;
}

double elevation_angle_deg(const Position3& user, const Position3& uav) {
    const double d = checked_uav_distance(user, uav);
    const double ratio = std::clamp((uav.z - user.z) / d, -1.0, 1.0);
    return 180.0 / std::numbers::pi * std::asin(ratio);
}

double los_probability(double theta_deg, const AtgParams& atg) {
    return 1.0 / (1.0 + atg.psi * std::exp(-atg.beta * (theta_deg - atg.psi)));
}

double uav_avg_path_loss(const Position3& user, const Position3& uav, const RadioParams& radio,
                         const AtgParams& atg) {
    const double d = checked_uav_distance(user, uav);
    const double p_los = los_probability(elevation_angle_deg(user, uav), atg);
    const double free_space = std::pow(wavenumber_factor(radio) * d, atg.alpha);
    return free_space * (p_los * atg.eta_los + (1.0 - p_los) * atg.eta_nlos);
}

double uav_channel_power_gain(const Position3& user, const Position3& uav,
                              const RadioParams& radio, const AtgParams& atg) {
    const double gains = units::db_to_linear(radio.uav_antenna_gain_db) *
                         units::db_to_linear(radio.user_antenna_gain_db);
    return gains / uav_avg_path_loss(user, uav, radio, atg);
}

UavLinkEvaluator::UavLinkEvaluator(const UavDeployment& deployment, const RadioParams& radio,
                                   const AtgParams& atg)
    : association_(deployment.association),
      subcarriers_(deployment.subcarriers),
      noise_w_(radio.noise_power_w()),
      bandwidth_hz_(radio.subcarrier_bandwidth_hz()),
      band_size_(radio.uav_subcarriers()) {
    const std::size_t users = deployment.user_count();
    const std::size_t uavs = deployment.uav_count();
    if (deployment.user_positions.size() != users || association_.size() != users ||
        subcarriers_.size() != users) {
        throw ContractViolation("deployment user arrays have mismatched lengths");
    }

    active_.assign(uavs, std::vector<char>(static_cast<std::size_t>(band_size_), 0));
    std::vector<std::size_t> used(uavs, 0);
    for (std::size_t i = 0; i < users; ++i) {
        const std::size_t j = association_[i];
        if (j >= uavs) throw ContractViolation("user associated with a nonexistent UAV");
        for (int l : subcarriers_[i]) {
            if (l < 0 || l >= band_size_) {
                throw AllocationError("subcarrier " + std::to_string(l) +
                                      " outside the UAV half-band");
            }
            auto& slot = active_[j][static_cast<std::size_t>(l)];
            if (!slot) ++used[j];
            slot = 1;
        }
    }

    const double total_w = radio.uav_power_w();
    subcarrier_power_w_.resize(uavs, 0.0);
    for (std::size_t j = 0; j < uavs; ++j) {
        if (used[j] > 0) subcarrier_power_w_[j] = total_w / static_cast<double>(used[j]);
    }

    gain_.assign(users, std::vector<double>(uavs, 0.0));
    for (std::size_t i = 0; i < users; ++i) {
        for (std::size_t j = 0; j < uavs; ++j) {
            gain_[i][j] = uav_channel_power_gain(deployment.user_positions[i],
                                                 deployment.uav_positions[j], radio, atg);
        }
    }
}

bool UavLinkEvaluator::active(std::size_t uav, int subcarrier) const {
    if (subcarrier < 0 || subcarrier >= band_size_) return false;
    return active_.at(uav)[static_cast<std::size_t>(subcarrier)] != 0;
}

double UavLinkEvaluator::sinr(std::size_t user, int subcarrier) const {
    const auto& held = subcarriers_.at(user);
    if (std::find(held.begin(), held.end(), subcarrier) == held.end()) {
        throw ContractViolation("user " + std::to_string(user) + " is not assigned subcarrier " +
                                std::to_string(subcarrier));
    }
    const std::size_t serving = association_[user];
    const double signal = subcarrier_power_w_[serving] * gain_[user][serving];
    double interference = 0.0;
    for (std::size_t j = 0; j < active_.size(); ++j) {
        if (j == serving || !active_[j][static_cast<std::size_t>(subcarrier)]) continue;
        interference += subcarrier_power_w_[j] * gain_[user][j];
    }
    return signal / (noise_w_ + interference);
}

double UavLinkEvaluator::rate(std::size_t user) const {
    double total = 0.0;
    for (int l : subcarriers_.at(user)) total += bandwidth_hz_ * std::log2(1.0 + sinr(user, l));
    return total;
}

std::vector<double> UavLinkEvaluator::rates() const {
    std::vector<double> out(association_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = rate(i);
    return out;
}

double uav_sinr(const UavDeployment& deployment, std::size_t user, int subcarrier,
                const RadioParams& radio, const AtgParams& atg) {
    return UavLinkEvaluator(deployment, radio, atg).sinr(user, subcarrier);
}

double uav_user_rate(const UavDeployment& deployment, std::size_t user,
                     const RadioParams& radio, const AtgParams& atg) {
    return UavLinkEvaluator(deployment, radio, atg).rate(user);
}

}  // namespace hapsris
